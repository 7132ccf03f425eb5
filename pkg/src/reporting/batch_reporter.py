"""
Generador de reportes consolidados de evaluación en lote.
Soporta múltiples formatos de salida (JSON, texto alineado, Excel).
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import pandas as pd

from .metrics import BatchMetrics, MetricsError

logger = logging.getLogger(__name__)


class BatchReporter:
    """
    Genera reportes consolidados de una evaluación en lote.

    Soporta:
    - Reporte JSON (resumen + métricas por par)
    - Tabla de texto con columnas alineadas
    - Reporte Excel con varias hojas
    """

    def __init__(self, metrics: BatchMetrics):
        """
        Args:
            metrics: Resultado de evaluate_batch
        """
        self.metrics = metrics

    def generar_reporte_json(self, archivo: Union[str, Path]) -> Path:
        """Escribe metrics.json"""
        return self._write(archivo, json.dumps(self.metrics.to_dict(), ensure_ascii=False, indent=2) + "\n")

    def generar_tabla_texto(self) -> str:
        """Tabla alineada: una fila por escenario más una fila de promedios"""
        frame = self.metrics.to_frame()
        summary = self.metrics.summary()
        promedio = pd.DataFrame([{
            "scenario": "MEAN",
            "predicted": "",
            "truth": "",
            "levenshtein": summary["mean_levenshtein"],
            "lcs_ratio": summary["mean_lcs_ratio"],
            "precision": summary["mean_precision"],
            "recall": summary["mean_recall"],
        }])
        tabla = pd.concat([frame, promedio], ignore_index=True)
        texto = tabla.to_string(index=False, float_format=lambda v: f"{v:.3f}")

        if self.metrics.success_rate is not None:
            texto += (
                f"\n\nsuccess_rate: {self.metrics.success_rate:.3f}"
                f"\nmean_faithful_fraction: {self.metrics.mean_faithful_fraction:.3f}"
            )
        return texto + "\n"

    def generar_resumen_texto(self, archivo: Union[str, Path]) -> Path:
        """Escribe metrics.txt"""
        return self._write(archivo, self.generar_tabla_texto())

    def generar_reporte_excel(self, archivo: Union[str, Path]) -> Path:
        """
        Genera reporte en Excel con hojas Resumen, Detalle y Por Tipo.

        Raises:
            MetricsError: Si la escritura falla
        """
        archivo = Path(archivo)
        try:
            archivo.parent.mkdir(parents=True, exist_ok=True)
            with pd.ExcelWriter(archivo, engine="openpyxl") as writer:
                self._hoja_resumen().to_excel(writer, sheet_name="Resumen", index=False)
                self.metrics.to_frame().to_excel(writer, sheet_name="Detalle", index=False)
                self._hoja_por_tipo().to_excel(writer, sheet_name="Por Tipo", index=False)
        except (OSError, ValueError) as e:
            raise MetricsError(f"No se pudo generar el reporte Excel {archivo}: {e}") from e

        logger.info(f"[BatchReporter] Reporte Excel generado: {archivo}")
        return archivo

    def get_estadisticas_por_tipo(self) -> Dict[str, Dict[str, int]]:
        """Conteos TP/FP/FN acumulados por tipo de acción"""
        stats: Dict[str, Dict[str, int]] = {}
        for report in self.metrics.reports:
            for symbol, score in report.scores.per_type.items():
                entry = stats.setdefault(symbol, {"tp": 0, "fp": 0, "fn": 0})
                entry["tp"] += score.true_positives
                entry["fp"] += score.false_positives
                entry["fn"] += score.false_negatives
        return dict(sorted(stats.items()))

    def _hoja_resumen(self) -> pd.DataFrame:
        summary = self.metrics.summary()
        return pd.DataFrame({"Métrica": list(summary), "Valor": list(summary.values())})

    def _hoja_por_tipo(self) -> pd.DataFrame:
        filas: List[Dict[str, Any]] = []
        for symbol, stats in self.get_estadisticas_por_tipo().items():
            predichos = stats["tp"] + stats["fp"]
            reales = stats["tp"] + stats["fn"]
            filas.append({
                "Tipo": symbol,
                "TP": stats["tp"],
                "FP": stats["fp"],
                "FN": stats["fn"],
                "Precisión": stats["tp"] / predichos if predichos else 0.0,
                "Recall": stats["tp"] / reales if reales else 0.0,
            })
        return pd.DataFrame(filas, columns=["Tipo", "TP", "FP", "FN", "Precisión", "Recall"])

    def _write(self, archivo: Union[str, Path], contenido: str) -> Path:
        archivo = Path(archivo)
        try:
            archivo.parent.mkdir(parents=True, exist_ok=True)
            archivo.write_text(contenido, encoding="utf-8")
        except OSError as e:
            raise MetricsError(f"No se pudo escribir el reporte {archivo}: {e}") from e
        return archivo
