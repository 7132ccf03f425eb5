"""
Métricas de evaluación sobre secuencias de tipos de acción

- levenshtein: distancia de edición con costo unitario
- lcs_ratio: |subsecuencia común más larga| / |verdad de referencia|
- precision_recall: por tipo sobre la "bolsa de acciones" (sin orden),
  con promedio macro sobre los tipos presentes en predicción o referencia
- evaluate_batch: métricas por par y sus promedios
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import pandas as pd

from ..core.action_sequence import ActionTypeSequence, MetricsError

logger = logging.getLogger(__name__)

Symbols = Union[ActionTypeSequence, Sequence[str]]


class EmptyGroundTruthError(MetricsError):
    """La verdad de referencia está vacía (lcs_ratio indefinido)"""
    pass


def _symbols(sequence: Symbols) -> Tuple[str, ...]:
    if isinstance(sequence, ActionTypeSequence):
        return sequence.symbols
    if isinstance(sequence, str):
        return ActionTypeSequence.parse(sequence).symbols
    return tuple(sequence)


# ==========================================
# DISTANCIAS
# ==========================================

def levenshtein(pred: Symbols, truth: Symbols) -> int:
    """Distancia de edición (inserción, borrado y sustitución con costo 1)"""
    a, b = _symbols(pred), _symbols(truth)
    previous = list(range(len(b) + 1))
    for i, sa in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, sb in enumerate(b, start=1):
            current[j] = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (sa != sb),
            )
        previous = current
    return previous[-1]


def lcs_length(a: Symbols, b: Symbols) -> int:
    """Longitud de la subsecuencia común más larga"""
    a, b = _symbols(a), _symbols(b)
    previous = [0] * (len(b) + 1)
    for sa in a:
        current = [0] * (len(b) + 1)
        for j, sb in enumerate(b, start=1):
            current[j] = previous[j - 1] + 1 if sa == sb else max(previous[j], current[j - 1])
        previous = current
    return previous[-1]


def lcs_ratio(pred: Symbols, truth: Symbols) -> float:
    """
    |LCS(pred, truth)| / |truth|.

    Raises:
        EmptyGroundTruthError: Si truth está vacía
    """
    truth_symbols = _symbols(truth)
    if not truth_symbols:
        raise EmptyGroundTruthError("lcs_ratio requiere una verdad de referencia no vacía")
    return lcs_length(pred, truth_symbols) / len(truth_symbols)


# ==========================================
# PRECISIÓN / RECALL
# ==========================================

@dataclass(frozen=True)
class TypeScore:
    """Conteos y puntajes de un tipo de acción"""
    symbol: str
    true_positives: int
    false_positives: int
    false_negatives: int

    @property
    def precision(self) -> float:
        predicted = self.true_positives + self.false_positives
        return self.true_positives / predicted if predicted else 0.0

    @property
    def recall(self) -> float:
        actual = self.true_positives + self.false_negatives
        return self.true_positives / actual if actual else 0.0


@dataclass(frozen=True)
class PrecisionRecall:
    per_type: Dict[str, TypeScore]

    @property
    def macro_precision(self) -> float:
        if not self.per_type:
            return 1.0
        return sum(s.precision for s in self.per_type.values()) / len(self.per_type)

    @property
    def macro_recall(self) -> float:
        if not self.per_type:
            return 1.0
        return sum(s.recall for s in self.per_type.values()) / len(self.per_type)


def precision_recall(pred: Symbols, truth: Symbols) -> PrecisionRecall:
    """
    Precisión y recall por tipo sobre multiconjuntos.

    TP = min(conteo predicho, conteo real); FP y FN son los excedentes.
    Un tipo ausente en ambas secuencias no aporta término al promedio.
    """
    pred_counts = ActionTypeSequence(_symbols(pred)).counts()
    truth_counts = ActionTypeSequence(_symbols(truth)).counts()

    per_type: Dict[str, TypeScore] = {}
    for symbol in sorted(set(pred_counts) | set(truth_counts)):
        tp = min(pred_counts[symbol], truth_counts[symbol])
        per_type[symbol] = TypeScore(
            symbol=symbol,
            true_positives=tp,
            false_positives=pred_counts[symbol] - tp,
            false_negatives=truth_counts[symbol] - tp,
        )
    return PrecisionRecall(per_type)


# ==========================================
# REPORTES
# ==========================================

@dataclass(frozen=True)
class HumanJudgment:
    """Juicio humano registrado para un escenario (no se calcula)"""
    reproduced: bool
    faithful_actions: int = 0


@dataclass(frozen=True)
class MetricsReport:
    """Métricas de un par (predicción, referencia)"""
    scenario_id: str
    predicted: str
    truth: str
    levenshtein: int
    lcs_ratio: float
    scores: PrecisionRecall
    judgment: Optional[HumanJudgment] = None

    @property
    def truth_length(self) -> int:
        return len(ActionTypeSequence.parse(self.truth))

    @property
    def macro_precision(self) -> float:
        return self.scores.macro_precision

    @property
    def macro_recall(self) -> float:
        return self.scores.macro_recall

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "scenario_id": self.scenario_id,
            "predicted": self.predicted,
            "truth": self.truth,
            "levenshtein": self.levenshtein,
            "lcs_ratio": self.lcs_ratio,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "per_type": {
                symbol: {
                    "tp": s.true_positives,
                    "fp": s.false_positives,
                    "fn": s.false_negatives,
                    "precision": s.precision,
                    "recall": s.recall,
                }
                for symbol, s in self.scores.per_type.items()
            },
        }
        if self.judgment is not None:
            data["reproduced"] = self.judgment.reproduced
            data["faithful_actions"] = self.judgment.faithful_actions
        return data


@dataclass(frozen=True)
class BatchMetrics:
    """Métricas por par y sus promedios aritméticos"""
    reports: Tuple[MetricsReport, ...]
    mean_levenshtein: float
    mean_lcs_ratio: float
    mean_precision: float
    mean_recall: float
    success_rate: Optional[float] = None
    mean_faithful_fraction: Optional[float] = None

    def to_frame(self) -> pd.DataFrame:
        """Una fila por par con las métricas principales"""
        return pd.DataFrame(
            [
                {
                    "scenario": r.scenario_id,
                    "predicted": r.predicted,
                    "truth": r.truth,
                    "levenshtein": r.levenshtein,
                    "lcs_ratio": r.lcs_ratio,
                    "precision": r.macro_precision,
                    "recall": r.macro_recall,
                }
                for r in self.reports
            ]
        )

    def summary(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "pairs": len(self.reports),
            "mean_levenshtein": self.mean_levenshtein,
            "mean_lcs_ratio": self.mean_lcs_ratio,
            "mean_precision": self.mean_precision,
            "mean_recall": self.mean_recall,
        }
        if self.success_rate is not None:
            summary["success_rate"] = self.success_rate
            summary["mean_faithful_fraction"] = self.mean_faithful_fraction
        return summary

    def to_dict(self) -> Dict[str, Any]:
        return {"summary": self.summary(), "pairs": [r.to_dict() for r in self.reports]}


def evaluate_pair(
    pred: Symbols,
    truth: Symbols,
    scenario_id: str = "",
    judgment: Optional[HumanJudgment] = None,
) -> MetricsReport:
    """Métricas de un par (predicción, referencia)"""
    pred_seq = ActionTypeSequence(_symbols(pred))
    truth_seq = ActionTypeSequence(_symbols(truth))
    return MetricsReport(
        scenario_id=scenario_id,
        predicted=str(pred_seq),
        truth=str(truth_seq),
        levenshtein=levenshtein(pred_seq, truth_seq),
        lcs_ratio=lcs_ratio(pred_seq, truth_seq),
        scores=precision_recall(pred_seq, truth_seq),
        judgment=judgment,
    )


def _judgment_means(reports: Sequence[MetricsReport]) -> Tuple[Optional[float], Optional[float]]:
    judged = [r for r in reports if r.judgment is not None]
    if not judged:
        return None, None
    success = sum(1 for r in judged if r.judgment.reproduced) / len(judged)
    faithful = sum(min(r.judgment.faithful_actions, r.truth_length) / r.truth_length for r in judged) / len(judged)
    return success, faithful


def evaluate_batch(
    pairs: Sequence[Tuple[Symbols, Symbols]],
    scenario_ids: Optional[Sequence[str]] = None,
    judgments: Optional[Dict[str, HumanJudgment]] = None,
    workers: int = 1,
) -> BatchMetrics:
    """
    Evalúa una lista de pares (predicción, referencia).

    Args:
        pairs: Pares no vacíos
        scenario_ids: Identificador por par (por defecto su índice)
        judgments: Juicios humanos por identificador de escenario
        workers: Hilos para evaluar pares en paralelo; el orden de salida es el de entrada

    Raises:
        MetricsError: Si no hay pares
        EmptyGroundTruthError: Si alguna referencia está vacía
    """
    if not pairs:
        raise MetricsError("evaluate_batch requiere al menos un par")
    ids = list(scenario_ids) if scenario_ids is not None else [str(i) for i in range(len(pairs))]
    if len(ids) != len(pairs):
        raise MetricsError(f"{len(ids)} identificadores para {len(pairs)} pares")
    judgments = judgments or {}

    def evaluate(index: int) -> MetricsReport:
        pred, truth = pairs[index]
        return evaluate_pair(pred, truth, ids[index], judgments.get(ids[index]))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            reports = tuple(executor.map(evaluate, range(len(pairs))))
    else:
        reports = tuple(evaluate(i) for i in range(len(pairs)))

    frame = pd.DataFrame(
        [(r.levenshtein, r.lcs_ratio, r.macro_precision, r.macro_recall) for r in reports],
        columns=["levenshtein", "lcs_ratio", "precision", "recall"],
    )
    means = frame.mean()
    success_rate, faithful = _judgment_means(reports)

    logger.debug(f"[Metrics] {len(reports)} pares evaluados, LCS promedio {means['lcs_ratio']:.3f}")
    return BatchMetrics(
        reports=reports,
        mean_levenshtein=float(means["levenshtein"]),
        mean_lcs_ratio=float(means["lcs_ratio"]),
        mean_precision=float(means["precision"]),
        mean_recall=float(means["recall"]),
        success_rate=success_rate,
        mean_faithful_fraction=faithful,
    )
