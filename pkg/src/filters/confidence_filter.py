"""
Filtro por confianza del detector.
Descarta detecciones cuya confianza es menor al umbral.
"""

from ..core.models import TouchDetection

# Umbral de confianza del detector de toques
DEFAULT_MIN_CONFIDENCE = 0.7


class ConfidenceFilter:
    """
    Filtra detecciones por confianza mínima.

    El umbral es inclusivo: se descartan solo las detecciones con
    confianza estrictamente menor.
    """

    def __init__(self, min_confidence: float = DEFAULT_MIN_CONFIDENCE):
        """
        Inicializa filtro de confianza.

        Args:
            min_confidence: Confianza mínima en [0, 1]

        Raises:
            ValueError: Si el umbral está fuera de [0, 1]
        """
        if not 0.0 <= min_confidence <= 1.0:
            raise ValueError(f"min_confidence debe estar en [0, 1], recibido: {min_confidence}")
        self.min_confidence = min_confidence

    def match(self, detection: TouchDetection) -> bool:
        return detection.confidence >= self.min_confidence

    def get_description(self) -> str:
        """Descripción del filtro"""
        return f"Confianza >= {self.min_confidence}"
