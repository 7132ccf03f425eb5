"""
Filtro por opacidad promedio.
Descarta acciones formadas casi solo por indicadores de baja opacidad,
que suelen ser una serie de detecciones erróneas.
"""

from ..core.actions import AtomicAction

# Fracción mínima de toques High en una acción
DEFAULT_MIN_HIGH_FRACTION = 0.1


class OpacityFilter:
    """
    Filtra acciones por fracción de toques de alta opacidad.

    Ejemplos de uso:
        - 0 High de 12 toques -> descartada
        - 11 High de 12 toques -> conservada
    """

    def __init__(self, min_high_fraction: float = DEFAULT_MIN_HIGH_FRACTION):
        if not 0.0 <= min_high_fraction <= 1.0:
            raise ValueError(f"min_high_fraction debe estar en [0, 1], recibido: {min_high_fraction}")
        self.min_high_fraction = min_high_fraction

    def match(self, action: AtomicAction) -> bool:
        return action.sequence.high_fraction >= self.min_high_fraction

    def get_description(self) -> str:
        """Descripción del filtro"""
        return f"Fracción de toques High >= {self.min_high_fraction}"
