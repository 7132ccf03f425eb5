"""
Filtros base para detecciones y acciones.
Define la interface que todos los filtros deben implementar.
"""

from typing import Any, Iterable, List, Protocol, TypeVar

T = TypeVar("T")


class ItemFilter(Protocol):
    """
    Interface para filtros de detecciones (TouchDetection) y de acciones (AtomicAction).

    Implementa patrón Strategy - permite agregar nuevos filtros
    sin modificar código existente (Open/Closed Principle).
    """

    def match(self, item: Any) -> bool:
        """
        Determina si un elemento se conserva.

        Returns:
            True si el elemento cumple el criterio, False en caso contrario
        """
        ...

    def get_description(self) -> str:
        """
        Obtiene descripción legible del filtro para logs y reportes.

        Returns:
            String describiendo el filtro
        """
        ...


def apply_filter(items: Iterable[T], item_filter: ItemFilter) -> List[T]:
    """Conserva, en orden, los elementos que pasan el filtro"""
    return [item for item in items if item_filter.match(item)]
