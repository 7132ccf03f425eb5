"""
Filtro por duración en frames.
Descarta grupos, secuencias o acciones de dos frames o menos.
"""

from typing import Any

# Duración máxima (inclusive) que se considera ruido
DEFAULT_MAX_DISCARD_FRAMES = 2


def frame_span(item: Any) -> int:
    """Frames cubiertos por cualquier objeto con start_frame/end_frame"""
    return item.end_frame - item.start_frame + 1


class SpanFilter:
    """
    Filtra por número de frames cubiertos.

    Aplica a cualquier objeto con start_frame y end_frame
    (TouchSequence, AtomicAction, grupos de frames).
    """

    def __init__(self, max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES):
        """
        Args:
            max_discard_frames: Se descartan los elementos que cubren este número de frames o menos
        """
        if max_discard_frames < 0:
            raise ValueError(f"max_discard_frames debe ser >= 0, recibido: {max_discard_frames}")
        self.max_discard_frames = max_discard_frames

    def match(self, item: Any) -> bool:
        return frame_span(item) > self.max_discard_frames

    def get_description(self) -> str:
        """Descripción del filtro"""
        return f"Duración > {self.max_discard_frames} frames"
