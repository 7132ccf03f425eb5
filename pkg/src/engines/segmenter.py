"""
GestureSegmenter - Segmentación de detecciones en secuencias por dedo

Primera mitad de la clasificación de acciones:
1. Filtrar detecciones por confianza
2. Agrupar detecciones presentes en frames consecutivos
3. Recorrer cada grupo como un grafo frame a frame y separar los toques
   de cada dedo en secuencias discretas

Reglas de enlace entre el frame t y el frame t+1:
- Emparejamiento voraz: se enlaza repetidamente el par (secuencia, toque)
  más cercano (distancia euclidiana entre centros)
- Dos distancias se consideran empate si difieren en menos de la
  tolerancia (touch slop por defecto). En empate se usa la opacidad: un
  toque Low se enlaza con la secuencia cuyo último toque fue High, y entre
  varias de ellas con la más antigua (el dedo que termina su trayectoria)
- Empates restantes: menor x del toque, luego menor y
- Toques sobrantes inician secuencias nuevas; secuencias sin toque se cierran

Tras enlazar, toda secuencia con un toque High después de uno Low se
divide en ese punto. Las secuencias de dos frames o menos se descartan.
"""

import logging
from dataclasses import dataclass
from itertools import groupby
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.actions import TouchSequence
from ..core.models import DEFAULT_TOUCH_SLOP, DetectionTrace, TouchDetection
from ..filters import (
    DEFAULT_MAX_DISCARD_FRAMES,
    DEFAULT_MIN_CONFIDENCE,
    ConfidenceFilter,
    SpanFilter,
    apply_filter,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameGroup:
    """Detecciones de una racha de frames consecutivos sin frames vacíos"""
    detections: Tuple[TouchDetection, ...]

    @property
    def start_frame(self) -> int:
        return self.detections[0].frame

    @property
    def end_frame(self) -> int:
        return self.detections[-1].frame

    def __len__(self) -> int:
        return len(self.detections)

    def by_frame(self) -> List[Tuple[int, List[TouchDetection]]]:
        return [(frame, list(touches)) for frame, touches in groupby(self.detections, key=lambda d: d.frame)]


class _Track:
    """Secuencia en construcción durante el recorrido"""
    __slots__ = ("order", "touches")

    def __init__(self, order: int, first: TouchDetection):
        self.order = order
        self.touches = [first]

    @property
    def last(self) -> TouchDetection:
        return self.touches[-1]

    @property
    def start_frame(self) -> int:
        return self.touches[0].frame


# ==========================================
# OPERACIONES
# ==========================================

def filter_confidence(trace: DetectionTrace, min_confidence: float = DEFAULT_MIN_CONFIDENCE) -> DetectionTrace:
    """
    Descarta detecciones con confianza menor al umbral.

    Args:
        trace: Trazo de detecciones
        min_confidence: Umbral inclusivo

    Returns:
        Trazo con las detecciones retenidas, en el mismo orden
    """
    retained = apply_filter(trace.detections, ConfidenceFilter(min_confidence))
    if len(retained) == len(trace.detections):
        return trace
    return trace.with_detections(tuple(retained))


def group_consecutive(
    trace: DetectionTrace,
    max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES,
) -> List[FrameGroup]:
    """
    Agrupa detecciones en rachas maximales de frames consecutivos.

    Un frame vacío cierra el grupo. Los grupos que cubren
    max_discard_frames frames o menos se descartan.
    """
    groups: List[FrameGroup] = []
    current: List[TouchDetection] = []

    for detection in trace.detections:
        if current and detection.frame > current[-1].frame + 1:
            groups.append(FrameGroup(tuple(current)))
            current = []
        current.append(detection)
    if current:
        groups.append(FrameGroup(tuple(current)))

    return apply_filter(groups, SpanFilter(max_discard_frames))


def _tie_key(track: _Track, touch: TouchDetection, distance: float) -> Tuple:
    low_after_high = not touch.is_high and track.last.is_high
    return (
        0 if low_after_high else 1,
        track.start_frame if not touch.is_high else 0,
        distance,
        touch.center[0],
        touch.center[1],
        track.start_frame,
        track.order,
    )


def _link_frame(
    open_tracks: List[_Track],
    touches: List[TouchDetection],
    tie_tolerance: float,
) -> Tuple[Dict[int, TouchDetection], List[TouchDetection]]:
    """
    Empareja las secuencias abiertas con los toques del frame siguiente.

    Returns:
        (toque asignado por índice de secuencia, toques sin secuencia)
    """
    pairs = [
        (track_idx, touch_idx, track.last.distance_to(touch))
        for track_idx, track in enumerate(open_tracks)
        for touch_idx, touch in enumerate(touches)
    ]
    assigned: Dict[int, TouchDetection] = {}
    used_touches = set()

    while pairs:
        best = min(distance for _, _, distance in pairs)
        tied = [p for p in pairs if p[2] == best or p[2] - best < tie_tolerance]
        track_idx, touch_idx, _ = min(
            tied, key=lambda p: _tie_key(open_tracks[p[0]], touches[p[1]], p[2])
        )
        assigned[track_idx] = touches[touch_idx]
        used_touches.add(touch_idx)
        pairs = [p for p in pairs if p[0] != track_idx and p[1] != touch_idx]

    surplus = [t for i, t in enumerate(touches) if i not in used_touches]
    return assigned, surplus


def _split_at_interior_low(touches: Sequence[TouchDetection]) -> List[List[TouchDetection]]:
    """Corta antes de cada toque High que sigue a uno Low"""
    pieces: List[List[TouchDetection]] = [[touches[0]]]
    for previous, touch in zip(touches, touches[1:]):
        if touch.is_high and not previous.is_high:
            pieces.append([touch])
        else:
            pieces[-1].append(touch)
    return pieces


def segment_actions(
    group: FrameGroup,
    tie_tolerance: float = DEFAULT_TOUCH_SLOP,
    max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES,
) -> List[TouchSequence]:
    """
    Separa un grupo de frames en secuencias de toques por dedo.

    Args:
        group: Grupo de frames consecutivos
        tie_tolerance: Diferencia de distancia (px) bajo la cual dos candidatos empatan
        max_discard_frames: Las secuencias de este número de frames o menos se descartan

    Returns:
        Secuencias ordenadas por frame inicial y posición del primer toque
    """
    finished: List[_Track] = []
    open_tracks: List[_Track] = []
    next_order = 0

    for _frame, touches in group.by_frame():
        touches.sort(key=lambda t: t.center)
        assigned, surplus = _link_frame(open_tracks, touches, tie_tolerance)

        still_open: List[_Track] = []
        for idx, track in enumerate(open_tracks):
            touch = assigned.get(idx)
            if touch is None:
                finished.append(track)
            else:
                track.touches.append(touch)
                still_open.append(track)
        for touch in surplus:
            still_open.append(_Track(next_order, touch))
            next_order += 1
        open_tracks = still_open

    finished.extend(open_tracks)

    sequences = [
        TouchSequence(tuple(piece))
        for track in finished
        for piece in _split_at_interior_low(track.touches)
    ]
    kept = apply_filter(sequences, SpanFilter(max_discard_frames))
    kept.sort(key=lambda s: (s.start_frame, s.touches[0].center))
    return kept


class GestureSegmenter:
    """
    Orquesta filtrado, agrupación y segmentación de un trazo completo.

    La tolerancia de empate por defecto es el touch slop del perfil.
    """

    def __init__(
        self,
        min_confidence: float = DEFAULT_MIN_CONFIDENCE,
        tie_tolerance: Optional[float] = None,
        max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES,
    ):
        self.min_confidence = min_confidence
        self.tie_tolerance = tie_tolerance
        self.max_discard_frames = max_discard_frames

    def segment_trace(self, trace: DetectionTrace) -> Tuple[DetectionTrace, List[TouchSequence]]:
        """
        Returns:
            (trazo filtrado por confianza, secuencias de todos los grupos en orden)
        """
        filtered = filter_confidence(trace, self.min_confidence)
        tolerance = self.tie_tolerance if self.tie_tolerance is not None else trace.profile.touch_slop

        groups = group_consecutive(filtered, self.max_discard_frames)
        sequences: List[TouchSequence] = []
        for group in groups:
            sequences.extend(segment_actions(group, tolerance, self.max_discard_frames))

        logger.debug(
            f"[Segmenter] {len(trace)} detecciones -> {len(filtered)} tras confianza, "
            f"{len(groups)} grupos, {len(sequences)} secuencias"
        )
        return filtered, sequences
