"""
ActionClassifier - Clasificación de acciones e identificación de SFA/MFA

Segunda mitad de la clasificación:
1. Clasificar cada secuencia como Tap, LongTap o Gesture
2. Filtrar acciones espurias (baja opacidad promedio, dos frames o menos)
3. Separar acciones de un dedo (SFA) y grupos de varios dedos (MFA)
   con un agrupamiento tipo pila sobre las acciones ordenadas
4. Asignar a cada MFA su número de dedos (moda de toques por frame)
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..core.actions import (
    MAX_FINGERS,
    ActionKind,
    AtomicAction,
    ClassifiedScenario,
    MultiFingerAction,
    ScenarioItem,
    SingleFingerAction,
    TouchSequence,
)
from ..core.models import DetectionTrace, DeviceProfile
from ..filters import (
    DEFAULT_MAX_DISCARD_FRAMES,
    DEFAULT_MIN_CONFIDENCE,
    DEFAULT_MIN_HIGH_FRACTION,
    CompositeFilter,
    OpacityFilter,
    SpanFilter,
    apply_filter,
)
from .segmenter import GestureSegmenter

logger = logging.getLogger(__name__)

# Fracción de frames multi-toque por encima de la cual una acción es MFA potencial
MULTI_TOUCH_FRACTION = 0.5


def classify_action(sequence: TouchSequence, profile: DeviceProfile) -> AtomicAction:
    """
    Clasifica una secuencia de toques.

    - Gesture: algún centro se aleja más de touch_slop del primero
    - Tap: duración activa <= tap_max_frames (o <= tap_cutoff_ms si el perfil lo define)
    - LongTap: en otro caso

    La duración activa va del primer toque al último toque High.
    """
    first = sequence.touches[0]
    stationary = all(t.distance_to(first) <= profile.touch_slop for t in sequence.touches)
    if not stationary:
        return AtomicAction(ActionKind.GESTURE, sequence)

    active = sequence.active_frames
    if profile.tap_cutoff_ms is not None:
        is_tap = profile.frame_time_ms(active) <= profile.tap_cutoff_ms
    else:
        is_tap = active <= profile.tap_max_frames
    return AtomicAction(ActionKind.TAP if is_tap else ActionKind.LONG_TAP, sequence)


def filter_actions(
    actions: Iterable[AtomicAction],
    min_high_fraction: float = DEFAULT_MIN_HIGH_FRACTION,
    max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES,
) -> List[AtomicAction]:
    """Elimina acciones de baja opacidad promedio o de dos frames o menos"""
    action_filter = CompositeFilter(
        [OpacityFilter(min_high_fraction), SpanFilter(max_discard_frames)], logic="AND"
    )
    return apply_filter(actions, action_filter)


def touch_counts_of(actions: Iterable[AtomicAction]) -> Dict[int, int]:
    """Toques por frame contando solo los toques de las acciones dadas"""
    counts: Dict[int, int] = {}
    for action in actions:
        for touch in action.sequence.touches:
            counts[touch.frame] = counts.get(touch.frame, 0) + 1
    return counts


def multi_touch_fraction(action: AtomicAction, frame_touch_counts: Dict[int, int]) -> float:
    """Fracción de los frames de la acción con dos o más toques"""
    frames = range(action.start_frame, action.end_frame + 1)
    multi = sum(1 for f in frames if frame_touch_counts.get(f, 0) >= 2)
    return multi / len(frames)


def count_mode(counts: Sequence[int]) -> int:
    """Moda de una lista de conteos; los empates van al conteo mayor"""
    if len(counts) == 0:
        raise ValueError("count_mode requiere al menos un conteo")
    histogram = np.bincount(np.asarray(counts, dtype=np.int64))
    # argmax devuelve el primer máximo: se busca sobre el histograma invertido
    return int(len(histogram) - 1 - np.argmax(histogram[::-1]))


def classify_finger_count(group: Sequence[AtomicAction]) -> int:
    """
    Número de dedos de un grupo de acciones.

    Moda de los toques simultáneos por frame sobre el rango de frames del
    grupo, contando solo los toques del grupo. Se limita a MAX_FINGERS.
    """
    if not group:
        raise ValueError("classify_finger_count requiere un grupo no vacío")

    counts = touch_counts_of(group)
    start = min(a.start_frame for a in group)
    end = max(a.end_frame for a in group)
    fingers = count_mode([counts.get(f, 0) for f in range(start, end + 1)])

    if fingers > MAX_FINGERS:
        logger.warning(f"[ActionClassifier] {fingers} dedos detectados, se limita a {MAX_FINGERS}")
        fingers = MAX_FINGERS
    return max(fingers, 1)


def group_overlapping(actions: Iterable[AtomicAction]) -> List[List[AtomicAction]]:
    """
    Agrupamiento tipo pila.

    Con las acciones ordenadas por frame inicial, una acción se une al grupo
    abierto si su primer frame es anterior al último frame de alguna acción
    del grupo; si no, abre un grupo nuevo.
    """
    groups: List[List[AtomicAction]] = []
    group_end = -1
    for action in sorted(actions, key=lambda a: a.sort_key()):
        if groups and action.start_frame < group_end:
            groups[-1].append(action)
            group_end = max(group_end, action.end_frame)
        else:
            groups.append([action])
            group_end = action.end_frame
    return groups


def identify_sfa_mfa(
    actions: Iterable[AtomicAction],
    profile: DeviceProfile,
    frame_touch_counts: Optional[Dict[int, int]] = None,
) -> ClassifiedScenario:
    """
    Separa acciones en SFAs y MFAs.

    Args:
        actions: Acciones clasificadas y filtradas
        profile: Perfil del dispositivo
        frame_touch_counts: Toques por frame de todo el trazo; si falta se
            calcula con los toques de las acciones

    Returns:
        ClassifiedScenario con los elementos en orden cronológico
    """
    actions = list(actions)
    counts = frame_touch_counts if frame_touch_counts is not None else touch_counts_of(actions)

    items: List[ScenarioItem] = []
    potential: List[AtomicAction] = []
    for action in actions:
        if multi_touch_fraction(action, counts) > MULTI_TOUCH_FRACTION:
            potential.append(action)
        else:
            items.append(SingleFingerAction(action))

    for group in group_overlapping(potential):
        if len(group) == 1:
            items.append(SingleFingerAction(group[0]))
        else:
            items.append(MultiFingerAction(tuple(group), classify_finger_count(group)))

    items.sort(key=lambda item: item.sort_key())
    return ClassifiedScenario(profile=profile, items=tuple(items))


class ActionClassifier:
    """
    Orquestador de la fase de clasificación: trazo -> escenario clasificado.

    Ejemplo:
        >>> classifier = ActionClassifier()
        >>> scenario = classifier.classify_trace(trace)
        >>> scenario.to_symbols()
        ['T', 'G', 'L']
    """

    def __init__(
        self,
        min_confidence: float = DEFAULT_MIN_CONFIDENCE,
        min_high_fraction: float = DEFAULT_MIN_HIGH_FRACTION,
        max_discard_frames: int = DEFAULT_MAX_DISCARD_FRAMES,
        tie_tolerance: Optional[float] = None,
        enable_logging: bool = True,
    ):
        self.segmenter = GestureSegmenter(min_confidence, tie_tolerance, max_discard_frames)
        self.min_high_fraction = min_high_fraction
        self.max_discard_frames = max_discard_frames
        self.enable_logging = enable_logging

    def classify_trace(self, trace: DetectionTrace) -> ClassifiedScenario:
        """
        Clasifica un trazo completo.

        Args:
            trace: Trazo de detecciones

        Returns:
            ClassifiedScenario con SFAs y MFAs en orden cronológico
        """
        filtered, sequences = self.segmenter.segment_trace(trace)
        actions = [classify_action(s, trace.profile) for s in sequences]
        kept = filter_actions(actions, self.min_high_fraction, self.max_discard_frames)
        scenario = identify_sfa_mfa(kept, trace.profile, filtered.frame_touch_counts())

        if self.enable_logging:
            logger.info(
                f"[ActionClassifier] {len(sequences)} secuencias, {len(actions) - len(kept)} descartadas, "
                f"{len(scenario.sfas)} SFAs, {len(scenario.mfas)} MFAs: {''.join(scenario.to_symbols())}"
            )
        return scenario
