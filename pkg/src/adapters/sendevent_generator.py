"""
SendEventGenerator - Compilación de escenarios a scripts sendevent

Convierte un ClassifiedScenario en eventos del protocolo multi-touch
tipo B, en orden cronológico:

SFA (un slot):
    SLOT 0, TRACKING_ID id, BTN_TOUCH 1, X, Y, SYN       <- inicio
    X, Y, SYN                                            <- Gesture: un muestreo por toque
    TRACKING_ID -1, BTN_TOUCH 0, SYN                     <- fin, tras la duración activa

MFA (un slot por dedo, una ventana SYN por frame):
    SLOT s, [TRACKING_ID id], X, Y, [TRACKING_ID -1] ... por cada dedo activo
    BTN_TOUCH 1 con el primer contacto, BTN_TOUCH 0 con el último
    SYN

Los timestamps son relativos al inicio del script (microsegundos).
"""

import itertools
import logging
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.actions import ActionKind, AtomicAction, ClassifiedScenario, MultiFingerAction, ScenarioItem
from ..core.models import MAX_FINGERS, DeviceProfile, TouchDetection
from ..core.script import (
    ABS_MT_POSITION_X,
    ABS_MT_POSITION_Y,
    ABS_MT_SLOT,
    ABS_MT_TRACKING_ID,
    BTN_TOUCH,
    DEFAULT_DEVICE_NODE,
    EV_ABS,
    EV_KEY,
    EV_SYN,
    SYN_REPORT,
    TRACKING_ID_RELEASE,
    InputEvent,
    OverlapConflictError,
    SendEventScript,
    SlotExhaustionError,
)

logger = logging.getLogger(__name__)


def device_coordinates(center: Tuple[float, float], profile: DeviceProfile) -> Tuple[int, int]:
    """Redondeo half-up a pixeles enteros, limitado a la pantalla"""
    x = min(max(math.floor(center[0] + 0.5), 0), profile.screen_width - 1)
    y = min(max(math.floor(center[1] + 0.5), 0), profile.screen_height - 1)
    return x, y


def _samples(action: AtomicAction) -> List[TouchDetection]:
    """
    Muestras de coordenadas de una acción.

    Tap y LongTap usan solo el centro del primer toque; Gesture usa cada
    toque hasta el último High.
    """
    if action.kind is ActionKind.GESTURE:
        return list(action.sequence.active_touches)
    return [action.sequence.touches[0]]


def emit_sfa_events(
    action: AtomicAction,
    profile: DeviceProfile,
    t0_us: int = 0,
    tracking_id: int = 1,
) -> List[InputEvent]:
    """
    Eventos de una acción de un dedo.

    Args:
        action: Acción atómica
        profile: Perfil del dispositivo
        t0_us: Timestamp del inicio de la acción
        tracking_id: Tracking id del contacto

    Returns:
        Eventos desde el inicio del contacto hasta su fin
    """
    start = action.start_frame
    events: List[InputEvent] = []

    for index, touch in enumerate(_samples(action)):
        t = t0_us + profile.frame_time_us(touch.frame - start)
        x, y = device_coordinates(touch.center, profile)
        if index == 0:
            events.append(InputEvent(t, EV_ABS, ABS_MT_SLOT, 0))
            events.append(InputEvent(t, EV_ABS, ABS_MT_TRACKING_ID, tracking_id))
            events.append(InputEvent(t, EV_KEY, BTN_TOUCH, 1))
        events.append(InputEvent(t, EV_ABS, ABS_MT_POSITION_X, x))
        events.append(InputEvent(t, EV_ABS, ABS_MT_POSITION_Y, y))
        events.append(InputEvent(t, EV_SYN, SYN_REPORT, 0))

    t_end = t0_us + profile.frame_time_us(action.sequence.active_frames)
    events.append(InputEvent(t_end, EV_ABS, ABS_MT_TRACKING_ID, TRACKING_ID_RELEASE))
    events.append(InputEvent(t_end, EV_KEY, BTN_TOUCH, 0))
    events.append(InputEvent(t_end, EV_SYN, SYN_REPORT, 0))
    return events


def _finger_frames(action: AtomicAction) -> Dict[int, Tuple[float, float]]:
    """Coordenada por frame activo de un dedo"""
    touches = action.sequence.active_touches
    if action.kind is ActionKind.GESTURE:
        return {t.frame: t.center for t in touches}
    held = touches[0].center
    return {t.frame: held for t in touches}


def emit_mfa_events(
    mfa: MultiFingerAction,
    profile: DeviceProfile,
    t0_us: int = 0,
    tracking_ids: Optional[Iterator[int]] = None,
) -> List[InputEvent]:
    """
    Eventos de una acción de varios dedos.

    Cada frame con algún dedo activo produce una ventana SYN. Cada dedo
    ocupa el slot libre más bajo desde su primer frame hasta el último,
    donde se cierra con tracking id -1 sin esperar a los demás dedos.

    Raises:
        SlotExhaustionError: Si hay más de MAX_FINGERS dedos simultáneos
    """
    ids = tracking_ids if tracking_ids is not None else itertools.count(1)
    if len(mfa.actions) == 1:
        return emit_sfa_events(mfa.actions[0], profile, t0_us, next(ids))

    start = mfa.start_frame
    fingers = [_finger_frames(a) for a in mfa.actions]
    first_frame = [min(f) for f in fingers]
    last_frame = [max(f) for f in fingers]
    frames = sorted(set(itertools.chain.from_iterable(fingers)))

    slots: Dict[int, int] = {}
    events: List[InputEvent] = []
    touching = False

    for frame in frames:
        t = t0_us + profile.frame_time_us(frame - start)
        window: List[InputEvent] = []
        # Los dedos que bajan en este frame toman slot en orden de acción
        for finger in range(len(fingers)):
            if first_frame[finger] == frame:
                slots[finger] = _lowest_free_slot(slots, frame)
        active = sorted((slots[f], f) for f in range(len(fingers)) if frame in fingers[f])

        for slot, finger in active:
            x, y = device_coordinates(fingers[finger][frame], profile)
            window.append(InputEvent(t, EV_ABS, ABS_MT_SLOT, slot))
            if first_frame[finger] == frame:
                window.append(InputEvent(t, EV_ABS, ABS_MT_TRACKING_ID, next(ids)))
            window.append(InputEvent(t, EV_ABS, ABS_MT_POSITION_X, x))
            window.append(InputEvent(t, EV_ABS, ABS_MT_POSITION_Y, y))
            if last_frame[finger] == frame:
                window.append(InputEvent(t, EV_ABS, ABS_MT_TRACKING_ID, TRACKING_ID_RELEASE))

        for _, finger in active:
            if last_frame[finger] == frame:
                del slots[finger]

        if active and not touching:
            window.append(InputEvent(t, EV_KEY, BTN_TOUCH, 1))
            touching = True
        if touching and not slots:
            window.append(InputEvent(t, EV_KEY, BTN_TOUCH, 0))
            touching = False
        window.append(InputEvent(t, EV_SYN, SYN_REPORT, 0))
        events.extend(window)

    return events


def _lowest_free_slot(slots: Dict[int, int], frame: int) -> int:
    used = set(slots.values())
    for slot in range(MAX_FINGERS):
        if slot not in used:
            return slot
    raise SlotExhaustionError(f"Más de {MAX_FINGERS} dedos simultáneos en frame {frame}")


def _emit_item(item: ScenarioItem, profile: DeviceProfile, t0_us: int, ids: Iterator[int]) -> List[InputEvent]:
    if isinstance(item, MultiFingerAction):
        return emit_mfa_events(item, profile, t0_us, ids)
    return emit_sfa_events(item.action, profile, t0_us, next(ids))


def _profile_events(triples: Sequence[Tuple[int, int, int]], t_us: int) -> List[InputEvent]:
    return [InputEvent(t_us, ev_type, code, value) for ev_type, code, value in triples]


def assemble_script(
    scenario: ClassifiedScenario,
    profile: Optional[DeviceProfile] = None,
    device_node: str = DEFAULT_DEVICE_NODE,
) -> SendEventScript:
    """
    Compila un escenario completo en orden cronológico.

    El inicio de cada elemento se ubica a frame_time(start_frame - origen)
    del inicio del script, de modo que los huecos entre elementos
    reproducen los huecos entre frames de la grabación. Si un elemento
    empieza exactamente cuando termina el anterior se desplaza 1 µs.

    Raises:
        OverlapConflictError: Si un elemento empieza antes de que termine el anterior
        SlotExhaustionError: Si un MFA excede los slots disponibles
    """
    profile = profile or scenario.profile
    items = sorted(scenario.items, key=lambda item: item.sort_key())
    if not items:
        return SendEventScript(device_node=device_node, events=(), profile=profile)

    ids = itertools.count(1)
    origin = items[0].start_frame
    lead_us = profile.frame_time_us(1) if profile.prologue else 0
    events: List[InputEvent] = _profile_events(profile.prologue, 0)
    previous_end = -1

    for index, item in enumerate(items):
        t0 = lead_us + profile.frame_time_us(item.start_frame - origin)
        if t0 < previous_end:
            raise OverlapConflictError(
                f"Elemento {index} (frame {item.start_frame}) empieza en {t0} µs, "
                f"antes del fin del anterior ({previous_end} µs)"
            )
        item_events = _emit_item(item, profile, t0, ids)
        if t0 == previous_end:
            item_events = [e.shifted(1) for e in item_events]
        events.extend(item_events)
        previous_end = item_events[-1].timestamp_us

    if profile.epilogue:
        events.extend(_profile_events(profile.epilogue, previous_end + profile.frame_time_us(1)))

    logger.debug(
        f"[SendEventGenerator] {len(items)} elementos -> {len(events)} eventos, "
        f"{events[-1].timestamp_us / 1000:.1f} ms"
    )
    return SendEventScript(device_node=device_node, events=tuple(events), profile=profile)


class SendEventGenerator:
    """
    Conversor escenario -> script sendevent (multi-touch tipo B).

    Implementa IEventConverter.
    """

    def __init__(self, device_node: str = DEFAULT_DEVICE_NODE, enable_logging: bool = True):
        self.device_node = device_node
        self.enable_logging = enable_logging

    def convert(self, scenario: ClassifiedScenario, profile: Optional[DeviceProfile] = None) -> SendEventScript:
        script = assemble_script(scenario, profile, self.device_node)
        if self.enable_logging:
            logger.info(
                f"[SendEventGenerator] Script generado: {len(script)} eventos, "
                f"{script.duration_us / 1_000_000:.2f} s, nodo {self.device_node}"
            )
        return script

    def get_protocol_info(self) -> str:
        return f"Linux multi-touch tipo B en {self.device_node}"
