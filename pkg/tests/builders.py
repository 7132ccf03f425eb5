"""
Constructores compactos de perfiles, toques, trazos y acciones para las pruebas.

Funciones de módulo (no fixtures) para poder usarlas dentro de pruebas
con hypothesis.
"""

from typing import Iterable, List, Optional, Sequence

from src.core.actions import ActionKind, AtomicAction, TouchSequence
from src.core.models import BoundingBox, DetectionTrace, DeviceProfile, Opacity, TouchDetection

INDICATOR = 48.0


def profile(name: str = "test", width: int = 1080, height: int = 1920, fps: int = 30, **kwargs) -> DeviceProfile:
    return DeviceProfile(name=name, screen_width=width, screen_height=height, fps=fps, **kwargs)


def touch(frame: int, x: float, y: float, high: bool = True, confidence: float = 0.95) -> TouchDetection:
    """Toque con bbox cuadrado centrado exactamente en (x, y)"""
    half = INDICATOR / 2
    return TouchDetection(
        frame=frame,
        bbox=BoundingBox(x - half, y - half, INDICATOR, INDICATOR),
        confidence=confidence,
        opacity=Opacity.HIGH if high else Opacity.LOW,
    )


def stationary(start: int, frames: int, x: float = 500.0, y: float = 500.0, fade: int = 0) -> List[TouchDetection]:
    """frames toques High en un punto fijo seguidos de fade toques Low"""
    touches = [touch(start + k, x, y) for k in range(frames)]
    touches += [touch(start + frames + k, x, y, high=False) for k in range(fade)]
    return touches


def moving(
    start: int,
    frames: int,
    x: float = 300.0,
    y: float = 500.0,
    dx: float = 10.0,
    dy: float = 0.0,
    fade: int = 0,
) -> List[TouchDetection]:
    """Trayectoria recta de frames toques High más una cola Low en el último punto"""
    touches = [touch(start + k, x + dx * k, y + dy * k) for k in range(frames)]
    last_x, last_y = x + dx * (frames - 1), y + dy * (frames - 1)
    touches += [touch(start + frames + k, last_x, last_y, high=False) for k in range(fade)]
    return touches


def trace(
    detections: Iterable[TouchDetection],
    device: Optional[DeviceProfile] = None,
    frame_count: Optional[int] = None,
) -> DetectionTrace:
    ordered = sorted(detections, key=lambda d: d.frame)
    if frame_count is None:
        frame_count = (ordered[-1].frame + 1) if ordered else 0
    return DetectionTrace(profile=device or profile(), detections=tuple(ordered), frame_count=frame_count)


def sequence(touches: Sequence[TouchDetection]) -> TouchSequence:
    return TouchSequence(tuple(touches))


def action(kind: ActionKind, touches: Sequence[TouchDetection]) -> AtomicAction:
    return AtomicAction(kind, sequence(touches))


def interval(start: int, end: int, kind: ActionKind = ActionKind.GESTURE, x: float = 500.0) -> AtomicAction:
    """Acción de un toque por frame en [start, end], sin cola"""
    return action(kind, [touch(f, x, 500.0) for f in range(start, end + 1)])
