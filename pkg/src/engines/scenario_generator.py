"""
ScenarioGenerator - Escenarios de referencia aleatorios con semilla

Mezcla Taps, LongTaps, Gestures y MFAs de dos dedos (pinch o tap de dos
dedos). Las acciones quedan separadas por al menos MIN_GAP_FRAMES frames
vacíos después de la cola de desvanecimiento.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from ..core.actions import ActionKind
from ..core.ground_truth import GroundTruthAction, GroundTruthScenario, PathPoint
from ..core.models import DeviceProfile

logger = logging.getLogger(__name__)

MIN_ACTIONS = 5
MAX_ACTIONS = 25
MIN_GAP_FRAMES = 3
MAX_GAP_FRAMES = 20
SCREEN_MARGIN = 30

TAP_FRAMES = (5, 20)
LONG_TAP_FRAMES = (25, 45)
GESTURE_FRAMES = (8, 30)
GESTURE_MIN_TRAVEL = 60.0
GESTURE_MAX_TRAVEL = 600.0
MFA_MIN_SEPARATION = 150.0
MFA_MAX_SEPARATION = 500.0

# Probabilidad de cada tipo de acción generada
KIND_WEIGHTS = {
    "tap": 0.35,
    "long_tap": 0.2,
    "gesture": 0.3,
    "pinch": 0.1,
    "two_finger_tap": 0.05,
}


def _line(start: Tuple[float, float], end: Tuple[float, float], first_frame: int, frames: int) -> Tuple[PathPoint, ...]:
    points = []
    for k in range(frames):
        t = k / (frames - 1) if frames > 1 else 0.0
        x = float(round(start[0] + (end[0] - start[0]) * t))
        y = float(round(start[1] + (end[1] - start[1]) * t))
        points.append((first_frame + k, x, y))
    return tuple(points)


def _still(point: Tuple[float, float], first_frame: int, frames: int) -> Tuple[PathPoint, ...]:
    return tuple((first_frame + k, point[0], point[1]) for k in range(frames))


class ScenarioGenerator:
    """
    Generador de escenarios aleatorios.

    Mismo (perfil, semilla) -> mismos escenarios.
    """

    def __init__(
        self,
        profile: DeviceProfile,
        seed: int = 0,
        min_actions: int = MIN_ACTIONS,
        max_actions: int = MAX_ACTIONS,
        fade_frames: int = 3,
    ):
        if not 1 <= min_actions <= max_actions:
            raise ValueError(f"Rango de acciones inválido: [{min_actions}, {max_actions}]")
        self.profile = profile
        self.seed = seed
        self.min_actions = min_actions
        self.max_actions = max_actions
        self.fade_frames = fade_frames

    def generate(self, index: int = 0) -> GroundTruthScenario:
        """Escenario número index de la secuencia determinada por la semilla"""
        rng = np.random.default_rng([self.seed, index])
        count = int(rng.integers(self.min_actions, self.max_actions + 1))
        kinds = list(KIND_WEIGHTS)
        weights = np.array(list(KIND_WEIGHTS.values()))
        weights = weights / weights.sum()

        cursor = int(rng.integers(0, 10))
        actions: List[GroundTruthAction] = []
        for _ in range(count):
            kind = kinds[int(rng.choice(len(kinds), p=weights))]
            action = self._action(kind, cursor, rng)
            actions.append(action)
            gap = int(rng.integers(MIN_GAP_FRAMES, MAX_GAP_FRAMES + 1))
            cursor = action.end_frame + self.fade_frames + 1 + gap

        return GroundTruthScenario(profile=self.profile, actions=tuple(actions))

    def generate_batch(self, count: int) -> List[GroundTruthScenario]:
        return [self.generate(i) for i in range(count)]

    # ==========================================
    # ACCIONES
    # ==========================================

    def _action(self, kind: str, start: int, rng: np.random.Generator) -> GroundTruthAction:
        if kind == "tap":
            frames = int(rng.integers(TAP_FRAMES[0], TAP_FRAMES[1] + 1))
            return GroundTruthAction(ActionKind.TAP, (_still(self._point(rng), start, frames),))
        if kind == "long_tap":
            frames = int(rng.integers(LONG_TAP_FRAMES[0], LONG_TAP_FRAMES[1] + 1))
            return GroundTruthAction(ActionKind.LONG_TAP, (_still(self._point(rng), start, frames),))
        if kind == "gesture":
            frames = int(rng.integers(GESTURE_FRAMES[0], GESTURE_FRAMES[1] + 1))
            origin, target = self._segment(rng)
            return GroundTruthAction(ActionKind.GESTURE, (_line(origin, target, start, frames),))
        if kind == "pinch":
            return self._pinch(start, rng)
        return self._two_finger_tap(start, rng)

    def _pinch(self, start: int, rng: np.random.Generator) -> GroundTruthAction:
        frames = int(rng.integers(GESTURE_FRAMES[0], GESTURE_FRAMES[1] + 1))
        a_start, a_end, b_start, b_end = self._pinch_geometry(rng)
        # El segundo dedo puede bajar y subir hasta un frame desfasado
        lead, trail = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        finger_a = _line(a_start, a_end, start, frames)
        finger_b = _line(b_start, b_end, start, frames)[lead:frames - trail]
        return GroundTruthAction(ActionKind.GESTURE, (finger_a, finger_b))

    def _two_finger_tap(self, start: int, rng: np.random.Generator) -> GroundTruthAction:
        frames = int(rng.integers(max(TAP_FRAMES[0], 6), TAP_FRAMES[1] + 1))
        center = self._point(rng, MFA_MAX_SEPARATION / 2 + SCREEN_MARGIN)
        a, b = self._pair(center, float(rng.uniform(MFA_MIN_SEPARATION, MFA_MAX_SEPARATION)), rng)
        lead, trail = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        return GroundTruthAction(
            ActionKind.TAP,
            (_still(a, start, frames), _still(b, start + lead, frames - lead - trail)),
        )

    # ==========================================
    # GEOMETRÍA
    # ==========================================

    def _point(self, rng: np.random.Generator, margin: float = SCREEN_MARGIN) -> Tuple[float, float]:
        margin = min(margin, self.profile.screen_width / 2 - 1, self.profile.screen_height / 2 - 1)
        x = float(round(rng.uniform(margin, self.profile.screen_width - margin)))
        y = float(round(rng.uniform(margin, self.profile.screen_height - margin)))
        return (x, y)

    def _inside(self, point: Tuple[float, float]) -> bool:
        return (
            SCREEN_MARGIN <= point[0] <= self.profile.screen_width - SCREEN_MARGIN
            and SCREEN_MARGIN <= point[1] <= self.profile.screen_height - SCREEN_MARGIN
        )

    def _segment(self, rng: np.random.Generator) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        while True:
            origin, target = self._point(rng), self._point(rng)
            travel = math.dist(origin, target)
            if GESTURE_MIN_TRAVEL <= travel <= GESTURE_MAX_TRAVEL:
                return origin, target

    def _pair(
        self, center: Tuple[float, float], separation: float, rng: np.random.Generator, angle: Optional[float] = None
    ) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        theta = float(rng.uniform(0, math.pi)) if angle is None else angle
        dx, dy = math.cos(theta) * separation / 2, math.sin(theta) * separation / 2
        return (
            (float(round(center[0] + dx)), float(round(center[1] + dy))),
            (float(round(center[0] - dx)), float(round(center[1] - dy))),
        )

    def _pinch_geometry(self, rng: np.random.Generator):
        while True:
            center = self._point(rng, MFA_MAX_SEPARATION / 2 + SCREEN_MARGIN)
            theta = float(rng.uniform(0, math.pi))
            opening = float(rng.uniform(MFA_MIN_SEPARATION, MFA_MAX_SEPARATION))
            closing = float(rng.uniform(MFA_MIN_SEPARATION, MFA_MAX_SEPARATION))
            if abs(opening - closing) < 2 * GESTURE_MIN_TRAVEL:
                continue
            a_start, b_start = self._pair(center, opening, rng, theta)
            a_end, b_end = self._pair(center, closing, rng, theta)
            if all(self._inside(p) for p in (a_start, a_end, b_start, b_end)):
                return a_start, a_end, b_start, b_end
