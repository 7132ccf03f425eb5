"""
TraceSynthesizer - Generación de trazos sintéticos de detecciones

Pipeline inverso: a partir de un escenario de referencia genera el trazo
que produciría el detector de toques, con un modelo de ruido configurable.
Permite verificar clasificación y generación de scripts sin dispositivos
ni detectores.

Contrato:
- Cada punto de recorrido produce una detección High (desplazada por el
  ruido, posiblemente perdida)
- Al levantar cada dedo se agregan fade_frames detecciones Low en la
  última posición emitida
- Se inyectan falsos positivos High por frame con vida de 1 a 2 frames
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core.action_sequence import ActionTypeSequence
from ..core.ground_truth import GroundTruthScenario, InvalidScenarioError, NoiseModel, PathPoint
from ..core.models import BoundingBox, DetectionTrace, DeviceProfile, Opacity, TouchDetection

logger = logging.getLogger(__name__)

# Lado del indicador de toque sintético en pixeles
INDICATOR_SIZE = 48.0

REAL_CONFIDENCE_RANGE = (0.9, 1.0)
FALSE_POSITIVE_CONFIDENCE_RANGE = (0.5, 1.0)
FALSE_POSITIVE_LIFETIME = (1, 2)


@dataclass(frozen=True)
class SynthesisResult:
    """Trazo sintético junto con su verdad de referencia"""
    trace: DetectionTrace
    truth: ActionTypeSequence
    extended_truth: ActionTypeSequence
    false_positives: int


def indicator_bbox(x: float, y: float, profile: DeviceProfile, size: float = INDICATOR_SIZE) -> BoundingBox:
    """
    Bounding box cuadrado centrado en (x, y).

    Cerca de los bordes se reduce simétricamente para que el centro siga
    siendo exactamente (x, y) y el box quede dentro de la pantalla.
    """
    half = min(size / 2, x, y, profile.screen_width - x, profile.screen_height - y)
    half = max(half, 0.0)
    return BoundingBox(x - half, y - half, 2 * half, 2 * half)


class TraceSynthesizer:
    """
    Sintetizador de trazos determinista dada la semilla del modelo de ruido.

    Ejemplo:
        >>> result = TraceSynthesizer(NoiseModel(fade_frames=3)).synthesize(scenario)
        >>> len(result.trace), str(result.truth)
        (13, 'T')
    """

    def __init__(self, noise: NoiseModel, indicator_size: float = INDICATOR_SIZE):
        self.noise = noise
        self.indicator_size = indicator_size

    def synthesize(self, scenario: GroundTruthScenario) -> SynthesisResult:
        """
        Genera el trazo de un escenario.

        Raises:
            InvalidScenarioError: Si frame_count del escenario no cubre todas las detecciones
        """
        rng = np.random.default_rng(self.noise.rng_seed)
        profile = scenario.profile
        detections: List[TouchDetection] = []

        for action in scenario.actions:
            for path in action.paths:
                detections.extend(self._finger_detections(path, profile, rng))

        last_frame = max((d.frame for d in detections), default=-1)
        frame_count = scenario.frame_count if scenario.frame_count is not None else last_frame + 1
        if last_frame >= frame_count:
            raise InvalidScenarioError(
                f"frame_count={frame_count} no cubre la última detección (frame {last_frame})"
            )

        false_positives = self._false_positives(frame_count, profile, rng)
        fp_events = len({id_ for id_, _ in false_positives})
        detections.extend(d for _, d in false_positives)

        # sort estable: los toques reales preceden a los falsos positivos en cada frame
        detections.sort(key=lambda d: d.frame)
        trace = DetectionTrace(profile=profile, detections=tuple(detections), frame_count=frame_count)

        logger.debug(
            f"[TraceSynthesizer] {len(scenario)} acciones -> {len(trace)} detecciones "
            f"({fp_events} falsos positivos) en {frame_count} frames"
        )
        return SynthesisResult(
            trace=trace,
            truth=scenario.to_sequence(),
            extended_truth=scenario.to_sequence(extended=True),
            false_positives=fp_events,
        )

    def _confidence(self, rng: np.random.Generator, bounds: Tuple[float, float]) -> float:
        return float(rng.uniform(*bounds))

    def _kept(self, rng: np.random.Generator) -> bool:
        return self.noise.dropout_rate == 0 or rng.random() >= self.noise.dropout_rate

    def _finger_detections(
        self,
        path: Tuple[PathPoint, ...],
        profile: DeviceProfile,
        rng: np.random.Generator,
    ) -> List[TouchDetection]:
        sigma = self.noise.position_jitter_sigma
        detections: List[TouchDetection] = []
        offset = (0.0, 0.0)
        previous_point = None
        position = (0.0, 0.0)

        for frame, x, y in path:
            # Un indicador inmóvil se vuelve a detectar en el mismo lugar salvo con independent_jitter
            if sigma > 0 and (self.noise.independent_jitter or (x, y) != previous_point):
                dx, dy = rng.normal(0.0, sigma, size=2)
                offset = (float(dx), float(dy))
            previous_point = (x, y)
            position = self._clamp(x + offset[0], y + offset[1], profile)

            confidence = self._confidence(rng, REAL_CONFIDENCE_RANGE)
            if self._kept(rng):
                detections.append(self._detection(frame, position, confidence, Opacity.HIGH, profile))

        lift_frame = path[-1][0]
        for k in range(1, self.noise.fade_frames + 1):
            confidence = self._confidence(rng, REAL_CONFIDENCE_RANGE)
            if self._kept(rng):
                detections.append(self._detection(lift_frame + k, position, confidence, Opacity.LOW, profile))
        return detections

    def _false_positives(
        self,
        frame_count: int,
        profile: DeviceProfile,
        rng: np.random.Generator,
    ) -> List[Tuple[int, TouchDetection]]:
        rate = self.noise.false_positive_rate
        if rate == 0 or frame_count == 0:
            return []

        injected: List[Tuple[int, TouchDetection]] = []
        starts = np.flatnonzero(rng.random(frame_count) < rate)
        for event_id, start in enumerate(starts):
            lifetime = int(rng.integers(FALSE_POSITIVE_LIFETIME[0], FALSE_POSITIVE_LIFETIME[1] + 1))
            x = float(rng.uniform(0, profile.screen_width - 1))
            y = float(rng.uniform(0, profile.screen_height - 1))
            confidence = self._confidence(rng, FALSE_POSITIVE_CONFIDENCE_RANGE)
            for frame in range(int(start), min(int(start) + lifetime, frame_count)):
                injected.append((event_id, self._detection(frame, (x, y), confidence, Opacity.HIGH, profile)))
        return injected

    def _clamp(self, x: float, y: float, profile: DeviceProfile) -> Tuple[float, float]:
        if profile.contains(x, y):
            return (x, y)
        return (
            min(max(x, 0.0), profile.screen_width - 1.0),
            min(max(y, 0.0), profile.screen_height - 1.0),
        )

    def _detection(
        self,
        frame: int,
        position: Tuple[float, float],
        confidence: float,
        opacity: Opacity,
        profile: DeviceProfile,
    ) -> TouchDetection:
        bbox = indicator_bbox(position[0], position[1], profile, self.indicator_size)
        return TouchDetection(frame=frame, bbox=bbox, confidence=confidence, opacity=opacity)


def synthesize_trace(scenario: GroundTruthScenario, noise: NoiseModel) -> Tuple[DetectionTrace, ActionTypeSequence]:
    """Genera (trazo, secuencia de tipos de referencia) para un escenario"""
    result = TraceSynthesizer(noise).synthesize(scenario)
    return result.trace, result.truth
