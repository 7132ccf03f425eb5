"""
Modelos de Datos del Trazo de Detecciones

Define el perfil de dispositivo y el modelo de datos del trazo de detecciones
(frontera entre la detección de toques y la clasificación de acciones):
- DeviceProfile: pantalla, fps y umbrales del dispositivo
- TouchDetection: un indicador de toque detectado en un frame
- DetectionTrace: todas las detecciones de una grabación, ordenadas por frame

Todos los tipos son inmutables tras su construcción.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

# Mínimo de grabación aceptado (frames por segundo)
MIN_FPS = 30

# Touch slop de AOSP en pixeles
DEFAULT_TOUCH_SLOP = 8.0

# Frames máximos de un Tap (inclusive)
DEFAULT_TAP_MAX_FRAMES = 20

# Máximo de dedos simultáneos soportados
MAX_FINGERS = 10

# Versión del esquema JSON de detecciones
TRACE_SCHEMA_VERSION = 1


# ==========================================
# EXCEPCIONES
# ==========================================

class TraceError(Exception):
    """Excepción base para errores del trazo de detecciones"""
    pass


class MalformedJsonError(TraceError):
    """El documento no es JSON válido (o no es UTF-8)"""
    pass


class SchemaViolationError(TraceError):
    """El documento no cumple el esquema (campo faltante, rango inválido)"""
    pass


class InvalidProfileError(SchemaViolationError):
    """Perfil de dispositivo con valores inválidos"""
    pass


class BoundsViolationError(TraceError):
    """Bounding box fuera de la pantalla"""
    pass


# ==========================================
# ENUMS
# ==========================================

class Opacity(str, Enum):
    """Clase de opacidad del indicador de toque"""
    HIGH = "high"  # Dedo presionando
    LOW = "low"    # Dedo levantándose (desvanecimiento)


# ==========================================
# TIEMPO DE FRAME
# ==========================================

def frame_time_ms(frame: int, fps: int) -> float:
    """
    Tiempo en milisegundos del frame dado.

    Args:
        frame: Índice de frame (o diferencia de frames)
        fps: Frames por segundo (> 0)

    Returns:
        frame * 1000 / fps
    """
    return frame * 1000 / fps


def frame_time_us(frame: int, fps: int) -> int:
    """Tiempo del frame en microsegundos enteros, redondeado half-up."""
    return (frame * 2_000_000 + fps) // (2 * fps)


# ==========================================
# PERFIL DE DISPOSITIVO
# ==========================================

@dataclass(frozen=True)
class DeviceProfile:
    """
    Perfil del dispositivo de grabación y reproducción.

    prologue/epilogue son tripletas (type, code, value) que se emiten al
    inicio y al final del script, para dispositivos con API levels antiguos.
    """
    name: str
    screen_width: int
    screen_height: int
    fps: int
    touch_slop: float = DEFAULT_TOUCH_SLOP
    tap_max_frames: int = DEFAULT_TAP_MAX_FRAMES
    tap_cutoff_ms: Optional[float] = None
    prologue: Tuple[Tuple[int, int, int], ...] = ()
    epilogue: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if not self.name:
            raise InvalidProfileError("El perfil requiere un nombre")
        if self.screen_width <= 0 or self.screen_height <= 0:
            raise InvalidProfileError(
                f"Dimensiones de pantalla inválidas: {self.screen_width}x{self.screen_height}"
            )
        if self.fps < MIN_FPS:
            raise InvalidProfileError(
                f"fps={self.fps} por debajo del mínimo de grabación ({MIN_FPS})"
            )
        if self.touch_slop <= 0:
            raise InvalidProfileError(f"touch_slop debe ser > 0, recibido: {self.touch_slop}")
        if self.tap_max_frames <= 0:
            raise InvalidProfileError(f"tap_max_frames debe ser > 0, recibido: {self.tap_max_frames}")
        if self.tap_cutoff_ms is not None and self.tap_cutoff_ms <= 0:
            raise InvalidProfileError(f"tap_cutoff_ms debe ser > 0, recibido: {self.tap_cutoff_ms}")

    def frame_time_ms(self, frame: int) -> float:
        return frame_time_ms(frame, self.fps)

    def frame_time_us(self, frame: int) -> int:
        return frame_time_us(frame, self.fps)

    def contains(self, x: float, y: float) -> bool:
        """True si el punto cae dentro de [0, W) x [0, H)"""
        return 0 <= x < self.screen_width and 0 <= y < self.screen_height


# ==========================================
# DETECCIONES
# ==========================================

@dataclass(frozen=True)
class BoundingBox:
    """Bounding box (x, y, w, h) en pixeles"""
    x: float
    y: float
    w: float
    h: float

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x + self.w / 2, self.y + self.h / 2)

    def as_list(self) -> List[float]:
        return [self.x, self.y, self.w, self.h]


@dataclass(frozen=True)
class TouchDetection:
    """Un indicador de toque detectado en un frame"""
    frame: int
    bbox: BoundingBox
    confidence: float
    opacity: Opacity
    # Coordenada canónica del toque, calculada una sola vez
    center: Tuple[float, float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.frame < 0:
            raise SchemaViolationError(f"Frame negativo: {self.frame}")
        if not 0.0 <= self.confidence <= 1.0:
            raise SchemaViolationError(
                f"Confianza fuera de [0, 1] en frame {self.frame}: {self.confidence}"
            )
        if self.bbox.w < 0 or self.bbox.h < 0:
            raise SchemaViolationError(f"Bounding box con tamaño negativo en frame {self.frame}")
        object.__setattr__(self, "center", self.bbox.center)

    @property
    def is_high(self) -> bool:
        return self.opacity is Opacity.HIGH

    def distance_to(self, other: "TouchDetection") -> float:
        """Distancia euclidiana entre centros"""
        dx = self.center[0] - other.center[0]
        dy = self.center[1] - other.center[1]
        return (dx * dx + dy * dy) ** 0.5


@dataclass(frozen=True)
class DetectionTrace:
    """
    Trazo de detecciones de una grabación.

    Invariantes:
    - detections ordenadas por frame (se permiten varios toques por frame)
    - todo frame < frame_count
    """
    profile: DeviceProfile
    detections: Tuple[TouchDetection, ...]
    frame_count: int

    def __post_init__(self):
        if self.frame_count < 0:
            raise SchemaViolationError(f"frame_count negativo: {self.frame_count}")
        previous = -1
        for detection in self.detections:
            if detection.frame < previous:
                raise SchemaViolationError("Las detecciones deben estar ordenadas por frame")
            if detection.frame >= self.frame_count:
                raise SchemaViolationError(
                    f"Detección en frame {detection.frame} >= frame_count {self.frame_count}"
                )
            previous = detection.frame

    def __len__(self) -> int:
        return len(self.detections)

    def with_detections(self, detections: Tuple[TouchDetection, ...]) -> "DetectionTrace":
        """Copia del trazo con otras detecciones (mismo perfil y frame_count)"""
        return DetectionTrace(profile=self.profile, detections=tuple(detections), frame_count=self.frame_count)

    def frame_touch_counts(self) -> Dict[int, int]:
        """Número de toques detectados por frame (solo frames con toques)"""
        return dict(Counter(d.frame for d in self.detections))
