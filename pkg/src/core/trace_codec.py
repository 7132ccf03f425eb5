"""
TraceCodec - Lectura y escritura del JSON de detecciones

Implementa Single Responsibility Principle (SRP):
- Solo responsable de convertir entre bytes JSON y DetectionTrace
- El esquema se valida con modelos pydantic; los invariantes del dominio
  los garantizan los dataclasses de models.py

Esquema (schema_version 1):
    {
      "schema_version": 1,
      "device": {"name": str, "width": int, "height": int, "fps": int,
                 "touch_slop": float (opcional), "tap_cutoff_ms": float (opcional)},
      "frame_count": int,
      "detections": [{"frame": int, "bbox": [x, y, w, h],
                      "confidence": float, "opacity": "high" | "low"}]
    }
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .models import (
    DEFAULT_TOUCH_SLOP,
    MIN_FPS,
    TRACE_SCHEMA_VERSION,
    BoundingBox,
    BoundsViolationError,
    DetectionTrace,
    DeviceProfile,
    MalformedJsonError,
    Opacity,
    SchemaViolationError,
    TouchDetection,
    TraceError,
)

logger = logging.getLogger(__name__)


class TraceReadError(TraceError):
    """Error de E/S al leer o escribir un trazo"""
    pass


# ==========================================
# ESQUEMA DEL DOCUMENTO
# ==========================================

class DeviceSection(BaseModel):
    """Sección "device" del documento"""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    width: int = Field(..., gt=0)
    height: int = Field(..., gt=0)
    fps: int = Field(..., ge=MIN_FPS)
    touch_slop: float = Field(DEFAULT_TOUCH_SLOP, gt=0)
    tap_cutoff_ms: Optional[float] = Field(None, gt=0)

    def to_profile(self) -> DeviceProfile:
        return DeviceProfile(
            name=self.name,
            screen_width=self.width,
            screen_height=self.height,
            fps=self.fps,
            touch_slop=self.touch_slop,
            tap_cutoff_ms=self.tap_cutoff_ms,
        )


class DetectionRecord(BaseModel):
    """Una detección tal como aparece en el documento"""
    model_config = ConfigDict(frozen=True)

    frame: int = Field(..., ge=0)
    bbox: Tuple[float, float, float, float]
    confidence: float = Field(..., ge=0.0, le=1.0)
    opacity: Opacity


class TraceDocument(BaseModel):
    """Documento completo de detecciones"""
    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1]
    device: DeviceSection
    frame_count: int = Field(..., ge=0)
    detections: List[DetectionRecord]


def describe_validation_error(error: ValidationError) -> str:
    """Resume un ValidationError de pydantic en una línea legible"""
    partes = []
    for issue in error.errors()[:5]:
        ubicacion = ".".join(str(p) for p in issue.get("loc", ()))
        partes.append(f"{ubicacion or 'raíz'}: {issue.get('msg')}")
    restantes = error.error_count() - len(partes)
    if restantes > 0:
        partes.append(f"(+{restantes} errores más)")
    return "; ".join(partes)


def device_to_dict(profile: DeviceProfile) -> Dict[str, Any]:
    """Sección "device" a partir de un perfil"""
    device: Dict[str, Any] = {
        "name": profile.name,
        "width": profile.screen_width,
        "height": profile.screen_height,
        "fps": profile.fps,
        "touch_slop": profile.touch_slop,
    }
    if profile.tap_cutoff_ms is not None:
        device["tap_cutoff_ms"] = profile.tap_cutoff_ms
    return device


def parse_device(data: Any) -> DeviceProfile:
    """Valida una sección "device" suelta y la convierte en perfil"""
    try:
        return DeviceSection.model_validate(data).to_profile()
    except ValidationError as e:
        raise SchemaViolationError(f"Sección device inválida: {describe_validation_error(e)}") from e


def decode_json(raw: Union[bytes, str]) -> Any:
    """Decodifica bytes UTF-8 a JSON, envolviendo los errores en MalformedJsonError"""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedJsonError(f"El documento no es UTF-8 válido: {e}") from e
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise MalformedJsonError(
            f"JSON inválido (línea {e.lineno}, columna {e.colno}): {e.msg}"
        ) from e


# ==========================================
# PARSE / SERIALIZE
# ==========================================

def _clamp_bbox(values: Tuple[float, float, float, float], profile: DeviceProfile, frame: int) -> BoundingBox:
    x, y, w, h = values
    if w < 0 or h < 0:
        raise SchemaViolationError(f"Bounding box con tamaño negativo en frame {frame}: {list(values)}")

    cx, cy = x + w / 2, y + h / 2
    if not profile.contains(cx, cy):
        raise BoundsViolationError(
            f"Bounding box fuera de pantalla en frame {frame}: centro ({cx:.1f}, {cy:.1f}) "
            f"en pantalla {profile.screen_width}x{profile.screen_height}"
        )

    if x >= 0 and y >= 0 and x + w <= profile.screen_width and y + h <= profile.screen_height:
        return BoundingBox(x, y, w, h)

    # Indicador parcialmente ocluido en el borde
    x0, y0 = max(0.0, x), max(0.0, y)
    x1 = min(float(profile.screen_width), x + w)
    y1 = min(float(profile.screen_height), y + h)
    return BoundingBox(x0, y0, x1 - x0, y1 - y0)


def parse_trace(raw: Union[bytes, str]) -> DetectionTrace:
    """
    Parsea un documento JSON de detecciones.

    Args:
        raw: Documento JSON (bytes UTF-8 o texto)

    Returns:
        DetectionTrace con detecciones ordenadas por frame

    Raises:
        MalformedJsonError: Si el documento no es JSON válido
        SchemaViolationError: Si falta un campo o un valor está fuera de rango
        BoundsViolationError: Si un bounding box cae fuera de pantalla
    """
    data = decode_json(raw)

    try:
        document = TraceDocument.model_validate(data)
    except ValidationError as e:
        raise SchemaViolationError(f"Documento de detecciones inválido: {describe_validation_error(e)}") from e

    profile = document.device.to_profile()

    # sorted() es estable: los empates conservan el orden del archivo
    records = sorted(document.detections, key=lambda r: r.frame)
    detections = tuple(
        TouchDetection(
            frame=record.frame,
            bbox=_clamp_bbox(record.bbox, profile, record.frame),
            confidence=record.confidence,
            opacity=record.opacity,
        )
        for record in records
    )

    trace = DetectionTrace(profile=profile, detections=detections, frame_count=document.frame_count)
    logger.debug(
        f"[TraceCodec] Trazo parseado: {len(trace)} detecciones, {trace.frame_count} frames, "
        f"dispositivo {profile.name}"
    )
    return trace


def trace_to_dict(trace: DetectionTrace) -> Dict[str, Any]:
    return {
        "schema_version": TRACE_SCHEMA_VERSION,
        "device": device_to_dict(trace.profile),
        "frame_count": trace.frame_count,
        "detections": [
            {
                "frame": d.frame,
                "bbox": d.bbox.as_list(),
                "confidence": d.confidence,
                "opacity": d.opacity.value,
            }
            for d in trace.detections
        ],
    }


def serialize_trace(trace: DetectionTrace) -> bytes:
    """Serializa un trazo al JSON de detecciones (inverso de parse_trace)"""
    return json.dumps(trace_to_dict(trace), ensure_ascii=False, indent=2).encode("utf-8")


def load_trace(path: Union[str, Path]) -> DetectionTrace:
    """Lee y parsea un archivo de detecciones"""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise TraceReadError(f"No se pudo leer el trazo {path}: {e}") from e
    return parse_trace(raw)


def save_trace(trace: DetectionTrace, path: Union[str, Path]) -> Path:
    """Escribe un trazo a disco, creando el directorio si no existe"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(serialize_trace(trace))
    except OSError as e:
        raise TraceReadError(f"No se pudo escribir el trazo {path}: {e}") from e
    return path
