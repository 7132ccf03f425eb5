"""
Codec JSON del escenario clasificado (frontera clasificación -> generación)

Esquema (schema_version 1):
    {
      "schema_version": 1,
      "device": {...sección device del trazo...},
      "symbols": "TG2L",                       # solo informativo
      "items": [
        {"type": "sfa", "action": ACTION},
        {"type": "mfa", "finger_count": 2, "actions": [ACTION, ...]}
      ]
    }
    ACTION = {"kind": "tap" | "long_tap" | "gesture",
              "touches": [{"frame", "bbox", "confidence", "opacity"}, ...]}
"""

import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .actions import (
    MAX_FINGERS,
    ActionKind,
    AtomicAction,
    ClassifiedScenario,
    MultiFingerAction,
    ScenarioItem,
    SingleFingerAction,
    TouchSequence,
)
from .models import TRACE_SCHEMA_VERSION, BoundingBox, SchemaViolationError, TouchDetection
from .trace_codec import DetectionRecord, DeviceSection, TraceReadError, decode_json, describe_validation_error, device_to_dict


class ActionDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ActionKind
    touches: List[DetectionRecord] = Field(..., min_length=1)


class SfaDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["sfa"]
    action: ActionDocument


class MfaDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: Literal["mfa"]
    finger_count: int = Field(..., ge=1, le=MAX_FINGERS)
    actions: List[ActionDocument] = Field(..., min_length=1)


ScenarioItemDocument = Annotated[Union[SfaDocument, MfaDocument], Field(discriminator="type")]


class ClassifiedDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1]
    device: DeviceSection
    symbols: str = ""
    items: List[ScenarioItemDocument] = Field(default_factory=list)


def _action_to_dict(action: AtomicAction) -> Dict[str, Any]:
    return {
        "kind": action.kind.value,
        "touches": [
            {"frame": t.frame, "bbox": t.bbox.as_list(), "confidence": t.confidence, "opacity": t.opacity.value}
            for t in action.sequence.touches
        ],
    }


def classified_to_dict(scenario: ClassifiedScenario) -> Dict[str, Any]:
    items: List[Dict[str, Any]] = []
    for item in scenario.items:
        if isinstance(item, MultiFingerAction):
            items.append({
                "type": "mfa",
                "finger_count": item.finger_count,
                "actions": [_action_to_dict(a) for a in item.actions],
            })
        else:
            items.append({"type": "sfa", "action": _action_to_dict(item.action)})
    return {
        "schema_version": TRACE_SCHEMA_VERSION,
        "device": device_to_dict(scenario.profile),
        "symbols": "".join(scenario.to_symbols(extended=True)),
        "items": items,
    }


def _action_from_document(document: ActionDocument) -> AtomicAction:
    touches = tuple(
        TouchDetection(
            frame=t.frame,
            bbox=BoundingBox(*t.bbox),
            confidence=t.confidence,
            opacity=t.opacity,
        )
        for t in document.touches
    )
    try:
        sequence = TouchSequence(touches)
    except ValueError as e:
        raise SchemaViolationError(f"Secuencia de toques inválida: {e}") from e
    return AtomicAction(document.kind, sequence)


def parse_classified(raw: Union[bytes, str]) -> ClassifiedScenario:
    """
    Parsea un escenario clasificado.

    Raises:
        MalformedJsonError: Si el documento no es JSON válido
        SchemaViolationError: Si no cumple el esquema
    """
    data = decode_json(raw)
    try:
        document = ClassifiedDocument.model_validate(data)
    except ValidationError as e:
        raise SchemaViolationError(f"Escenario clasificado inválido: {describe_validation_error(e)}") from e

    items: List[ScenarioItem] = []
    for entry in document.items:
        if isinstance(entry, MfaDocument):
            actions = tuple(_action_from_document(a) for a in entry.actions)
            items.append(MultiFingerAction(actions, entry.finger_count))
        else:
            items.append(SingleFingerAction(_action_from_document(entry.action)))

    items.sort(key=lambda item: item.sort_key())
    return ClassifiedScenario(profile=document.device.to_profile(), items=tuple(items))


def dump_classified(scenario: ClassifiedScenario, path: Union[str, Path]) -> Path:
    """Escribe <stem>.classified.json"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(classified_to_dict(scenario), ensure_ascii=False, indent=2), encoding="utf-8")
    except OSError as e:
        raise TraceReadError(f"No se pudo escribir el escenario clasificado {path}: {e}") from e
    return path


def load_classified(path: Union[str, Path]) -> ClassifiedScenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise TraceReadError(f"No se pudo leer el escenario clasificado {path}: {e}") from e
    return parse_classified(raw)
