"""
Escenarios de Verdad de Referencia

Modelo del escenario que un participante graba (la secuencia real de
acciones) y del ruido del detector, más el codec JSON de los fixtures.

Formato del fixture:
    {
      "device": {"name": str, "width": int, "height": int, "fps": int, ...},
      "frame_count": int (opcional),
      "actions": [
        {"kind": "tap" | "long_tap" | "gesture",
         "fingers": int (opcional, debe coincidir con len(paths)),
         "paths": [[[frame, x, y], ...], ...]}
      ]
    }
"""

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .action_sequence import ActionTypeSequence
from .actions import ActionKind
from .models import MAX_FINGERS, DeviceProfile, MalformedJsonError
from .trace_codec import DeviceSection, decode_json, describe_validation_error, device_to_dict

logger = logging.getLogger(__name__)

PathPoint = Tuple[int, float, float]


class ScenarioError(Exception):
    """Excepción base para escenarios de verdad de referencia"""
    pass


class InvalidScenarioError(ScenarioError):
    """Escenario que viola sus invariantes"""
    pass


@dataclass(frozen=True)
class NoiseModel:
    """
    Modelo de ruido del detector de toques.

    Attributes:
        position_jitter_sigma: Desviación estándar del desplazamiento del centro (px)
        false_positive_rate: Probabilidad por frame de un falso positivo
        dropout_rate: Probabilidad por detección de perderla
        fade_frames: Frames Low tras levantar el dedo
        rng_seed: Semilla del generador aleatorio
        independent_jitter: Sortear el desplazamiento en cada frame, también con el dedo inmóvil
    """
    position_jitter_sigma: float = 0.0
    false_positive_rate: float = 0.0
    dropout_rate: float = 0.0
    fade_frames: int = 3
    rng_seed: int = 0
    independent_jitter: bool = False

    def __post_init__(self):
        if self.position_jitter_sigma < 0:
            raise ValueError(f"position_jitter_sigma debe ser >= 0: {self.position_jitter_sigma}")
        for name in ("false_positive_rate", "dropout_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} debe estar en [0, 1]: {value}")
        if self.fade_frames < 1:
            raise ValueError(f"fade_frames debe ser >= 1: {self.fade_frames}")

    def with_seed(self, rng_seed: int) -> "NoiseModel":
        return replace(self, rng_seed=rng_seed)


@dataclass(frozen=True)
class GroundTruthAction:
    """Acción real: un tipo y un recorrido (frame, x, y) por dedo"""
    kind: ActionKind
    paths: Tuple[Tuple[PathPoint, ...], ...]

    def __post_init__(self):
        if not 1 <= len(self.paths) <= MAX_FINGERS:
            raise InvalidScenarioError(f"Una acción requiere entre 1 y {MAX_FINGERS} dedos, recibidos {len(self.paths)}")
        for finger, path in enumerate(self.paths):
            if not path:
                raise InvalidScenarioError(f"Recorrido vacío para el dedo {finger}")
            for previous, current in zip(path, path[1:]):
                if current[0] <= previous[0]:
                    raise InvalidScenarioError(
                        f"Frames no crecientes en el dedo {finger}: {previous[0]} -> {current[0]}"
                    )

    @property
    def fingers(self) -> int:
        return len(self.paths)

    @property
    def start_frame(self) -> int:
        return min(path[0][0] for path in self.paths)

    @property
    def end_frame(self) -> int:
        return max(path[-1][0] for path in self.paths)

    def symbol(self, extended: bool = False) -> str:
        if extended and self.fingers > 1:
            return f"{self.kind.symbol}{self.fingers}"
        return self.kind.symbol


@dataclass(frozen=True)
class GroundTruthScenario:
    """
    Escenario de referencia.

    Invariantes:
    - acciones ordenadas por frame inicial
    - Tap/LongTap se mantienen dentro del touch slop de su primer punto
    - todos los puntos caen dentro de la pantalla
    """
    profile: DeviceProfile
    actions: Tuple[GroundTruthAction, ...] = ()
    frame_count: Optional[int] = None

    def __post_init__(self):
        previous_start = -1
        for index, action in enumerate(self.actions):
            if action.start_frame < previous_start:
                raise InvalidScenarioError(f"Acción {index} fuera de orden (frame {action.start_frame})")
            previous_start = action.start_frame
            self._check_action(index, action)
        if self.frame_count is not None and self.frame_count < 0:
            raise InvalidScenarioError(f"frame_count negativo: {self.frame_count}")

    def _check_action(self, index: int, action: GroundTruthAction) -> None:
        slop = self.profile.touch_slop
        for path in action.paths:
            _, x0, y0 = path[0]
            for frame, x, y in path:
                if not self.profile.contains(x, y):
                    raise InvalidScenarioError(f"Acción {index}: punto ({x}, {y}) fuera de pantalla en frame {frame}")
                if action.kind is not ActionKind.GESTURE and ((x - x0) ** 2 + (y - y0) ** 2) ** 0.5 > slop:
                    raise InvalidScenarioError(
                        f"Acción {index} ({action.kind.value}) se aleja más de {slop}px de su primer punto"
                    )

    def __len__(self) -> int:
        return len(self.actions)

    def to_sequence(self, extended: bool = False) -> ActionTypeSequence:
        """Secuencia de tipos de acción del escenario, en orden"""
        return ActionTypeSequence(tuple(a.symbol(extended) for a in self.actions))


# ==========================================
# CODEC JSON DE FIXTURES
# ==========================================

class ActionRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ActionKind
    fingers: Optional[int] = Field(None, ge=1, le=MAX_FINGERS)
    paths: List[List[Tuple[int, float, float]]] = Field(..., min_length=1, max_length=MAX_FINGERS)

    @model_validator(mode="after")
    def _fingers_match_paths(self) -> "ActionRecord":
        if self.fingers is not None and self.fingers != len(self.paths):
            raise ValueError(f"fingers={self.fingers} no coincide con {len(self.paths)} recorridos")
        return self


class ScenarioDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    device: DeviceSection
    frame_count: Optional[int] = Field(None, ge=0)
    actions: List[ActionRecord] = Field(default_factory=list)


def parse_scenario(raw: Union[bytes, str]) -> GroundTruthScenario:
    """
    Parsea un fixture de escenario.

    Raises:
        InvalidScenarioError: Si el JSON es inválido o viola el esquema o los invariantes
    """
    try:
        data = decode_json(raw)
    except MalformedJsonError as e:
        raise InvalidScenarioError(str(e)) from e
    try:
        document = ScenarioDocument.model_validate(data)
    except ValidationError as e:
        raise InvalidScenarioError(f"Fixture de escenario inválido: {describe_validation_error(e)}") from e

    actions = tuple(
        GroundTruthAction(
            kind=record.kind,
            paths=tuple(tuple((int(f), float(x), float(y)) for f, x, y in path) for path in record.paths),
        )
        for record in document.actions
    )
    return GroundTruthScenario(
        profile=document.device.to_profile(), actions=actions, frame_count=document.frame_count
    )


def scenario_to_dict(scenario: GroundTruthScenario) -> Dict[str, Any]:
    document: Dict[str, Any] = {"device": device_to_dict(scenario.profile)}
    if scenario.frame_count is not None:
        document["frame_count"] = scenario.frame_count
    document["actions"] = [
        {
            "kind": action.kind.value,
            "fingers": action.fingers,
            "paths": [[[f, x, y] for f, x, y in path] for path in action.paths],
        }
        for action in scenario.actions
    ]
    return document


def load_scenario(path: Union[str, Path]) -> GroundTruthScenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ScenarioError(f"No se pudo leer el escenario {path}: {e}") from e
    return parse_scenario(raw)


def dump_scenario(scenario: GroundTruthScenario, path: Union[str, Path]) -> Path:
    """Escribe un fixture de escenario (inverso de load_scenario)"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(scenario_to_dict(scenario), ensure_ascii=False, indent=2), encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"No se pudo escribir el escenario {path}: {e}") from e
    return path
