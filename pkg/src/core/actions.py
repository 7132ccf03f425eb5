"""
Modelos de Acciones

Tipos producidos por la fase de clasificación de acciones:
- TouchSequence: toques contiguos de un solo dedo
- AtomicAction: secuencia clasificada (Tap / LongTap / Gesture)
- SingleFingerAction / MultiFingerAction: elementos del escenario (SFA / MFA)
- ClassifiedScenario: lista cronológica de SFAs y MFAs
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from .action_sequence import ActionTypeSequence
from .models import MAX_FINGERS, DeviceProfile, TouchDetection


class ActionKind(str, Enum):
    """Tipo de acción atómica"""
    TAP = "tap"
    LONG_TAP = "long_tap"
    GESTURE = "gesture"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def from_symbol(cls, symbol: str) -> "ActionKind":
        for kind, value in _SYMBOLS.items():
            if value == symbol:
                return kind
        raise ValueError(f"Símbolo de acción desconocido: {symbol!r}")


_SYMBOLS = {
    ActionKind.TAP: "T",
    ActionKind.LONG_TAP: "L",
    ActionKind.GESTURE: "G",
}

# Precedencia para el tipo de un MFA: basta un Gesture para que el grupo sea Gesture
_KIND_PRECEDENCE = (ActionKind.GESTURE, ActionKind.LONG_TAP, ActionKind.TAP)


def dominant_kind(kinds: List[ActionKind]) -> ActionKind:
    """Tipo representativo de un grupo de acciones"""
    for kind in _KIND_PRECEDENCE:
        if kind in kinds:
            return kind
    raise ValueError("Grupo de acciones vacío")


@dataclass(frozen=True)
class TouchSequence:
    """Toques contiguos de un dedo, un toque por frame"""
    touches: Tuple[TouchDetection, ...]

    def __post_init__(self):
        if not self.touches:
            raise ValueError("TouchSequence requiere al menos un toque")
        for previous, current in zip(self.touches, self.touches[1:]):
            if current.frame <= previous.frame:
                raise ValueError(
                    f"Frames no estrictamente crecientes en secuencia: {previous.frame} -> {current.frame}"
                )

    def __len__(self) -> int:
        return len(self.touches)

    @property
    def start_frame(self) -> int:
        return self.touches[0].frame

    @property
    def end_frame(self) -> int:
        return self.touches[-1].frame

    @property
    def span(self) -> int:
        """Frames cubiertos, inclusive"""
        return self.end_frame - self.start_frame + 1

    @property
    def high_touches(self) -> Tuple[TouchDetection, ...]:
        return tuple(t for t in self.touches if t.is_high)

    @property
    def high_fraction(self) -> float:
        return len(self.high_touches) / len(self.touches)

    @property
    def last_high_frame(self) -> Optional[int]:
        for touch in reversed(self.touches):
            if touch.is_high:
                return touch.frame
        return None

    @property
    def active_frames(self) -> int:
        """Frames desde el primer toque hasta el último toque High (sin cola de desvanecimiento)"""
        last_high = self.last_high_frame
        end = last_high if last_high is not None else self.end_frame
        return end - self.start_frame + 1

    @property
    def active_touches(self) -> Tuple[TouchDetection, ...]:
        """Toques hasta el último High inclusive"""
        last_high = self.last_high_frame
        if last_high is None:
            return self.touches
        return tuple(t for t in self.touches if t.frame <= last_high)


@dataclass(frozen=True)
class AtomicAction:
    """Secuencia de un dedo clasificada"""
    kind: ActionKind
    sequence: TouchSequence

    @property
    def start_frame(self) -> int:
        return self.sequence.start_frame

    @property
    def end_frame(self) -> int:
        return self.sequence.end_frame

    @property
    def first_center(self) -> Tuple[float, float]:
        return self.sequence.touches[0].center

    def sort_key(self) -> Tuple[int, int, float, float]:
        cx, cy = self.first_center
        return (self.start_frame, self.end_frame, cx, cy)


@dataclass(frozen=True)
class SingleFingerAction:
    """SFA: una acción atómica ejecutada con un dedo"""
    action: AtomicAction

    @property
    def actions(self) -> Tuple[AtomicAction, ...]:
        return (self.action,)

    @property
    def kind(self) -> ActionKind:
        return self.action.kind

    @property
    def finger_count(self) -> int:
        return 1

    @property
    def start_frame(self) -> int:
        return self.action.start_frame

    @property
    def end_frame(self) -> int:
        return self.action.end_frame

    def symbol(self, extended: bool = False) -> str:
        return self.action.kind.symbol

    def sort_key(self) -> Tuple[int, int, float, float]:
        return self.action.sort_key()


@dataclass(frozen=True)
class MultiFingerAction:
    """MFA: acciones que se solapan en frames, una por dedo"""
    actions: Tuple[AtomicAction, ...]
    finger_count: int

    def __post_init__(self):
        if not self.actions:
            raise ValueError("MultiFingerAction requiere al menos una acción")
        if not 1 <= self.finger_count <= MAX_FINGERS:
            raise ValueError(f"finger_count fuera de [1, {MAX_FINGERS}]: {self.finger_count}")

    @property
    def kind(self) -> ActionKind:
        return dominant_kind([a.kind for a in self.actions])

    @property
    def start_frame(self) -> int:
        return min(a.start_frame for a in self.actions)

    @property
    def end_frame(self) -> int:
        return max(a.end_frame for a in self.actions)

    def symbol(self, extended: bool = False) -> str:
        if extended:
            return f"{self.kind.symbol}{self.finger_count}"
        return self.kind.symbol

    def sort_key(self) -> Tuple[int, int, float, float]:
        return min(a.sort_key() for a in self.actions)


ScenarioItem = Union[SingleFingerAction, MultiFingerAction]


@dataclass(frozen=True)
class ClassifiedScenario:
    """Lista cronológica de SFAs y MFAs"""
    profile: DeviceProfile
    items: Tuple[ScenarioItem, ...]

    def __len__(self) -> int:
        return len(self.items)

    @property
    def sfas(self) -> List[SingleFingerAction]:
        return [i for i in self.items if isinstance(i, SingleFingerAction)]

    @property
    def mfas(self) -> List[MultiFingerAction]:
        return [i for i in self.items if isinstance(i, MultiFingerAction)]

    def all_actions(self) -> List[AtomicAction]:
        return [a for item in self.items for a in item.actions]

    def to_symbols(self, extended: bool = False) -> List[str]:
        """Proyecta el escenario a símbolos de tipo de acción (T, L, G; G2 con alfabeto extendido)"""
        return [item.symbol(extended) for item in self.items]

    def to_sequence(self, extended: bool = False) -> ActionTypeSequence:
        return ActionTypeSequence(tuple(self.to_symbols(extended)))
