"""
Modelo del Script de Eventos de Entrada

- InputEvent: tripleta de entrada del kernel (type, code, value) con timestamp
- SendEventScript: eventos ordenados en el tiempo más metadatos del dispositivo
- validate_script: verificación de los invariantes del script

Vocabulario del protocolo multi-touch tipo B usado por el generador.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Set, Tuple

from .models import DeviceProfile

# Tipos de evento
EV_SYN = 0x0000
EV_KEY = 0x0001
EV_ABS = 0x0003

# Códigos
SYN_REPORT = 0x0000
BTN_TOUCH = 0x014A
ABS_MT_SLOT = 0x002F
ABS_MT_POSITION_X = 0x0035
ABS_MT_POSITION_Y = 0x0036
ABS_MT_TRACKING_ID = 0x0039

# ABS_MT_TRACKING_ID con este valor cierra el contacto del slot
TRACKING_ID_RELEASE = -1

# Nodo de entrada táctil por defecto
DEFAULT_DEVICE_NODE = "/dev/input/event2"


class CodegenError(Exception):
    """Excepción base para la generación de scripts"""
    pass


class SlotExhaustionError(CodegenError):
    """Más dedos simultáneos que slots disponibles"""
    pass


class OverlapConflictError(CodegenError):
    """Dos elementos del escenario se solapan en el tiempo"""
    pass


class ScriptFormatError(CodegenError):
    """Archivo de script (log o formato ejecutable) mal formado"""
    pass


class ScriptIOError(CodegenError):
    """Error de E/S al escribir o leer un script"""
    pass


class ScriptValidationError(CodegenError):
    """El script viola uno de sus invariantes"""
    pass


@dataclass(frozen=True)
class InputEvent:
    """Evento de entrada con timestamp en microsegundos desde el inicio del script"""
    timestamp_us: int
    type: int
    code: int
    value: int

    @property
    def is_sync(self) -> bool:
        return self.type == EV_SYN and self.code == SYN_REPORT

    def shifted(self, delta_us: int) -> "InputEvent":
        return InputEvent(self.timestamp_us + delta_us, self.type, self.code, self.value)


@dataclass(frozen=True)
class SendEventScript:
    """Script reproducible: nodo de entrada, eventos y perfil del dispositivo"""
    device_node: str
    events: Tuple[InputEvent, ...]
    profile: DeviceProfile

    def __len__(self) -> int:
        return len(self.events)

    @property
    def duration_us(self) -> int:
        return self.events[-1].timestamp_us if self.events else 0


def _check_time(events: Iterable[InputEvent]) -> None:
    previous = 0
    last_sync = -1
    for index, event in enumerate(events):
        if event.timestamp_us < previous:
            raise ScriptValidationError(
                f"Timestamp decreciente en evento {index}: {event.timestamp_us} < {previous}"
            )
        previous = event.timestamp_us
        if event.is_sync:
            if event.timestamp_us <= last_sync:
                raise ScriptValidationError(f"Ventanas SYN no estrictamente crecientes en evento {index}")
            last_sync = event.timestamp_us


def _check_contacts_and_bounds(events: Sequence[InputEvent], profile: Optional[DeviceProfile]) -> None:
    width = profile.screen_width if profile is not None else None
    height = profile.screen_height if profile is not None else None
    slot = 0
    open_slots: Dict[int, int] = {}
    seen_ids: Set[int] = set()

    for index, event in enumerate(events):
        if event.type != EV_ABS:
            continue
        if event.code == ABS_MT_SLOT:
            slot = event.value
        elif event.code == ABS_MT_TRACKING_ID:
            if event.value == TRACKING_ID_RELEASE:
                if slot not in open_slots:
                    raise ScriptValidationError(f"Cierre de contacto sin apertura en slot {slot} (evento {index})")
                del open_slots[slot]
            else:
                if slot in open_slots:
                    raise ScriptValidationError(f"Slot {slot} abierto dos veces (evento {index})")
                if event.value in seen_ids:
                    raise ScriptValidationError(f"Tracking id {event.value} reutilizado (evento {index})")
                seen_ids.add(event.value)
                open_slots[slot] = event.value
        elif event.code == ABS_MT_POSITION_X and width is not None and not 0 <= event.value < width:
            raise ScriptValidationError(f"X={event.value} fuera de [0, {width}) (evento {index})")
        elif event.code == ABS_MT_POSITION_Y and height is not None and not 0 <= event.value < height:
            raise ScriptValidationError(f"Y={event.value} fuera de [0, {height}) (evento {index})")

    if open_slots:
        raise ScriptValidationError(f"Contactos sin cerrar al final del script: slots {sorted(open_slots)}")


def validate_script(script: SendEventScript) -> None:
    """
    Verifica los invariantes del script.

    - timestamps no decrecientes; ventanas SYN estrictamente crecientes
    - cada tracking id se abre una vez y se cierra una vez
    - coordenadas dentro de la pantalla

    Raises:
        ScriptValidationError: Al primer invariante violado
    """
    validate_events(script.events, script.profile)


def validate_events(events: Sequence[InputEvent], profile: Optional[DeviceProfile] = None) -> None:
    """Como validate_script; sin perfil no se verifican los límites de pantalla"""
    _check_time(events)
    _check_contacts_and_bounds(events, profile)
