"""
Codec de Scripts

Dos representaciones de un SendEventScript:

1. Log legible (una línea por evento, terminada en LF):
       [0.033333] /dev/input/event2: 0003 0035 0000021c
   El log solo lleva eventos; el perfil del dispositivo lo aporta quien
   lo lee (el escenario clasificado o la configuración).

2. Formato ejecutable (el que consume el agente en el dispositivo):
       b"V2SR\\x01\\x00\\x00\\x00" + registros little-endian
       (delta_us: u32, type: u16, code: u16, value: i32)
   delta_us es la diferencia con el evento anterior (el primero, desde 0).
"""

import logging
import re
import struct
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..core.models import DeviceProfile
from ..core.script import DEFAULT_DEVICE_NODE, InputEvent, ScriptFormatError, ScriptIOError, SendEventScript

logger = logging.getLogger(__name__)

RUNNABLE_MAGIC = b"V2SR\x01\x00\x00\x00"
RUNNABLE_RECORD = struct.Struct("<IHHi")

LOG_SUFFIX = ".sendevent.log"
RUNNABLE_SUFFIX = ".v2sr"

_LOG_LINE = re.compile(
    r"^\[(\d+)\.(\d{6})\] (\S+): ([0-9a-f]{4}) ([0-9a-f]{4}) ([0-9a-f]{8})$"
)


def _to_signed32(value: int) -> int:
    return value - (1 << 32) if value >= (1 << 31) else value


# ==========================================
# LOG LEGIBLE
# ==========================================

def format_event(event: InputEvent, device_node: str) -> str:
    seconds, micros = divmod(event.timestamp_us, 1_000_000)
    return (
        f"[{seconds}.{micros:06d}] {device_node}: "
        f"{event.type:04x} {event.code:04x} {event.value & 0xFFFFFFFF:08x}"
    )


def serialize_script(script: SendEventScript) -> bytes:
    """Script -> bytes del log legible, una línea por evento"""
    return "".join(f"{format_event(e, script.device_node)}\n" for e in script.events).encode("utf-8")


def parse_log(
    raw: Union[bytes, str],
    profile: DeviceProfile,
    device_node: Optional[str] = None,
) -> SendEventScript:
    """
    Bytes del log legible -> script.

    Args:
        raw: Contenido del log
        profile: Perfil del dispositivo para el que se generó el script
        device_node: Nodo esperado (si None, el de la primera línea; un log vacío usa el nodo por defecto)

    Raises:
        ScriptFormatError: Si alguna línea no cumple la gramática o cambia de nodo
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ScriptFormatError(f"El log no es UTF-8 válido: {e}") from e

    lines = raw.split("\n")
    if lines[-1] == "":
        lines.pop()

    events: List[InputEvent] = []
    for number, line in enumerate(lines, start=1):
        match = _LOG_LINE.match(line)
        if match is None:
            raise ScriptFormatError(f"Línea {number} no cumple la gramática del log: {line!r}")
        seconds, micros, node, ev_type, code, value = match.groups()
        if device_node is None:
            device_node = node
        elif node != device_node:
            raise ScriptFormatError(f"Línea {number}: nodo {node} distinto de {device_node}")
        events.append(
            InputEvent(
                timestamp_us=int(seconds) * 1_000_000 + int(micros),
                type=int(ev_type, 16),
                code=int(code, 16),
                value=_to_signed32(int(value, 16)),
            )
        )

    return SendEventScript(
        device_node=device_node or DEFAULT_DEVICE_NODE,
        events=tuple(events),
        profile=profile,
    )


# ==========================================
# FORMATO EJECUTABLE
# ==========================================

def translate_runnable(script: SendEventScript) -> bytes:
    """
    Script -> formato ejecutable de registros con delta de tiempo.

    Raises:
        ScriptFormatError: Si un delta o una tripleta excede el tamaño del registro
    """
    chunks = [RUNNABLE_MAGIC]
    previous = 0
    for index, event in enumerate(script.events):
        try:
            chunks.append(RUNNABLE_RECORD.pack(event.timestamp_us - previous, event.type, event.code, event.value))
        except struct.error as e:
            raise ScriptFormatError(f"Evento {index} no cabe en un registro ejecutable: {e}") from e
        previous = event.timestamp_us
    return b"".join(chunks)


def parse_runnable(raw: bytes) -> Tuple[InputEvent, ...]:
    """
    Formato ejecutable -> eventos con timestamps absolutos.

    Raises:
        ScriptFormatError: Si el magic o el tamaño no son válidos
    """
    if not raw.startswith(RUNNABLE_MAGIC):
        raise ScriptFormatError("Magic del formato ejecutable inválido")
    body = raw[len(RUNNABLE_MAGIC):]
    if len(body) % RUNNABLE_RECORD.size:
        raise ScriptFormatError(
            f"Tamaño del cuerpo ({len(body)} bytes) no es múltiplo de {RUNNABLE_RECORD.size}"
        )

    events: List[InputEvent] = []
    timestamp = 0
    for delta, ev_type, code, value in RUNNABLE_RECORD.iter_unpack(body):
        timestamp += delta
        events.append(InputEvent(timestamp, ev_type, code, value))
    return tuple(events)


# ==========================================
# ARCHIVOS
# ==========================================

def write_script_files(script: SendEventScript, out_dir: Union[str, Path], stem: str) -> Tuple[Path, Path]:
    """
    Escribe <stem>.sendevent.log y <stem>.v2sr.

    Raises:
        ScriptIOError: Si falla la escritura
    """
    out_dir = Path(out_dir)
    log_path = out_dir / f"{stem}{LOG_SUFFIX}"
    runnable_path = out_dir / f"{stem}{RUNNABLE_SUFFIX}"
    log_bytes = serialize_script(script)
    runnable_bytes = translate_runnable(script)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        log_path.write_bytes(log_bytes)
        runnable_path.write_bytes(runnable_bytes)
    except OSError as e:
        raise ScriptIOError(f"No se pudieron escribir los scripts en {out_dir}: {e}") from e

    logger.debug(f"[ScriptCodec] Escritos {log_path.name} y {runnable_path.name}")
    return log_path, runnable_path


def read_runnable(path: Union[str, Path]) -> bytes:
    path = Path(path)
    try:
        return path.read_bytes()
    except OSError as e:
        raise ScriptIOError(f"No se pudo leer el script {path}: {e}") from e
