"""
Adaptadores de salida: escenario clasificado -> script sendevent -> archivos.
"""

from .sendevent_generator import (
    SendEventGenerator,
    assemble_script,
    device_coordinates,
    emit_mfa_events,
    emit_sfa_events,
)
from .script_codec import (
    RUNNABLE_MAGIC,
    parse_log,
    parse_runnable,
    read_runnable,
    serialize_script,
    translate_runnable,
    write_script_files,
)

__version__ = '1.0.0'
__all__ = [
    'SendEventGenerator',
    'assemble_script',
    'device_coordinates',
    'emit_mfa_events',
    'emit_sfa_events',
    'RUNNABLE_MAGIC',
    'parse_log',
    'parse_runnable',
    'read_runnable',
    'serialize_script',
    'translate_runnable',
    'write_script_files',
]
