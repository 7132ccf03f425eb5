"""
Módulos core de touch2replay

Contiene el modelo de datos y los codecs del sistema:
- models: perfil de dispositivo, detecciones y trazo
- trace_codec: JSON de detecciones <-> DetectionTrace
- actions: acciones atómicas, SFAs, MFAs y escenario clasificado
- scenario_codec: JSON del escenario clasificado
- ground_truth: escenarios de referencia y modelo de ruido
- action_sequence: secuencias de tipos de acción (T, L, G)
- script: eventos de entrada, script sendevent y su validación
- replay_driver: envío y ejecución de scripts en el dispositivo

Todos los módulos siguen el principio de Single Responsibility.
"""

from .models import (
    DEFAULT_TAP_MAX_FRAMES,
    DEFAULT_TOUCH_SLOP,
    MAX_FINGERS,
    MIN_FPS,
    BoundingBox,
    BoundsViolationError,
    DetectionTrace,
    DeviceProfile,
    InvalidProfileError,
    MalformedJsonError,
    Opacity,
    SchemaViolationError,
    TouchDetection,
    TraceError,
    frame_time_ms,
    frame_time_us,
)
from .trace_codec import TraceReadError, load_trace, parse_trace, save_trace, serialize_trace
from .action_sequence import ActionTypeSequence, MetricsError, SequenceFormatError
from .actions import (
    ActionKind,
    AtomicAction,
    ClassifiedScenario,
    MultiFingerAction,
    SingleFingerAction,
    TouchSequence,
)
from .scenario_codec import dump_classified, load_classified, parse_classified
from .ground_truth import (
    GroundTruthAction,
    GroundTruthScenario,
    InvalidScenarioError,
    NoiseModel,
    ScenarioError,
    dump_scenario,
    load_scenario,
    parse_scenario,
)
from .script import (
    CodegenError,
    InputEvent,
    OverlapConflictError,
    ScriptFormatError,
    ScriptIOError,
    ScriptValidationError,
    SendEventScript,
    SlotExhaustionError,
    validate_events,
    validate_script,
)
from .replay_driver import NonZeroExitError, ReplayConfig, ReplayDriver, ReplayError, ReplayReport, push_and_replay

__version__ = '1.0.0'
__all__ = [
    'DEFAULT_TAP_MAX_FRAMES', 'DEFAULT_TOUCH_SLOP', 'MAX_FINGERS', 'MIN_FPS',
    'BoundingBox', 'DetectionTrace', 'DeviceProfile', 'Opacity', 'TouchDetection',
    'TraceError', 'MalformedJsonError', 'SchemaViolationError', 'InvalidProfileError', 'BoundsViolationError',
    'frame_time_ms', 'frame_time_us',
    'TraceReadError', 'load_trace', 'parse_trace', 'save_trace', 'serialize_trace',
    'ActionTypeSequence', 'MetricsError', 'SequenceFormatError',
    'ActionKind', 'AtomicAction', 'ClassifiedScenario', 'MultiFingerAction', 'SingleFingerAction', 'TouchSequence',
    'dump_classified', 'load_classified', 'parse_classified',
    'GroundTruthAction', 'GroundTruthScenario', 'InvalidScenarioError', 'NoiseModel', 'ScenarioError',
    'dump_scenario', 'load_scenario', 'parse_scenario',
    'CodegenError', 'InputEvent', 'OverlapConflictError', 'ScriptFormatError', 'ScriptIOError',
    'ScriptValidationError', 'SendEventScript', 'SlotExhaustionError', 'validate_events', 'validate_script',
    'NonZeroExitError', 'ReplayConfig', 'ReplayDriver', 'ReplayError', 'ReplayReport', 'push_and_replay',
]
