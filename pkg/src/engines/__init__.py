"""
Engines - Motores especializados

Motores para funcionalidades específicas:
- segmenter: agrupación de frames y enlace de toques en secuencias por dedo
- action_classifier: Tap / LongTap / Gesture y agrupación SFA / MFA
- trace_synthesizer: trazos sintéticos a partir de escenarios de referencia
- scenario_generator: escenarios aleatorios reproducibles por semilla
"""

from .segmenter import FrameGroup, GestureSegmenter, filter_confidence, group_consecutive, segment_actions
from .action_classifier import (
    MULTI_TOUCH_FRACTION,
    ActionClassifier,
    classify_action,
    classify_finger_count,
    filter_actions,
    group_overlapping,
    identify_sfa_mfa,
)
from .trace_synthesizer import SynthesisResult, TraceSynthesizer, synthesize_trace
from .scenario_generator import ScenarioGenerator

__version__ = '1.0.0'
__all__ = [
    'FrameGroup',
    'GestureSegmenter',
    'filter_confidence',
    'group_consecutive',
    'segment_actions',
    'MULTI_TOUCH_FRACTION',
    'ActionClassifier',
    'classify_action',
    'classify_finger_count',
    'filter_actions',
    'group_overlapping',
    'identify_sfa_mfa',
    'SynthesisResult',
    'TraceSynthesizer',
    'synthesize_trace',
    'ScenarioGenerator',
]
