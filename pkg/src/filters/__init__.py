"""
Módulo de filtros para detecciones y acciones.
Implementa patrón Strategy para filtrado modular y extensible.
"""

from .base_filter import ItemFilter, apply_filter
from .confidence_filter import DEFAULT_MIN_CONFIDENCE, ConfidenceFilter
from .opacity_filter import DEFAULT_MIN_HIGH_FRACTION, OpacityFilter
from .span_filter import DEFAULT_MAX_DISCARD_FRAMES, SpanFilter, frame_span
from .composite_filter import CompositeFilter

__version__ = '1.0.0'
__all__ = [
    'ItemFilter',
    'apply_filter',
    'ConfidenceFilter',
    'DEFAULT_MIN_CONFIDENCE',
    'OpacityFilter',
    'DEFAULT_MIN_HIGH_FRACTION',
    'SpanFilter',
    'DEFAULT_MAX_DISCARD_FRAMES',
    'frame_span',
    'CompositeFilter',
]
