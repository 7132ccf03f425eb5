"""
Módulo de métricas y reportes de evaluación.
"""

from .metrics import (
    BatchMetrics,
    EmptyGroundTruthError,
    HumanJudgment,
    MetricsReport,
    PrecisionRecall,
    TypeScore,
    evaluate_batch,
    evaluate_pair,
    lcs_length,
    lcs_ratio,
    levenshtein,
    precision_recall,
)
from .sequences import format_sequences, parse_sequences, read_judgments, read_sequences, write_sequences
from .batch_reporter import BatchReporter

__version__ = '1.0.0'
__all__ = [
    'BatchMetrics',
    'EmptyGroundTruthError',
    'HumanJudgment',
    'MetricsReport',
    'PrecisionRecall',
    'TypeScore',
    'evaluate_batch',
    'evaluate_pair',
    'lcs_length',
    'lcs_ratio',
    'levenshtein',
    'precision_recall',
    'format_sequences',
    'parse_sequences',
    'read_judgments',
    'read_sequences',
    'write_sequences',
    'BatchReporter',
]
