"""Ranking evaluation, agreement, correlation and position statistics."""

from .agreement import krippendorff_alpha, reconstructability_matrix, sentence_label_matrix
from .correlation import CORRELATION_MODES, CorrelationMatrix, correlation_matrix
from .positions import PositionStats, histogram_tsv, intervals_between, position_stats
from .ranking import EvalReport, average_precision, evaluate, ndcg

__all__ = [
    "CORRELATION_MODES",
    "CorrelationMatrix",
    "EvalReport",
    "PositionStats",
    "average_precision",
    "correlation_matrix",
    "evaluate",
    "histogram_tsv",
    "intervals_between",
    "krippendorff_alpha",
    "ndcg",
    "position_stats",
    "reconstructability_matrix",
    "sentence_label_matrix",
]
