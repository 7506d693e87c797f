"""Corpus data model, file formats, segmentation and statistics."""

from .io import (
    load_annotations,
    load_gold,
    load_pairs,
    pair_from_record,
    pair_to_record,
    write_annotations,
    write_gold,
    write_pairs,
)
from .labels import (
    aggregate_votes,
    filter_reconstructable,
    gold_for_corpus,
    group_by_pair,
    majority_verdict,
    pair_reconstructability,
    pair_reconstructability_table,
    reconstructability_table,
)
from .models import (
    AnnotationRecord,
    CorpusStats,
    DocumentSummaryPair,
    GoldLabels,
    Sentence,
    make_pair,
    validate_pair,
)
from .segmentation import DEFAULT_ABBREVIATIONS, DEFAULT_PROFILE, SegmenterProfile, segment
from .stats import corpus_stats, novel_ngram_rate
from .tokenization import Tokenizer, ngram_counts, ngrams, tokenize

__all__ = [
    "AnnotationRecord",
    "CorpusStats",
    "DEFAULT_ABBREVIATIONS",
    "DEFAULT_PROFILE",
    "DocumentSummaryPair",
    "GoldLabels",
    "SegmenterProfile",
    "Sentence",
    "Tokenizer",
    "aggregate_votes",
    "corpus_stats",
    "filter_reconstructable",
    "gold_for_corpus",
    "group_by_pair",
    "load_annotations",
    "load_gold",
    "load_pairs",
    "majority_verdict",
    "make_pair",
    "ngram_counts",
    "ngrams",
    "novel_ngram_rate",
    "pair_from_record",
    "pair_reconstructability",
    "pair_reconstructability_table",
    "pair_to_record",
    "reconstructability_table",
    "segment",
    "tokenize",
    "validate_pair",
    "write_annotations",
    "write_gold",
    "write_pairs",
]
