"""Lexical overlap scoring: clipped n-gram ROUGE and LCS ROUGE.

ROUGE-1/2 count clipped n-gram matches (each reference n-gram can be
consumed at most as many times as it occurs); ROUGE-L uses the length of the
longest common subsequence. F1 is the harmonic mean of precision and recall
and defined as 0 when both are 0.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from ..corpus.models import DocumentSummaryPair
from ..corpus.tokenization import Tokenizer, ngram_counts, tokenize
from .vector import ScoreVector

ROUGE_VARIANTS = ("r1", "r2", "rl")
ROUGE_AGGREGATES = ROUGE_VARIANTS + ("mean",)


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def rouge(candidate: Sequence[str], reference: Sequence[str], variant: str = "r1") -> RougeScore:
    """Score ``candidate`` tokens against ``reference`` tokens.

    >>> rouge(["the", "cat", "sat"], ["the", "cat", "ran"]).f1
    0.6666666666666666
    """
    if not candidate:
        raise ValueError("candidate token list is empty")
    if not reference:
        raise ValueError("reference token list is empty")
    if variant == "r1":
        return _rouge_n(candidate, reference, 1)
    if variant == "r2":
        return _rouge_n(candidate, reference, 2)
    if variant == "rl":
        return _rouge_l(candidate, reference)
    raise ValueError(f"unknown ROUGE variant {variant!r} (expected one of {ROUGE_VARIANTS})")


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    cand = ngram_counts(candidate, n)
    ref = ngram_counts(reference, n)
    n_cand = sum(cand.values())
    n_ref = sum(ref.values())
    if n_cand == 0 or n_ref == 0:
        # too short for this order; by convention scores are zero, not an error
        return RougeScore(0.0, 0.0, 0.0)
    matches = sum(min(count, ref[gram]) for gram, count in cand.items() if gram in ref)
    precision = matches / n_cand
    recall = matches / n_ref
    return RougeScore(precision, recall, _f1(precision, recall))


def _rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    lcs = _lcs_length(candidate, reference)
    precision = lcs / len(candidate)
    recall = lcs / len(reference)
    return RougeScore(precision, recall, _f1(precision, recall))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    # single-row dynamic program, O(len(a) * len(b)) time, O(len(b)) space
    if len(a) < len(b):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for x in a:
        prev_diag = 0
        for j, y in enumerate(b, start=1):
            prev_row = row[j]
            if x == y:
                row[j] = prev_diag + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev_diag = prev_row
    return row[-1]


@dataclass(frozen=True)
class RougeConfig:
    """``variant`` is one of r1/r2/rl, or "mean" for the average of their F1s."""

    variant: str = "mean"
    tokenizer: Tokenizer = field(default=tokenize, repr=False)

    def __post_init__(self):
        if self.variant not in ROUGE_AGGREGATES:
            raise ValueError(f"unknown ROUGE aggregation {self.variant!r} (expected one of {ROUGE_AGGREGATES})")

    def describe(self) -> dict[str, Any]:
        return {"variant": self.variant}


def sentence_rouge(sentence: str, summary: str, config: RougeConfig = RougeConfig()) -> float:
    cand = config.tokenizer(sentence)
    ref = config.tokenizer(summary)
    if not ref:
        raise ValueError("summary yields no tokens")
    if not cand:
        # punctuation-only scraping artifacts ("| .") carry no content
        return 0.0
    if config.variant == "mean":
        return sum(rouge(cand, ref, v).f1 for v in ROUGE_VARIANTS) / len(ROUGE_VARIANTS)
    return rouge(cand, ref, config.variant).f1


def score_rouge(pair: DocumentSummaryPair, config: RougeConfig = RougeConfig()) -> ScoreVector:
    """Relevance of every input sentence to the summary by lexical overlap."""
    scores = tuple(sentence_rouge(s.text, pair.summary, config) for s in pair.sentences)
    return ScoreVector(
        pair_id=pair.pair_id,
        method="rouge",
        scores=scores,
        metadata=config.describe(),
    )
