"""Perplexity-gain and pointwise-mutual-information scorers.

Both interrogate a conditional language model through the backend contract.
Perplexity gain measures how much *more perplexed* the model becomes about
the summary once a sentence is deleted from the document: sentences whose
removal hurts the most carry the summary's source information. PMI instead
compares conditioning on one sentence alone against no conditioning at all.
"""

import math
from collections.abc import MutableMapping
from concurrent.futures import ThreadPoolExecutor
from typing import Hashable

from ..corpus.models import DocumentSummaryPair
from ..errors import BackendError
from .backends import ConditionalBackend
from .vector import ScoreVector


def perplexity(summary: str, conditioning: str, backend: ConditionalBackend) -> float:
    """exp(-mean per-token logprob) of ``summary`` given ``conditioning``."""
    logprobs = backend.logprobs(summary, conditioning)
    if not logprobs:
        raise ValueError("summary produced no tokens to score")
    for i, lp in enumerate(logprobs):
        if not math.isfinite(lp):
            raise BackendError(f"non-finite logprob at target token {i}")
    return math.exp(-sum(logprobs) / len(logprobs))


def perplexity_gain(
    pair: DocumentSummaryPair,
    backend: ConditionalBackend,
    cache: MutableMapping[Hashable, float] | None = None,
) -> ScoreVector:
    """Per-sentence increase in summary perplexity when that sentence is removed.

    Exactly N+1 backend perplexity evaluations happen per pair (the full
    document plus one per removal), memoized by (pair_id, removed index) in
    ``cache`` so a repeated call with the same cache does no backend work.
    Evaluations run in parallel up to the backend's declared concurrency.
    """
    if pair.n_sentences < 2:
        raise ValueError(
            f"pair {pair.pair_id!r} has a single sentence; removing it would leave empty conditioning"
        )
    if cache is None:
        cache = {}

    def conditioning_for(removed: int) -> str:
        return pair.joined_document() if removed == -1 else pair.document_without(removed)

    def evaluate(removed: int) -> float:
        key = (pair.pair_id, removed)
        if key not in cache:
            cache[key] = perplexity(pair.summary, conditioning_for(removed), backend)
        return cache[key]

    jobs = [-1] + list(range(pair.n_sentences))
    limit = backend.max_concurrency
    if limit is not None and limit <= 1:
        values = {removed: evaluate(removed) for removed in jobs}
    else:
        workers = min(len(jobs), limit or 8)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = dict(zip(jobs, pool.map(evaluate, jobs)))

    base = values[-1]
    scores = tuple(values[i] - base for i in range(pair.n_sentences))
    return ScoreVector(
        pair_id=pair.pair_id,
        method="perplexity_gain",
        scores=scores,
        metadata={"backend": backend.descriptor, "base_perplexity": base},
    )


def pmi_score(pair: DocumentSummaryPair, backend: ConditionalBackend) -> ScoreVector:
    """Mean per-token log-likelihood lift of the summary from seeing one sentence.

    scores[i] = (sum_t logp(y_t | s_i) - sum_t logp(y_t | "")) / |Y|
    """
    baseline = backend.logprobs(pair.summary, "")
    if not baseline:
        raise ValueError("summary produced no tokens to score")
    n_tokens = len(baseline)
    base_total = _finite_sum(baseline, what="empty-conditioning")
    scores = []
    for sent in pair.sentences:
        conditioned = backend.logprobs(pair.summary, sent.text)
        if len(conditioned) != n_tokens:
            raise BackendError(
                f"pair {pair.pair_id!r}: backend returned {len(conditioned)} logprobs for"
                f" sentence {sent.index}, expected {n_tokens}"
            )
        scores.append((_finite_sum(conditioned, what=f"sentence {sent.index}") - base_total) / n_tokens)
    return ScoreVector(
        pair_id=pair.pair_id,
        method="pmi",
        scores=tuple(scores),
        metadata={"backend": backend.descriptor},
    )


def _finite_sum(logprobs: list[float], *, what: str) -> float:
    for i, lp in enumerate(logprobs):
        if not math.isfinite(lp):
            raise BackendError(f"non-finite logprob at token {i} ({what})")
    return sum(logprobs)
