"""Ranking quality of score vectors against gold labels.

NDCG treats the annotator vote count of each sentence as its graded
relevance; MAP binarizes relevance at two agreeing annotators. Both depend
only on the induced ranking (descending score, earlier sentence wins ties),
never on score magnitudes.
"""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from ..corpus.models import GoldLabels
from ..scorers.vector import ScoreVector


def _gains(votes: Sequence[int], exponential: bool) -> list[float]:
    if exponential:
        return [float(2**v - 1) for v in votes]
    return [float(v) for v in votes]


def _dcg(gains: Sequence[float]) -> float:
    return sum(g / math.log2(rank + 2) for rank, g in enumerate(gains))


def ndcg(scores: ScoreVector, gold: GoldLabels, *, exponential_gain: bool = False) -> float:
    """Normalized discounted cumulative gain of the score-induced ranking.

    >>> from srcsent.scorers.vector import ScoreVector
    >>> from srcsent.corpus.models import GoldLabels
    >>> sv = ScoreVector("p", "m", (0.2, 0.9, 0.1))
    >>> gl = GoldLabels("p", (3, 1, 0), 3, (True, False, False))
    >>> round(ndcg(sv, gl), 4)
    0.7967
    """
    _check_alignment(scores, gold)
    if sum(gold.votes) == 0:
        raise ValueError(f"pair {gold.pair_id!r}: all votes are zero, ideal DCG is undefined")
    ranking = scores.ranking()
    ranked_gains = _gains([gold.votes[i] for i in ranking], exponential_gain)
    ideal_gains = sorted(_gains(gold.votes, exponential_gain), reverse=True)
    return _dcg(ranked_gains) / _dcg(ideal_gains)


def average_precision(scores: ScoreVector, gold: GoldLabels) -> float:
    """Mean over relevant ranks r of (relevant seen in top r) / r."""
    _check_alignment(scores, gold)
    if not any(gold.binary_sources):
        raise ValueError(f"pair {gold.pair_id!r}: no relevant sentence (fewer than two annotators agreed anywhere)")
    ranking = scores.ranking()
    hits = 0
    precisions = []
    for rank, idx in enumerate(ranking, start=1):
        if gold.binary_sources[idx]:
            hits += 1
            precisions.append(hits / rank)
    return sum(precisions) / len(precisions)


def _check_alignment(scores: ScoreVector, gold: GoldLabels) -> None:
    if scores.pair_id != gold.pair_id:
        raise ValueError(f"scores are for pair {scores.pair_id!r}, gold for {gold.pair_id!r}")
    if len(scores.scores) != len(gold.votes):
        raise ValueError(
            f"pair {gold.pair_id!r}: {len(scores.scores)} scores vs {len(gold.votes)} gold entries"
        )


@dataclass(frozen=True)
class EvalReport:
    """Macro-averaged ranking metrics for one method on one split."""

    method: str
    split: str
    ndcg: float
    map: float
    n_pairs: int
    map_skipped: int = 0

    def to_record(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "split": self.split,
            "ndcg": self.ndcg,
            "map": self.map,
            "n_pairs": self.n_pairs,
            "map_skipped": self.map_skipped,
        }


def evaluate(
    scores: Mapping[str, ScoreVector],
    gold: Mapping[str, GoldLabels],
    split: str = "all",
    *,
    method: str | None = None,
    exponential_gain: bool = False,
) -> EvalReport:
    """Macro-average ndcg and average precision over the pairs of a split.

    Pairs lacking any relevant sentence contribute to NDCG (votes still grade
    a ranking) but are skipped for MAP and counted in ``map_skipped``; pairs
    with no votes at all are skipped for both. The reduction order is fixed
    by sorting pair ids, so results are independent of mapping iteration
    order.
    """
    if not scores:
        raise ValueError("no score vectors to evaluate")
    pair_ids = sorted(scores.keys())
    for pid in pair_ids:
        if pid not in gold:
            raise ValueError(f"pair {pid!r} has scores but no gold labels")
    method = method or next(iter(scores.values())).method

    ndcg_values = []
    ap_values = []
    skipped = 0
    for pid in pair_ids:
        vec, gl = scores[pid], gold[pid]
        if sum(gl.votes) == 0:
            skipped += 1
            continue
        ndcg_values.append(ndcg(vec, gl, exponential_gain=exponential_gain))
        if any(gl.binary_sources):
            ap_values.append(average_precision(vec, gl))
        else:
            skipped += 1
    if not ndcg_values:
        raise ValueError("every pair in the split had zero votes; nothing to evaluate")
    return EvalReport(
        method=method,
        split=split,
        ndcg=sum(ndcg_values) / len(ndcg_values),
        map=sum(ap_values) / len(ap_values) if ap_values else 0.0,
        n_pairs=len(ndcg_values),
        map_skipped=skipped,
    )
