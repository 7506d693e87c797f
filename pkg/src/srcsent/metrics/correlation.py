"""How similarly do different detection methods score sentences?

Pearson correlation between the score vectors of each method pair, either
pooled over every sentence of every pair (one long vector per method) or as
the mean of per-pair correlations.
"""

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from ..scorers.vector import ScoreVector

CORRELATION_MODES = ("pooled", "per_pair_mean")


@dataclass(frozen=True)
class CorrelationMatrix:
    methods: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def value(self, a: str, b: str) -> float:
        return self.values[self.methods.index(a)][self.methods.index(b)]

    def to_record(self) -> dict:
        return {"methods": list(self.methods), "values": [list(row) for row in self.values]}


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xd = x - x.mean()
    yd = y - y.mean()
    denom = np.sqrt((xd**2).sum() * (yd**2).sum())
    if denom == 0:
        raise ValueError("constant vector")
    return float((xd * yd).sum() / denom)


def correlation_matrix(
    method_scores: Mapping[str, Mapping[str, ScoreVector]],
    mode: str = "pooled",
) -> CorrelationMatrix:
    """Pairwise Pearson matrix over methods scoring the same (pair, sentence) keys.

    ``method_scores`` maps method name -> pair_id -> ScoreVector. All methods
    must cover identical pairs with identical lengths. In pooled mode a
    globally constant method is an error; in per_pair_mean mode pairs where
    either vector is constant are skipped for that method pair.
    """
    if mode not in CORRELATION_MODES:
        raise ValueError(f"unknown mode {mode!r} (expected one of {CORRELATION_MODES})")
    methods = tuple(sorted(method_scores.keys()))
    if len(methods) < 2:
        raise ValueError("need at least two methods to correlate")

    pair_ids = sorted(method_scores[methods[0]].keys())
    for name in methods[1:]:
        if sorted(method_scores[name].keys()) != pair_ids:
            raise ValueError(f"method {name!r} covers different pairs than {methods[0]!r}")
    for pid in pair_ids:
        lengths = {len(method_scores[name][pid].scores) for name in methods}
        if len(lengths) != 1:
            raise ValueError(f"methods disagree on sentence count for pair {pid!r}")

    per_pair = {
        name: [np.asarray(method_scores[name][pid].scores, dtype=float) for pid in pair_ids] for name in methods
    }
    pooled = {name: np.concatenate(vecs) for name, vecs in per_pair.items()}

    k = len(methods)
    matrix = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            if mode == "pooled":
                try:
                    r = _pearson(pooled[methods[i]], pooled[methods[j]])
                except ValueError:
                    raise ValueError(
                        f"pooled scores are constant for {methods[i]!r} or {methods[j]!r};"
                        " correlation is undefined"
                    ) from None
            else:
                values = []
                for a, b in zip(per_pair[methods[i]], per_pair[methods[j]]):
                    if len(a) < 2 or a.std() == 0 or b.std() == 0:
                        continue
                    values.append(_pearson(a, b))
                if not values:
                    raise ValueError(
                        f"no pair yields a defined correlation for {methods[i]!r} vs {methods[j]!r}"
                    )
                r = float(np.mean(values))
            matrix[i, j] = matrix[j, i] = r

    return CorrelationMatrix(
        methods=methods,
        values=tuple(tuple(float(v) for v in row) for row in matrix),
    )
