"""Per-sentence relevance score vectors and their dump files."""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from ..corpus.io import _iter_json_lines, dumps_line
from ..errors import CorpusError


@dataclass(frozen=True)
class ScoreVector:
    """One method's real-valued relevance score per input sentence of a pair."""

    pair_id: str
    method: str
    scores: tuple[float, ...]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.scores:
            raise ValueError(f"score vector for pair {self.pair_id!r} is empty")
        for i, value in enumerate(self.scores):
            if not math.isfinite(value):
                raise ValueError(f"pair {self.pair_id!r}, method {self.method!r}: score[{i}] is not finite")

    def ranking(self) -> list[int]:
        """Sentence indices from best to worst score, ties to the earlier sentence."""
        return sorted(range(len(self.scores)), key=lambda i: (-self.scores[i], i))


def score_vector_to_record(vec: ScoreVector) -> dict[str, Any]:
    return {
        "pair_id": vec.pair_id,
        "method": vec.method,
        "scores": list(vec.scores),
        "metadata": vec.metadata,
    }


def score_vector_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> ScoreVector:
    try:
        return ScoreVector(
            pair_id=record["pair_id"],
            method=record["method"],
            scores=tuple(float(s) for s in record["scores"]),
            metadata=record.get("metadata", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad score record: {exc}", path=path, line=line) from exc


def load_score_vectors(path: str) -> list[ScoreVector]:
    return [score_vector_from_record(rec, path=path, line=ln) for ln, rec in _iter_json_lines(path)]


def write_score_vectors(vectors: Iterable[ScoreVector], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for vec in vectors:
            fh.write(dumps_line(score_vector_to_record(vec)))


def by_pair(vectors: Sequence[ScoreVector]) -> dict[str, ScoreVector]:
    out: dict[str, ScoreVector] = {}
    for vec in vectors:
        if vec.pair_id in out:
            raise ValueError(f"duplicate score vector for pair {vec.pair_id!r}")
        out[vec.pair_id] = vec
    return out
