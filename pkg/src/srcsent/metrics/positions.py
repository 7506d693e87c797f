"""Where do source sentences sit in their documents?

Positions are 1-based; the interval between adjacent source sentences is the
difference of their positions (sources at 1, 3 and 7 give intervals 2 and
4). Pairs with fewer than two sources contribute no intervals.
"""

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

from ..corpus.models import GoldLabels


@dataclass(frozen=True)
class PositionStats:
    positions: tuple[int, ...]  # pooled 1-based source positions
    intervals: tuple[int, ...]  # pooled adjacent-source gaps
    source_counts: tuple[int, ...]  # per-pair number of sources

    def position_histogram(self) -> list[tuple[int, int]]:
        return sorted(Counter(self.positions).items())

    def interval_histogram(self) -> list[tuple[int, int]]:
        return sorted(Counter(self.intervals).items())

    def count_histogram(self) -> list[tuple[int, int]]:
        return sorted(Counter(self.source_counts).items())


def intervals_between(positions: Iterable[int]) -> list[int]:
    ordered = sorted(positions)
    return [b - a for a, b in zip(ordered, ordered[1:])]


def position_stats(gold: Iterable[GoldLabels]) -> PositionStats:
    gold = list(gold)
    if not gold:
        raise ValueError("no gold labels given")
    positions: list[int] = []
    intervals: list[int] = []
    counts: list[int] = []
    for gl in gold:
        pos = gl.source_positions()
        positions.extend(pos)
        intervals.extend(intervals_between(pos))
        counts.append(len(pos))
    return PositionStats(
        positions=tuple(positions),
        intervals=tuple(intervals),
        source_counts=tuple(counts),
    )


def histogram_tsv(bins: list[tuple[int, int]], value_header: str) -> str:
    """Delimiter-separated bins for external plotting."""
    lines = [f"{value_header}\tcount"]
    lines.extend(f"{value}\t{count}" for value, count in bins)
    return "\n".join(lines) + "\n"
