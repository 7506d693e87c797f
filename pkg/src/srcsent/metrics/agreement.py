"""Chance-corrected inter-annotator agreement (nominal Krippendorff alpha).

alpha = 1 - D_o / D_e, where D_o is the observed disagreement read off the
coincidence matrix and D_e the disagreement expected from the label
marginals alone. Missing entries are simply left out; units carrying fewer
than two values are unpairable and contribute nothing.
"""

from collections import defaultdict
from collections.abc import Iterable, Sequence
from typing import Hashable

from ..corpus.models import AnnotationRecord


def krippendorff_alpha(units: Iterable[Sequence[Hashable | None]]) -> float:
    """Alpha over rows of per-unit annotator values; None marks a missing entry.

    1.0 is perfect agreement, 0.0 chance level, negative systematic
    disagreement. A corpus with a single label everywhere has zero observed
    and zero expected disagreement; that degenerate case returns 1.0.
    """
    coincidence: dict[tuple[Hashable, Hashable], float] = defaultdict(float)
    for row in units:
        values = [v for v in row if v is not None]
        m = len(values)
        if m < 2:
            continue
        weight = 1.0 / (m - 1)
        for i, a in enumerate(values):
            for j, b in enumerate(values):
                if i != j:
                    coincidence[(a, b)] += weight
    if not coincidence:
        raise ValueError("no unit carries two or more values; nothing is pairable")

    labels = sorted({a for a, _ in coincidence} | {b for _, b in coincidence}, key=repr)
    marginal = {c: sum(coincidence.get((c, k), 0.0) for k in labels) for c in labels}
    total = sum(marginal.values())
    observed = sum(v for (a, b), v in coincidence.items() if a != b)
    expected = sum(marginal[a] * marginal[b] for a in labels for b in labels if a != b) / (total - 1)
    if expected == 0.0:
        return 1.0
    return 1.0 - observed / expected


def sentence_label_matrix(records: Iterable[AnnotationRecord]) -> list[list[int | None]]:
    """(pair, sentence) units by annotator, from per-sentence binary labels."""
    records = list(records)
    annotators = sorted({r.annotator_id for r in records})
    col = {a: k for k, a in enumerate(annotators)}
    rows: dict[tuple[str, int], list[int | None]] = {}
    for rec in records:
        for i, label in enumerate(rec.sentence_labels):
            row = rows.setdefault((rec.pair_id, i), [None] * len(annotators))
            row[col[rec.annotator_id]] = label
    return [rows[key] for key in sorted(rows)]


def reconstructability_matrix(records: Iterable[AnnotationRecord]) -> list[list[str | None]]:
    """Pair units by annotator, from the reconstructability verdicts."""
    records = list(records)
    annotators = sorted({r.annotator_id for r in records})
    col = {a: k for k, a in enumerate(annotators)}
    rows: dict[str, list[str | None]] = {}
    for rec in records:
        row = rows.setdefault(rec.pair_id, [None] * len(annotators))
        row[col[rec.annotator_id]] = rec.reconstructability
    return [rows[key] for key in sorted(rows)]
