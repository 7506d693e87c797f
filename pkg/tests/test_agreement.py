import itertools
import random
from collections import defaultdict

import pytest

from srcsent.corpus.models import AnnotationRecord
from srcsent.metrics.agreement import (
    krippendorff_alpha,
    reconstructability_matrix,
    sentence_label_matrix,
)


def coincidence_oracle(units):
    """Textbook construction: build the coincidence matrix explicitly, then
    alpha = 1 - D_o / D_e with D_o, D_e read off the matrix."""
    o = defaultdict(float)
    for row in units:
        values = [v for v in row if v is not None]
        m = len(values)
        if m < 2:
            continue
        for a, b in itertools.permutations(range(m), 2):
            o[(values[a], values[b])] += 1.0 / (m - 1)
    labels = sorted({c for pair in o for c in pair}, key=repr)
    n_c = {c: sum(o[(c, k)] for k in labels) for c in labels}
    n = sum(n_c.values())
    d_o = sum(o[(c, k)] for c in labels for k in labels if c != k) / n
    d_e = sum(n_c[c] * n_c[k] for c in labels for k in labels if c != k) / (n * (n - 1))
    if d_e == 0:
        return 1.0
    return 1 - d_o / d_e


def test_unanimous_agreement_is_one():
    units = [[1, 1, 1], [0, 0, 0], [1, 1, 1], [0, 0, 0]]
    assert krippendorff_alpha(units) == pytest.approx(1.0)


def test_six_unit_total_disagreement_fixture():
    # two annotators disagreeing everywhere with balanced marginals:
    # o(0,1) = o(1,0) = 6, n_0 = n_1 = 6, alpha = -5/6 (hand-computed)
    units = [[1, 0], [0, 1], [1, 0], [0, 1], [1, 0], [0, 1]]
    assert krippendorff_alpha(units) == pytest.approx(-5 / 6, abs=1e-9)
    assert krippendorff_alpha(units) == pytest.approx(coincidence_oracle(units), abs=1e-12)


def test_single_annotator_rejected():
    with pytest.raises(ValueError, match="pairable"):
        krippendorff_alpha([[1], [0], [1]])


def test_missing_entries_excluded():
    units = [[1, 1, None], [0, None, 0], [None, 1, 1], [0, 0, None]]
    assert krippendorff_alpha(units) == pytest.approx(1.0)


def test_matches_coincidence_oracle_on_random_matrices():
    rng = random.Random(13)
    for _ in range(50):
        n_units = rng.randint(2, 12)
        n_annotators = rng.randint(2, 4)
        units = []
        for _ in range(n_units):
            row = [rng.choice([0, 1, None]) for _ in range(n_annotators)]
            units.append(row)
        if not any(sum(v is not None for v in row) >= 2 for row in units):
            units[0] = [0, 1] + [None] * (n_annotators - 2)
        got = krippendorff_alpha(units)
        assert got == pytest.approx(coincidence_oracle(units), abs=1e-12)
        assert got <= 1.0 + 1e-12


def test_invariant_to_relabeling_and_annotator_permutation():
    rng = random.Random(29)
    for _ in range(20):
        units = [[rng.choice([0, 1, None]) for _ in range(3)] for _ in range(8)]
        units[0] = [0, 1, 1]
        base = krippendorff_alpha(units)
        flipped = [[None if v is None else 1 - v for v in row] for row in units]
        assert krippendorff_alpha(flipped) == pytest.approx(base, abs=1e-12)
        perm = [2, 0, 1]
        permuted = [[row[p] for p in perm] for row in units]
        assert krippendorff_alpha(permuted) == pytest.approx(base, abs=1e-12)


def test_degenerate_single_label_everywhere():
    assert krippendorff_alpha([[1, 1], [1, 1]]) == 1.0


def test_matrix_builders():
    records = [
        AnnotationRecord("p1", "a", (1, 0), "yes"),
        AnnotationRecord("p1", "b", (1, 1), "no"),
        AnnotationRecord("p2", "a", (0,), "partly"),
    ]
    labels = sentence_label_matrix(records)
    # units sorted by (pair, index): (p1,0), (p1,1), (p2,0); annotators a,b
    assert labels == [[1, 1], [0, 1], [0, None]]
    verdicts = reconstructability_matrix(records)
    assert verdicts == [["yes", "no"], ["partly", None]]


def test_alpha_over_annotation_records(annotations):
    alpha = krippendorff_alpha(sentence_label_matrix(annotations))
    assert -1.0 <= alpha <= 1.0
