import numpy as np
import pytest

from srcsent.corpus.models import make_pair
from srcsent.errors import ConvergenceError
from srcsent.scorers.lexrank import (
    LexRankConfig,
    damped_transition_matrix,
    lexrank,
    stationary_distribution,
    tfidf_cosine_matrix,
)


def test_identical_sentences_score_uniformly():
    for n in (2, 3, 5, 8):
        pair = make_pair("p", "other", "reference", ["the same words here"] * n, "irrelevant summary")
        vec = lexrank(pair)
        assert vec.scores == pytest.approx([1.0 / n] * n)


def test_single_sentence():
    pair = make_pair("p", "other", "reference", ["only one sentence"], "summary")
    assert lexrank(pair).scores == (1.0,)


def test_scores_sum_to_one_and_nonnegative(corpus):
    for pair in corpus:
        vec = lexrank(pair)
        assert sum(vec.scores) == pytest.approx(1.0, abs=1e-6)
        assert all(s >= 0 for s in vec.scores)


def test_summary_is_never_read():
    sentences = ["the cat sat on the mat", "dogs bark at night", "birds fly south in winter"]
    a = lexrank(make_pair("p", "other", "reference", sentences, "cats and mats"))
    b = lexrank(make_pair("p", "other", "reference", sentences, "completely different summary text"))
    assert a.scores == b.scores


def test_three_sentence_fixture_matches_dense_eigensolution():
    # hand-built similarity matrix; the oracle solves the eigenproblem densely
    sim = np.array(
        [
            [1.0, 0.6, 0.0],
            [0.6, 1.0, 0.3],
            [0.0, 0.3, 1.0],
        ]
    )
    config = LexRankConfig()
    transition = damped_transition_matrix(sim, config.threshold, config.damping)
    got = stationary_distribution(transition, 1e-12, 10_000)

    eigvals, eigvecs = np.linalg.eig(transition.T)
    principal = np.argmin(np.abs(eigvals - 1.0))
    expected = np.real(eigvecs[:, principal])
    expected = expected / expected.sum()

    np.testing.assert_allclose(got, expected, atol=1e-6)


def test_stationarity_residual_on_real_pairs(corpus):
    config = LexRankConfig()
    for pair in corpus:
        tokens = [config.tokenizer(s.text) for s in pair.sentences]
        transition = damped_transition_matrix(tfidf_cosine_matrix(tokens), config.threshold, config.damping)
        v = np.array(lexrank(pair, config).scores)
        np.testing.assert_allclose(transition.T @ v, v, atol=1e-5)


def test_permutation_equivariance():
    sentences = [
        "the harbour board approved the expansion",
        "fishermen protested the harbour decision",
        "construction begins next year",
        "the terminal handles two million passengers",
    ]
    pair = make_pair("p", "other", "reference", sentences, "summary text")
    base = lexrank(pair).scores

    perm = [2, 0, 3, 1]
    permuted_pair = make_pair("p", "other", "reference", [sentences[i] for i in perm], "summary text")
    permuted = lexrank(permuted_pair).scores
    for new_pos, old_pos in enumerate(perm):
        assert permuted[new_pos] == pytest.approx(base[old_pos], abs=1e-9)


def test_non_convergence_carries_residual():
    transition = damped_transition_matrix(np.array([[1.0, 0.9], [0.9, 1.0]]), 0.1, 0.85)
    with pytest.raises(ConvergenceError) as err:
        stationary_distribution(transition, 0.0, 3)  # impossible tolerance
    assert err.value.residual >= 0.0


def test_config_validation():
    with pytest.raises(ValueError, match="damping"):
        LexRankConfig(damping=1.5)
    with pytest.raises(ValueError, match="max_iter"):
        LexRankConfig(max_iter=0)
