import itertools
import random

import pytest

from srcsent.corpus.models import make_pair
from srcsent.scorers.rouge import ROUGE_VARIANTS, RougeConfig, rouge, score_rouge, sentence_rouge


def test_identical_lists_score_one():
    tokens = ["the", "cat", "sat", "on", "the", "mat"]
    for variant in ROUGE_VARIANTS:
        assert rouge(tokens, tokens, variant).f1 == pytest.approx(1.0)


def test_hand_enumerated_unigram_overlap():
    # overlap {the, cat} = 2 of 3 tokens on both sides
    score = rouge(["the", "cat", "sat"], ["the", "cat", "ran"], "r1")
    assert score.precision == pytest.approx(2 / 3)
    assert score.recall == pytest.approx(2 / 3)
    assert score.f1 == pytest.approx(2 / 3)


def test_disjoint_vocabulary_scores_zero():
    for variant in ROUGE_VARIANTS:
        assert rouge(["a", "b"], ["c", "d"], variant).f1 == 0.0


def test_clipped_counts():
    # candidate repeats "the" three times; reference has it twice -> clip at 2
    score = rouge(["the", "the", "the"], ["the", "the", "cat"], "r1")
    assert score.precision == pytest.approx(2 / 3)
    assert score.recall == pytest.approx(2 / 3)


def test_lcs_variant():
    # LCS of [a b c d] and [a c b d] is length 3 (a b d or a c d)
    score = rouge(["a", "b", "c", "d"], ["a", "c", "b", "d"], "rl")
    assert score.precision == pytest.approx(3 / 4)
    assert score.recall == pytest.approx(3 / 4)


def test_empty_inputs_rejected():
    with pytest.raises(ValueError, match="candidate"):
        rouge([], ["a"], "r1")
    with pytest.raises(ValueError, match="reference"):
        rouge(["a"], [], "r1")


def test_f1_symmetric_under_swap():
    rng = random.Random(5)
    vocab = ["w%d" % i for i in range(12)]
    for _ in range(100):
        cand = rng.choices(vocab, k=rng.randint(1, 10))
        ref = rng.choices(vocab, k=rng.randint(1, 10))
        for variant in ("r1", "r2"):
            fwd = rouge(cand, ref, variant)
            rev = rouge(ref, cand, variant)
            assert fwd.f1 == pytest.approx(rev.f1)
            assert fwd.precision == pytest.approx(rev.recall)
            assert fwd.recall == pytest.approx(rev.precision)


def test_score_rouge_argmax_is_verbatim_sentence():
    summary = "the committee approved the budget"
    pair = make_pair(
        "p",
        "other",
        "reference",
        ["rain is expected tomorrow", summary, "the game ended in a draw"],
        summary,
    )
    for variant in ("r1", "r2", "rl", "mean"):
        vec = score_rouge(pair, RougeConfig(variant=variant))
        assert vec.ranking()[0] == 1


def test_score_rouge_equal_sentences_equal_scores():
    pair = make_pair("p", "other", "reference", ["same words here", "same words here"], "same words")
    vec = score_rouge(pair)
    assert vec.scores[0] == vec.scores[1]


def test_score_rouge_matches_compose_from_parts_oracle():
    pair = make_pair(
        "p",
        "other",
        "reference",
        [
            "the central bank raised interest rates",
            "households face higher mortgage payments",
            "the bank of england did the same last month",
            "analysts expect a pause in the spring",
        ],
        "the central bank raised rates and households face higher payments",
    )
    for variant in ("r1", "r2", "rl"):
        config = RougeConfig(variant=variant)
        vec = score_rouge(pair, config)
        for sent, got in zip(pair.sentences, vec.scores):
            expected = rouge(config.tokenizer(sent.text), config.tokenizer(pair.summary), variant).f1
            assert got == pytest.approx(expected)
    mean_vec = score_rouge(pair, RougeConfig(variant="mean"))
    for sent, got in zip(pair.sentences, mean_vec.scores):
        parts = [sentence_rouge(sent.text, pair.summary, RougeConfig(variant=v)) for v in ROUGE_VARIANTS]
        assert got == pytest.approx(sum(parts) / 3)


def test_lcs_against_brute_force_oracle():
    def brute_lcs(a, b):
        best = 0
        for r in range(len(a) + 1):
            for combo in itertools.combinations(range(len(a)), r):
                sub = [a[i] for i in combo]
                it = iter(b)
                if all(tok in it for tok in sub):
                    best = max(best, len(sub))
        return best

    rng = random.Random(9)
    vocab = ["x", "y", "z", "w"]
    for _ in range(40):
        a = rng.choices(vocab, k=rng.randint(1, 7))
        b = rng.choices(vocab, k=rng.randint(1, 7))
        score = rouge(a, b, "rl")
        assert score.precision == pytest.approx(brute_lcs(a, b) / len(a))


def test_unknown_variant_rejected():
    with pytest.raises(ValueError, match="variant"):
        rouge(["a"], ["a"], "r3")
    with pytest.raises(ValueError, match="aggregation"):
        RougeConfig(variant="r9")
