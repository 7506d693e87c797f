"""Summary-agnostic sentence centrality over a tf-idf cosine graph.

Sentences are vectorized with term frequency times inverse sentence
frequency (idf computed within the pair, each sentence treated as one
document). Pairwise cosines below the threshold are zeroed, rows are
normalized into a transition matrix, damped toward the uniform jump, and the
stationary distribution is found by power iteration. The resulting scores
are non-negative and sum to 1.
"""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..corpus.models import DocumentSummaryPair
from ..corpus.tokenization import Tokenizer, tokenize
from ..errors import ConvergenceError
from .vector import ScoreVector


@dataclass(frozen=True)
class LexRankConfig:
    threshold: float = 0.1
    damping: float = 0.85
    tol: float = 1e-6
    max_iter: int = 200
    tokenizer: Tokenizer = field(default=tokenize, repr=False)

    def __post_init__(self):
        if not 0 < self.damping < 1:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")

    def describe(self) -> dict[str, Any]:
        return {
            "threshold": self.threshold,
            "damping": self.damping,
            "tol": self.tol,
            "max_iter": self.max_iter,
        }


def tfidf_cosine_matrix(sentence_tokens: list[list[str]]) -> np.ndarray:
    """Symmetric modified-cosine similarity of sentences under within-pair idf."""
    n = len(sentence_tokens)
    vocab: dict[str, int] = {}
    for toks in sentence_tokens:
        for tok in toks:
            vocab.setdefault(tok, len(vocab))
    tf = np.zeros((n, len(vocab)))
    for i, toks in enumerate(sentence_tokens):
        for tok in toks:
            tf[i, vocab[tok]] += 1.0
    df = (tf > 0).sum(axis=0)
    idf = np.log(n / np.maximum(df, 1.0)) if len(vocab) else np.zeros(0)
    weighted = tf * idf
    norms = np.linalg.norm(weighted, axis=1)
    sim = weighted @ weighted.T
    denom = np.outer(norms, norms)
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(denom > 0, sim / np.where(denom > 0, denom, 1.0), 0.0)
    return sim


def damped_transition_matrix(similarity: np.ndarray, threshold: float, damping: float) -> np.ndarray:
    """Row-stochastic matrix: damped row-normalized thresholded similarities.

    Rows with no surviving edge fall back to the uniform jump.
    """
    n = similarity.shape[0]
    adj = np.where(similarity >= threshold, similarity, 0.0)
    row_sums = adj.sum(axis=1)
    uniform = np.full((n, n), 1.0 / n)
    normalized = np.where(row_sums[:, None] > 0, adj / np.where(row_sums[:, None] > 0, row_sums[:, None], 1.0), uniform)
    return damping * normalized + (1.0 - damping) * uniform


def stationary_distribution(transition: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Power-iterate v <- T'v from uniform until the L1 step falls below tol."""
    n = transition.shape[0]
    v = np.full(n, 1.0 / n)
    t_transpose = transition.T
    residual = math.inf
    for _ in range(max_iter):
        nxt = t_transpose @ v
        nxt /= nxt.sum()
        residual = float(np.abs(nxt - v).sum())
        v = nxt
        if residual < tol:
            return v
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", residual)


def lexrank(pair: DocumentSummaryPair, config: LexRankConfig = LexRankConfig()) -> ScoreVector:
    """Centrality score per input sentence; the summary is never read."""
    tokens = [config.tokenizer(s.text) for s in pair.sentences]
    if len(tokens) == 1:
        v = np.array([1.0])
    else:
        sim = tfidf_cosine_matrix(tokens)
        transition = damped_transition_matrix(sim, config.threshold, config.damping)
        v = stationary_distribution(transition, config.tol, config.max_iter)
    return ScoreVector(
        pair_id=pair.pair_id,
        method="lexrank",
        scores=tuple(float(x) for x in v),
        metadata=config.describe(),
    )
