"""Embedding-grounded similarity scoring.

The toolkit never runs an encoder itself. Token and sentence vectors arrive
through :class:`EmbeddingBundle` dump files produced by whatever model the
user prefers; the scoring math here (greedy token matching with idf
weighting, and plain sentence-vector cosine) is model-agnostic.
"""

import base64
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..corpus.io import _iter_json_lines, dumps_line
from ..corpus.models import DocumentSummaryPair
from ..errors import CorpusError
from .vector import ScoreVector


@dataclass
class EmbeddingBundle:
    """All vectors needed to score one pair.

    Token-level lists are aligned 1:1 with the stated token strings; every
    vector in a bundle shares one dimension.
    """

    pair_id: str
    dim: int
    sentence_tokens: list[list[str]]
    sentence_token_vectors: list[np.ndarray]  # one (n_tokens, dim) array per sentence
    summary_tokens: list[str]
    summary_token_vectors: np.ndarray  # (n_tokens, dim)
    sentence_vectors: np.ndarray  # (n_sentences, dim)
    summary_vector: np.ndarray  # (dim,)
    idf: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"bundle {self.pair_id!r}: dimension must be >= 1")
        for i, (toks, vecs) in enumerate(zip(self.sentence_tokens, self.sentence_token_vectors)):
            if vecs.shape != (len(toks), self.dim):
                raise ValueError(
                    f"bundle {self.pair_id!r}: sentence {i} token vectors {vecs.shape}"
                    f" do not align with {len(toks)} tokens of dim {self.dim}"
                )
        if self.summary_token_vectors.shape != (len(self.summary_tokens), self.dim):
            raise ValueError(f"bundle {self.pair_id!r}: summary token vectors misaligned")
        if self.sentence_vectors.shape != (len(self.sentence_tokens), self.dim):
            raise ValueError(f"bundle {self.pair_id!r}: sentence vectors misaligned")
        if self.summary_vector.shape != (self.dim,):
            raise ValueError(f"bundle {self.pair_id!r}: summary vector has wrong dimension")

    def idf_weight(self, token: str) -> float:
        """Weight for one token; uniform (1.0) when no idf table was supplied."""
        if not self.idf:
            return 1.0
        return self.idf.get(token, 0.0)


def _cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"embedding dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    norms_a = np.linalg.norm(a, axis=1)
    norms_b = np.linalg.norm(b, axis=1)
    if np.any(norms_a == 0) or np.any(norms_b == 0):
        raise ValueError("zero-norm embedding vector")
    return (a @ b.T) / np.outer(norms_a, norms_b)


def bertscore_f1(
    candidate_vectors: np.ndarray,
    reference_vectors: np.ndarray,
    candidate_tokens: Sequence[str] | None = None,
    reference_tokens: Sequence[str] | None = None,
    idf: Mapping[str, float] | None = None,
) -> float:
    """Greedy-matching F1 between two token embedding lists.

    Recall is the idf-weighted mean, over reference tokens, of each token's
    best cosine against the candidate tokens; precision is the symmetric
    quantity over candidate tokens. Weights default to uniform when no idf
    table (or no token strings) are given.
    """
    cand = np.asarray(candidate_vectors, dtype=float)
    ref = np.asarray(reference_vectors, dtype=float)
    if cand.ndim != 2 or ref.ndim != 2 or cand.shape[0] == 0 or ref.shape[0] == 0:
        raise ValueError("candidate and reference must be non-empty 2-d embedding arrays")
    sim = _cosine_matrix(cand, ref)  # (n_cand, n_ref)

    def weights(tokens: Sequence[str] | None, count: int) -> np.ndarray:
        if idf is None or tokens is None:
            return np.ones(count)
        return np.array([idf.get(tok, 0.0) for tok in tokens], dtype=float)

    w_ref = weights(reference_tokens, ref.shape[0])
    w_cand = weights(candidate_tokens, cand.shape[0])
    if w_ref.sum() == 0 or w_cand.sum() == 0:
        raise ValueError("idf weights sum to zero")
    recall = float((sim.max(axis=0) * w_ref).sum() / w_ref.sum())
    precision = float((sim.max(axis=1) * w_cand).sum() / w_cand.sum())
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def score_bertscore(pair: DocumentSummaryPair, bundle: EmbeddingBundle) -> ScoreVector:
    """Greedy-matching F1 of each sentence's tokens against the summary tokens."""
    _check_coverage(pair, bundle)
    idf = bundle.idf or None
    scores = []
    for i in range(pair.n_sentences):
        scores.append(
            bertscore_f1(
                bundle.sentence_token_vectors[i],
                bundle.summary_token_vectors,
                candidate_tokens=bundle.sentence_tokens[i],
                reference_tokens=bundle.summary_tokens,
                idf=idf,
            )
        )
    return ScoreVector(pair_id=pair.pair_id, method="bertscore", scores=tuple(scores), metadata={"dim": bundle.dim})


def score_embedding_cosine(pair: DocumentSummaryPair, bundle: EmbeddingBundle) -> ScoreVector:
    """Cosine between each sentence vector and the summary vector."""
    _check_coverage(pair, bundle)
    summary = bundle.summary_vector.reshape(1, -1)
    scores = []
    for i in range(pair.n_sentences):
        vec = bundle.sentence_vectors[i]
        if np.linalg.norm(vec) == 0:
            raise ValueError(f"bundle {bundle.pair_id!r}: zero-norm sentence vector at index {i}")
        scores.append(float(_cosine_matrix(vec.reshape(1, -1), summary)[0, 0]))
    return ScoreVector(
        pair_id=pair.pair_id, method="embedding_cosine", scores=tuple(scores), metadata={"dim": bundle.dim}
    )


def _check_coverage(pair: DocumentSummaryPair, bundle: EmbeddingBundle) -> None:
    if bundle.pair_id != pair.pair_id:
        raise ValueError(f"bundle is for pair {bundle.pair_id!r}, not {pair.pair_id!r}")
    if len(bundle.sentence_tokens) != pair.n_sentences:
        raise ValueError(
            f"bundle {bundle.pair_id!r} covers {len(bundle.sentence_tokens)} sentences,"
            f" pair has {pair.n_sentences}"
        )


# -- dump file format --------------------------------------------------------
#
# One JSON object per line. Vectors are either nested numeric arrays or a
# base64 string of little-endian float32 values (row-major), with the
# explicit "dim" field fixing the row length.


def _encode_array(arr: np.ndarray, as_base64: bool) -> object:
    if as_base64:
        return base64.b64encode(np.asarray(arr, dtype="<f4").tobytes()).decode("ascii")
    return np.asarray(arr, dtype=float).tolist()


def _decode_array(value: object, rows: int, dim: int, *, what: str) -> np.ndarray:
    if isinstance(value, str):
        raw = np.frombuffer(base64.b64decode(value), dtype="<f4").astype(float)
        if raw.size != rows * dim:
            raise ValueError(f"{what}: base64 payload has {raw.size} floats, expected {rows * dim}")
        return raw.reshape(rows, dim)
    if rows == 0:
        return np.zeros((0, dim))
    arr = np.asarray(value, dtype=float)
    if arr.shape != (rows, dim):
        raise ValueError(f"{what}: array shape {arr.shape}, expected {(rows, dim)}")
    return arr


def bundle_to_record(bundle: EmbeddingBundle, *, base64_vectors: bool = False) -> dict:
    return {
        "pair_id": bundle.pair_id,
        "dim": bundle.dim,
        "sentence_tokens": bundle.sentence_tokens,
        "sentence_token_vectors": [_encode_array(v, base64_vectors) for v in bundle.sentence_token_vectors],
        "summary_tokens": bundle.summary_tokens,
        "summary_token_vectors": _encode_array(bundle.summary_token_vectors, base64_vectors),
        "sentence_vectors": _encode_array(bundle.sentence_vectors, base64_vectors),
        "summary_vector": _encode_array(bundle.summary_vector.reshape(1, -1), base64_vectors),
        "idf": bundle.idf,
    }


def bundle_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> EmbeddingBundle:
    try:
        dim = int(record["dim"])
        sentence_tokens = [list(toks) for toks in record["sentence_tokens"]]
        token_vecs = [
            _decode_array(raw, len(toks), dim, what=f"sentence {i} token vectors")
            for i, (toks, raw) in enumerate(zip(sentence_tokens, record["sentence_token_vectors"]))
        ]
        summary_tokens = list(record["summary_tokens"])
        return EmbeddingBundle(
            pair_id=record["pair_id"],
            dim=dim,
            sentence_tokens=sentence_tokens,
            sentence_token_vectors=token_vecs,
            summary_tokens=summary_tokens,
            summary_token_vectors=_decode_array(
                record["summary_token_vectors"], len(summary_tokens), dim, what="summary token vectors"
            ),
            sentence_vectors=_decode_array(
                record["sentence_vectors"], len(sentence_tokens), dim, what="sentence vectors"
            ),
            summary_vector=_decode_array(record["summary_vector"], 1, dim, what="summary vector").reshape(-1),
            idf={str(k): float(v) for k, v in record.get("idf", {}).items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad embedding bundle record: {exc}", path=path, line=line) from exc


def load_bundles(path: str) -> dict[str, EmbeddingBundle]:
    bundles: dict[str, EmbeddingBundle] = {}
    for lineno, record in _iter_json_lines(path):
        bundle = bundle_from_record(record, path=path, line=lineno)
        if bundle.pair_id in bundles:
            raise CorpusError(f"duplicate bundle for pair {bundle.pair_id!r}", path=path, line=lineno)
        bundles[bundle.pair_id] = bundle
    return bundles


def write_bundles(bundles: Iterable[EmbeddingBundle], path: str, *, base64_vectors: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for bundle in bundles:
            fh.write(dumps_line(bundle_to_record(bundle, base64_vectors=base64_vectors)))
