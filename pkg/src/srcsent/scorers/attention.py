"""Scoring from encoder-decoder cross-attention dumps.

The attention weights come out of the generating model as an
(layers, heads, target_tokens, source_tokens) tensor plus an alignment of
source token positions to sentence indices. The score of a sentence is the
head- and layer-averaged attention mass flowing from its tokens to all
summary tokens, normalized by both token counts.
"""

import base64
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ..corpus.io import _iter_json_lines, dumps_line
from ..corpus.models import DocumentSummaryPair
from ..errors import CorpusError
from .vector import ScoreVector

ROW_SUM_TOLERANCE = 1e-4


@dataclass
class AttentionDump:
    pair_id: str
    weights: np.ndarray  # (layers, heads, target_len, source_len), non-negative
    alignment: tuple[int, ...]  # source token position -> sentence index

    def __post_init__(self):
        if self.weights.ndim != 4:
            raise ValueError(f"dump {self.pair_id!r}: weights must be 4-d, got shape {self.weights.shape}")
        if np.any(self.weights < 0):
            raise ValueError(f"dump {self.pair_id!r}: negative attention weight")
        if len(self.alignment) != self.source_len:
            raise ValueError(
                f"dump {self.pair_id!r}: alignment covers {len(self.alignment)} positions,"
                f" weights have {self.source_len} source tokens"
            )

    @property
    def layers(self) -> int:
        return self.weights.shape[0]

    @property
    def heads(self) -> int:
        return self.weights.shape[1]

    @property
    def target_len(self) -> int:
        return self.weights.shape[2]

    @property
    def source_len(self) -> int:
        return self.weights.shape[3]

    def check_row_stochastic(self, tolerance: float = ROW_SUM_TOLERANCE) -> None:
        """Every (layer, head, target token) row must sum to 1 over source tokens."""
        sums = self.weights.sum(axis=3)
        worst = float(np.max(np.abs(sums - 1.0)))
        if worst > tolerance:
            raise ValueError(f"dump {self.pair_id!r}: attention rows deviate from 1 by {worst:.2e}")


def cross_attention_score(
    pair: DocumentSummaryPair,
    dump: AttentionDump,
    *,
    layer_subset: Iterable[int] | None = None,
) -> ScoreVector:
    """Mean cross-attention mass per sentence.

    scores[i] = (1 / (|s_i| * |Y|)) * sum over s_i's source tokens and all
    target tokens of the layer/head-averaged weight. ``layer_subset``
    restricts the average to the named layers (default: all).
    """
    if dump.pair_id != pair.pair_id:
        raise ValueError(f"dump is for pair {dump.pair_id!r}, not {pair.pair_id!r}")
    weights = dump.weights
    if layer_subset is not None:
        layer_ids = sorted(set(layer_subset))
        if not layer_ids:
            raise ValueError("layer_subset is empty")
        if layer_ids[0] < 0 or layer_ids[-1] >= dump.layers:
            raise ValueError(f"layer_subset {layer_ids} out of range for {dump.layers} layers")
        weights = weights[layer_ids]

    alignment = np.asarray(dump.alignment)
    if np.any(alignment < 0) or np.any(alignment >= pair.n_sentences):
        raise ValueError(f"dump {dump.pair_id!r}: alignment names a sentence index outside 0..{pair.n_sentences - 1}")

    mean_weights = weights.mean(axis=(0, 1))  # (target_len, source_len)
    target_len = mean_weights.shape[0]
    scores = []
    for i in range(pair.n_sentences):
        mask = alignment == i
        token_count = int(mask.sum())
        if token_count == 0:
            raise ValueError(f"dump {dump.pair_id!r}: no source tokens aligned to sentence {i}")
        mass = float(mean_weights[:, mask].sum())
        scores.append(mass / (token_count * target_len))
    return ScoreVector(
        pair_id=pair.pair_id,
        method="cross_attention",
        scores=tuple(scores),
        metadata={"layers": int(weights.shape[0]), "heads": dump.heads},
    )


# -- dump file format ---------------------------------------------------------
#
# One record per pair: shape header (layers, heads, target_len, source_len),
# the weight tensor flattened row-major (numeric array or base64 of
# little-endian float32), and the alignment array.


def attention_dump_to_record(dump: AttentionDump, *, base64_weights: bool = False) -> dict:
    flat = np.asarray(dump.weights, dtype=float).reshape(-1)
    payload: object
    if base64_weights:
        payload = base64.b64encode(flat.astype("<f4").tobytes()).decode("ascii")
    else:
        payload = flat.tolist()
    return {
        "pair_id": dump.pair_id,
        "layers": dump.layers,
        "heads": dump.heads,
        "target_len": dump.target_len,
        "source_len": dump.source_len,
        "weights": payload,
        "alignment": list(dump.alignment),
    }


def attention_dump_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> AttentionDump:
    try:
        shape = tuple(int(record[k]) for k in ("layers", "heads", "target_len", "source_len"))
        raw = record["weights"]
        if isinstance(raw, str):
            flat = np.frombuffer(base64.b64decode(raw), dtype="<f4").astype(float)
        else:
            flat = np.asarray(raw, dtype=float)
        expected = int(np.prod(shape))
        if flat.size != expected:
            raise ValueError(f"weights have {flat.size} values, shape header implies {expected}")
        return AttentionDump(
            pair_id=record["pair_id"],
            weights=flat.reshape(shape),
            alignment=tuple(int(x) for x in record["alignment"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad attention dump record: {exc}", path=path, line=line) from exc


def load_attention_dumps(path: str) -> dict[str, AttentionDump]:
    dumps: dict[str, AttentionDump] = {}
    for lineno, record in _iter_json_lines(path):
        dump = attention_dump_from_record(record, path=path, line=lineno)
        if dump.pair_id in dumps:
            raise CorpusError(f"duplicate attention dump for pair {dump.pair_id!r}", path=path, line=lineno)
        dumps[dump.pair_id] = dump
    return dumps


def write_attention_dumps(dumps: Iterable[AttentionDump], path: str, *, base64_weights: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for dump in dumps:
            fh.write(dumps_line(attention_dump_to_record(dump, base64_weights=base64_weights)))
