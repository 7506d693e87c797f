"""Conditional log-probability backends.

Model-grounded scorers only ever ask one question: the per-token log
probabilities of a target string given a conditioning string. Three
interchangeable sources answer it:

  oracle        — a closed-form copy-biased language model, exact and fast,
                  for verification at desk scale
  dump_file     — pre-computed logprobs exported from a real model
  wire_endpoint — a JSON-over-HTTP service wrapping a live model

``max_concurrency`` is each backend's declared parallelism limit
(None = unbounded); callers must respect it.
"""

import hashlib
import json
import math
import os
import time
import urllib.error
import urllib.request
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Protocol

from ..corpus.io import _iter_json_lines, dumps_line
from ..corpus.models import DocumentSummaryPair
from ..errors import BackendError, CorpusError

FULL_DOCUMENT = -1
EMPTY_CONDITIONING = -2
SINGLE_SENTENCE = -3


class ConditionalBackend(Protocol):
    descriptor: str
    max_concurrency: int | None

    def logprobs(self, target: str, conditioning: str) -> list[float]:
        """One finite natural-log probability per target token."""
        ...


@dataclass(frozen=True)
class CopyBiasedLM:
    """Mixture of conditioning-copy and uniform-vocabulary distributions.

    p(token | conditioning) = lam * count(token) / len(conditioning)
                              + (1 - lam) / vocab_size

    With empty conditioning the copy term vanishes and the remaining mass is
    renormalized, i.e. the model is uniform over the vocabulary. Tokens are
    whitespace-separated symbols and must belong to the declared vocabulary.
    """

    lam: float
    vocabulary: frozenset[str]

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")
        if not self.vocabulary:
            raise ValueError("vocabulary must be non-empty")

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    def probability(self, token: str, conditioning_tokens: Sequence[str]) -> float:
        if token not in self.vocabulary:
            raise ValueError(f"token {token!r} not in the declared vocabulary")
        if not conditioning_tokens:
            return 1.0 / self.vocab_size
        copy = conditioning_tokens.count(token) / len(conditioning_tokens)
        return self.lam * copy + (1.0 - self.lam) / self.vocab_size


def oracle_logprobs(target: str, conditioning: str, model: CopyBiasedLM) -> list[float]:
    """Exact per-token logprobs under the closed form; errors on p = 0."""
    conditioning_tokens = conditioning.split()
    for tok in conditioning_tokens:
        if tok not in model.vocabulary:
            raise ValueError(f"conditioning token {tok!r} not in the declared vocabulary")
    out = []
    for tok in target.split():
        p = model.probability(tok, conditioning_tokens)
        if p <= 0.0:
            raise ValueError(
                f"token {tok!r} has zero probability (lam={model.lam} and token absent from conditioning)"
            )
        out.append(math.log(p))
    return out


@dataclass
class OracleBackend:
    """ConditionalBackend over a CopyBiasedLM. Pure; no concurrency limit."""

    model: CopyBiasedLM
    max_concurrency: int | None = None

    @property
    def descriptor(self) -> str:
        return f"oracle:lam={self.model.lam},V={self.model.vocab_size}"

    def logprobs(self, target: str, conditioning: str) -> list[float]:
        try:
            return oracle_logprobs(target, conditioning, self.model)
        except ValueError as exc:
            raise BackendError(str(exc)) from exc


# -- dump files ---------------------------------------------------------------
#
# One record per (pair, conditioning variant):
#   {"pair_id": ..., "removed_index": -1|-2|-3|0.., "sentence_index": int?,
#    "token_logprobs": [...]}
# removed_index >= 0 drops that sentence from the document; -1 is the full
# document, -2 empty conditioning, -3 conditioning on the single sentence
# named by "sentence_index".


@dataclass(frozen=True)
class LogprobRecord:
    pair_id: str
    removed_index: int
    token_logprobs: tuple[float, ...]
    sentence_index: int | None = None

    def key(self) -> tuple[str, int, int | None]:
        return (self.pair_id, self.removed_index, self.sentence_index)


def logprob_record_from_json(record: dict, *, path: str | None = None, line: int | None = None) -> LogprobRecord:
    try:
        removed = int(record["removed_index"])
        sentence_index = record.get("sentence_index")
        if removed == SINGLE_SENTENCE and sentence_index is None:
            raise ValueError("single-sentence record needs 'sentence_index'")
        return LogprobRecord(
            pair_id=record["pair_id"],
            removed_index=removed,
            token_logprobs=tuple(float(x) for x in record["token_logprobs"]),
            sentence_index=None if sentence_index is None else int(sentence_index),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad logprob record: {exc}", path=path, line=line) from exc


def load_logprob_records(path: str) -> list[LogprobRecord]:
    return [logprob_record_from_json(rec, path=path, line=ln) for ln, rec in _iter_json_lines(path)]


def write_logprob_records(records: Iterable[LogprobRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            obj = {
                "pair_id": rec.pair_id,
                "removed_index": rec.removed_index,
                "token_logprobs": list(rec.token_logprobs),
            }
            if rec.sentence_index is not None:
                obj["sentence_index"] = rec.sentence_index
            fh.write(dumps_line(obj))


def conditioning_text(pair: DocumentSummaryPair, removed_index: int, sentence_index: int | None = None) -> str:
    """The conditioning string a dump record stands for."""
    if removed_index == FULL_DOCUMENT:
        return pair.joined_document()
    if removed_index == EMPTY_CONDITIONING:
        return ""
    if removed_index == SINGLE_SENTENCE:
        if sentence_index is None or not 0 <= sentence_index < pair.n_sentences:
            raise ValueError(f"pair {pair.pair_id!r}: bad single-sentence index {sentence_index!r}")
        return pair.sentences[sentence_index].text
    if 0 <= removed_index < pair.n_sentences:
        return pair.document_without(removed_index)
    raise ValueError(f"pair {pair.pair_id!r}: bad removed_index {removed_index}")


class DumpBackend:
    """ConditionalBackend resolved from pre-computed records.

    Records are expanded against the corpus into an exact
    (target, conditioning) -> logprobs table; a query off the table is a
    BackendError (the dump does not cover it).
    """

    def __init__(self, pairs: Iterable[DocumentSummaryPair], records: Iterable[LogprobRecord], *, source: str = ""):
        self.max_concurrency: int | None = None
        self._source = source
        self._table: dict[tuple[str, str], list[float]] = {}
        by_id = {p.pair_id: p for p in pairs}
        for rec in records:
            pair = by_id.get(rec.pair_id)
            if pair is None:
                raise CorpusError(f"logprob record references unknown pair {rec.pair_id!r}", path=source or None)
            cond = conditioning_text(pair, rec.removed_index, rec.sentence_index)
            self._table[(pair.summary, cond)] = list(rec.token_logprobs)

    @classmethod
    def from_file(cls, pairs: Iterable[DocumentSummaryPair], path: str) -> "DumpBackend":
        return cls(pairs, load_logprob_records(path), source=path)

    @property
    def descriptor(self) -> str:
        return f"dump:{self._source}"

    def logprobs(self, target: str, conditioning: str) -> list[float]:
        try:
            return self._table[(target, conditioning)]
        except KeyError:
            raise BackendError(
                f"dump {self._source!r} has no logprobs for this (target, conditioning) combination"
            ) from None


# -- wire endpoint ------------------------------------------------------------


@dataclass
class WireBackend:
    """JSON-over-HTTP logprob endpoint with retries and an on-disk cache.

    Request body {"target", "conditioning"}, response {"token_logprobs"}.
    Responses are cached under ``cache_dir`` keyed by a content hash, so a
    repeated run never re-issues a request.
    """

    url: str
    timeout: float = 30.0
    retries: int = 3
    backoff: float = 1.0
    cache_dir: str | None = None
    max_concurrency: int | None = 4
    _sleep: Callable[[float], None] = field(default=time.sleep, repr=False)

    @property
    def descriptor(self) -> str:
        return f"wire:{self.url}"

    def _cache_path(self, target: str, conditioning: str) -> str | None:
        if self.cache_dir is None:
            return None
        digest = hashlib.sha256(json.dumps([self.url, target, conditioning]).encode("utf-8")).hexdigest()
        return os.path.join(self.cache_dir, f"logprobs-{digest}.json")

    def logprobs(self, target: str, conditioning: str) -> list[float]:
        cache_path = self._cache_path(target, conditioning)
        if cache_path is not None and os.path.exists(cache_path):
            with open(cache_path, encoding="utf-8") as fh:
                return json.load(fh)
        payload = json.dumps({"target": target, "conditioning": conditioning}).encode("utf-8")
        last: Exception | None = None
        for attempt in range(self.retries):
            if attempt:
                self._sleep(self.backoff * 2 ** (attempt - 1))
            request = urllib.request.Request(self.url, data=payload, headers={"Content-Type": "application/json"})
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                    body = json.loads(resp.read().decode("utf-8"))
                values = [float(x) for x in body["token_logprobs"]]
                if cache_path is not None:
                    os.makedirs(self.cache_dir, exist_ok=True)
                    tmp = cache_path + ".tmp"
                    with open(tmp, "w", encoding="utf-8") as fh:
                        json.dump(values, fh)
                    os.replace(tmp, cache_path)
                return values
            except (urllib.error.URLError, TimeoutError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
                last = exc
        raise BackendError(f"logprob endpoint {self.url} failed after {self.retries} attempts: {last}")
