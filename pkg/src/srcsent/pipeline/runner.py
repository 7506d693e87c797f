"""Scoring runs: resolve backends, score every (pair, method), dump to disk.

Scores are cached under a content hash of (pair text, method name,
hyperparameters, backend descriptor). A re-run over unchanged inputs is
served entirely from the cache: zero backend calls, byte-identical dump
files.
"""

import hashlib
import json
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from ..corpus.io import load_pairs
from ..corpus.models import DocumentSummaryPair
from ..scorers.attention import load_attention_dumps
from ..scorers.backends import CopyBiasedLM, DumpBackend, OracleBackend, WireBackend
from ..scorers.embedding import load_bundles
from ..scorers.prompt import ConstantCompletionBackend, WireCompletionBackend
from ..scorers.vector import ScoreVector, write_score_vectors
from .config import MethodEntry, RunConfig
from .registry import Resources, get_method


class ScoreCache:
    """One JSON file per cached vector; the key is a content hash."""

    def __init__(self, directory: str | None):
        self.directory = directory
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    @staticmethod
    def key(pair: DocumentSummaryPair, method: str, params: dict, backend_descriptor: str | None) -> str:
        payload = json.dumps(
            {
                "sentences": [s.text for s in pair.sentences],
                "summary": pair.summary,
                "method": method,
                "params": params,
                "backend": backend_descriptor,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.json")

    def get(self, key: str, pair_id: str, method: str) -> ScoreVector | None:
        if self.directory is None:
            return None
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        return ScoreVector(
            pair_id=pair_id,
            method=method,
            scores=tuple(obj["scores"]),
            metadata=obj.get("metadata", {}),
        )

    def put(self, key: str, vec: ScoreVector) -> None:
        if self.directory is None:
            return
        # pair_id and method stay out of the cache value: the key is content-only
        obj = {"scores": list(vec.scores), "metadata": vec.metadata}
        tmp = self._path(key) + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, sort_keys=True, ensure_ascii=False)
        os.replace(tmp, self._path(key))


def build_resources(config: RunConfig, pairs: Sequence[DocumentSummaryPair]) -> Resources:
    """Instantiate backends and load side-files named by the config."""
    resources = Resources()
    spec = config.backends or {}

    completion = spec.get("completion")
    if completion:
        kind = completion.get("kind")
        if kind == "wire_endpoint":
            resources.completion = WireCompletionBackend(
                url=completion["url"],
                timeout=float(completion.get("timeout", 30.0)),
                retries=int(completion.get("retries", 3)),
            )
        elif kind == "constant":
            resources.completion = ConstantCompletionBackend(text=str(completion.get("text", "50")))
        else:
            raise ValueError(f"unknown completion backend kind {kind!r}")

    conditional = spec.get("conditional")
    if conditional:
        kind = conditional.get("kind")
        if kind == "oracle":
            vocabulary = conditional.get("vocabulary")
            if not vocabulary:
                # the oracle needs a vocabulary; default to every token in the corpus
                vocabulary = sorted({tok for p in pairs for tok in (p.joined_document() + " " + p.summary).split()})
            resources.conditional = OracleBackend(
                CopyBiasedLM(lam=float(conditional.get("lambda", 0.7)), vocabulary=frozenset(vocabulary))
            )
        elif kind == "dump_file":
            resources.conditional = DumpBackend.from_file(pairs, conditional["path"])
        elif kind == "wire_endpoint":
            resources.conditional = WireBackend(
                url=conditional["url"],
                timeout=float(conditional.get("timeout", 30.0)),
                retries=int(conditional.get("retries", 3)),
                cache_dir=conditional.get("cache_dir"),
                max_concurrency=conditional.get("max_concurrency", 4),
            )
        else:
            raise ValueError(f"unknown conditional backend kind {kind!r}")

    if spec.get("embeddings"):
        resources.bundles = load_bundles(spec["embeddings"])
    if spec.get("attention"):
        resources.attention = load_attention_dumps(spec["attention"])
    return resources


def check_method_resources(entries: Sequence[MethodEntry], resources: Resources) -> None:
    """Fail before any scoring when a method's backend is missing."""
    for entry in entries:
        spec = get_method(entry.name)
        if spec.requires is None:
            continue
        missing = {
            "completion": resources.completion is None,
            "conditional": resources.conditional is None,
            "embeddings": not resources.bundles,
            "attention": not resources.attention,
        }[spec.requires]
        if missing:
            raise ValueError(
                f"method {entry.name!r} needs a {spec.requires!r} backend, but the config provides none"
            )


def select_split(pairs: Sequence[DocumentSummaryPair], config: RunConfig) -> list[DocumentSummaryPair]:
    kept = list(pairs)
    if config.dataset is not None:
        kept = [p for p in kept if p.dataset == config.dataset]
    if config.summary_origin is not None:
        kept = [p for p in kept if p.summary_origin == config.summary_origin]
    return kept


def run_methods(
    config: RunConfig,
    *,
    pairs: Sequence[DocumentSummaryPair] | None = None,
    resources: Resources | None = None,
) -> dict[str, str]:
    """Score every configured method over the configured split.

    Returns method id -> dump file path. ``pairs`` and ``resources`` can be
    injected for testing; by default they come from the config.
    """
    if pairs is None:
        pairs = load_pairs(config.corpus)
    pairs = select_split(pairs, config)
    if not pairs:
        raise ValueError("split filter left no pairs to score")
    if resources is None:
        resources = build_resources(config, pairs)
    check_method_resources(config.methods, resources)

    cache = ScoreCache(config.cache_dir)
    os.makedirs(config.out_dir, exist_ok=True)
    dumps: dict[str, str] = {}
    for entry in config.methods:
        spec = get_method(entry.name)
        descriptor = resources.backend_descriptor(spec.requires)

        def score_one(pair: DocumentSummaryPair) -> ScoreVector:
            key = ScoreCache.key(pair, entry.name, entry.params, descriptor)
            hit = cache.get(key, pair.pair_id, entry.dump_id)
            if hit is not None:
                return hit
            vec = spec.run(pair, entry.params, resources)
            if entry.dump_id != vec.method:
                vec = ScoreVector(pair.pair_id, entry.dump_id, vec.scores, vec.metadata)
            cache.put(key, vec)
            return vec

        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                vectors = list(pool.map(score_one, pairs))
        else:
            vectors = [score_one(pair) for pair in pairs]

        path = os.path.join(config.out_dir, f"scores_{entry.dump_id}.jsonl")
        write_score_vectors(vectors, path)
        dumps[entry.dump_id] = path
    return dumps
