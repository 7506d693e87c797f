"""Run configuration: one JSON file describing a whole scoring run."""

import json
import os
from dataclasses import dataclass, field
from typing import Any

from .registry import get_method


@dataclass(frozen=True)
class SelectionRule:
    """Either keep scores strictly above a threshold, or keep the top k."""

    threshold: float | None = None
    top_k: int | None = None

    def __post_init__(self):
        if (self.threshold is None) == (self.top_k is None):
            raise ValueError("selection rule must set exactly one of 'threshold' and 'top_k'")
        if self.top_k is not None and self.top_k <= 0:
            raise ValueError(f"top_k must be positive, got {self.top_k}")

    def describe(self) -> str:
        if self.threshold is not None:
            return f"threshold>{self.threshold}"
        return f"top_k={self.top_k}"


@dataclass(frozen=True)
class MethodEntry:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    id: str | None = None

    @property
    def dump_id(self) -> str:
        return self.id or self.name


@dataclass(frozen=True)
class RunConfig:
    corpus: str
    methods: tuple[MethodEntry, ...]
    annotations: str | None = None
    cache_dir: str | None = None
    out_dir: str = "scores"
    workers: int = 1
    dataset: str | None = None  # split filter
    summary_origin: str | None = None  # split filter
    selection: SelectionRule | None = None
    backends: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.methods:
            raise ValueError("run config names no methods")
        seen = set()
        for entry in self.methods:
            get_method(entry.name)  # unknown names fail here, before any work
            if entry.dump_id in seen:
                raise ValueError(f"duplicate method id {entry.dump_id!r} in run config")
            seen.add(entry.dump_id)
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def parse_config(obj: dict[str, Any], *, base_dir: str = ".") -> RunConfig:
    def resolve(path: str | None) -> str | None:
        if path is None:
            return None
        return path if os.path.isabs(path) else os.path.join(base_dir, path)

    methods = []
    for m in obj.get("methods", []):
        if isinstance(m, str):
            methods.append(MethodEntry(name=m))
        else:
            methods.append(MethodEntry(name=m["name"], params=m.get("params", {}), id=m.get("id")))

    selection = None
    if "selection" in obj and obj["selection"] is not None:
        sel = obj["selection"]
        selection = SelectionRule(threshold=sel.get("threshold"), top_k=sel.get("top_k"))

    split = obj.get("split", {}) or {}
    backends = dict(obj.get("backends", {}) or {})
    for key in ("embeddings", "attention"):
        if isinstance(backends.get(key), str):
            backends[key] = resolve(backends[key])
    if isinstance(backends.get("conditional"), dict) and "path" in backends["conditional"]:
        backends["conditional"] = dict(backends["conditional"], path=resolve(backends["conditional"]["path"]))

    return RunConfig(
        corpus=resolve(obj["corpus"]),
        annotations=resolve(obj.get("annotations")),
        methods=tuple(methods),
        cache_dir=resolve(obj.get("cache_dir")),
        out_dir=resolve(obj.get("out_dir", "scores")),
        workers=int(obj.get("workers", 1)),
        dataset=split.get("dataset"),
        summary_origin=split.get("summary_origin"),
        selection=selection,
        backends=backends,
    )


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: run config must be a JSON object")
    try:
        return parse_config(obj, base_dir=os.path.dirname(os.path.abspath(path)))
    except KeyError as exc:
        raise ValueError(f"{path}: missing required config field {exc}") from None
