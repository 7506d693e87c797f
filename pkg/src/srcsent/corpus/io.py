"""Newline-delimited JSON readers and writers for corpora and annotations.

Corpus line format, one object per line (UTF-8):

    {"pair_id": ..., "dataset": "xsum"|"cnndm"|"other",
     "summary_origin": "reference"|"system", "system_name": ...?,
     "summary": ..., "sentences": [...], "raw_document": ...?}

``raw_document`` is optional; when absent, sentence character spans are
recomputed by joining the sentence strings with single spaces. Writing emits
``raw_document`` only when it differs from that join, and omits
``system_name`` when unset, so a load/write cycle reproduces the original
file byte-for-byte modulo key order.

Annotation line format:

    {"pair_id": ..., "annotator_id": ...,
     "sentence_labels": [0|1, ...], "reconstructability": "yes"|"partly"|"no"}

Gold line format (pre-aggregated labels, e.g. shipped with a benchmark):

    {"pair_id": ..., "votes": [...], "n_annotators": ...,
     "binary_sources": [true|false, ...]}
"""

import json
import os
from collections.abc import Iterable
from typing import Any

from ..errors import CorpusError
from .models import AnnotationRecord, DocumentSummaryPair, GoldLabels, make_pair

_PAIR_REQUIRED = ("pair_id", "dataset", "summary_origin", "summary", "sentences")
_ANNOTATION_REQUIRED = ("pair_id", "annotator_id", "sentence_labels", "reconstructability")


def _iter_json_lines(path: str) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON ({exc.msg})", path=path, line=lineno) from exc
            if not isinstance(obj, dict):
                raise CorpusError("expected a JSON object", path=path, line=lineno)
            yield lineno, obj


def pair_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> DocumentSummaryPair:
    for key in _PAIR_REQUIRED:
        if key not in record:
            raise CorpusError(f"missing field {key!r}", path=path, line=line)
    sentences = record["sentences"]
    if not isinstance(sentences, list) or not all(isinstance(s, str) for s in sentences):
        raise CorpusError("'sentences' must be an array of strings", path=path, line=line)
    try:
        return make_pair(
            pair_id=record["pair_id"],
            dataset=record["dataset"],
            summary_origin=record["summary_origin"],
            sentence_texts=sentences,
            summary=record["summary"],
            raw_document=record.get("raw_document"),
            system_name=record.get("system_name"),
        )
    except ValueError as exc:
        raise CorpusError(str(exc), path=path, line=line) from exc


def pair_to_record(pair: DocumentSummaryPair) -> dict[str, Any]:
    record: dict[str, Any] = {
        "pair_id": pair.pair_id,
        "dataset": pair.dataset,
        "summary_origin": pair.summary_origin,
    }
    if pair.system_name is not None:
        record["system_name"] = pair.system_name
    record["summary"] = pair.summary
    record["sentences"] = [s.text for s in pair.sentences]
    if pair.raw_document != pair.joined_document():
        record["raw_document"] = pair.raw_document
    return record


def load_pairs(path: str) -> list[DocumentSummaryPair]:
    """Load a corpus file, preserving order and rejecting duplicate pair ids."""
    pairs: list[DocumentSummaryPair] = []
    seen: dict[str, int] = {}
    for lineno, record in _iter_json_lines(path):
        pair = pair_from_record(record, path=path, line=lineno)
        if pair.pair_id in seen:
            raise CorpusError(
                f"duplicate pair_id {pair.pair_id!r} (first seen on line {seen[pair.pair_id]})",
                path=path,
                line=lineno,
            )
        seen[pair.pair_id] = lineno
        pairs.append(pair)
    return pairs


def write_pairs(pairs: Iterable[DocumentSummaryPair], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(dumps_line(pair_to_record(pair)))


def annotation_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> AnnotationRecord:
    for key in _ANNOTATION_REQUIRED:
        if key not in record:
            raise CorpusError(f"missing field {key!r}", path=path, line=line)
    labels = record["sentence_labels"]
    if not isinstance(labels, list):
        raise CorpusError("'sentence_labels' must be an array of 0/1", path=path, line=line)
    try:
        return AnnotationRecord(
            pair_id=record["pair_id"],
            annotator_id=record["annotator_id"],
            sentence_labels=tuple(labels),
            reconstructability=record["reconstructability"],
        )
    except ValueError as exc:
        raise CorpusError(str(exc), path=path, line=line) from exc


def annotation_to_record(ann: AnnotationRecord) -> dict[str, Any]:
    return {
        "pair_id": ann.pair_id,
        "annotator_id": ann.annotator_id,
        "sentence_labels": list(ann.sentence_labels),
        "reconstructability": ann.reconstructability,
    }


def load_annotations(
    path: str,
    pairs: Iterable[DocumentSummaryPair] | None = None,
) -> list[AnnotationRecord]:
    """Load annotation records; with ``pairs`` given, label counts are checked
    against each pair's sentence count and unknown pair ids are rejected."""
    by_id = {p.pair_id: p for p in pairs} if pairs is not None else None
    records: list[AnnotationRecord] = []
    seen: set[tuple[str, str]] = set()
    for lineno, record in _iter_json_lines(path):
        ann = annotation_from_record(record, path=path, line=lineno)
        key = (ann.pair_id, ann.annotator_id)
        if key in seen:
            raise CorpusError(
                f"duplicate annotation for pair {ann.pair_id!r} by annotator {ann.annotator_id!r}",
                path=path,
                line=lineno,
            )
        seen.add(key)
        if by_id is not None:
            pair = by_id.get(ann.pair_id)
            if pair is None:
                raise CorpusError(f"annotation references unknown pair {ann.pair_id!r}", path=path, line=lineno)
            if len(ann.sentence_labels) != pair.n_sentences:
                raise CorpusError(
                    f"annotation for pair {ann.pair_id!r} has {len(ann.sentence_labels)} labels,"
                    f" pair has {pair.n_sentences} sentences",
                    path=path,
                    line=lineno,
                )
        records.append(ann)
    return records


def write_annotations(records: Iterable[AnnotationRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ann in records:
            fh.write(dumps_line(annotation_to_record(ann)))


def gold_to_record(gold: GoldLabels) -> dict[str, Any]:
    return {
        "pair_id": gold.pair_id,
        "votes": list(gold.votes),
        "n_annotators": gold.n_annotators,
        "binary_sources": list(gold.binary_sources),
    }


def gold_from_record(record: dict, *, path: str | None = None, line: int | None = None) -> GoldLabels:
    try:
        return GoldLabels(
            pair_id=record["pair_id"],
            votes=tuple(int(v) for v in record["votes"]),
            n_annotators=int(record["n_annotators"]),
            binary_sources=tuple(bool(b) for b in record["binary_sources"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"bad gold record: {exc}", path=path, line=line) from exc


def load_gold(path: str) -> dict[str, GoldLabels]:
    gold: dict[str, GoldLabels] = {}
    for lineno, record in _iter_json_lines(path):
        gl = gold_from_record(record, path=path, line=lineno)
        if gl.pair_id in gold:
            raise CorpusError(f"duplicate gold labels for pair {gl.pair_id!r}", path=path, line=lineno)
        gold[gl.pair_id] = gl
    return gold


def write_gold(gold: Iterable[GoldLabels], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for gl in gold:
            fh.write(dumps_line(gold_to_record(gl)))


def dumps_line(record: dict) -> str:
    """Canonical single-line serialization (sorted keys, no ASCII escaping)."""
    return json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n"


def fsync_write_line(fh, record: dict) -> None:
    """Append one whole record durably: single write, flush, fsync."""
    fh.write(dumps_line(record).encode("utf-8"))
    fh.flush()
    os.fsync(fh.fileno())
