"""Embedded HTTP service backing the annotation UI and score inspection.

Plain stdlib HTTP: the workload is a handful of annotators and one reviewer,
and keeping the write path in one process makes the durability story simple.
Submissions are validated, appended to a newline-delimited log (single
write + flush + fsync) and only then acknowledged, so a crash can never
leave a half-record visible: an unterminated trailing line is ignored on
read.

Endpoints (JSON bodies, UTF-8):

    GET  /health
    GET  /pairs?annotator=ID      pairs still open for that annotator
    GET  /pairs/{id}              full pair, plus gold votes when annotated
    POST /pairs/{id}/annotations  submit one AnnotationRecord
    GET  /pairs/{id}/scores?method=NAME
    GET  /agreement               Krippendorff alpha over the store
    GET  /schema/annotation-record
"""

import json
import os
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from typing import Any
from urllib.parse import parse_qs, urlparse

from .corpus.io import annotation_from_record, annotation_to_record, dumps_line, load_pairs, pair_to_record
from .corpus.labels import aggregate_votes, group_by_pair
from .corpus.models import AnnotationRecord, DocumentSummaryPair
from .metrics.agreement import krippendorff_alpha, reconstructability_matrix, sentence_label_matrix
from .pipeline.config import RunConfig
from .pipeline.registry import BACKEND_FREE_METHODS, REGISTRY, Resources
from .scorers.vector import ScoreVector, load_score_vectors


def load_annotation_schema() -> dict:
    with resources.files("srcsent.schemas").joinpath("annotation_record.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def validate_against_schema(obj: Any, schema: dict) -> dict[str, str]:
    """Field -> message for violations of the (small) schema subset we use."""
    errors: dict[str, str] = {}
    if schema.get("type") == "object":
        if not isinstance(obj, dict):
            return {"_": "body must be a JSON object"}
        for name in schema.get("required", []):
            if name not in obj:
                errors[name] = "field is required"
        if schema.get("additionalProperties") is False:
            for name in obj:
                if name not in schema.get("properties", {}):
                    errors[name] = "unknown field"
        for name, sub in schema.get("properties", {}).items():
            if name in obj and name not in errors:
                message = _validate_value(obj[name], sub)
                if message:
                    errors[name] = message
    return errors


def _validate_value(value: Any, schema: dict) -> str | None:
    kind = schema.get("type")
    if kind == "string":
        if not isinstance(value, str):
            return "must be a string"
        if len(value) < schema.get("minLength", 0):
            return "must not be empty"
    elif kind == "integer":
        if isinstance(value, bool) or not isinstance(value, int):
            return "must be an integer"
    elif kind == "array":
        if not isinstance(value, list):
            return "must be an array"
        if len(value) < schema.get("minItems", 0):
            return "must not be empty"
        item_schema = schema.get("items")
        if item_schema:
            for i, item in enumerate(value):
                message = _validate_value(item, item_schema)
                if message:
                    return f"item {i}: {message}"
    if "enum" in schema and value not in schema["enum"]:
        allowed = ", ".join(repr(v) for v in schema["enum"])
        return f"must be one of {allowed}"
    return None


class AnnotationStore:
    """Append-only annotation log with whole-record durable writes."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()

    def records(self) -> list[AnnotationRecord]:
        if not os.path.exists(self.path):
            return []
        records = []
        with open(self.path, "rb") as fh:
            raw = fh.read()
        lines = raw.split(b"\n")
        # a trailing chunk without its newline is a torn write from a crash;
        # it was never acknowledged, so it does not exist
        complete, tail = lines[:-1], lines[-1]
        del tail
        for lineno, line in enumerate(complete, start=1):
            if not line.strip():
                continue
            obj = json.loads(line.decode("utf-8"))
            records.append(annotation_from_record(obj, path=self.path, line=lineno))
        return records

    def has(self, pair_id: str, annotator_id: str) -> bool:
        return any(r.pair_id == pair_id and r.annotator_id == annotator_id for r in self.records())

    def append(self, record: AnnotationRecord) -> None:
        with self._lock:
            if self.has(record.pair_id, record.annotator_id):
                raise ValueError(
                    f"annotator {record.annotator_id!r} already submitted pair {record.pair_id!r}"
                )
            with open(self.path, "ab") as fh:
                fh.write(dumps_line(annotation_to_record(record)).encode("utf-8"))
                fh.flush()
                os.fsync(fh.fileno())

    def compact(self) -> int:
        """Rewrite the log atomically, dropping blank lines; returns record count."""
        with self._lock:
            records = self.records()
            tmp = self.path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                for rec in records:
                    fh.write(dumps_line(annotation_to_record(rec)))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self.path)
        return len(records)


class ServiceState:
    """Everything the request handler needs, shared across threads."""

    def __init__(
        self,
        pairs: list[DocumentSummaryPair],
        store: AnnotationStore,
        *,
        scores_dir: str | None = None,
        static_dir: str | None = None,
    ):
        self.pairs = pairs
        self.by_id = {p.pair_id: p for p in pairs}
        self.store = store
        self.static_dir = static_dir
        self.schema = load_annotation_schema()
        self._score_lock = threading.Lock()
        self._scores: dict[str, dict[str, ScoreVector]] = {}
        if scores_dir and os.path.isdir(scores_dir):
            for name in sorted(os.listdir(scores_dir)):
                m = re.fullmatch(r"scores_(.+)\.jsonl", name)
                if not m:
                    continue
                vectors = load_score_vectors(os.path.join(scores_dir, name))
                self._scores[m.group(1)] = {v.pair_id: v for v in vectors}

    def pair_listing(self, annotator: str | None) -> list[dict]:
        done = set()
        if annotator:
            done = {r.pair_id for r in self.store.records() if r.annotator_id == annotator}
        listing = []
        for pair in self.pairs:
            if pair.pair_id in done:
                continue
            listing.append(
                {
                    "pair_id": pair.pair_id,
                    "dataset": pair.dataset,
                    "summary_origin": pair.summary_origin,
                    "n_sentences": pair.n_sentences,
                    "summary": pair.summary,
                }
            )
        return listing

    def pair_detail(self, pair_id: str) -> dict | None:
        pair = self.by_id.get(pair_id)
        if pair is None:
            return None
        detail = pair_to_record(pair)
        records = [r for r in self.store.records() if r.pair_id == pair_id]
        detail["n_annotations"] = len(records)
        if records:
            gold = aggregate_votes(pair, records)
            detail["gold"] = {
                "votes": list(gold.votes),
                "n_annotators": gold.n_annotators,
                "binary_sources": list(gold.binary_sources),
            }
        return detail

    def score_vector(self, pair_id: str, method: str) -> tuple[ScoreVector | None, str]:
        pair = self.by_id.get(pair_id)
        if pair is None:
            return None, f"unknown pair {pair_id!r}"
        with self._score_lock:
            vectors = self._scores.get(method)
            if vectors and pair_id in vectors:
                return vectors[pair_id], ""
            if method in BACKEND_FREE_METHODS:
                # cheap lexical methods are computed on demand so the UI works
                # without a prior scoring run
                vec = REGISTRY[method].run(pair, {}, Resources())
                self._scores.setdefault(method, {})[pair_id] = vec
                return vec, ""
        if method not in REGISTRY:
            return None, f"unknown method {method!r}"
        return None, f"no scores for method {method!r}; run the scoring pipeline first"

    def agreement(self) -> dict:
        records = self.store.records()
        out: dict[str, Any] = {
            "n_records": len(records),
            "n_pairs_annotated": len(group_by_pair(records)),
            "sentence_label_alpha": None,
            "reconstructability_alpha": None,
        }
        if records:
            try:
                out["sentence_label_alpha"] = krippendorff_alpha(sentence_label_matrix(records))
            except ValueError:
                pass
            try:
                out["reconstructability_alpha"] = krippendorff_alpha(reconstructability_matrix(records))
            except ValueError:
                pass
        return out

    def submit(self, pair_id: str, body: Any) -> tuple[int, dict]:
        pair = self.by_id.get(pair_id)
        if pair is None:
            return 404, {"error": f"unknown pair {pair_id!r}"}
        if isinstance(body, dict):
            body = dict(body, pair_id=body.get("pair_id", pair_id))
        errors = validate_against_schema(body, self.schema)
        if errors:
            return 400, {"errors": errors}
        if body["pair_id"] != pair_id:
            return 400, {"errors": {"pair_id": f"body says {body['pair_id']!r}, URL says {pair_id!r}"}}
        labels = body["sentence_labels"]
        if len(labels) != pair.n_sentences:
            return 400, {
                "errors": {
                    "sentence_labels": (
                        f"every sentence needs a label before the reconstructability question:"
                        f" got {len(labels)} labels for {pair.n_sentences} sentences"
                    )
                }
            }
        record = annotation_from_record(body)
        try:
            self.store.append(record)
        except ValueError as exc:
            return 409, {"errors": {"annotator_id": str(exc)}}
        return 201, {"status": "ok", "record": annotation_to_record(record)}


class _Handler(BaseHTTPRequestHandler):
    state: ServiceState  # injected via subclass

    # -- helpers ---------------------------------------------------------

    def _send_json(self, status: int, payload: Any) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self._cors()
        self.end_headers()
        self.wfile.write(body)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass  # tests and desk use do not want per-request chatter

    # -- verbs -----------------------------------------------------------

    def do_OPTIONS(self):  # noqa: N802 - stdlib naming
        self.send_response(204)
        self._cors()
        self.end_headers()

    def do_GET(self):  # noqa: N802
        url = urlparse(self.path)
        query = parse_qs(url.query)
        path = url.path.rstrip("/") or "/"

        if path == "/health":
            return self._send_json(200, {"status": "ok", "pairs": len(self.state.pairs)})
        if path == "/pairs":
            annotator = (query.get("annotator") or [None])[0]
            return self._send_json(200, {"pairs": self.state.pair_listing(annotator)})
        m = re.fullmatch(r"/pairs/([^/]+)", path)
        if m:
            detail = self.state.pair_detail(m.group(1))
            if detail is None:
                return self._send_json(404, {"error": f"unknown pair {m.group(1)!r}"})
            return self._send_json(200, detail)
        m = re.fullmatch(r"/pairs/([^/]+)/scores", path)
        if m:
            method = (query.get("method") or [None])[0]
            if not method:
                return self._send_json(400, {"error": "missing 'method' query parameter"})
            vec, reason = self.state.score_vector(m.group(1), method)
            if vec is None:
                return self._send_json(404, {"error": reason})
            return self._send_json(
                200,
                {"pair_id": vec.pair_id, "method": vec.method, "scores": list(vec.scores), "metadata": vec.metadata},
            )
        if path == "/agreement":
            return self._send_json(200, self.state.agreement())
        if path == "/schema/annotation-record":
            return self._send_json(200, self.state.schema)
        if self.state.static_dir:
            return self._send_static(path)
        return self._send_json(404, {"error": f"no route for {path!r}"})

    def do_POST(self):  # noqa: N802
        url = urlparse(self.path)
        path = url.path.rstrip("/")
        m = re.fullmatch(r"/pairs/([^/]+)/annotations", path)
        if not m:
            return self._send_json(404, {"error": f"no route for {path!r}"})
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length)
        try:
            body = json.loads(raw.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError):
            return self._send_json(400, {"errors": {"_": "body is not valid JSON"}})
        status, payload = self.state.submit(m.group(1), body)
        return self._send_json(status, payload)

    # -- static files for the bundled UI ---------------------------------

    def _send_static(self, path: str) -> None:
        name = "index.html" if path == "/" else path.lstrip("/")
        root = os.path.abspath(self.state.static_dir)
        full = os.path.normpath(os.path.join(root, name))
        if not full.startswith(root + os.sep) and full != os.path.join(root, "index.html"):
            return self._send_json(404, {"error": "not found"})
        if not os.path.isfile(full):
            return self._send_json(404, {"error": f"no route for {path!r}"})
        import mimetypes

        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            body = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self._cors()
        self.end_headers()
        self.wfile.write(body)


def make_server(
    pairs: list[DocumentSummaryPair],
    store: AnnotationStore,
    port: int,
    *,
    scores_dir: str | None = None,
    static_dir: str | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    state = ServiceState(pairs, store, scores_dir=scores_dir, static_dir=static_dir)

    class Handler(_Handler):
        pass

    Handler.state = state
    return ThreadingHTTPServer((host, port), Handler)


def serve(config: RunConfig, port: int, *, static_dir: str | None = None, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted."""
    pairs = load_pairs(config.corpus)
    if config.annotations is None:
        raise ValueError("serving needs an 'annotations' path in the run config (the writable store)")
    store = AnnotationStore(config.annotations)
    server = make_server(pairs, store, port, scores_dir=config.out_dir, static_dir=static_dir, host=host)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
