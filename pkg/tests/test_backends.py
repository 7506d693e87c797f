import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from srcsent.corpus.models import make_pair
from srcsent.errors import BackendError
from srcsent.scorers.backends import (
    CopyBiasedLM,
    DumpBackend,
    LogprobRecord,
    OracleBackend,
    WireBackend,
    conditioning_text,
    load_logprob_records,
    oracle_logprobs,
    write_logprob_records,
)


def test_uniform_model_logprobs():
    model = CopyBiasedLM(0.0, frozenset(f"w{i}" for i in range(7)))
    lps = oracle_logprobs("w0 w3 w6", "w1 w2", model)
    assert lps == pytest.approx([-math.log(7)] * 3)


def test_closed_form_example():
    model = CopyBiasedLM(0.5, frozenset(list("ab") + [f"w{i}" for i in range(8)]))
    (lp,) = oracle_logprobs("a", "a b", model)
    assert lp == pytest.approx(math.log(0.5 * 0.5 + 0.05))


def test_degenerate_lambda_guard():
    model = CopyBiasedLM(1.0, frozenset(["a", "b"]))
    with pytest.raises(ValueError, match="zero probability"):
        oracle_logprobs("a", "b b", model)
    # present in conditioning: fine
    assert oracle_logprobs("b", "b b", model) == pytest.approx([0.0])


def test_out_of_vocabulary_rejected():
    model = CopyBiasedLM(0.5, frozenset(["a"]))
    with pytest.raises(ValueError, match="vocabulary"):
        oracle_logprobs("z", "a", model)
    with pytest.raises(ValueError, match="conditioning token"):
        oracle_logprobs("a", "z", model)


def test_empty_conditioning_is_uniform():
    model = CopyBiasedLM(0.9, frozenset(f"w{i}" for i in range(4)))
    assert oracle_logprobs("w0", "", model) == pytest.approx([math.log(1 / 4)])


def test_probabilities_sum_to_one():
    vocab = frozenset(f"t{i}" for i in range(11))
    for lam in (0.0, 0.3, 0.7, 1.0):
        model = CopyBiasedLM(lam, vocab)
        cond = "t0 t0 t1 t2".split()
        total = sum(model.probability(tok, cond) for tok in vocab)
        assert total == pytest.approx(1.0)
        assert sum(model.probability(tok, []) for tok in vocab) == pytest.approx(1.0)


def test_oracle_backend_wraps_errors():
    backend = OracleBackend(CopyBiasedLM(0.5, frozenset(["a"])))
    with pytest.raises(BackendError):
        backend.logprobs("zzz", "a")


# -- dump backend --------------------------------------------------------------


def test_dump_backend_resolves_conditioning_variants(tmp_path):
    pair = make_pair("p", "other", "reference", ["a a", "b b", "c c"], "a")
    records = [
        LogprobRecord("p", -1, (-1.0,)),
        LogprobRecord("p", 0, (-2.0,)),
        LogprobRecord("p", 2, (-3.0,)),
        LogprobRecord("p", -2, (-4.0,)),
        LogprobRecord("p", -3, (-5.0,), sentence_index=1),
    ]
    path = tmp_path / "logprobs.jsonl"
    write_logprob_records(records, str(path))
    backend = DumpBackend.from_file([pair], str(path))

    assert backend.logprobs("a", "a a b b c c") == [-1.0]  # full document
    assert backend.logprobs("a", "b b c c") == [-2.0]      # sentence 0 removed
    assert backend.logprobs("a", "a a b b") == [-3.0]      # sentence 2 removed
    assert backend.logprobs("a", "") == [-4.0]             # empty conditioning
    assert backend.logprobs("a", "b b") == [-5.0]          # single sentence 1

    with pytest.raises(BackendError, match="no logprobs"):
        backend.logprobs("a", "something not dumped")


def test_conditioning_text_variants():
    pair = make_pair("p", "other", "reference", ["x y", "z w"], "x")
    assert conditioning_text(pair, -1) == "x y z w"
    assert conditioning_text(pair, -2) == ""
    assert conditioning_text(pair, -3, 1) == "z w"
    assert conditioning_text(pair, 0) == "z w"
    with pytest.raises(ValueError):
        conditioning_text(pair, 5)
    with pytest.raises(ValueError):
        conditioning_text(pair, -3, None)


def test_logprob_records_round_trip(tmp_path):
    records = [LogprobRecord("p", -1, (-0.5, -1.5)), LogprobRecord("p", -3, (-2.0,), sentence_index=0)]
    path = tmp_path / "lp.jsonl"
    write_logprob_records(records, str(path))
    assert load_logprob_records(str(path)) == records


# -- wire backend ---------------------------------------------------------------


class _StubLogprobHandler(BaseHTTPRequestHandler):
    fail_first = 0
    calls = []

    def do_POST(self):
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        type(self).calls.append(body)
        if type(self).fail_first > 0:
            type(self).fail_first -= 1
            self.send_response(500)
            self.end_headers()
            return
        payload = json.dumps({"token_logprobs": [-0.1 * len(body["target"].split())]}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def stub_server():
    _StubLogprobHandler.calls = []
    _StubLogprobHandler.fail_first = 0
    server = ThreadingHTTPServer(("127.0.0.1", 0), _StubLogprobHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/logprobs"
    server.shutdown()
    server.server_close()


def test_wire_backend_round_trip(stub_server):
    backend = WireBackend(url=stub_server, retries=2, _sleep=lambda s: None)
    assert backend.logprobs("a b", "cond") == [-0.2]


def test_wire_backend_retries_then_succeeds(stub_server):
    _StubLogprobHandler.fail_first = 2
    backend = WireBackend(url=stub_server, retries=3, _sleep=lambda s: None)
    assert backend.logprobs("a", "cond") == [-0.1]
    assert len(_StubLogprobHandler.calls) == 3


def test_wire_backend_gives_up_after_retries(stub_server):
    _StubLogprobHandler.fail_first = 99
    backend = WireBackend(url=stub_server, retries=3, _sleep=lambda s: None)
    with pytest.raises(BackendError, match="after 3 attempts"):
        backend.logprobs("a", "cond")


def test_wire_backend_disk_cache_prevents_second_request(stub_server, tmp_path):
    backend = WireBackend(url=stub_server, cache_dir=str(tmp_path / "cache"), _sleep=lambda s: None)
    first = backend.logprobs("a b c", "cond")
    n_calls = len(_StubLogprobHandler.calls)
    second = backend.logprobs("a b c", "cond")
    assert first == second
    assert len(_StubLogprobHandler.calls) == n_calls  # served from disk
