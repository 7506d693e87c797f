import json

import pytest

from srcsent.corpus.models import make_pair
from srcsent.pipeline.config import MethodEntry, RunConfig, SelectionRule, load_config, parse_config
from srcsent.pipeline.registry import Resources, get_method
from srcsent.pipeline.runner import ScoreCache, check_method_resources, run_methods
from srcsent.pipeline.selection import export_filtered_document, select_sources
from srcsent.scorers.backends import CopyBiasedLM, OracleBackend
from srcsent.scorers.vector import ScoreVector, load_score_vectors


def test_unknown_method_listed_with_alternatives():
    with pytest.raises(ValueError, match="registered methods"):
        get_method("foo")
    with pytest.raises(ValueError, match="foo"):
        RunConfig(corpus="x", methods=(MethodEntry(name="foo"),))


def test_selection_rule_exclusivity():
    with pytest.raises(ValueError, match="exactly one"):
        SelectionRule()
    with pytest.raises(ValueError, match="exactly one"):
        SelectionRule(threshold=0.5, top_k=2)
    with pytest.raises(ValueError, match="positive"):
        SelectionRule(top_k=0)


def test_select_sources_threshold():
    vec = ScoreVector("p", "m", (0.9, 0.1, 0.5))
    result = select_sources(vec, SelectionRule(threshold=0.4))
    assert result.selected == (0, 2)


def test_select_sources_threshold_above_max_is_empty():
    vec = ScoreVector("p", "m", (0.9, 0.1, 0.5))
    assert select_sources(vec, SelectionRule(threshold=0.9)).selected == ()
    assert select_sources(vec, SelectionRule(threshold=-1e18)).selected == (0, 1, 2)


def test_select_sources_top_k_tie_break():
    vec = ScoreVector("p", "m", (0.5, 0.5, 0.1))
    assert select_sources(vec, SelectionRule(top_k=2)).selected == (0, 1)
    assert select_sources(vec, SelectionRule(top_k=10)).selected == (0, 1, 2)


def test_export_filtered_document():
    pair = make_pair("p", "other", "reference", ["First.", "Second.", "Third."], "A summary.")
    vec = ScoreVector("p", "m", (0.9, 0.1, 0.8))
    selection = select_sources(vec, SelectionRule(top_k=2))
    exported = export_filtered_document(pair, selection)
    assert exported.pair_id == "p-srconly"
    assert [s.text for s in exported.sentences] == ["First.", "Third."]
    assert exported.raw_document == "First. Third."

    everything = select_sources(vec, SelectionRule(top_k=3))
    assert export_filtered_document(pair, everything).raw_document == pair.joined_document()

    with pytest.raises(ValueError, match="empty"):
        export_filtered_document(pair, select_sources(vec, SelectionRule(threshold=10.0)))


def _write_config(tmp_path, corpus_file, methods, backends=None, cache=True):
    config = {
        "corpus": corpus_file,
        "methods": methods,
        "out_dir": str(tmp_path / "scores"),
        "cache_dir": str(tmp_path / "cache") if cache else None,
        "backends": backends or {},
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(config))
    return str(path)


def test_run_methods_cardinality(tmp_path, corpus_file, corpus):
    config = load_config(_write_config(tmp_path, corpus_file, ["rouge", "lexrank"]))
    dumps = run_methods(config)
    assert set(dumps) == {"rouge", "lexrank"}
    for path in dumps.values():
        vectors = load_score_vectors(path)
        assert len(vectors) == len(corpus)


def test_run_methods_split_filter(tmp_path, corpus_file, corpus):
    config_path = _write_config(tmp_path, corpus_file, ["rouge"])
    obj = json.loads(open(config_path).read())
    obj["split"] = {"dataset": "xsum", "summary_origin": "reference"}
    open(config_path, "w").write(json.dumps(obj))
    dumps = run_methods(load_config(config_path))
    vectors = load_score_vectors(dumps["rouge"])
    expected = [p for p in corpus if p.dataset == "xsum" and p.summary_origin == "reference"]
    assert [v.pair_id for v in vectors] == [p.pair_id for p in expected]


def test_backend_missing_fails_before_scoring(tmp_path, corpus_file):
    config = load_config(_write_config(tmp_path, corpus_file, ["perplexity_gain"]))
    with pytest.raises(ValueError, match="conditional"):
        run_methods(config)


def test_oracle_backend_from_config(tmp_path, corpus_file):
    config = load_config(
        _write_config(
            tmp_path,
            corpus_file,
            ["pmi", "perplexity_gain"],
            backends={"conditional": {"kind": "oracle", "lambda": 0.7}},
        )
    )
    dumps = run_methods(config)
    assert set(dumps) == {"pmi", "perplexity_gain"}


class CountingOracle:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0
        self.max_concurrency = 1
        self.descriptor = inner.descriptor

    def logprobs(self, target, conditioning):
        self.calls += 1
        return self.inner.logprobs(target, conditioning)


def test_warm_cache_run_is_idempotent_with_zero_backend_calls(tmp_path, corpus, corpus_file):
    vocab = frozenset(tok for p in corpus for tok in (p.joined_document() + " " + p.summary).split())
    backend = CountingOracle(OracleBackend(CopyBiasedLM(0.7, vocab)))
    resources = Resources(conditional=backend)

    config = load_config(_write_config(tmp_path, corpus_file, ["rouge", "pmi"]))
    first = run_methods(config, resources=resources)
    first_calls = backend.calls
    assert first_calls > 0
    first_bytes = {name: open(path, "rb").read() for name, path in first.items()}

    second = run_methods(config, resources=resources)
    assert backend.calls == first_calls  # warm cache: zero new backend calls
    second_bytes = {name: open(path, "rb").read() for name, path in second.items()}
    assert second_bytes == first_bytes


def test_cache_key_ignores_pair_id_but_not_content():
    a = make_pair("a", "other", "reference", ["x y.", "z w."], "x y.")
    b = make_pair("b", "other", "reference", ["x y.", "z w."], "x y.")
    c = make_pair("c", "other", "reference", ["x y.", "z q."], "x y.")
    key_a = ScoreCache.key(a, "rouge", {}, None)
    assert ScoreCache.key(b, "rouge", {}, None) == key_a
    assert ScoreCache.key(c, "rouge", {}, None) != key_a
    assert ScoreCache.key(a, "lexrank", {}, None) != key_a
    assert ScoreCache.key(a, "rouge", {"variant": "r1"}, None) != key_a
    assert ScoreCache.key(a, "rouge", {}, "oracle:x") != key_a


def test_check_method_resources():
    entries = (MethodEntry(name="bertscore"),)
    with pytest.raises(ValueError, match="embeddings"):
        check_method_resources(entries, Resources())


def test_parse_config_defaults_and_selection():
    obj = {
        "corpus": "pairs.jsonl",
        "methods": [{"name": "rouge", "params": {"variant": "r1"}}],
        "selection": {"top_k": 3},
    }
    config = parse_config(obj, base_dir="/tmp/base")
    assert config.corpus == "/tmp/base/pairs.jsonl"
    assert config.methods[0].params == {"variant": "r1"}
    assert config.selection.top_k == 3
