import json

import pytest

from srcsent.corpus.io import (
    load_annotations,
    load_pairs,
    write_annotations,
    write_pairs,
)
from srcsent.errors import CorpusError


def test_empty_file_gives_empty_corpus(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    assert load_pairs(str(path)) == []


def test_single_record_round_trip(tmp_path):
    record = {
        "pair_id": "p0",
        "dataset": "xsum",
        "summary_origin": "reference",
        "summary": "A summary sentence.",
        "sentences": ["First.", "Second one.", "Third."],
    }
    path = tmp_path / "one.jsonl"
    path.write_text(json.dumps(record) + "\n")
    pairs = load_pairs(str(path))
    assert len(pairs) == 1
    assert [s.index for s in pairs[0].sentences] == [0, 1, 2]

    out = tmp_path / "rewritten.jsonl"
    write_pairs(pairs, str(out))
    rewritten = json.loads(out.read_text())
    assert rewritten == record  # identical modulo key order


def test_write_load_write_is_byte_identical(tmp_path, corpus):
    first = tmp_path / "first.jsonl"
    second = tmp_path / "second.jsonl"
    write_pairs(corpus, str(first))
    write_pairs(load_pairs(str(first)), str(second))
    assert first.read_bytes() == second.read_bytes()


def test_order_preserved(tmp_path, corpus):
    path = tmp_path / "pairs.jsonl"
    write_pairs(corpus, str(path))
    assert [p.pair_id for p in load_pairs(str(path))] == [p.pair_id for p in corpus]


def test_malformed_line_carries_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = {
        "pair_id": "p0",
        "dataset": "xsum",
        "summary_origin": "reference",
        "summary": "S.",
        "sentences": ["One."],
    }
    path.write_text(json.dumps(good) + "\n" + "{not json\n")
    with pytest.raises(CorpusError, match=":2:"):
        load_pairs(str(path))


def test_missing_field_carries_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps({"pair_id": "p0"}) + "\n")
    with pytest.raises(CorpusError, match=":1:.*dataset"):
        load_pairs(str(path))


def test_duplicate_pair_id_names_the_id(tmp_path):
    record = {
        "pair_id": "dup",
        "dataset": "xsum",
        "summary_origin": "reference",
        "summary": "S.",
        "sentences": ["One."],
    }
    path = tmp_path / "dup.jsonl"
    path.write_text(json.dumps(record) + "\n" + json.dumps(record) + "\n")
    with pytest.raises(CorpusError, match="'dup'"):
        load_pairs(str(path))


def test_raw_document_preserved_when_it_differs(tmp_path):
    record = {
        "pair_id": "p0",
        "dataset": "xsum",
        "summary_origin": "reference",
        "summary": "S.",
        "sentences": ["One here.", "Two there."],
        "raw_document": "One here.\n\nTwo there.",
    }
    path = tmp_path / "raw.jsonl"
    path.write_text(json.dumps(record) + "\n")
    (pair,) = load_pairs(str(path))
    assert pair.raw_document == "One here.\n\nTwo there."
    out = tmp_path / "out.jsonl"
    write_pairs([pair], str(out))
    assert json.loads(out.read_text())["raw_document"] == "One here.\n\nTwo there."


def test_annotation_round_trip(tmp_path, corpus, annotations):
    path = tmp_path / "ann.jsonl"
    write_annotations(annotations, str(path))
    loaded = load_annotations(str(path), corpus)
    assert loaded == annotations


def test_annotation_label_count_checked_against_corpus(tmp_path, corpus):
    record = {
        "pair_id": corpus[0].pair_id,
        "annotator_id": "a",
        "sentence_labels": [1],  # corpus pair has more sentences
        "reconstructability": "yes",
    }
    path = tmp_path / "ann.jsonl"
    path.write_text(json.dumps(record) + "\n")
    with pytest.raises(CorpusError, match="labels"):
        load_annotations(str(path), corpus)
    # without the corpus the record is structurally fine
    assert len(load_annotations(str(path))) == 1


def test_duplicate_annotator_rejected(tmp_path, corpus):
    record = {
        "pair_id": corpus[0].pair_id,
        "annotator_id": "a",
        "sentence_labels": [1] * corpus[0].n_sentences,
        "reconstructability": "yes",
    }
    path = tmp_path / "ann.jsonl"
    path.write_text(json.dumps(record) + "\n" + json.dumps(record) + "\n")
    with pytest.raises(CorpusError, match="duplicate annotation"):
        load_annotations(str(path), corpus)
