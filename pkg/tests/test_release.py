import json
import os

import pytest

from srcsent.corpus.io import load_annotations, load_gold, load_pairs
from srcsent.release import convert_file, convert_record

RELEASE_RECORD = {
    "id": "xsum__train__123__reference__0",
    "corpus": "xsum",
    "split": "train",
    "model": "reference",
    "original_id": "123",
    "document": "First sentence here.\nSecond one follows.\nThird closes it.",
    "gen_summary": "A one sentence summary.",
    "ref_summary": "A one sentence summary.",
    "summary_idx": 0,
    "summary_label": [1, 0, 1],
    "rel_sent_positions": [1, 3],
    "annotations": [
        {"sentence_idx": 0, "sentence": "First sentence here.", "pos": [0, 20], "label": [1, 0, 1]},
        {"sentence_idx": 1, "sentence": "Second one follows.", "pos": [21, 40], "label": [0, 0, 1]},
        {"sentence_idx": 2, "sentence": "Third closes it.", "pos": [41, 57], "label": [1, 1, 1]},
    ],
}


def test_convert_record_maps_fields():
    pair, records, gold = convert_record(RELEASE_RECORD)
    assert pair.pair_id == "xsum__train__123__reference__0"
    assert pair.dataset == "xsum"
    assert pair.summary_origin == "reference"
    assert pair.system_name is None
    assert [s.text for s in pair.sentences] == [
        "First sentence here.",
        "Second one follows.",
        "Third closes it.",
    ]
    assert pair.summary == "A one sentence summary."

    assert [r.annotator_id for r in records] == ["a0", "a1", "a2"]
    assert records[0].sentence_labels == (1, 0, 1)
    assert records[1].sentence_labels == (0, 0, 1)
    assert [r.reconstructability for r in records] == ["yes", "no", "yes"]

    assert gold.votes == (2, 1, 3)
    assert gold.n_annotators == 3
    assert gold.binary_sources == (True, False, True)  # from rel_sent_positions


def test_convert_record_system_model():
    record = dict(RELEASE_RECORD, id="x__1__pegasus__0", model="pegasus-xsum", corpus="xsum")
    pair, _, _ = convert_record(record)
    assert pair.summary_origin == "system"
    assert pair.system_name == "pegasus"
    assert pair.split_label() == "xsum_pegasus"


def test_convert_record_pads_ragged_labels():
    record = json.loads(json.dumps(RELEASE_RECORD))
    record["annotations"][1]["label"] = [0, 0]  # third annotator missing here
    _, records, gold = convert_record(record)
    assert records[2].sentence_labels == (1, 0, 1)  # padded with 0 at the gap
    assert gold.votes == (2, 0, 3)  # votes stay the raw sums


def test_convert_file_round_trips_through_loaders(tmp_path):
    release_path = tmp_path / "split.json"
    second = dict(
        json.loads(json.dumps(RELEASE_RECORD)),
        id="xsum__train__456__reference__0",
        original_id="456",
    )
    release_path.write_text(json.dumps([RELEASE_RECORD, second]))
    paths = convert_file(str(release_path), str(tmp_path / "out"))

    pairs = load_pairs(paths["pairs"])
    assert [p.pair_id for p in pairs] == [RELEASE_RECORD["id"], "xsum__train__456__reference__0"]
    records = load_annotations(paths["annotations"], pairs)
    assert len(records) == 6
    gold = load_gold(paths["gold"])
    assert gold[RELEASE_RECORD["id"]].binary_sources == (True, False, True)
    assert os.path.basename(paths["pairs"]) == "xsum_reference.pairs.jsonl"


@pytest.mark.skipif(
    not os.path.exists(os.path.join(os.path.dirname(__file__), "..", "data", "benchmark")),
    reason="converted benchmark data not present",
)
def test_bundled_benchmark_is_loadable():
    base = os.path.join(os.path.dirname(__file__), "..", "data", "benchmark")
    pairs = load_pairs(os.path.join(base, "xsum_reference.pairs.jsonl"))
    assert len(pairs) == 119
    records = load_annotations(os.path.join(base, "xsum_reference.annotations.jsonl"), pairs)
    gold = load_gold(os.path.join(base, "xsum_reference.gold.jsonl"))
    assert set(gold) == {p.pair_id for p in pairs}
    assert all(len(gold[p.pair_id].votes) == p.n_sentences for p in pairs)
    by_pair = {}
    for r in records:
        by_pair.setdefault(r.pair_id, []).append(r)
    assert all(p.pair_id in by_pair for p in pairs)
