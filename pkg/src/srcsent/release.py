"""Adapter for the public source-sentence benchmark release.

The release ships one JSON array per split. Each element describes one
document-summary pair:

    id                  unique string
    corpus              "xsum" | "cnn_dailymail"
    model               "reference" or the generating model's name
    gen_summary         the summary sentence that was annotated
    annotations         per sentence: {sentence_idx, sentence, pos,
                        label: [0/1 per annotator]}
    summary_label       [0/1 per annotator] reconstructability verdicts
    rel_sent_positions  1-based positions of the gold source sentences

Annotator counts vary between two and four (a handful of sentences carry a
different count than their pair's verdict list). The shipped gold equals a
per-sentence strict majority of that sentence's own annotators, which is
what this adapter preserves verbatim in the gold files. Per-annotator
records are reconstructed column-wise; a column with no verdict is dropped
and a column missing a sentence label is padded with 0, so verdict
multisets survive conversion exactly.
"""

import json
import os
import sys

from .corpus.io import write_annotations, write_gold, write_pairs
from .corpus.models import AnnotationRecord, DocumentSummaryPair, GoldLabels, make_pair

_DATASETS = {"xsum": "xsum", "cnn_dailymail": "cnndm"}

# release file stem -> the toolkit's split label
RELEASE_SPLITS = {
    "xsum_pegasus": "xsum_pegasus",
    "xsum_reference": "xsum_reference",
    "cnn_pegasus": "cnndm_pegasus",
    "cnn_reference": "cnndm_reference",
}


def convert_record(record: dict) -> tuple[DocumentSummaryPair, list[AnnotationRecord], GoldLabels]:
    annotations = sorted(record["annotations"], key=lambda a: a["sentence_idx"])
    sentences = [" ".join(a["sentence"].split()) for a in annotations]
    model = record["model"]
    if model == "reference":
        origin, system_name = "reference", None
    else:
        origin, system_name = "system", model.split("-")[0]
    pair = make_pair(
        pair_id=record["id"],
        dataset=_DATASETS[record["corpus"]],
        summary_origin=origin,
        sentence_texts=sentences,
        summary=" ".join(record["gen_summary"].split()),
        system_name=system_name,
    )

    verdicts = record["summary_label"]
    labels = [a["label"] for a in annotations]
    annotator_records = []
    for k, verdict in enumerate(verdicts):
        annotator_records.append(
            AnnotationRecord(
                pair_id=pair.pair_id,
                annotator_id=f"a{k}",
                sentence_labels=tuple(lab[k] if k < len(lab) else 0 for lab in labels),
                reconstructability="yes" if verdict == 1 else "no",
            )
        )

    source_positions = set(record["rel_sent_positions"])
    gold = GoldLabels(
        pair_id=pair.pair_id,
        votes=tuple(sum(lab) for lab in labels),
        n_annotators=max(len(verdicts), max(len(lab) for lab in labels)),
        binary_sources=tuple((i + 1) in source_positions for i in range(len(labels))),
    )
    return pair, annotator_records, gold


def convert_file(in_path: str, out_dir: str, stem: str | None = None) -> dict[str, str]:
    """Convert one release JSON file into pairs/annotations/gold line files."""
    with open(in_path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError(f"{in_path}: expected a non-empty JSON array")
    pairs, records, gold = [], [], []
    for rec in data:
        p, r, g = convert_record(rec)
        pairs.append(p)
        records.extend(r)
        gold.append(g)
    if stem is None:
        stem = pairs[0].split_label()
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "pairs": os.path.join(out_dir, f"{stem}.pairs.jsonl"),
        "annotations": os.path.join(out_dir, f"{stem}.annotations.jsonl"),
        "gold": os.path.join(out_dir, f"{stem}.gold.jsonl"),
    }
    write_pairs(pairs, paths["pairs"])
    write_annotations(records, paths["annotations"])
    write_gold(gold, paths["gold"])
    return paths


def convert_release(release_data_dir: str, out_dir: str) -> list[str]:
    """Convert the four filtered splits plus their unfiltered *_all variants."""
    written = []
    for name, split in RELEASE_SPLITS.items():
        for suffix in ("", "_all"):
            in_path = os.path.join(release_data_dir, f"{name}{suffix}.json")
            if not os.path.exists(in_path):
                if suffix == "":
                    raise FileNotFoundError(f"release split file missing: {in_path}")
                continue
            paths = convert_file(in_path, out_dir, stem=f"{split}{suffix}")
            written.extend(paths.values())
    return written


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: python -m srcsent.release <release-data-dir> <out-dir>", file=sys.stderr)
        return 2
    for path in convert_release(argv[0], argv[1]):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
