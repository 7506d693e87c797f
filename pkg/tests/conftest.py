import random

import pytest

from srcsent.corpus.models import AnnotationRecord, DocumentSummaryPair, make_pair


def pytest_runtest_logreport(report):
    """One visible PASS/FAIL/SKIP line per acceptance criterion."""
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    elif report.when == "setup" and report.skipped:
        status = "SKIP"
    else:
        return
    print(f"ACCEPTANCE {name}: {status}", flush=True)

# a small but not degenerate corpus: varied sentence counts, shared vocabulary
# across some sentences, summaries lifted (with edits) from specific sentences
_DOCS = [
    (
        "xsum",
        "reference",
        None,
        [
            "The harbour board approved a plan to expand the ferry terminal.",
            "Local fishermen protested the decision outside the council offices.",
            "Construction is expected to begin early next year.",
            "The terminal currently handles two million passengers annually.",
        ],
        "The harbour board approved an expansion of the ferry terminal.",
    ),
    (
        "xsum",
        "system",
        "pegasus",
        [
            "A museum in the city centre reopened after a five year renovation.",
            "The renovation cost twelve million pounds.",
            "Visitors queued for hours on the first morning.",
            "Curators said the collection now spans three floors.",
            "The museum first opened in 1898.",
        ],
        "A city museum reopened after a twelve million pound renovation.",
    ),
    (
        "cnndm",
        "reference",
        None,
        [
            "Engineers completed the bridge inspection on Tuesday.",
            "The bridge carries forty thousand vehicles a day.",
            "Minor cracks were found in two support columns.",
            "Repairs are scheduled for the autumn.",
            "Commuters were warned to expect delays.",
            "The bridge opened in 1967.",
        ],
        "Engineers found minor cracks during a bridge inspection on Tuesday.",
    ),
    (
        "cnndm",
        "system",
        "pegasus",
        [
            "The chess club won the regional championship for the third time.",
            "Their captain scored a decisive victory in the final round.",
            "The club trains twice a week at the community hall.",
            "Membership has doubled since last season.",
        ],
        "The chess club won the regional championship again.",
    ),
]


def build_corpus() -> list[DocumentSummaryPair]:
    pairs = []
    for i, (dataset, origin, system, sentences, summary) in enumerate(_DOCS):
        pairs.append(
            make_pair(
                pair_id=f"pair-{i:02d}",
                dataset=dataset,
                summary_origin=origin,
                sentence_texts=sentences,
                summary=summary,
                system_name=system,
            )
        )
    return pairs


def build_annotations(pairs) -> list[AnnotationRecord]:
    """Three annotators with deterministic, mostly-agreeing labels."""
    rng = random.Random(7)
    records = []
    for pair in pairs:
        true = [1 if i < 2 else 0 for i in range(pair.n_sentences)]
        for annotator in ("ann-a", "ann-b", "ann-c"):
            labels = list(true)
            if rng.random() < 0.5:
                flip = rng.randrange(pair.n_sentences)
                labels[flip] = 1 - labels[flip]
            records.append(
                AnnotationRecord(
                    pair_id=pair.pair_id,
                    annotator_id=annotator,
                    sentence_labels=tuple(labels),
                    reconstructability=rng.choice(["yes", "yes", "partly", "no"]),
                )
            )
    return records


@pytest.fixture
def corpus():
    return build_corpus()


@pytest.fixture
def annotations(corpus):
    return build_annotations(corpus)


@pytest.fixture
def corpus_file(tmp_path, corpus):
    from srcsent.corpus.io import write_pairs

    path = tmp_path / "pairs.jsonl"
    write_pairs(corpus, str(path))
    return str(path)


@pytest.fixture
def annotation_file(tmp_path, annotations):
    from srcsent.corpus.io import write_annotations

    path = tmp_path / "annotations.jsonl"
    write_annotations(annotations, str(path))
    return str(path)
