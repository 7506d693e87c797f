"""Aggregation of annotator records into gold labels and corpus filters."""

from collections import Counter
from collections.abc import Iterable, Sequence

from .models import AnnotationRecord, DocumentSummaryPair, GoldLabels

FILTER_POLICIES = ("strict_yes", "yes_or_partly")


def aggregate_votes(pair: DocumentSummaryPair, records: Sequence[AnnotationRecord]) -> GoldLabels:
    """Count contributes-votes per sentence and binarize at two agreeing annotators."""
    if not records:
        raise ValueError(f"pair {pair.pair_id!r}: no annotation records to aggregate")
    seen_annotators = set()
    votes = [0] * pair.n_sentences
    for rec in records:
        if rec.pair_id != pair.pair_id:
            raise ValueError(f"record for pair {rec.pair_id!r} passed while aggregating {pair.pair_id!r}")
        if rec.annotator_id in seen_annotators:
            raise ValueError(f"pair {pair.pair_id!r}: duplicate record by annotator {rec.annotator_id!r}")
        seen_annotators.add(rec.annotator_id)
        if len(rec.sentence_labels) != pair.n_sentences:
            raise ValueError(
                f"pair {pair.pair_id!r}: annotator {rec.annotator_id!r} labeled"
                f" {len(rec.sentence_labels)} sentences, pair has {pair.n_sentences}"
            )
        for i, lab in enumerate(rec.sentence_labels):
            votes[i] += lab
    return GoldLabels(
        pair_id=pair.pair_id,
        votes=tuple(votes),
        n_annotators=len(records),
        binary_sources=tuple(v >= 2 for v in votes),
    )


def gold_for_corpus(
    pairs: Sequence[DocumentSummaryPair],
    records: Iterable[AnnotationRecord],
    *,
    skip_unannotated: bool = False,
) -> dict[str, GoldLabels]:
    """Aggregate every pair's records into a pair_id -> GoldLabels map."""
    grouped = group_by_pair(records)
    gold: dict[str, GoldLabels] = {}
    for pair in pairs:
        recs = grouped.get(pair.pair_id)
        if not recs:
            if skip_unannotated:
                continue
            raise ValueError(f"pair {pair.pair_id!r} has no annotation records")
        gold[pair.pair_id] = aggregate_votes(pair, recs)
    return gold


def group_by_pair(records: Iterable[AnnotationRecord]) -> dict[str, list[AnnotationRecord]]:
    grouped: dict[str, list[AnnotationRecord]] = {}
    for rec in records:
        grouped.setdefault(rec.pair_id, []).append(rec)
    return grouped


def majority_verdict(verdicts: Sequence[str]) -> str | None:
    """The strictly most frequent verdict, or None on a tie for first place."""
    if not verdicts:
        raise ValueError("no verdicts given")
    counts = Counter(verdicts)
    ranked = counts.most_common()
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        return None
    return ranked[0][0]


def filter_reconstructable(
    pairs: Sequence[DocumentSummaryPair],
    records: Iterable[AnnotationRecord],
    policy: str = "strict_yes",
) -> list[DocumentSummaryPair]:
    """Keep pairs whose majority reconstructability verdict satisfies ``policy``.

    ``strict_yes`` keeps only majority-"yes" pairs; ``yes_or_partly`` also
    keeps majority-"partly". A tie for the most frequent verdict excludes the
    pair: a benchmark should not contain pairs its own annotators could not
    agree are self-contained.
    """
    if policy not in FILTER_POLICIES:
        raise ValueError(f"unknown policy {policy!r} (expected one of {FILTER_POLICIES})")
    accepted = {"yes"} if policy == "strict_yes" else {"yes", "partly"}
    grouped = group_by_pair(records)
    kept = []
    for pair in pairs:
        recs = grouped.get(pair.pair_id)
        if not recs:
            raise ValueError(f"pair {pair.pair_id!r} has no reconstructability verdicts")
        verdict = majority_verdict([r.reconstructability for r in recs])
        if verdict in accepted:
            kept.append(pair)
    return kept


def reconstructability_table(records_by_split: dict[str, Sequence[AnnotationRecord]]) -> dict[str, dict[str, float]]:
    """Fraction of yes/partly/no verdicts per split, each row summing to 1."""
    table: dict[str, dict[str, float]] = {}
    for split, records in records_by_split.items():
        if not records:
            raise ValueError(f"split {split!r} has no annotation records")
        counts = Counter(r.reconstructability for r in records)
        total = sum(counts.values())
        table[split] = {verdict: counts.get(verdict, 0) / total for verdict in ("yes", "partly", "no")}
    return table


def pair_reconstructability(records: Sequence[AnnotationRecord]) -> str:
    """One verdict for a whole pair: the annotators' majority, ties as "partly".

    Benchmarks collected with binary reconstructability phrasing report their
    three-way table at this level: a split vote is exactly the "partly
    reconstructable" case.
    """
    verdict = majority_verdict([r.reconstructability for r in records])
    return "partly" if verdict is None else verdict


def pair_reconstructability_table(
    records_by_split: dict[str, Sequence[AnnotationRecord]],
) -> dict[str, dict[str, float]]:
    """Fraction of pairs judged yes/partly/no per split, rows summing to 1."""
    table: dict[str, dict[str, float]] = {}
    for split, records in records_by_split.items():
        if not records:
            raise ValueError(f"split {split!r} has no annotation records")
        verdicts = [pair_reconstructability(recs) for recs in group_by_pair(records).values()]
        counts = Counter(verdicts)
        total = sum(counts.values())
        table[split] = {verdict: counts.get(verdict, 0) / total for verdict in ("yes", "partly", "no")}
    return table
