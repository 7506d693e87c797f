"""Turning a score vector into a concrete source-sentence subset."""

from dataclasses import dataclass

from ..corpus.models import DocumentSummaryPair, make_pair
from ..scorers.vector import ScoreVector
from .config import SelectionRule


@dataclass(frozen=True)
class SelectionResult:
    pair_id: str
    method: str
    selected: tuple[int, ...]  # ascending sentence indices
    rule: str

    def to_record(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "method": self.method,
            "selected": list(self.selected),
            "rule": self.rule,
        }


def select_sources(scores: ScoreVector, rule: SelectionRule) -> SelectionResult:
    """Apply a threshold or top-k rule to one score vector.

    Threshold keeps strictly greater scores. Top-k keeps the k best with
    ties resolved to the earlier sentence, capped at the sentence count.
    """
    if rule.threshold is not None:
        selected = tuple(i for i, s in enumerate(scores.scores) if s > rule.threshold)
    else:
        k = min(rule.top_k, len(scores.scores))
        selected = tuple(sorted(scores.ranking()[:k]))
    return SelectionResult(
        pair_id=scores.pair_id,
        method=scores.method,
        selected=selected,
        rule=rule.describe(),
    )


def export_filtered_document(pair: DocumentSummaryPair, selection: SelectionResult) -> DocumentSummaryPair:
    """A new pair containing only the selected sentences, in original order.

    The pair id gains a "-srconly" suffix so exports cannot collide with
    their sources in a corpus file.
    """
    if selection.pair_id != pair.pair_id:
        raise ValueError(f"selection is for pair {selection.pair_id!r}, not {pair.pair_id!r}")
    if not selection.selected:
        raise ValueError(f"pair {pair.pair_id!r}: selection is empty, nothing to export")
    for idx in selection.selected:
        if not 0 <= idx < pair.n_sentences:
            raise ValueError(f"pair {pair.pair_id!r}: selected index {idx} out of range")
    texts = [pair.sentences[i].text for i in sorted(set(selection.selected))]
    return make_pair(
        pair_id=pair.pair_id + "-srconly",
        dataset=pair.dataset,
        summary_origin=pair.summary_origin,
        sentence_texts=texts,
        summary=pair.summary,
        system_name=pair.system_name,
    )
