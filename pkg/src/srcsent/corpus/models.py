"""Core data model: documents, summary sentences, annotations, gold labels.

A pair couples one document with exactly one summary sentence; documents whose
summaries span several sentences are split upstream into one pair per summary
sentence. The pair is the unit of annotation, scoring and evaluation
throughout the toolkit.
"""

import re
from dataclasses import dataclass, field

DATASETS = ("xsum", "cnndm", "other")
SUMMARY_ORIGINS = ("reference", "system")
RECONSTRUCTABILITY = ("yes", "partly", "no")


def _ws_norm(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class Sentence:
    """One input sentence with its position and character span in the document."""

    index: int
    text: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class DocumentSummaryPair:
    pair_id: str
    dataset: str
    summary_origin: str
    sentences: tuple[Sentence, ...]
    summary: str
    raw_document: str
    system_name: str | None = None

    def __post_init__(self):
        validate_pair(self)

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    def sentence_texts(self) -> list[str]:
        return [s.text for s in self.sentences]

    def document_without(self, index: int) -> str:
        """The document with one sentence deleted, remaining order preserved,
        re-joined with single spaces."""
        if not 0 <= index < len(self.sentences):
            raise ValueError(f"sentence index {index} out of range for pair {self.pair_id!r}")
        return " ".join(s.text for s in self.sentences if s.index != index)

    def joined_document(self) -> str:
        return " ".join(s.text for s in self.sentences)

    def split_label(self) -> str:
        """Grouping key of the form ``<dataset>_<reference|system name>``."""
        if self.summary_origin == "reference":
            return f"{self.dataset}_reference"
        return f"{self.dataset}_{(self.system_name or 'system').lower()}"


def validate_pair(pair: DocumentSummaryPair) -> None:
    """Check the structural invariants; raise ValueError with the pair id on failure.

    The one-summary-sentence rule is an upstream contract of the data producer
    and is not re-checked here (a rule segmenter would misfire on
    abbreviations); only emptiness is rejected.
    """
    pid = pair.pair_id
    if not pid:
        raise ValueError("pair_id must be a non-empty string")
    if pair.dataset not in DATASETS:
        raise ValueError(f"pair {pid!r}: unknown dataset {pair.dataset!r} (expected one of {DATASETS})")
    if pair.summary_origin not in SUMMARY_ORIGINS:
        raise ValueError(
            f"pair {pid!r}: unknown summary_origin {pair.summary_origin!r} (expected one of {SUMMARY_ORIGINS})"
        )
    if not pair.sentences:
        raise ValueError(f"pair {pid!r}: needs at least one sentence")
    if not _ws_norm(pair.summary):
        raise ValueError(f"pair {pid!r}: summary is empty")
    prev_end = None
    for pos, sent in enumerate(pair.sentences):
        if sent.index != pos:
            raise ValueError(f"pair {pid!r}: sentence indices must be contiguous from 0, got {sent.index} at {pos}")
        lo, hi = sent.char_span
        if not (0 <= lo < hi <= len(pair.raw_document)):
            raise ValueError(f"pair {pid!r}: sentence {pos} char_span {sent.char_span} out of bounds")
        if prev_end is not None and lo < prev_end:
            raise ValueError(f"pair {pid!r}: sentence {pos} char_span overlaps its predecessor")
        prev_end = hi
        if _ws_norm(pair.raw_document[lo:hi]) != _ws_norm(sent.text):
            raise ValueError(f"pair {pid!r}: sentence {pos} text does not match raw_document at {sent.char_span}")


def make_pair(
    pair_id: str,
    dataset: str,
    summary_origin: str,
    sentence_texts: list[str],
    summary: str,
    raw_document: str | None = None,
    system_name: str | None = None,
) -> DocumentSummaryPair:
    """Build a pair from plain sentence strings.

    When ``raw_document`` is omitted it is the single-space join of the
    sentences and spans are positioned accordingly; otherwise each sentence is
    located in the raw document in order (whitespace-insensitively).
    """
    if raw_document is None:
        sentences = []
        cursor = 0
        parts = []
        for i, text in enumerate(sentence_texts):
            if i > 0:
                cursor += 1
            sentences.append(Sentence(index=i, text=text, char_span=(cursor, cursor + len(text))))
            parts.append(text)
            cursor += len(text)
        raw_document = " ".join(parts)
    else:
        sentences = []
        cursor = 0
        for i, text in enumerate(sentence_texts):
            span = _locate(raw_document, text, cursor)
            if span is None:
                raise ValueError(f"pair {pair_id!r}: sentence {i} not found in raw_document after offset {cursor}")
            sentences.append(Sentence(index=i, text=text, char_span=span))
            cursor = span[1]
    return DocumentSummaryPair(
        pair_id=pair_id,
        dataset=dataset,
        summary_origin=summary_origin,
        sentences=tuple(sentences),
        summary=summary,
        raw_document=raw_document,
        system_name=system_name,
    )


def _locate(document: str, sentence: str, start: int) -> tuple[int, int] | None:
    """Span of ``sentence`` in ``document`` at or after ``start``.

    Tries an exact match first, then a whitespace-flexible one so documents
    with original line breaks still load.
    """
    pos = document.find(sentence, start)
    if pos >= 0:
        return (pos, pos + len(sentence))
    words = sentence.split()
    if not words:
        return None
    pattern = r"\s+".join(re.escape(w) for w in words)
    m = re.compile(pattern).search(document, start)
    if m:
        return (m.start(), m.end())
    return None


@dataclass(frozen=True)
class AnnotationRecord:
    """One annotator's pass over one pair: a binary contributes/not label per
    sentence, then a reconstructability verdict for the summary."""

    pair_id: str
    annotator_id: str
    sentence_labels: tuple[int, ...]
    reconstructability: str

    def __post_init__(self):
        if not self.pair_id:
            raise ValueError("annotation record needs a pair_id")
        if not self.annotator_id:
            raise ValueError(f"annotation for pair {self.pair_id!r} needs an annotator_id")
        if not self.sentence_labels:
            raise ValueError(f"annotation for pair {self.pair_id!r} has no sentence labels")
        for i, lab in enumerate(self.sentence_labels):
            if lab not in (0, 1):
                raise ValueError(
                    f"annotation for pair {self.pair_id!r}: label at sentence {i} must be 0 or 1, got {lab!r}"
                )
        if self.reconstructability not in RECONSTRUCTABILITY:
            raise ValueError(
                f"annotation for pair {self.pair_id!r}: reconstructability must be one of"
                f" {RECONSTRUCTABILITY}, got {self.reconstructability!r}"
            )


@dataclass(frozen=True)
class GoldLabels:
    """Aggregated annotator votes per sentence.

    ``binary_sources`` is the relevance set used by binary metrics. Gold
    aggregated by this toolkit binarizes at two agreeing annotators;
    published benchmark gold was binarized by per-sentence annotator
    majority, which marks single-vote sources where only one annotator saw a
    sentence, so the type admits any source backed by at least one vote.
    """

    pair_id: str
    votes: tuple[int, ...]
    n_annotators: int
    binary_sources: tuple[bool, ...]

    def __post_init__(self):
        if self.n_annotators < 1:
            raise ValueError(f"gold labels for pair {self.pair_id!r}: n_annotators must be positive")
        if len(self.votes) != len(self.binary_sources):
            raise ValueError(f"gold labels for pair {self.pair_id!r}: votes/binary_sources length mismatch")
        for i, v in enumerate(self.votes):
            if not 0 <= v <= self.n_annotators:
                raise ValueError(
                    f"gold labels for pair {self.pair_id!r}: votes[{i}]={v} outside 0..{self.n_annotators}"
                )
            if self.binary_sources[i] and v < 1:
                raise ValueError(
                    f"gold labels for pair {self.pair_id!r}: binary source at {i} has no supporting vote"
                )

    @property
    def n_sources(self) -> int:
        return sum(self.binary_sources)

    def source_positions(self) -> list[int]:
        """1-based positions of the binarized source sentences."""
        return [i + 1 for i, flag in enumerate(self.binary_sources) if flag]


@dataclass(frozen=True)
class CorpusStats:
    """Per-split corpus aggregates (means over pairs)."""

    n_pairs: int
    mean_sentences: float
    mean_source_sentences: float
    source_sentence_ratio: float
    mean_input_tokens: float
    mean_summary_tokens: float
    novel_ngram_rate: dict[int, float] = field(default_factory=dict)
