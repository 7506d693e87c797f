"""Rule-based sentence boundary detection.

Splits after a run of terminal punctuation (``. ! ?``) followed by
whitespace, unless the token ending there is a known abbreviation. Blank
lines always force a boundary, so headline-style fragments without terminal
punctuation still come out as their own sentences. The produced spans tile
every non-whitespace character of the input exactly once, in order.

The released benchmark corpora ship pre-segmented; this exists so new
documents can be brought into the same shape.
"""

import re
from dataclasses import dataclass

from .models import Sentence

# Titles, units and Latin shorthands that end with a period mid-sentence.
# Deliberately excludes bare initials ("A.") so enumerations still split.
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "Mt.", "Ft.",
        "Capt.", "Col.", "Gen.", "Lt.", "Sgt.", "Maj.", "Cmdr.", "Rev.", "Hon.",
        "Pres.", "Gov.", "Sen.", "Rep.", "Supt.", "Det.",
        "vs.", "etc.", "e.g.", "i.e.", "cf.", "al.", "ca.", "approx.",
        "Inc.", "Ltd.", "Corp.", "Co.", "Bros.", "No.", "Nos.", "Dept.", "Univ.",
        "Ave.", "Blvd.", "Rd.", "Hwy.",
        "a.m.", "p.m.", "U.S.", "U.K.", "U.N.", "E.U.", "D.C.",
        "Jan.", "Feb.", "Mar.", "Apr.", "Jun.", "Jul.", "Aug.", "Sep.", "Sept.",
        "Oct.", "Nov.", "Dec.",
    }
)

_TERMINALS = ".!?"
_CLOSERS = "\"')]}’”»"

_BLANK_LINE_RE = re.compile(r"\n[ \t\r]*\n")


@dataclass(frozen=True)
class SegmenterProfile:
    """Tunable knobs for :func:`segment`.

    ``max_sentences`` rejects over-long documents when set (annotation
    pipelines cap document length to keep the task tractable; off by default).
    """

    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
    max_sentences: int | None = None

    def is_abbreviation(self, token: str) -> bool:
        return token in self.abbreviations or token + "." in self.abbreviations


DEFAULT_PROFILE = SegmenterProfile()


def segment(text: str, profile: SegmenterProfile = DEFAULT_PROFILE) -> list[Sentence]:
    """Split ``text`` into sentences with character spans into ``text``.

    Raises ValueError for empty/whitespace-only input and (when the profile
    caps it) for documents with too many sentences.
    """
    if not text.strip():
        raise ValueError("cannot segment empty or whitespace-only text")

    breaks = _break_offsets(text, profile)
    spans: list[tuple[int, int]] = []
    start = 0
    for off in breaks + [len(text)]:
        span = _trim(text, start, off)
        if span is not None:
            spans.append(span)
        start = off

    if profile.max_sentences is not None and len(spans) > profile.max_sentences:
        raise ValueError(f"document has {len(spans)} sentences, profile allows at most {profile.max_sentences}")

    return [Sentence(index=i, text=" ".join(text[lo:hi].split()), char_span=(lo, hi)) for i, (lo, hi) in enumerate(spans)]


def _trim(text: str, lo: int, hi: int) -> tuple[int, int] | None:
    while lo < hi and text[lo].isspace():
        lo += 1
    while hi > lo and text[hi - 1].isspace():
        hi -= 1
    return (lo, hi) if hi > lo else None


def _break_offsets(text: str, profile: SegmenterProfile) -> list[int]:
    offsets = set()
    for m in _BLANK_LINE_RE.finditer(text):
        offsets.add(m.start())

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch not in _TERMINALS:
            i += 1
            continue
        # absorb a run of terminals plus closing quotes/brackets
        j = i + 1
        while j < n and text[j] in _TERMINALS + _CLOSERS:
            j += 1
        if j < n and not text[j].isspace():
            i = j
            continue
        if ch == "." and profile.is_abbreviation(_token_ending_at(text, i)):
            i = j
            continue
        if j < n:
            offsets.add(j)
        i = j
    return sorted(offsets)


def _token_ending_at(text: str, dot: int) -> str:
    """The whitespace-delimited token whose final character is ``text[dot]``."""
    lo = dot
    while lo > 0 and not text[lo - 1].isspace():
        lo -= 1
    return text[lo : dot + 1]
