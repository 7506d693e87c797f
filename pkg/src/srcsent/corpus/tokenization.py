"""Word tokenization used by the lexical scorers and corpus statistics.

The default tokenizer lowercases and splits on anything that is not a word
character, which is the usual convention for lexical overlap metrics. Every
operation that tokenizes accepts any ``Callable[[str], list[str]]`` instead,
so token counts can be aligned with an external (e.g. subword) tokenizer by
dumping its output and wrapping it in a lookup.
"""

import re
from collections import Counter
from collections.abc import Callable, Sequence

Tokenizer = Callable[[str], list[str]]

_WORD_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; punctuation is dropped."""
    return _WORD_RE.findall(text.lower())


def ngrams(tokens: Sequence[str], n: int) -> list[tuple[str, ...]]:
    """All order-preserving n-grams of ``tokens`` (empty when len < n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(ngrams(tokens, n))
