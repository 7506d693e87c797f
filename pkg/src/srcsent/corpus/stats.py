"""Corpus-level statistics: abstractiveness and source-sentence aggregates."""

from collections.abc import Mapping, Sequence

from .models import CorpusStats, DocumentSummaryPair, GoldLabels
from .tokenization import Tokenizer, ngrams, tokenize


def novel_ngram_rate(pair: DocumentSummaryPair, n: int, tokenizer: Tokenizer = tokenize) -> float:
    """Fraction of summary n-grams (with multiplicity) absent from the document.

    0.0 means the summary is fully covered by document n-grams; 1.0 means
    none of its n-grams occur in the document. Raises ValueError when the
    summary tokenizes to fewer than ``n`` tokens.
    """
    if not 1 <= n:
        raise ValueError(f"n must be >= 1, got {n}")
    summary_tokens = tokenizer(pair.summary)
    if len(summary_tokens) < n:
        raise ValueError(
            f"pair {pair.pair_id!r}: summary has {len(summary_tokens)} tokens, cannot take {n}-grams"
        )
    doc_ngrams = set(ngrams(tokenizer(pair.raw_document), n))
    summary_ngrams = ngrams(summary_tokens, n)
    novel = sum(1 for g in summary_ngrams if g not in doc_ngrams)
    return novel / len(summary_ngrams)


def corpus_stats(
    pairs: Sequence[DocumentSummaryPair],
    gold: Mapping[str, GoldLabels],
    tokenizer: Tokenizer = tokenize,
    ngram_orders: Sequence[int] = (1, 2, 3, 4),
) -> CorpusStats:
    """Means over pairs: sentence counts, binarized source counts, token
    lengths and novel n-gram rates.

    Pairs whose summary is shorter than ``n`` tokens are left out of the
    n-gram rate for that order only. Token lengths use the supplied tokenizer,
    so they approximate, not reproduce, counts from any specific subword
    vocabulary.
    """
    if not pairs:
        raise ValueError("corpus_stats needs at least one pair")
    for pair in pairs:
        if pair.pair_id not in gold:
            raise ValueError(f"pair {pair.pair_id!r} has no gold labels")

    n_pairs = len(pairs)
    total_sentences = sum(p.n_sentences for p in pairs)
    total_sources = sum(gold[p.pair_id].n_sources for p in pairs)
    total_input_tokens = sum(len(tokenizer(p.raw_document)) for p in pairs)
    total_summary_tokens = sum(len(tokenizer(p.summary)) for p in pairs)

    novel: dict[int, float] = {}
    for n in ngram_orders:
        rates = []
        for pair in pairs:
            if len(tokenizer(pair.summary)) < n:
                continue
            rates.append(novel_ngram_rate(pair, n, tokenizer))
        if rates:
            novel[n] = sum(rates) / len(rates)

    mean_sentences = total_sentences / n_pairs
    mean_sources = total_sources / n_pairs
    return CorpusStats(
        n_pairs=n_pairs,
        mean_sentences=mean_sentences,
        mean_source_sentences=mean_sources,
        source_sentence_ratio=mean_sources / mean_sentences,
        mean_input_tokens=total_input_tokens / n_pairs,
        mean_summary_tokens=total_summary_tokens / n_pairs,
        novel_ngram_rate=novel,
    )
