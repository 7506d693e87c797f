"""Synthetic corpora with a known answer, for verifying detectors end to end.

Each generated pair embeds one designated source sentence whose tokens
compose the summary among filler sentences drawn from a disjoint vocabulary.
Any sound detector must rank the designated sentence first, which makes
these corpora a ground truth that needs no annotators.
"""

import random
from dataclasses import dataclass

from .corpus.models import DocumentSummaryPair, make_pair

# two disjoint symbol inventories; fillers can never collide with a summary
SOURCE_VOCAB = tuple(f"alpha{i}" for i in range(40))
FILLER_VOCAB = tuple(f"beta{i}" for i in range(40))


@dataclass(frozen=True)
class SyntheticPair:
    pair: DocumentSummaryPair
    source_index: int

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.pair.joined_document().split()) | frozenset(self.pair.summary.split())


def generate_pair(rng: random.Random, pair_id: str, *, min_fillers: int = 4, max_fillers: int = 8) -> SyntheticPair:
    n_fillers = rng.randint(min_fillers, max_fillers)
    source_tokens = rng.sample(SOURCE_VOCAB, rng.randint(6, 10))
    summary_tokens = rng.sample(source_tokens, rng.randint(3, 5))

    sentences = []
    for _ in range(n_fillers):
        sentences.append(" ".join(rng.choices(FILLER_VOCAB, k=rng.randint(5, 9))))
    source_index = rng.randrange(n_fillers + 1)
    sentences.insert(source_index, " ".join(source_tokens))

    pair = make_pair(
        pair_id=pair_id,
        dataset="other",
        summary_origin="system",
        sentence_texts=sentences,
        summary=" ".join(summary_tokens),
        system_name="synthetic",
    )
    return SyntheticPair(pair=pair, source_index=source_index)


def generate_corpus(n_pairs: int, seed: int = 0, **kwargs) -> list[SyntheticPair]:
    rng = random.Random(seed)
    return [generate_pair(rng, f"synth-{i:04d}", **kwargs) for i in range(n_pairs)]
