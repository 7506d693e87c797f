"""srcsent: find and evaluate the input sentences behind abstractive summaries.

A summary sentence usually condenses a handful of document sentences. This
toolkit scores every input sentence for how much it contributed (lexical
overlap, embedding similarity, graph centrality, prompt-LLM judgment,
cross-attention mass, or the perplexity gained by deleting it), evaluates
those scores against annotator votes with ranking metrics, and ships the
annotation workflow that produces the votes in the first place.
"""

from . import corpus, metrics, pipeline, scorers
from .corpus import DocumentSummaryPair, GoldLabels, Sentence, load_pairs, segment
from .scorers import ScoreVector

__version__ = "0.1.0"

__all__ = [
    "DocumentSummaryPair",
    "GoldLabels",
    "ScoreVector",
    "Sentence",
    "corpus",
    "load_pairs",
    "metrics",
    "pipeline",
    "scorers",
    "segment",
    "__version__",
]
