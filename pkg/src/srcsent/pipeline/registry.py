"""Method registry: names the scorers the pipeline can run and what each needs."""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from ..corpus.models import DocumentSummaryPair
from ..scorers.attention import AttentionDump, cross_attention_score
from ..scorers.backends import ConditionalBackend
from ..scorers.embedding import EmbeddingBundle, score_bertscore, score_embedding_cosine
from ..scorers.lexrank import LexRankConfig, lexrank
from ..scorers.perplexity import perplexity_gain, pmi_score
from ..scorers.prompt import CompletionBackend, PromptScorerConfig, prompt_llm_score
from ..scorers.rouge import RougeConfig, score_rouge
from ..scorers.vector import ScoreVector

# resource kinds a method may declare
RES_EMBEDDINGS = "embeddings"
RES_ATTENTION = "attention"
RES_CONDITIONAL = "conditional"
RES_COMPLETION = "completion"


@dataclass
class Resources:
    """Everything backend-ish a scoring run may draw on."""

    completion: CompletionBackend | None = None
    conditional: ConditionalBackend | None = None
    bundles: dict[str, EmbeddingBundle] = field(default_factory=dict)
    attention: dict[str, AttentionDump] = field(default_factory=dict)

    def backend_descriptor(self, requires: str | None) -> str | None:
        """Stable identity of the resource a method reads, for cache keys."""
        if requires == RES_COMPLETION and self.completion is not None:
            return self.completion.descriptor
        if requires == RES_CONDITIONAL and self.conditional is not None:
            return self.conditional.descriptor
        if requires in (RES_EMBEDDINGS, RES_ATTENTION):
            return requires
        return None


Scorer = Callable[[DocumentSummaryPair, dict[str, Any], Resources], ScoreVector]


@dataclass(frozen=True)
class MethodSpec:
    name: str
    requires: str | None
    run: Scorer


def _run_rouge(pair, params, resources):
    return score_rouge(pair, RougeConfig(**params))


def _run_lexrank(pair, params, resources):
    return lexrank(pair, LexRankConfig(**params))


def _need_bundle(pair, resources):
    bundle = resources.bundles.get(pair.pair_id)
    if bundle is None:
        raise ValueError(f"no embedding bundle for pair {pair.pair_id!r}")
    return bundle


def _run_bertscore(pair, params, resources):
    return score_bertscore(pair, _need_bundle(pair, resources))


def _run_embedding_cosine(pair, params, resources):
    return score_embedding_cosine(pair, _need_bundle(pair, resources))


def _run_prompt(pair, params, resources):
    return prompt_llm_score(pair, resources.completion, PromptScorerConfig(**params))


def _run_perplexity_gain(pair, params, resources):
    return perplexity_gain(pair, resources.conditional)


def _run_pmi(pair, params, resources):
    return pmi_score(pair, resources.conditional)


def _run_cross_attention(pair, params, resources):
    dump = resources.attention.get(pair.pair_id)
    if dump is None:
        raise ValueError(f"no attention dump for pair {pair.pair_id!r}")
    return cross_attention_score(pair, dump, **params)


REGISTRY: dict[str, MethodSpec] = {
    spec.name: spec
    for spec in (
        MethodSpec("rouge", None, _run_rouge),
        MethodSpec("lexrank", None, _run_lexrank),
        MethodSpec("bertscore", RES_EMBEDDINGS, _run_bertscore),
        MethodSpec("embedding_cosine", RES_EMBEDDINGS, _run_embedding_cosine),
        MethodSpec("prompt_llm", RES_COMPLETION, _run_prompt),
        MethodSpec("perplexity_gain", RES_CONDITIONAL, _run_perplexity_gain),
        MethodSpec("pmi", RES_CONDITIONAL, _run_pmi),
        MethodSpec("cross_attention", RES_ATTENTION, _run_cross_attention),
    )
}

BACKEND_FREE_METHODS = tuple(name for name, spec in REGISTRY.items() if spec.requires is None)


def get_method(name: str) -> MethodSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise ValueError(f"unknown method {name!r}; registered methods: {known}") from None
