"""Source-sentence relevance scorers and their backends."""

from .attention import (
    AttentionDump,
    attention_dump_from_record,
    attention_dump_to_record,
    cross_attention_score,
    load_attention_dumps,
    write_attention_dumps,
)
from .backends import (
    ConditionalBackend,
    CopyBiasedLM,
    DumpBackend,
    LogprobRecord,
    OracleBackend,
    WireBackend,
    load_logprob_records,
    oracle_logprobs,
    write_logprob_records,
)
from .embedding import (
    EmbeddingBundle,
    bertscore_f1,
    bundle_from_record,
    bundle_to_record,
    load_bundles,
    score_bertscore,
    score_embedding_cosine,
    write_bundles,
)
from .lexrank import LexRankConfig, lexrank
from .perplexity import perplexity, perplexity_gain, pmi_score
from .prompt import (
    SCORING_PROMPT,
    CompletionBackend,
    ConstantCompletionBackend,
    PromptScorerConfig,
    WireCompletionBackend,
    parse_score,
    prompt_llm_score,
    render_prompt,
)
from .rouge import RougeConfig, RougeScore, rouge, score_rouge, sentence_rouge
from .vector import ScoreVector, by_pair, load_score_vectors, write_score_vectors

__all__ = [
    "AttentionDump",
    "CompletionBackend",
    "ConditionalBackend",
    "ConstantCompletionBackend",
    "CopyBiasedLM",
    "DumpBackend",
    "EmbeddingBundle",
    "LexRankConfig",
    "LogprobRecord",
    "OracleBackend",
    "PromptScorerConfig",
    "RougeConfig",
    "RougeScore",
    "SCORING_PROMPT",
    "ScoreVector",
    "WireBackend",
    "WireCompletionBackend",
    "attention_dump_from_record",
    "attention_dump_to_record",
    "bertscore_f1",
    "bundle_from_record",
    "bundle_to_record",
    "by_pair",
    "cross_attention_score",
    "lexrank",
    "load_attention_dumps",
    "load_bundles",
    "load_logprob_records",
    "load_score_vectors",
    "oracle_logprobs",
    "parse_score",
    "perplexity",
    "perplexity_gain",
    "pmi_score",
    "prompt_llm_score",
    "render_prompt",
    "rouge",
    "score_bertscore",
    "score_embedding_cosine",
    "score_rouge",
    "sentence_rouge",
    "write_attention_dumps",
    "write_bundles",
    "write_logprob_records",
    "write_score_vectors",
]
