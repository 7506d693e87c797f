import threading

import pytest

from srcsent.corpus.models import make_pair
from srcsent.errors import BackendError
from srcsent.scorers.prompt import (
    PromptScorerConfig,
    parse_score,
    prompt_llm_score,
    render_prompt,
)


class ScriptedBackend:
    """Returns canned completions in order; records every prompt."""

    descriptor = "scripted"

    def __init__(self, completions):
        self.completions = list(completions)
        self.prompts = []
        self._lock = threading.Lock()

    def complete(self, prompt, max_tokens, temperature):
        with self._lock:
            self.prompts.append(prompt)
            return self.completions.pop(0)


def _pair(n=3):
    return make_pair("p", "other", "reference", [f"Sentence number {i}." for i in range(n)], "The summary.")


def test_prompt_contains_summary_and_sentence_slots():
    prompt = render_prompt("SUMMARY-TEXT", "SENTENCE-TEXT")
    assert "Summary: SUMMARY-TEXT" in prompt
    assert "Sentence: SENTENCE-TEXT" in prompt
    assert prompt.endswith("Score:")
    assert "score from 0 to 100" in prompt
    assert '"doesn\'t contribute to summary"' in prompt
    assert '"contribute to summary"' in prompt


def test_parse_score_rule():
    assert parse_score("100") == 100
    assert parse_score("Score: 42") == 42
    assert parse_score("I would say 7 out of 100") == 7
    assert parse_score("n/a") is None
    assert parse_score("200") is None
    assert parse_score("") is None


def test_all_hundreds_score_one():
    pair = _pair(3)
    backend = ScriptedBackend(["100"] * 3)
    vec = prompt_llm_score(pair, backend)
    assert vec.scores == (1.0, 1.0, 1.0)


def test_score_prefix_parsed():
    pair = _pair(1)
    backend = ScriptedBackend(["Score: 42"])
    vec = prompt_llm_score(pair, backend)
    assert vec.scores == (0.42,)


def test_retry_exhaustion_names_sentence():
    pair = _pair(2)
    backend = ScriptedBackend(["80", "n/a", "n/a", "n/a"])
    with pytest.raises(BackendError, match="sentence 1"):
        prompt_llm_score(pair, backend, PromptScorerConfig(retries=3))
    assert len(backend.prompts) == 4  # one success + three failed attempts


def test_retry_then_success():
    pair = _pair(1)
    backend = ScriptedBackend(["nope", "55"])
    vec = prompt_llm_score(pair, backend, PromptScorerConfig(retries=3))
    assert vec.scores == (0.55,)


def test_concurrent_calls_preserve_sentence_order():
    pair = _pair(6)

    class IndexedBackend:
        descriptor = "indexed"

        def complete(self, prompt, max_tokens, temperature):
            # answer depends only on which sentence is in the prompt
            for i in range(6):
                if f"Sentence number {i}." in prompt:
                    return str(i * 10)
            raise AssertionError("unknown prompt")

    vec = prompt_llm_score(pair, IndexedBackend(), PromptScorerConfig(concurrency=4))
    assert vec.scores == tuple(i * 10 / 100 for i in range(6))


def test_each_sentence_rendered_once():
    pair = _pair(3)
    backend = ScriptedBackend(["10", "20", "30"])
    prompt_llm_score(pair, backend)
    assert len(backend.prompts) == 3
    for i, prompt in enumerate(backend.prompts):
        assert f"Sentence number {i}." in prompt
        assert "The summary." in prompt
