"""Instruction-following LLM as a sentence scorer.

Each sentence is judged independently: the model sees the summary and one
sentence and is asked for a 0-100 contribution score, which is parsed from
the completion and rescaled to [0, 1].
"""

import json
import re
import time
import urllib.error
import urllib.request
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Protocol

from ..corpus.models import DocumentSummaryPair
from ..errors import BackendError
from .vector import ScoreVector

SCORING_PROMPT = """\
This task is to identify the sentences in a document that contribute to a given summary of that document. This annotation is a sentence-labeling task. For each snippet, you'll see a summary (labeled Summary:) and a sentence of a short news article (labeled Sentence:).

The output will be a score from 0 to 100, 0 with "doesn't contribute to summary" with the highest confidence and 100 with "contribute to summary" with the highest confidence.

Summary: {summary}
Sentence: {sentence}

Score:"""


class CompletionBackend(Protocol):
    """Text-completion service: one prompt in, one completion out."""

    descriptor: str

    def complete(self, prompt: str, max_tokens: int, temperature: float) -> str: ...


@dataclass
class ConstantCompletionBackend:
    """Always answers the same text. A stand-in for dry runs and tests."""

    text: str = "50"

    @property
    def descriptor(self) -> str:
        return f"constant:{self.text}"

    def complete(self, prompt: str, max_tokens: int, temperature: float) -> str:
        return self.text


@dataclass
class WireCompletionBackend:
    """JSON-over-HTTP completion endpoint.

    Request body {"prompt", "max_tokens", "temperature"}, response {"text"}.
    """

    url: str
    timeout: float = 30.0
    retries: int = 3
    backoff: float = 1.0
    _sleep: Callable[[float], None] = time.sleep

    @property
    def descriptor(self) -> str:
        return f"wire:{self.url}"

    def complete(self, prompt: str, max_tokens: int, temperature: float) -> str:
        payload = json.dumps({"prompt": prompt, "max_tokens": max_tokens, "temperature": temperature}).encode("utf-8")
        last: Exception | None = None
        for attempt in range(self.retries):
            if attempt:
                self._sleep(self.backoff * 2 ** (attempt - 1))
            request = urllib.request.Request(self.url, data=payload, headers={"Content-Type": "application/json"})
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                    body = json.loads(resp.read().decode("utf-8"))
                return body["text"]
            except (urllib.error.URLError, TimeoutError, OSError, json.JSONDecodeError, KeyError) as exc:
                last = exc
        raise BackendError(f"completion endpoint {self.url} failed after {self.retries} attempts: {last}")


_INT_RE = re.compile(r"\d+")


def parse_score(completion: str) -> int | None:
    """First integer in [0, 100] found in the completion, else None."""
    m = _INT_RE.search(completion)
    if m is None:
        return None
    value = int(m.group())
    return value if 0 <= value <= 100 else None


def render_prompt(summary: str, sentence: str) -> str:
    return SCORING_PROMPT.format(summary=summary, sentence=sentence)


@dataclass(frozen=True)
class PromptScorerConfig:
    retries: int = 3
    max_tokens: int = 8
    temperature: float = 0.0
    concurrency: int = 1

    def describe(self) -> dict[str, Any]:
        return {"retries": self.retries, "max_tokens": self.max_tokens, "temperature": self.temperature}


def prompt_llm_score(
    pair: DocumentSummaryPair,
    backend: CompletionBackend,
    config: PromptScorerConfig = PromptScorerConfig(),
) -> ScoreVector:
    """Ask the backend to rate each sentence; scores come back in [0, 1].

    An unparseable completion is retried up to ``config.retries`` times and
    then raises a BackendError naming the sentence. Backend calls may run
    concurrently, but scores are emitted in sentence order.
    """

    def score_one(index: int) -> float:
        prompt = render_prompt(pair.summary, pair.sentences[index].text)
        for _ in range(config.retries):
            completion = backend.complete(prompt, config.max_tokens, config.temperature)
            value = parse_score(completion)
            if value is not None:
                return value / 100.0
        raise BackendError(
            f"pair {pair.pair_id!r}: no score in completion for sentence {index}"
            f" after {config.retries} attempts"
        )

    indices = range(pair.n_sentences)
    if config.concurrency > 1:
        with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
            scores = tuple(pool.map(score_one, indices))
    else:
        scores = tuple(score_one(i) for i in indices)
    metadata = dict(config.describe(), backend=backend.descriptor)
    return ScoreVector(pair_id=pair.pair_id, method="prompt_llm", scores=scores, metadata=metadata)
