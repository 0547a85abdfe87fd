"""Language-model client contract plus the scripted replay and live clients.

The scripted client replays transcript fixtures deterministically, matched
either by a content digest of the incoming prompt or by call sequence
position. Fixture files are JSONL: {"match": <digest or index>, "response":
<text>} per line.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol


class ModelClient(Protocol):
    def complete(
        self, prompt: str, *, temperature: float = 0.0, max_tokens: int = 2048
    ) -> str: ...


class ModelUnavailable(Exception):
    """The backing model cannot be reached or keeps failing."""


class MockMiss(Exception):
    """A scripted client got a prompt it has no fixture for."""


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


def approx_tokens(text: str) -> int:
    """Cheap token estimate (4 chars per token) for usage accounting."""
    return max(1, (len(text) + 3) // 4)


@dataclass
class TranscriptEntry:
    match: str | int  # sha256 digest of the prompt, or 0-based call index
    response: str
    prompt: str | None = None  # optional, kept for mock-miss diagnostics


class ScriptedClient:
    """Deterministic replay of a recorded transcript; safe to share."""

    def __init__(self, entries: list[TranscriptEntry]):
        self.entries = entries
        self._used = [False] * len(entries)
        self._calls = 0
        self._lock = threading.Lock()

    @classmethod
    def from_path(cls, path: str | Path) -> "ScriptedClient":
        entries = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            payload = json.loads(line)
            entries.append(
                TranscriptEntry(
                    match=payload["match"],
                    response=payload["response"],
                    prompt=payload.get("prompt"),
                )
            )
        return cls(entries)

    def complete(
        self, prompt: str, *, temperature: float = 0.0, max_tokens: int = 2048
    ) -> str:
        digest = prompt_digest(prompt)
        with self._lock:
            call_index = self._calls
            self._calls += 1
            for i, entry in enumerate(self.entries):
                if self._used[i]:
                    continue
                if entry.match == digest or entry.match == call_index:
                    self._used[i] = True
                    return entry.response
            nearest = next(
                (e.match for i, e in enumerate(self.entries) if not self._used[i]),
                None,
            )
        raise MockMiss(
            f"no fixture for call #{call_index} (prompt digest {digest[:12]}...); "
            f"nearest unused fixture match: {nearest!r}"
        )


class HttpModelClient:
    """OpenAI-style chat-completions client over HTTP.

    Configured from the environment: NL2CHART_API_URL, NL2CHART_MODEL, and
    the API key variable named by NL2CHART_API_KEY_VAR (default
    OPENAI_API_KEY). Non-gating: nothing in the test suite talks to it.
    """

    def __init__(
        self,
        api_url: str | None = None,
        model: str | None = None,
        api_key: str | None = None,
        timeout: float = 60.0,
        retries: int = 2,
    ):
        self.api_url = api_url or os.environ.get(
            "NL2CHART_API_URL", "https://api.openai.com/v1/chat/completions"
        )
        self.model = model or os.environ.get("NL2CHART_MODEL", "gpt-4o-mini")
        key_var = os.environ.get("NL2CHART_API_KEY_VAR", "OPENAI_API_KEY")
        self.api_key = api_key or os.environ.get(key_var, "")
        self.timeout = float(os.environ.get("NL2CHART_TIMEOUT", timeout))
        self.retries = int(os.environ.get("NL2CHART_RETRIES", retries))

    def complete(
        self, prompt: str, *, temperature: float = 0.0, max_tokens: int = 2048
    ) -> str:
        import httpx

        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "max_tokens": max_tokens,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"}
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                response = httpx.post(
                    self.api_url, json=body, headers=headers, timeout=self.timeout
                )
                response.raise_for_status()
                payload = response.json()
                return payload["choices"][0]["message"]["content"]
            except Exception as exc:  # noqa: BLE001 - wrapped below
                last_error = exc
        raise ModelUnavailable(str(last_error))


class CountingClient:
    """Wrapper that tallies calls and approximate token usage."""

    def __init__(self, inner: ModelClient):
        self.inner = inner
        self.calls = 0
        self.prompt_tokens = 0
        self.response_tokens = 0
        self._lock = threading.Lock()

    @property
    def total_tokens(self) -> int:
        return self.prompt_tokens + self.response_tokens

    def complete(
        self, prompt: str, *, temperature: float = 0.0, max_tokens: int = 2048
    ) -> str:
        response = self.inner.complete(
            prompt, temperature=temperature, max_tokens=max_tokens
        )
        with self._lock:
            self.calls += 1
            self.prompt_tokens += approx_tokens(prompt)
            self.response_tokens += approx_tokens(response)
        return response


def client_from_spec(spec: str) -> ModelClient:
    """Build a client from a spec string: ``scripted:<path>`` or ``live``."""
    if spec.startswith("scripted:"):
        return ScriptedClient.from_path(spec.split(":", 1)[1])
    if spec == "live" or spec.startswith("live:"):
        model = spec.split(":", 1)[1] if ":" in spec else None
        return HttpModelClient(model=model)
    raise ValueError(f"unknown client spec: {spec!r}")
