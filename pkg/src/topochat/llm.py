"""Chat-completion backends behind one tiny interface.

A backend is anything with ``complete(messages, temperature) -> str``.
RemoteBackend speaks the common chat-completions wire shape over
authenticated POST; MockBackend replays scripted responses and records
every call, which keeps the whole test suite offline.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import requests

_ROLES = ("system", "user", "assistant")


class LlmError(Exception):
    pass


class LlmTimeout(LlmError):
    pass


class RemoteError(LlmError):
    def __init__(self, status: Optional[int], message: str):
        self.status = status
        super().__init__(message)


class NoScriptMatch(LlmError):
    pass


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self):
        if self.role not in _ROLES:
            raise ValueError(f"role must be one of {_ROLES}, got {self.role!r}")
        if not self.content:
            raise ValueError("message content must be non-empty")


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # remote or mock
    endpoint: str = ""
    model: str = ""
    credential_env: str = ""  # env var NAME; the secret itself is never stored
    timeout: float = 30.0
    max_retries: int = 2

    def __post_init__(self):
        if self.kind not in ("remote", "mock"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "remote" and (not self.endpoint or not self.model):
            raise ValueError("remote backend requires endpoint and model")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")


class RemoteBackend:
    """POSTs {model, messages, temperature}; retries transient failures
    (timeouts, connection errors, 5xx) with exponential backoff."""

    def __init__(self, config: BackendConfig, base_delay: float = 0.5):
        if config.kind != "remote":
            raise ValueError("RemoteBackend needs a remote config")
        self.config = config
        self.base_delay = base_delay

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.config.credential_env:
            secret = os.environ.get(self.config.credential_env, "")
            if secret:
                headers["Authorization"] = f"Bearer {secret}"
        return headers

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        payload = {
            "model": self.config.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": temperature,
        }
        last_error: LlmError = RemoteError(None, "no attempt made")
        delay = self.base_delay
        for attempt in range(self.config.max_retries + 1):
            try:
                resp = requests.post(
                    self.config.endpoint,
                    json=payload,
                    headers=self._headers(),
                    timeout=self.config.timeout,
                )
            except requests.Timeout:
                last_error = LlmTimeout(
                    f"no response within {self.config.timeout}s from {self.config.endpoint}"
                )
            except requests.RequestException as exc:
                last_error = RemoteError(None, f"cannot reach {self.config.endpoint}: {exc}")
            else:
                if resp.status_code >= 500:
                    last_error = RemoteError(resp.status_code, f"server error {resp.status_code}")
                elif resp.status_code != 200:
                    # client errors will not improve with retries
                    raise RemoteError(resp.status_code, f"request rejected: {resp.status_code}")
                else:
                    return _extract_text(resp)
            if attempt < self.config.max_retries:
                time.sleep(delay)
                delay *= 2
        raise last_error


def _extract_text(resp) -> str:
    try:
        data = resp.json()
        return data["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise RemoteError(200, f"malformed completion response: {exc}") from exc


@dataclass(frozen=True)
class MockRule:
    """Scripted response.  matchers: None matches any prompt, a string
    matches as substring, a tuple requires every substring.  times
    limits how often the rule fires (None = unlimited)."""

    response: str
    contains: Union[None, str, Tuple[str, ...]] = None
    times: Optional[int] = None


class MockBackend:
    def __init__(self, rules: Sequence[MockRule] = ()):
        self.rules = list(rules)
        self._fired = [0] * len(self.rules)
        self.calls: list[list[ChatMessage]] = []

    @classmethod
    def scripted(cls, *responses: str) -> "MockBackend":
        """Each response fires once, in order, for any prompt."""
        return cls([MockRule(response=r, times=1) for r in responses])

    def add_rule(self, rule: MockRule) -> None:
        self.rules.append(rule)
        self._fired.append(0)

    def complete(self, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
        self.calls.append(list(messages))
        text = "\n".join(m.content for m in messages)
        for i, rule in enumerate(self.rules):
            if rule.times is not None and self._fired[i] >= rule.times:
                continue
            if rule.contains is None:
                matched = True
            elif isinstance(rule.contains, str):
                matched = rule.contains in text
            else:
                matched = all(part in text for part in rule.contains)
            if matched:
                self._fired[i] += 1
                return rule.response
        raise NoScriptMatch(f"no scripted response matches call #{len(self.calls)}")


def make_backend(config: BackendConfig):
    if config.kind == "remote":
        return RemoteBackend(config)
    return MockBackend()


def complete(backend, messages: Sequence[ChatMessage], temperature: float = 0.0) -> str:
    return backend.complete(messages, temperature=temperature)
