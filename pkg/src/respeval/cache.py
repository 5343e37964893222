"""Content-addressed cache for judge prompt/response pairs.

Entries are keyed by a SHA-256 hash of (system text, user text, model
identifier, temperature, max tokens) and are immutable once written; writes
go through a temp file and an atomic rename so concurrent batch workers
never observe partial entries.
"""

import hashlib
import json
import os
import threading

from .judge import ChatClient, JudgeConfig


def cache_key(system_text: str, user_text: str, config: JudgeConfig) -> str:
    payload = json.dumps(
        [system_text, user_text, config.model_identifier, config.temperature, config.max_tokens],
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class PromptCache:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get(self, key: str) -> str | None:
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)["response"]

    def put(self, key: str, response: str) -> None:
        path = self._path(key)
        if os.path.exists(path):
            return
        tmp = path + f".tmp{os.getpid()}.{threading.get_ident()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"response": response}, fh, ensure_ascii=False)
        os.replace(tmp, path)


class CachingChatClient:
    """ChatClient wrapper that consults the cache before any network call."""

    def __init__(self, inner: ChatClient, cache: PromptCache):
        self.inner = inner
        self.cache = cache
        self.network_calls = 0
        self._lock = threading.Lock()

    def complete(self, system_text: str, user_text: str, config: JudgeConfig) -> str:
        key = cache_key(system_text, user_text, config)
        cached = self.cache.get(key)
        if cached is not None:
            return cached
        with self._lock:
            self.network_calls += 1
        response = self.inner.complete(system_text, user_text, config)
        self.cache.put(key, response)
        return response


class ScriptedChatClient:
    """Deterministic client for tests and offline runs.

    script is a callable (system_text, user_text) -> str; every call is
    counted.
    """

    def __init__(self, script):
        self.script = script
        self.calls = 0
        self._lock = threading.Lock()

    def complete(self, system_text: str, user_text: str, config: JudgeConfig) -> str:
        with self._lock:
            self.calls += 1
        return self.script(system_text, user_text)
