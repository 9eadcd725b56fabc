"""Adapter configuration.

A small JSON file selects the backend and names the models it serves:

.. code-block:: json

    {
        "backend": "stub",
        "asr_model": "whisper-large-v3-swiss",
        "tagger_model": "stts-bert-base",
        "seconds_per_word": 0.4
    }

Every key is optional; omitted keys fall back to the stub defaults. The
model identifiers are echoed verbatim in service responses so downstream
storage can attribute drafts to the model that produced them.
"""

from __future__ import annotations

import json
from pathlib import Path

from .backends import Backend, StubBackend


class ConfigError(Exception):
    pass


_KNOWN_KEYS = {
    "backend",
    "asr_model",
    "tagger_model",
    "seconds_per_word",
    "gap_seconds",
    "extra_lexicon",
}


def load_backend(config_path: str | Path | None = None) -> Backend:
    """Build a backend from a JSON config file (or defaults when absent)."""
    if config_path is None:
        return StubBackend()
    raw = Path(config_path).read_text("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{config_path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path}: top level must be an object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"{config_path}: unknown keys {sorted(unknown)}")
    kind = data.get("backend", "stub")
    if kind != "stub":
        raise ConfigError(f"{config_path}: unknown backend {kind!r}")
    kwargs = {}
    for key in ("asr_model", "tagger_model"):
        if key in data:
            if not isinstance(data[key], str) or not data[key]:
                raise ConfigError(f"{config_path}: {key} must be a non-empty string")
            kwargs[key] = data[key]
    for key in ("seconds_per_word", "gap_seconds"):
        if key in data:
            value = data[key]
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError(f"{config_path}: {key} must be a positive number")
            kwargs[key] = float(value)
    if "extra_lexicon" in data:
        lex = data["extra_lexicon"]
        if not isinstance(lex, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in lex.items()
        ):
            raise ConfigError(f"{config_path}: extra_lexicon must map words to tags")
        kwargs["extra_lexicon"] = {k.lower(): v for k, v in lex.items()}
    return StubBackend(**kwargs)
