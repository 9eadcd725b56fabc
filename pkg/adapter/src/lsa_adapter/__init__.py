"""Loopback inference sidecar: ASR transcription drafts and POS tagging.

The package exposes a small HTTP service (``lsa-adapter serve``) whose wire
format the analysis workbench consumes. The default backend is a stub that
needs no ML runtime; real model wrappers implement
:class:`lsa_adapter.backends.Backend` and are selected via a JSON config.
"""

from .backends import (
    AdapterError,
    Backend,
    StubBackend,
    TagsetMismatch,
    UnreadableAudio,
    UtteranceDraft,
)
from .config import ConfigError, load_backend
from .service import create_app

__all__ = [
    "AdapterError",
    "Backend",
    "ConfigError",
    "StubBackend",
    "TagsetMismatch",
    "UnreadableAudio",
    "UtteranceDraft",
    "create_app",
    "load_backend",
]

__version__ = "0.1.0"
