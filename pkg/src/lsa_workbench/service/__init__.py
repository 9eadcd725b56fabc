"""Loopback HTTP service and file-backed project storage."""

from lsa_workbench.service.app import (
    AdapterClient,
    AdapterUnavailableError,
    create_app,
    ensure_loopback_url,
)
from lsa_workbench.service.store import (
    NotFoundError,
    ProjectStore,
    RevisionConflictError,
    StoreError,
    TranscriptMeta,
)

__all__ = [
    "AdapterClient",
    "AdapterUnavailableError",
    "NotFoundError",
    "ProjectStore",
    "RevisionConflictError",
    "StoreError",
    "TranscriptMeta",
    "create_app",
    "ensure_loopback_url",
]
