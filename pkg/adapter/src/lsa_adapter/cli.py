"""Command line entry point: ``lsa-adapter serve``."""

from __future__ import annotations

import ipaddress

import click
import uvicorn

from .config import ConfigError, load_backend
from .service import create_app

_LOOPBACK_NAMES = {"localhost"}


def _is_loopback(host: str) -> bool:
    if host in _LOOPBACK_NAMES:
        return True
    try:
        return ipaddress.ip_address(host).is_loopback
    except ValueError:
        return False


@click.group()
def main() -> None:
    """Local inference sidecar for the analysis workbench."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8091, show_default=True, type=int)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON file naming the backend and model identifiers.",
)
@click.option(
    "--allow-remote-bind",
    is_flag=True,
    help="Permit binding a non-loopback interface (off by default).",
)
def serve(host: str, port: int, config_path: str | None, allow_remote_bind: bool) -> None:
    """Run the inference service on the loopback interface."""
    if not _is_loopback(host) and not allow_remote_bind:
        raise click.UsageError(
            f"refusing to bind non-loopback host {host!r}; "
            "pass --allow-remote-bind to override"
        )
    try:
        backend = load_backend(config_path)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc
    uvicorn.run(create_app(backend), host=host, port=port, log_level="warning")
