"""Shared fixtures: repository paths, parsed corpus documents, a live
service instance, and a subprocess CLI runner."""

from __future__ import annotations

import subprocess
import sys
import threading
from pathlib import Path

import pytest

from croissant_rai import builtin, parse
from croissant_rai.service import create_server

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"

CORPUS = ("hls-burn-scars", "dices-350", "bigscience-roots")


@pytest.fixture(scope="session")
def registry():
    return builtin()


@pytest.fixture(scope="session")
def fixture_bytes():
    return {name: (FIXTURES / f"{name}.json").read_bytes() for name in CORPUS}


@pytest.fixture(scope="session")
def fixture_docs(fixture_bytes):
    return {name: parse(data) for name, data in fixture_bytes.items()}


class CliResult:
    """Subprocess outcome with both decoded and exact byte streams."""

    def __init__(self, proc: subprocess.CompletedProcess):
        self.returncode = proc.returncode
        self.stdout_bytes: bytes = proc.stdout
        self.stderr_bytes: bytes = proc.stderr
        self.stdout = proc.stdout.decode("utf-8")
        self.stderr = proc.stderr.decode("utf-8")


def run_cli(*args: str, stdin: bytes | None = None, env: dict | None = None) -> CliResult:
    """Run the installed CLI in a subprocess."""
    import os

    merged = dict(os.environ)
    merged.pop("RAI_VOCAB_EXT", None)
    if env:
        merged.update(env)
    proc = subprocess.run(
        [sys.executable, "-m", "croissant_rai.cli", *args],
        input=stdin,
        capture_output=True,
        cwd=REPO_ROOT,
        env=merged,
    )
    return CliResult(proc)


@pytest.fixture(scope="session")
def cli():
    return run_cli


@pytest.fixture(scope="session")
def service_url():
    server = create_server("127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[0], server.server_address[1]
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()
