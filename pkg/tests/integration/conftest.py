"""Pytest fixtures for command-line tests."""

import json
from collections.abc import Callable
from pathlib import Path

import pytest

from ipk.cli import main

TEST_DIRECTORY = Path(__file__).parent


@pytest.fixture
def grid_file(tmp_path: Path) -> Callable[..., Path]:
    """Write an innovation grid CSV, one row per particle."""

    def write(rows: list[list[int]], header: bool = False) -> Path:
        path = tmp_path / "xi.csv"
        lines = []
        if header:
            lines.append(",".join(f"t{t + 1}" for t in range(len(rows[0]))))
        lines.extend(",".join(str(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n")
        return path

    return write


@pytest.fixture
def run_json(capsys: pytest.CaptureFixture[str]) -> Callable[..., tuple[int, dict]]:
    """Run the CLI with --format json and parse stdout."""

    def run(*argv: str) -> tuple[int, dict]:
        code = main([*argv, "--format", "json"])
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else {}

    return run
