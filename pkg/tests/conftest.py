"""Shared test fixtures for project-wide tests."""

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import pytest
from click.testing import CliRunner

from efgkit.core.registry import ToolRegistry


@pytest.fixture()
def runner() -> CliRunner:
    """Return a click test runner."""
    return CliRunner()


@pytest.fixture()
def config_dir(tmp_path: Path) -> Path:
    """Return an empty config directory so the user's own config never leaks in."""
    path = tmp_path / "cfg"
    path.mkdir()
    return path


@pytest.fixture()
def msa_a_file(tmp_path: Path) -> Path:
    """Write ACGT / ATGT as FASTA."""
    path = tmp_path / "a.fasta"
    path.write_text(">r1\nACGT\n>r2\nATGT\n", encoding="utf-8")
    return path


@pytest.fixture()
def msa_b_file(tmp_path: Path) -> Path:
    """Write the gapped alignment ATT / -TT / ACG / AC- as FASTA."""
    path = tmp_path / "b.fasta"
    path.write_text(">r1\nATT\n>r2\n-TT\n>r3\nACG\n>r4\nAC-\n", encoding="utf-8")
    return path


@pytest.fixture()
def msa_infeasible_file(tmp_path: Path) -> Path:
    """Write -A / AA, which has no valid segmentation."""
    path = tmp_path / "inf.fasta"
    path.write_text(">r1\n-A\n>r2\nAA\n", encoding="utf-8")
    return path


@pytest.fixture()
def ov_file(tmp_path: Path) -> Path:
    """Write X = {10}, Y = {01}: one orthogonal pair."""
    path = tmp_path / "ov.txt"
    path.write_text("1 2\n10\n01\n", encoding="utf-8")
    return path


@pytest.fixture()
def registry() -> Iterator[ToolRegistry]:
    """Return a freshly discovered registry, reset again afterwards."""
    ToolRegistry.reset()
    reg = ToolRegistry()
    reg.discover()
    yield reg
    ToolRegistry.reset()
