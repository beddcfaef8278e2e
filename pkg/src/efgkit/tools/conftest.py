"""Shared alignment and graph fixtures for the tool test suites."""

from __future__ import annotations

import random

import pytest

from efgkit.core.datatypes import Efg, Msa, ValidityMode
from efgkit.tools.efg.logic import build_efg
from efgkit.tools.msa_core.logic import random_msa
from efgkit.tools.segmentation.logic import segment

MSA_A_FASTA = ">r1\nACGT\n>r2\nATGT\n"
MSA_B_FASTA = ">r1\nATT\n>r2\n-TT\n>r3\nACG\n>r4\nAC-\n"


@pytest.fixture()
def msa_a() -> Msa:
    """Return the gapless 2×4 alignment ACGT / ATGT."""
    return Msa(rows=("ACGT", "ATGT"))


@pytest.fixture()
def msa_b() -> Msa:
    """Return the gapped 4×3 alignment ATT / -TT / ACG / AC-."""
    return Msa(rows=("ATT", "-TT", "ACG", "AC-"))


@pytest.fixture()
def msa_infeasible() -> Msa:
    """Return the alignment -A / AA, which has no valid segmentation."""
    return Msa(rows=("-A", "AA"))


@pytest.fixture()
def graph_a(msa_a: Msa) -> Efg:
    """Return the repeat-free graph of ACGT / ATGT over [1..2][3..4]: AC, AT → GT."""
    return build_efg(msa_a, [(1, 2), (3, 4)])


def _pipeline_graphs(seed: int, count: int, mode: ValidityMode) -> list[Efg]:
    """Return *count* graphs of random MSAs whose optimal segmentation exists in *mode*.

    Single-block fallbacks are skipped: they carry no graph property.
    """
    rng = random.Random(seed)
    graphs: list[Efg] = []
    for _ in range(50 * count):
        if len(graphs) == count:
            break
        msa = random_msa(
            rng,
            rng.randint(2, 4),
            rng.randint(3, 10),
            alphabet="ACGT",
            gap_probability=rng.choice((0.0, 0.2)),
        )
        if not all(msa.spelled_rows()):
            continue
        result = segment(msa, mode=mode)
        if result.segmentation.fallback:
            continue
        graphs.append(build_efg(msa, result.segmentation))
    assert len(graphs) == count, f"only {len(graphs)} of {count} {mode} graphs drawn"
    return graphs


@pytest.fixture(scope="session")
def semi_repeat_free_graphs() -> list[Efg]:
    """Return 60 graphs of optimal semi-repeat-free segmentations of random MSAs."""
    return _pipeline_graphs(7, 60, ValidityMode.SEMI_REPEAT_FREE)


@pytest.fixture(scope="session")
def repeat_free_graphs() -> list[Efg]:
    """Return 60 graphs of optimal repeat-free segmentations of random MSAs."""
    return _pipeline_graphs(11, 60, ValidityMode.REPEAT_FREE)
