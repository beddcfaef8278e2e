"""Cross-module properties over seeded random corpora."""

from __future__ import annotations

import random

import pytest

from efgkit.core.datatypes import Efg, IndexKind, Msa, ScoreKind, ValidityMode
from efgkit.tools.efg.logic import build_efg, path_labels, spells_source_to_sink
from efgkit.tools.efg_index.logic import build_index, deserialize_index, serialize_index
from efgkit.tools.hardness.logic import online_match, ov_has_orthogonal_pair, random_ov, reduce_ov
from efgkit.tools.msa_core.logic import random_msa
from efgkit.tools.segmentation.logic import minmaxlength_fj, minmaxlength_linear_gapless, segment
from efgkit.tools.validity.logic import (
    compute_f_elastic,
    compute_v_f_gapless,
    graph_is_semi_repeat_free,
    is_valid_segment,
    validity_table_bruteforce,
)
from efgkit.tools.wheeler.logic import (
    dag_depth,
    determinize,
    efg_to_nfa,
    efg_to_wheeler,
    expansion_bound,
    language_up_to,
    verify_wheeler,
    wheeler_expand,
)

RF = ValidityMode.REPEAT_FREE
SRF = ValidityMode.SEMI_REPEAT_FREE


def _corpus(seed: int, count: int, *, gap_probability: float) -> list[Msa]:
    rng = random.Random(seed)
    return [
        random_msa(rng, rng.randint(1, 5), rng.randint(1, 10), gap_probability=gap_probability) for _ in range(count)
    ]


def _graphs(seed: int, count: int, mode: ValidityMode) -> list[tuple[Msa, Efg]]:
    rng = random.Random(seed)
    pairs: list[tuple[Msa, Efg]] = []
    while len(pairs) < count:
        gaps = rng.choice((0.0, 0.2))
        msa = random_msa(rng, rng.randint(2, 4), rng.randint(3, 10), gap_probability=gaps)
        if not all(msa.spelled_rows()):
            continue
        result = segment(msa, mode=mode, score=ScoreKind.MINMAXLENGTH)
        if result.segmentation.fallback:
            continue
        pairs.append((msa, build_efg(msa, result.segmentation)))
    return pairs


def _substrings(g: Efg, max_length: int = 12) -> set[str]:
    return {
        label[i : i + k]
        for label in path_labels(g)
        for i in range(len(label))
        for k in range(1, max_length + 1)
        if i + k <= len(label)
    }


@pytest.fixture(scope="module")
def srf_graphs() -> list[tuple[Msa, Efg]]:
    """Return 100 semi-repeat-free pipeline graphs with their alignments."""
    return _graphs(101, 100, SRF)


@pytest.fixture(scope="module")
def rf_graphs() -> list[tuple[Msa, Efg]]:
    """Return 100 repeat-free pipeline graphs with their alignments."""
    return _graphs(102, 100, RF)


class TestValidityTables:
    """Fast tables against the brute-force oracle."""

    def test_gapless(self) -> None:
        """500 gapless alignments, every v and f entry."""
        for msa in _corpus(201, 500, gap_probability=0.0):
            expected = validity_table_bruteforce(msa, RF)
            table = compute_v_f_gapless(msa)
            assert (table.v, table.f) == (expected.v, expected.f), msa.rows

    def test_gapped(self) -> None:
        """500 gapped alignments, every f entry."""
        for msa in _corpus(202, 500, gap_probability=0.2):
            assert compute_f_elastic(msa).f == validity_table_bruteforce(msa, SRF).f, msa.rows

    def test_non_monotone_example(self) -> None:
        """ATT / -TT / ACG / AC-: [2..3] is valid, [1..3] is not, f(0) undefined and f(1) = 3."""
        msa = Msa(rows=("ATT", "-TT", "ACG", "AC-"))
        assert is_valid_segment(msa, 2, 3, SRF)
        assert not is_valid_segment(msa, 1, 3, SRF)
        f = compute_f_elastic(msa).f
        assert f[0] is None
        assert f[1] == 3


class TestSegmentation:
    """Cross-algorithm identities."""

    def test_linear_equals_fj(self) -> None:
        """Both minmax recurrences give identical score arrays on 200 gapless alignments."""
        for msa in _corpus(301, 200, gap_probability=0.0):
            table = compute_v_f_gapless(msa)
            assert minmaxlength_linear_gapless(table).scores == minmaxlength_fj(table).scores, msa.rows


class TestPipelineGraphs:
    """Properties of graphs built from optimal segmentations."""

    def test_rows_are_paths(self, srf_graphs: list[tuple[Msa, Efg]]) -> None:
        """Every spelled row is the label of a source-to-sink path."""
        for msa, g in srf_graphs:
            assert all(spells_source_to_sink(g, row) for row in msa.spelled_rows()), msa.rows

    def test_graph_property_holds(self, srf_graphs: list[tuple[Msa, Efg]]) -> None:
        """Valid segments give a semi-repeat-free graph."""
        assert all(graph_is_semi_repeat_free(g) for _, g in srf_graphs)


def _check_kinds(g: Efg, kinds: list[IndexKind], rng: random.Random) -> None:
    indexes = [deserialize_index(serialize_index(build_index(g, kind))) for kind in kinds]
    negatives = ["".join(rng.choice(g.alphabet) for _ in range(rng.randint(1, 12))) for _ in range(200)]
    for pattern in [*sorted(_substrings(g)), *negatives]:
        expected = online_match(g, pattern)
        for index in indexes:
            assert index.occurs(pattern) == expected, (index.kind, pattern)


class TestIndexAgreement:
    """Every buildable index kind answers like the online matcher, after a file round trip."""

    def test_repeat_free(self, rf_graphs: list[tuple[Msa, Efg]]) -> None:
        """Classic, expanded-BWT and triple indexes on 100 repeat-free graphs."""
        rng = random.Random(401)
        for _, g in rf_graphs:
            _check_kinds(g, list(IndexKind), rng)

    def test_semi_repeat_free(self, srf_graphs: list[tuple[Msa, Efg]]) -> None:
        """Triple indexes on 100 semi-repeat-free graphs."""
        rng = random.Random(402)
        for _, g in srf_graphs:
            _check_kinds(g, [IndexKind.TRIPLE], rng)


class TestWheeler:
    """The Wheeler pipeline on repeat-free graphs."""

    def test_verified_bounded_and_language_preserving(self, rf_graphs: list[tuple[Msa, Efg]]) -> None:
        """Full-depth verification, the size bound, and one language at every stage."""
        for _, g in rf_graphs:
            nfa = efg_to_nfa(g)
            depth = dag_depth(nfa)
            aut = efg_to_wheeler(g)
            assert verify_wheeler(aut, depth) == (True, None)
            assert len(aut) <= expansion_bound(g)
            dfa = determinize(nfa)
            languages = [language_up_to(a, depth) for a in (nfa, dfa, wheeler_expand(dfa), aut)]
            assert all(language == languages[0] for language in languages)
            assert languages[0] == path_labels(g)


class TestOvReduction:
    """Matching the gadget graph decides Orthogonal Vectors."""

    def test_random_instances(self) -> None:
        """300 random instances with n, d <= 8."""
        rng = random.Random(501)
        for _ in range(300):
            instance = random_ov(rng, rng.randint(1, 8), rng.randint(1, 8))
            reduction = reduce_ov(instance)
            assert online_match(reduction.graph, reduction.query or "") == ov_has_orthogonal_pair(
                instance.x, instance.y
            ), instance
