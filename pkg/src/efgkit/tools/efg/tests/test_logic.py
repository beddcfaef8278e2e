"""Tests for founder graph construction, walks and the graph document."""

from __future__ import annotations

import random

import pytest

from efgkit.core.datatypes import Efg, Msa
from efgkit.core.exceptions import InputFormatError, ValidationError
from efgkit.tools.efg.logic import (
    build_efg,
    efg_stats,
    is_degenerate_string,
    make_degenerate_string,
    make_efg,
    match_from,
    parse_efg,
    path_labels,
    read_efg,
    serialize_efg,
    spells_source_to_sink,
    to_dot,
    to_gfa,
    write_efg,
)
from efgkit.tools.msa_core.logic import random_msa
from efgkit.tools.validity.logic import graph_is_repeat_free, graph_is_semi_repeat_free


# ── TestBuildEfg ───────────────────────────────────────────────────────────


class TestBuildEfg:
    """Tests for ``build_efg`` and ``efg_stats``."""

    def test_blocks_and_edges(self, graph_a: Efg) -> None:
        """Distinct strings become nodes; each row contributes an edge."""
        assert [[graph_a.label(v) for v in block] for block in graph_a.blocks] == [["AC", "AT"], ["GT"]]
        assert graph_a.edges == ((0, 2), (1, 2))
        assert graph_a.provenance == (frozenset({0}), frozenset({1}))

    def test_stats(self, graph_a: Efg) -> None:
        """b, heights, N, L, H and |E|."""
        stats = efg_stats(graph_a)
        assert (stats.b, stats.heights) == (2, (2, 1))
        assert (stats.total_length, stats.max_label, stats.height, stats.edge_count) == (6, 2, 2, 2)

    def test_shared_edges_collapse(self) -> None:
        """Rows spelling the same pair share one edge with both rows as provenance."""
        g = build_efg(Msa(rows=("AC", "AC", "GC")), [(1, 1), (2, 2)])
        assert g.edges == ((0, 2), (1, 2))
        assert g.provenance == (frozenset({0, 1}), frozenset({2}))

    def test_gaps_are_spelled_out(self, msa_b: Msa) -> None:
        """Gapped rows contribute their spelled strings."""
        g = build_efg(msa_b, [(1, 3)])
        assert [g.label(v) for v in g.blocks[0]] == ["AC", "ACG", "ATT", "TT"]

    def test_empty_spell_rejected(self, msa_b: Msa) -> None:
        """Row -TT spells empty over column 1."""
        with pytest.raises(ValidationError, match=r"Row 2 \(r2\) spells empty over segment 1"):
            build_efg(msa_b, [(1, 1), (2, 2), (3, 3)])

    def test_bad_partition(self, msa_a: Msa) -> None:
        """Intervals must tile all columns."""
        with pytest.raises(ValidationError):
            build_efg(msa_a, [(1, 2), (4, 4)])
        with pytest.raises(ValidationError):
            build_efg(msa_a, [(1, 3)])

    def test_rows_are_paths(self) -> None:
        """Every spelled row is the label of a source-to-sink path."""
        rng = random.Random(21)
        for _ in range(40):
            msa = random_msa(rng, rng.randint(1, 5), rng.randint(2, 9), alphabet="ACG")
            cut = rng.randint(1, msa.n - 1)
            g = build_efg(msa, [(1, cut), (cut + 1, msa.n)])
            labels = path_labels(g)
            for row in msa.spelled_rows():
                assert row in labels
                assert spells_source_to_sink(g, row)


# ── TestWalks ──────────────────────────────────────────────────────────────


class TestWalks:
    """Tests for ``match_from`` and path enumeration."""

    def test_match_across_edge(self, graph_a: Efg) -> None:
        """'CG' starts at offset 1 of AC and continues into GT."""
        assert match_from(graph_a, 0, 1, "CG") == [(0, 1), (2, 0)]

    def test_no_match(self, graph_a: Efg) -> None:
        """'TT' cannot be spelled from AT offset 1 because GT follows."""
        assert match_from(graph_a, 1, 1, "TT") is None

    def test_path_labels_limit(self, graph_a: Efg) -> None:
        """Both full paths, or none when the limit is too small."""
        assert path_labels(graph_a) == {"ACGT", "ATGT"}
        assert path_labels(graph_a, max_length=3) == set()

    def test_spells_rejects_partial(self, graph_a: Efg) -> None:
        """A prefix of a path is not a source-to-sink label."""
        assert not spells_source_to_sink(graph_a, "ACG")


# ── TestDegenerateStrings ──────────────────────────────────────────────────


class TestDegenerateStrings:
    """Tests for generalized degenerate strings."""

    def test_fully_connected(self) -> None:
        """Every left label is joined to every right label."""
        g = make_degenerate_string([["AA", "CC"], ["G", "T"]])
        assert len(g.edges) == 4
        assert is_degenerate_string(g)

    def test_mixed_lengths_rejected(self) -> None:
        """A block mixing lengths is not degenerate."""
        with pytest.raises(ValidationError):
            make_degenerate_string([["A", "CC"]])

    def test_founder_graph_not_degenerate(self, graph_a: Efg) -> None:
        """Graphs built from MSAs are usually sparser."""
        g = make_efg([["A", "C"], ["G", "T"]], [(0, "A", "G"), (0, "C", "T")])
        assert not is_degenerate_string(g)
        assert is_degenerate_string(graph_a)


# ── TestGraphDocument ──────────────────────────────────────────────────────


class TestGraphDocument:
    """Tests for the JSON graph document and the exports."""

    def test_round_trip(self, graph_a: Efg, tmp_path) -> None:
        """Writing and reading gives back the same graph."""
        path = write_efg(graph_a, tmp_path / "g.json")
        assert read_efg(path) == graph_a

    def test_round_trip_without_provenance(self) -> None:
        """Graphs built by hand carry no provenance."""
        g = make_efg([["A"], ["C", "G"]], [(0, "A", "C"), (0, "A", "G")])
        text = serialize_efg(g)
        assert "provenance" not in text
        assert parse_efg(text) == g

    def test_single_block_round_trip(self) -> None:
        """A graph without edges still round-trips."""
        g = make_efg([["ACG", "T"]], [])
        assert parse_efg(serialize_efg(g)) == g

    def test_canonical_text(self, graph_a: Efg) -> None:
        """One node per line, deterministic."""
        text = serialize_efg(graph_a)
        assert '    {"id": 0, "block": 0, "label": "AC"},' in text
        assert text == serialize_efg(parse_efg(text))

    def test_invalid_json(self) -> None:
        """Syntax errors report the line."""
        with pytest.raises(InputFormatError) as info:
            parse_efg('{\n  "version": 1,\n  "blocks": [\n')
        assert info.value.line is not None

    def test_edge_skipping_a_block(self) -> None:
        """Edges must join consecutive blocks; the error points at the edge line."""
        g = make_efg([["A"], ["C"], ["G"]], [(0, "A", "C"), (1, "C", "G")])
        text = serialize_efg(g).replace("[1, 2]", "[0, 2]")
        with pytest.raises(InputFormatError, match="does not connect consecutive blocks") as info:
            parse_efg(text)
        assert info.value.line == text.splitlines().index("    [0, 2]") + 1

    def test_duplicate_label(self) -> None:
        """Two nodes of one block may not share a label."""
        text = serialize_efg(make_efg([["A", "C"]], [])).replace('"label": "C"', '"label": "A"')
        with pytest.raises(InputFormatError, match="duplicate label"):
            parse_efg(text)

    def test_wrong_version(self, graph_a: Efg) -> None:
        """Only the current version is accepted."""
        text = serialize_efg(graph_a).replace('"version": 1', '"version": 7')
        with pytest.raises(InputFormatError, match="Unsupported graph version") as info:
            parse_efg(text)
        assert info.value.line == 2

    def test_dot(self, graph_a: Efg) -> None:
        """One statement per node and per edge."""
        dot = to_dot(graph_a)
        assert dot.startswith("digraph efg {\n")
        assert dot.count("[label=") == 3
        assert dot.count(" -> ") == 2

    def test_dot_escapes_quotes_and_backslashes(self) -> None:
        """Labels from custom alphabets stay inside their quoted DOT strings."""
        g = make_efg([['A"B'], ["C\\D"]], [(0, 'A"B', "C\\D")])

        dot = to_dot(g)

        assert 'label="A\\"B"' in dot
        assert 'label="C\\\\D"' in dot

    def test_gfa(self, graph_a: Efg) -> None:
        """Segments and links."""
        lines = to_gfa(graph_a).splitlines()
        assert lines[0].startswith("H\t")
        assert sum(line.startswith("S\t") for line in lines) == 3
        assert sum(line.startswith("L\t") for line in lines) == 2


# ── TestPipelineGraphs ─────────────────────────────────────────────────────


class TestPipelineGraphs:
    """The shared graph corpora hold only graphs that have their mode's property."""

    def test_repeat_free_corpus(self, repeat_free_graphs: list[Efg]) -> None:
        """Sixty graphs, each repeat-free."""
        assert len(repeat_free_graphs) == 60
        assert all(graph_is_repeat_free(g) for g in repeat_free_graphs)

    def test_semi_repeat_free_corpus(self, semi_repeat_free_graphs: list[Efg]) -> None:
        """Sixty graphs, each semi-repeat-free."""
        assert len(semi_repeat_free_graphs) == 60
        assert all(graph_is_semi_repeat_free(g) for g in semi_repeat_free_graphs)
