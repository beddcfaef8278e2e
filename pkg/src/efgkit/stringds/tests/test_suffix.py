"""Tests for the generalized suffix structure."""

from __future__ import annotations

import random

import pytest

from efgkit.core.exceptions import StringStructureError
from efgkit.stringds import EMPTY, SEPARATOR, build_gsa


def _naive_sa(docs: list[str], alphabet: str) -> list[int]:
    """Sort all suffixes of the separator-joined text naively."""
    codes = {c: k + 1 for k, c in enumerate(alphabet)}
    text: list[int] = []
    for doc in docs:
        text.extend(codes[c] for c in doc)
        text.append(0)
    return sorted(range(len(text)), key=lambda p: text[p:])


def _naive_count(docs: list[str], pattern: str) -> int:
    """Count occurrences of *pattern* inside the documents."""
    return sum(1 for doc in docs for p in range(len(doc)) if doc.startswith(pattern, p))


# ── Construction ──────────────────────────────────────────────────────────


class TestBuildGsa:
    """Tests for ``build_gsa``."""

    def test_two_symbol_document(self) -> None:
        """The suffix array of AB$ is [2, 0, 1] (0-based)."""
        gss = build_gsa(["AB"])
        assert gss.sa.tolist() == [2, 0, 1]

    def test_single_symbol(self) -> None:
        """The suffix array of A$ is [1, 0]."""
        gss = build_gsa(["A"])
        assert gss.sa.tolist() == [1, 0]

    def test_two_documents_match_naive_sort(self) -> None:
        """Two documents sort like the naive oracle."""
        gss = build_gsa(["ACGT", "ATGT"])
        assert gss.sa.tolist() == _naive_sa(["ACGT", "ATGT"], "ACGT")

    def test_bwt_wraps_around(self) -> None:
        """``bwt[i]`` is the symbol before ``sa[i]``, the sentinel for position 0."""
        gss = build_gsa(["AB"])
        # sa = [2, 0, 1] → bwt = [B, $, A]
        assert gss.bwt.tolist() == [2, SEPARATOR, 1]

    def test_lcp_convention(self) -> None:
        """``lcp[i]`` compares ``sa[i-1]`` and ``sa[i]`` with zero padding at both ends."""
        gss = build_gsa(["AA"])
        # suffixes: $, A$, AA$
        assert gss.lcp.tolist() == [0, 0, 1, 0]

    def test_doc_starts(self) -> None:
        """Documents start after the previous separator."""
        gss = build_gsa(["ACGT", "ATGT"])
        assert gss.doc_starts.tolist() == [0, 5]
        assert gss.document_of(6) == 1

    def test_empty_document_list_raises(self) -> None:
        """An empty document list is rejected."""
        with pytest.raises(StringStructureError):
            build_gsa([])

    def test_empty_document_raises(self) -> None:
        """Empty documents are rejected."""
        with pytest.raises(StringStructureError):
            build_gsa(["A", ""])

    def test_random_texts_match_naive_sort(self) -> None:
        """200 random document sets sort like the naive oracle."""
        rng = random.Random(7)
        for _ in range(200):
            docs = ["".join(rng.choice("ACGT") for _ in range(rng.randint(1, 16))) for _ in range(rng.randint(1, 4))]
            gss = build_gsa(docs, alphabet="ACGT")
            assert gss.sa.tolist() == _naive_sa(docs, "ACGT")


# ── Searching ─────────────────────────────────────────────────────────────


class TestBackwardStep:
    """Tests for ``backward_step`` and friends."""

    def test_extend_b_to_ab(self) -> None:
        """Stepping the interval of B with A yields the single suffix AB$."""
        gss = build_gsa(["AB"])
        b = gss.find("B")
        ab = gss.backward_step(b, "A")
        assert ab.size == 1
        assert gss.locate(ab) == [0]

    def test_non_occurring_symbol_is_empty(self) -> None:
        """A symbol outside the alphabet gives the empty range."""
        gss = build_gsa(["AB"])
        assert gss.backward_step(gss.full_interval(), "Z") == EMPTY

    def test_full_range_stepped_by_a(self) -> None:
        """On AA$ the pattern A has two occurrences."""
        gss = build_gsa(["AA"])
        assert gss.backward_step(gss.full_interval(), "A").size == 2

    def test_random_single_symbol_extensions(self) -> None:
        """Backward steps agree with naive counting on random texts."""
        rng = random.Random(11)
        for _ in range(200):
            docs = ["".join(rng.choice("ACGT") for _ in range(rng.randint(1, 64)))]
            gss = build_gsa(docs, alphabet="ACGT")
            for _ in range(5):
                pattern = "".join(rng.choice("ACGT") for _ in range(rng.randint(1, 4)))
                interval = gss.find(pattern)
                for c in "ACGT":
                    assert gss.backward_step(interval, c).size == _naive_count(docs, c + pattern)

    def test_extend_right_matches_find(self) -> None:
        """Forward narrowing agrees with backward search."""
        gss = build_gsa(["ACGTACGA", "GATTACA"])
        for pattern in ["A", "AC", "ACG", "TTA", "GA"]:
            interval = gss.full_interval()
            for depth, c in enumerate(pattern):
                interval = gss.extend_right(interval, depth, c)
            assert interval == gss.find(pattern)

    def test_contract_recovers_prefix_interval(self) -> None:
        """Contracting ACG to depth 1 gives the interval of A."""
        gss = build_gsa(["ACGTACGA", "GATTACA"])
        assert gss.contract(gss.find("ACG"), 1) == gss.find("A")
        assert gss.contract(gss.find("ACG"), 0) == gss.full_interval()

    def test_separator_step(self) -> None:
        """The separator code can be searched like any symbol."""
        gss = build_gsa(["AB", "B"])
        # "B0" occurs twice: at the end of both documents.
        b_then_sep = gss.extend_right(gss.find("B"), 1, SEPARATOR)
        assert b_then_sep.size == 2
