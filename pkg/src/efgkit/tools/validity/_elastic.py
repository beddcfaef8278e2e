"""Suffix-tree climb computing f(j) for semi-repeat-free segments of a gapped MSA.

For every start column j+1 each row i contributes the locus of
``spell(msa[i][j+1..n])`` in the generalized suffix array of the spelled rows.
A segment is semi-repeat-free iff every row string occurs only at the m
segment-start suffixes, i.e. the covered suffix-array ranks stay exactly the
m start ranks. Rows climb one parent edge at a time while that holds; a row
whose climb swallows the locus of another row makes that row redundant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from efgkit.core.datatypes import GAP, Msa
from efgkit.core.events import EventBus
from efgkit.stringds import GeneralizedSuffixStructure, IntervalUnionSet, SaInterval, build_gsa
from efgkit.tools.msa_core.logic import GapCoordMap, build_gap_coords

logger = logging.getLogger(__name__)


@dataclass
class _Climb:
    """Climb state of one start column: final rows F and the redundancy forest R."""

    loci: list[SaInterval]
    covered: IntervalUnionSet = field(default_factory=IntervalUnionSet)
    parent: dict[int, int] = field(default_factory=dict)
    final_length: dict[int, int] = field(default_factory=dict)

    def root(self, row: int) -> int:
        while row in self.parent:
            row = self.parent[row]
        return row


def _insert(covered: IntervalUnionSet, interval: SaInterval) -> None:
    covered.insert(interval.lo, interval.hi - 1)


def _dedupe(state: _Climb) -> list[int]:
    """Store the outermost loci; nested or equal loci become redundant under their container."""
    order = sorted(range(len(state.loci)), key=lambda i: (state.loci[i].lo, -state.loci[i].hi))
    active: list[int] = []
    container: int | None = None
    for i in order:
        locus = state.loci[i]
        if container is not None and locus.lo < state.loci[container].hi:
            state.parent[i] = container
            continue
        container = i
        active.append(i)
        _insert(state.covered, locus)
    return active


def _climb(gss: GeneralizedSuffixStructure, state: _Climb, active: list[int]) -> None:
    """Raise every active row while the covered rank count stays at m."""
    pending = list(active)
    owner = {state.loci[row].lo: row for row in active}
    while pending:
        row = pending.pop()
        if owner.get(state.loci[row].lo) != row:
            continue
        while True:
            locus = state.loci[row]
            depth = gss.parent_depth(locus)
            if depth == 0:
                state.final_length[row] = 1
                break
            parent = gss.contract(locus, depth)
            if state.covered.span(parent.lo, parent.hi - 1) != parent.size:
                state.final_length[row] = depth + 1
                break
            for lo, hi in state.covered.within(parent.lo, parent.hi - 1):
                other = owner.pop(lo)
                if other != row:
                    state.parent[other] = row
                state.covered.delete(lo, hi)
            state.loci[row] = parent
            owner[parent.lo] = row
            _insert(state.covered, parent)


def compute_f_elastic_values(msa: Msa, *, event_bus: EventBus | None = None) -> list[int | None]:
    """Return f(0..n-1) for semi-repeat-free segments of *msa* (``None`` = undefined).

    Args:
        msa: Any alignment, gaps allowed.
        event_bus: Receives one progress event per start column.

    Returns:
        The list of f values indexed by j.
    """
    spelled = msa.spelled_rows()
    n, m = msa.n, msa.m
    f: list[int | None] = [None] * n
    if any(not s for s in spelled):
        logger.debug("A row spells empty; every f(j) is undefined")
        return f

    gss = build_gsa(spelled, msa.alphabet)
    coords: GapCoordMap = build_gap_coords(msa)
    loci = [gss.full_interval() for _ in range(m)]
    lengths = [0] * m

    for j in range(n - 1, -1, -1):
        for i, row in enumerate(msa.rows):
            if row[j] != GAP:
                loci[i] = gss.backward_step(loci[i], row[j])
                lengths[i] += 1
        if event_bus is not None:
            event_bus.progress("validity", n - j, n, f"Column {j + 1}")
        if any(length == 0 for length in lengths):
            continue

        state = _Climb(loci=list(loci))
        active = _dedupe(state)
        if state.covered.total != m:
            continue
        _climb(gss, state, active)

        best = 0
        for i in range(m):
            start = coords.col_to_spelled(i, j + 1)
            assert start is not None
            length = state.final_length[state.root(i)]
            best = max(best, coords.spelled_to_col(i, start + length - 1))
        f[j] = best
    return f
