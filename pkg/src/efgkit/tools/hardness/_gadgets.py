"""Gadget graph of the OV reduction, built from the Y vectors only.

Every symbol run of the query is four characters long. The middle sub-graph
has one part per Y vector and three rows; each gadget spans two blocks and
row r splits a run c⁴ into the labels cʳ and c⁴⁻ʳ, so labels stay distinct
inside a block and a row is recognisable from its labels.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

from efgkit.core.datatypes import NodeRole, OvReduction, check_vectors
from efgkit.tools.efg.logic import EdgeSpec, make_efg

logger = logging.getLogger(__name__)

RUN = 4
ROWS = (1, 2, 3)
B4, E4, ZERO4, ONE4 = "B" * RUN, "E" * RUN, "0" * RUN, "1" * RUN

Rows = tuple[str, str, str]
"""Symbols a gadget offers in rows 1, 2 and 3."""

_BOUNDARY: Rows = ("BE", "BE", "BE")
_ANY: Rows = ("01", "01", "01")
_ZERO_ONLY: Rows = ("01", "0", "01")


class _GraphDraft:
    """Blocks of labelled nodes with their roles, and edges between consecutive blocks."""

    def __init__(self) -> None:
        self.blocks: list[dict[str, NodeRole]] = []
        self.edges: list[EdgeSpec] = []

    def add_block(self, nodes: dict[str, NodeRole]) -> int:
        self.blocks.append(nodes)
        return len(self.blocks) - 1

    def link(self, k: int, lefts: Iterable[str], rights: Iterable[str]) -> None:
        """Connect every label in *lefts* (block k) to every label in *rights* (block k + 1)."""
        targets = list(rights)
        self.edges.extend((k, left, right) for left in lefts for right in targets)

    def finish(self) -> OvReduction:
        graph = make_efg([list(block) for block in self.blocks], self.edges)
        roles = tuple(self.blocks[node.block][node.label] for node in graph.nodes)
        return OvReduction(graph=graph, roles=roles)


# ── Side sub-graphs ───────────────────────────────────────────────────────


def _side(
    draft: _GraphDraft, segments: Sequence[Sequence[str]], dead_ends: set[int], role: NodeRole
) -> tuple[int, int]:
    """Add fully connected run segments; ``E⁴`` in a segment listed in *dead_ends* gets no out-edges.

    Returns:
        The first and last block index.
    """
    first = len(draft.blocks)
    for i, segment in enumerate(segments):
        k = draft.add_block(dict.fromkeys(segment, role))
        if i:
            lefts = [label for label in segments[i - 1] if not (i - 1 in dead_ends and label == E4)]
            draft.link(k - 1, lefts, segment)
    return first, len(draft.blocks) - 1


def _left_segments(n: int, d: int) -> list[list[str]]:
    segments = [[B4]]
    for _ in range(n - 1):
        segments += [[B4], *([ZERO4, ONE4] for _ in range(d)), [B4, E4]]
    return segments


def _right_segments(n: int, d: int) -> tuple[list[list[str]], set[int]]:
    segments: list[list[str]] = []
    dead_ends: set[int] = set()
    for _ in range(n - 1):
        dead_ends.add(len(segments))
        segments += [[B4, E4], *([ZERO4, ONE4] for _ in range(d)), [E4]]
    segments.append([E4])
    return segments, dead_ends


# ── Middle sub-graph ──────────────────────────────────────────────────────


def _gadget(draft: _GraphDraft, rows: Rows, vector: int) -> int:
    """Add the two blocks of one gadget and its in-gadget edges; return the first block index."""
    first = draft.add_block({c * r: NodeRole("M", vector, r) for r in ROWS for c in rows[r - 1]})
    draft.add_block({c * (RUN - r): NodeRole("M", vector, r) for r in ROWS for c in rows[r - 1]})
    for r in ROWS:
        for c in rows[r - 1]:
            draft.link(first, [c * r], [c * (RUN - r)])
    return first


def _tail(rows: Rows, r: int, symbols: str | None = None) -> list[str]:
    return [c * (RUN - r) for c in rows[r - 1] if symbols is None or c in symbols]


def _head(rows: Rows, r: int, symbols: str | None = None) -> list[str]:
    return [c * r for c in rows[r - 1] if symbols is None or c in symbols]


def _middle_part(draft: _GraphDraft, y: Sequence[int], vector: int) -> tuple[int, int]:
    """Add the part of one Y vector: boundary gadget, one gadget per entry, boundary gadget.

    Row 2 of an entry gadget offers ``1`` only where the entry of *y* is 0.

    Returns:
        The first block of the left boundary gadget and the last block of the right one.
    """
    left = _gadget(draft, _BOUNDARY, vector)
    previous, prev_rows, symbols = left, _BOUNDARY, "B"
    for entry in y:
        rows = _ZERO_ONLY if entry else _ANY
        k = _gadget(draft, rows, vector)
        for r in ROWS:
            draft.link(previous + 1, _tail(prev_rows, r, symbols), _head(rows, r))
        previous, prev_rows, symbols = k, rows, None
    right = _gadget(draft, _BOUNDARY, vector)
    for r in ROWS:
        draft.link(previous + 1, _tail(prev_rows, r), _head(_BOUNDARY, r, "E"))
    return left, right + 1


def _join_parts(draft: _GraphDraft, k: int) -> None:
    """Connect the right boundary gadget ending at block *k* to the left one starting at k + 1.

    ``E⁴`` continues with ``B⁴`` in the same row or the row below; ``B⁸`` only
    runs through rows 1 and 2 and ``E⁸`` only through rows 2 and 3.
    """
    for r in ROWS:
        draft.link(k, _tail(_BOUNDARY, r, "E"), ["B" * t for t in (r, r + 1) if t <= 3])
        if r in (1, 2):
            draft.link(k, _tail(_BOUNDARY, r, "B"), _head(_BOUNDARY, r, "B"))
        if r in (2, 3):
            draft.link(k, _tail(_BOUNDARY, r, "E"), _head(_BOUNDARY, r, "E"))


# ── Assembly ──────────────────────────────────────────────────────────────


def build_gadget_graph(y: Sequence[Sequence[int]]) -> OvReduction:
    """Assemble left, middle and right sub-graphs for the vectors *y*.

    Raises:
        ValidationError: On an empty set, a dimension mismatch or a non-binary entry.
    """
    d = check_vectors(y)
    n = len(y)
    draft = _GraphDraft()

    _, left_end = _side(draft, _left_segments(n, d), set(), NodeRole("L"))
    left_segment = draft.blocks[left_end]
    ends: list[int] = []
    for j, vector in enumerate(y):
        _, end = _middle_part(draft, vector, j)
        if j == 0:
            draft.link(left_end, list(left_segment), ["B", "BB"])
        else:
            _join_parts(draft, ends[-1])
        ends.append(end)
    segments, dead_ends = _right_segments(n, d)
    right_start, _ = _side(draft, segments, dead_ends, NodeRole("R"))
    draft.link(ends[-1], ["EE", "E"], list(draft.blocks[right_start]))

    reduction = draft.finish()
    logger.info(
        "OV gadget graph for n=%d, d=%d: %d blocks, %d nodes, %d edges",
        n,
        d,
        reduction.graph.b,
        len(reduction.graph.nodes),
        len(reduction.graph.edges),
    )
    return reduction
