"""Segment validity (repeat-free / semi-repeat-free) and the v(j), f(j) tables."""

from __future__ import annotations

import logging

from efgkit.core.datatypes import Efg, Msa, Occurrence, ValidityMode, ValidityTable
from efgkit.core.events import EventBus
from efgkit.core.exceptions import GraphPropertyError, ValidationError
from efgkit.stringds import GeneralizedSuffixStructure, SaInterval, build_gsa
from efgkit.tools.msa_core.logic import build_gap_coords, spell
from efgkit.tools.validity._elastic import compute_f_elastic_values

logger = logging.getLogger(__name__)


# ── Brute-force oracle ────────────────────────────────────────────────────


def _occurrences(text: str, pattern: str) -> list[int]:
    out: list[int] = []
    pos = text.find(pattern)
    while pos != -1:
        out.append(pos)
        pos = text.find(pattern, pos + 1)
    return out


def is_valid_segment(msa: Msa, x: int, y: int, mode: ValidityMode) -> bool:
    """Decide by exhaustive occurrence scanning whether ``[x..y]`` is a valid segment.

    Every row must spell a non-empty string over the segment. In semi-repeat-free
    mode each such string may occur in the spelled rows only where some row's
    segment starts; in repeat-free mode only where a row with that very string starts.

    Args:
        msa: The alignment.
        x: First column (1-based).
        y: Last column, ``x <= y <= n``.
        mode: Validity mode.

    Returns:
        Whether the segment is valid.

    Raises:
        ValidationError: If the columns are out of range.
    """
    if not 1 <= x <= y <= msa.n:
        msg = f"Segment [{x}..{y}] outside [1..{msa.n}]"
        raise ValidationError(msg)
    segment = [spell(row[x - 1 : y]) for row in msa.rows]
    if any(not s for s in segment):
        return False
    spelled = msa.spelled_rows()
    coords = build_gap_coords(msa)
    starts: list[int] = []
    for t in range(msa.m):
        pos = coords.col_to_spelled(t, x)
        assert pos is not None
        starts.append(pos - 1)

    for s in set(segment):
        for t, text in enumerate(spelled):
            for pos in _occurrences(text, s):
                if pos != starts[t]:
                    return False
                if mode is ValidityMode.REPEAT_FREE and segment[t] != s:
                    return False
    return True


def validity_table_bruteforce(msa: Msa, mode: ValidityMode) -> ValidityTable:
    """Evaluate ``is_valid_segment`` for every segment and derive v and f."""
    n = msa.n
    valid = [[False] * (n + 1) for _ in range(n + 1)]
    for x in range(1, n + 1):
        for y in range(x, n + 1):
            valid[x][y] = is_valid_segment(msa, x, y, mode)
    f = tuple(next((y for y in range(j + 1, n + 1) if valid[j + 1][y]), None) for j in range(n))
    v = (None, *(next((x - 1 for x in range(j, 0, -1) if valid[x][j]), None) for j in range(1, n + 1)))
    return ValidityTable(mode=mode, n=n, f=f, v=v)


# ── Gapless repeat-free tables ────────────────────────────────────────────


def _window_valid(loci: list[SaInterval], m: int) -> bool:
    """Equal-length row strings: the window is valid iff their distinct loci cover exactly m suffixes."""
    return sum(locus.size for locus in set(loci)) == m


def compute_v_f_gapless(msa: Msa, *, event_bus: EventBus | None = None) -> ValidityTable:
    """Compute v(j) and f(j) for repeat-free segments of a gapless alignment.

    A window ``[x..y]`` slides from the right end: it is widened to the left until
    the suffix-array ranges of the m row strings cover exactly m suffixes, and
    shortened on the right by suffix-tree contraction.

    Args:
        msa: A gapless alignment.
        event_bus: Receives one progress event per end column.

    Returns:
        The repeat-free ``ValidityTable`` with both v and f.

    Raises:
        ValidationError: If the alignment contains gaps.
    """
    if not msa.is_gapless:
        msg = "compute_v_f_gapless needs a gapless MSA; use the elastic path for gapped input"
        raise ValidationError(msg)
    n, m = msa.n, msa.m
    gss: GeneralizedSuffixStructure = build_gsa(msa.rows, msa.alphabet)
    v: list[int | None] = [None] * (n + 1)

    x = n + 1
    loci = [gss.full_interval() for _ in range(m)]
    for y in range(n, 0, -1):
        while x > y or not _window_valid(loci, m):
            if x == 1:
                break
            x -= 1
            loci = [gss.backward_step(locus, row[x - 1]) for locus, row in zip(loci, msa.rows, strict=True)]
        if x > y or not _window_valid(loci, m):
            logger.debug("No valid segment ends at column %d or before", y)
            break
        v[y] = x - 1
        if event_bus is not None:
            event_bus.progress("validity", n - y + 1, n, f"Column {y}")
        if x <= y - 1:
            loci = [gss.contract(locus, y - x) for locus in loci]
        else:
            x = y
            loci = [gss.full_interval() for _ in range(m)]

    f: list[int | None] = [None] * n
    j = 0
    for y in range(1, n + 1):
        value = v[y]
        while value is not None and j <= value:
            f[j] = y
            j += 1
    return ValidityTable(mode=ValidityMode.REPEAT_FREE, n=n, f=tuple(f), v=tuple(v))


# ── Elastic tables ────────────────────────────────────────────────────────


def compute_f_elastic(msa: Msa, *, event_bus: EventBus | None = None) -> ValidityTable:
    """Compute f(j) for semi-repeat-free segments of any alignment.

    Args:
        msa: The alignment; gaps allowed.
        event_bus: Receives one progress event per start column.

    Returns:
        A semi-repeat-free ``ValidityTable`` (f only).
    """
    f = compute_f_elastic_values(msa, event_bus=event_bus)
    defined = sum(value is not None for value in f)
    logger.info("Elastic f table: %d of %d start columns admit a valid segment", defined, msa.n)
    return ValidityTable(mode=ValidityMode.SEMI_REPEAT_FREE, n=msa.n, f=tuple(f))


def compute_validity_table(msa: Msa, mode: ValidityMode, *, event_bus: EventBus | None = None) -> ValidityTable:
    """Pick the table computation for *mode*.

    Repeat-free mode needs a gapless alignment; semi-repeat-free mode accepts any.

    Raises:
        ValidationError: For repeat-free mode on a gapped alignment.
    """
    if mode is ValidityMode.SEMI_REPEAT_FREE:
        return compute_f_elastic(msa, event_bus=event_bus)
    if not msa.is_gapless:
        msg = "A repeat-free f table needs a gapless MSA; gapped repeat-free input uses the minmaxlength recurrence"
        raise ValidationError(msg)
    return compute_v_f_gapless(msa, event_bus=event_bus)


# ── Graph-level properties ────────────────────────────────────────────────


class _LabelTrie:
    """Trie over node labels; ``nodes`` lists the graph nodes whose label ends here."""

    __slots__ = ("children", "nodes")

    def __init__(self) -> None:
        self.children: dict[str, _LabelTrie] = {}
        self.nodes: list[int] = []

    @classmethod
    def of(cls, g: Efg) -> _LabelTrie:
        root = cls()
        for node in g.nodes:
            current = root
            for c in node.label:
                current = current.children.setdefault(c, cls())
            current.nodes.append(node.id)
        return root


def _allowed(g: Efg, node: int, start: int, offset: int, mode: ValidityMode) -> bool:
    if offset != 0:
        return False
    if mode is ValidityMode.REPEAT_FREE:
        return start == node
    return g.nodes[start].block == g.nodes[node].block


def find_repeat_violation(g: Efg, mode: ValidityMode) -> tuple[str, Occurrence] | None:
    """Find a node label occurring somewhere the mode forbids.

    Every (node, offset) of the graph is the start of a walk that follows graph
    edges and a trie of all labels in lockstep, so all labels are matched from
    that start at once. Walks span at most as many blocks as the longest label
    has characters.

    Args:
        g: The founder graph.
        mode: ``REPEAT_FREE`` allows occurrences only at offset 0 of the labelled node;
            ``SEMI_REPEAT_FREE`` at offset 0 of any node of its block.

    Returns:
        ``(label, occurrence)`` of the first violation, or ``None``.
    """
    trie = _LabelTrie.of(g)
    for start in g.nodes:
        for offset in range(len(start.label)):
            stack: list[tuple[int, int, _LabelTrie]] = [(start.id, offset, trie)]
            while stack:
                w, o, state = stack.pop()
                label = g.label(w)
                if o == len(label):
                    stack.extend((u, 0, state) for u in g.successors(w))
                    continue
                child = state.children.get(label[o])
                if child is None:
                    continue
                for node in child.nodes:
                    if not _allowed(g, node, start.id, offset, mode):
                        logger.debug("Label of node %d occurs at node %d offset %d", node, start.id, offset)
                        return g.label(node), Occurrence(block=start.block, node=start.id, offset=offset)
                stack.append((w, o + 1, child))
    return None


def graph_is_repeat_free(g: Efg) -> bool:
    """Return whether every label occurs only as a prefix of paths starting at its own node."""
    return find_repeat_violation(g, ValidityMode.REPEAT_FREE) is None


def graph_is_semi_repeat_free(g: Efg) -> bool:
    """Return whether every label occurs only as a prefix of paths starting in its own block."""
    return find_repeat_violation(g, ValidityMode.SEMI_REPEAT_FREE) is None


def require_graph_property(g: Efg, mode: ValidityMode) -> None:
    """Raise unless *g* has the property *mode*.

    Raises:
        GraphPropertyError: With the ``(label, occurrence)`` witness.
    """
    violation = find_repeat_violation(g, mode)
    if violation is not None:
        label, where = violation
        msg = (
            f"Graph is not {mode.value}: label '{label}' occurs at "
            f"block {where.block}, node {where.node}, offset {where.offset}"
        )
        raise GraphPropertyError(msg, witness=violation)
