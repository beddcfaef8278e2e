"""Shared value objects used across tools and pipelines."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

from efgkit.core.exceptions import ValidationError

GAP = "-"


class ValidityMode(StrEnum):
    """Which graph property a segment (and the induced graph) must have."""

    REPEAT_FREE = "repeat-free"
    SEMI_REPEAT_FREE = "semi-repeat-free"


class ScoreKind(StrEnum):
    """Objective optimised by a segmentation."""

    MAXBLOCKS = "maxblocks"
    MINMAXLENGTH = "minmaxlength"


class Engine(StrEnum):
    """Segmentation engine selection."""

    AUTO = "auto"
    GAPLESS_LINEAR = "gapless-linear"
    ELASTIC = "elastic"


class IndexKind(StrEnum):
    """The three query indexes over a founder graph."""

    CLASSIC = "classic"
    EBWT = "ebwt"
    TRIPLE = "triple"


# ── Alignment ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Msa:
    """An m×n multiple sequence alignment over Σ ∪ {gap}.

    Attributes:
        rows: The aligned rows, all of length n.
        names: Record names, one per row.
        alphabet: Sorted non-gap symbols; symbol ``alphabet[k]`` has dense code ``k + 1``.
    """

    rows: tuple[str, ...]
    names: tuple[str, ...] = ()
    alphabet: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """Check the alignment invariants and fill in derived defaults."""
        if not self.rows:
            msg = "An MSA needs at least one row"
            raise ValidationError(msg)
        n = len(self.rows[0])
        if n < 1:
            msg = "MSA rows must have at least one column"
            raise ValidationError(msg)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                msg = f"row length mismatch: row {i + 1} has {len(row)} columns, expected {n}"
                raise ValidationError(msg)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"r{i + 1}" for i in range(len(self.rows))))
        elif len(self.names) != len(self.rows):
            msg = f"Got {len(self.names)} names for {len(self.rows)} rows"
            raise ValidationError(msg)
        present = sorted({c for row in self.rows for c in row} - {GAP})
        if not self.alphabet:
            object.__setattr__(self, "alphabet", tuple(present))
        else:
            if GAP in self.alphabet:
                msg = "The gap symbol cannot be part of the alphabet"
                raise ValidationError(msg)
            unknown = set(present) - set(self.alphabet)
            if unknown:
                msg = f"Symbols {sorted(unknown)} are not in the alphabet"
                raise ValidationError(msg)
            object.__setattr__(self, "alphabet", tuple(sorted(self.alphabet)))

    @property
    def m(self) -> int:
        """Return the number of rows."""
        return len(self.rows)

    @property
    def n(self) -> int:
        """Return the number of columns."""
        return len(self.rows[0])

    @property
    def sigma(self) -> int:
        """Return the alphabet size."""
        return len(self.alphabet)

    @property
    def is_gapless(self) -> bool:
        """Return whether no row contains a gap."""
        return all(GAP not in row for row in self.rows)

    @cached_property
    def codes(self) -> dict[str, int]:
        """Return the dense symbol code map (1-based; 0 is reserved for separators)."""
        return {c: k + 1 for k, c in enumerate(self.alphabet)}

    def spelled_rows(self) -> tuple[str, ...]:
        """Return every row with its gaps removed."""
        return tuple(row.replace(GAP, "") for row in self.rows)


# ── Validity and segmentation ─────────────────────────────────────────────


@dataclass(frozen=True)
class ValidityTable:
    """Preprocessing tables v(j) and f(j); ``None`` encodes "undefined".

    Attributes:
        mode: Validity mode the table was computed for.
        n: Number of MSA columns.
        f: ``f[j]`` for ``j`` in ``0..n-1``: smallest y with [j+1..y] valid.
        v: ``v[j]`` for ``j`` in ``1..n`` (``v[0]`` is always ``None``): largest j'
            with [j'+1..j] valid; ``None`` when only f was computed.
    """

    mode: ValidityMode
    n: int
    f: tuple[int | None, ...]
    v: tuple[int | None, ...] | None = None

    def __post_init__(self) -> None:
        """Check table shapes."""
        if len(self.f) != self.n:
            msg = f"f table needs {self.n} entries, got {len(self.f)}"
            raise ValidationError(msg)
        if self.v is not None and len(self.v) != self.n + 1:
            msg = f"v table needs {self.n + 1} entries, got {len(self.v)}"
            raise ValidationError(msg)


@dataclass(frozen=True)
class Segmentation:
    """Contiguous column intervals (1-based, inclusive) partitioning [1..n].

    Attributes:
        intervals: ``(x_k, y_k)`` pairs in column order.
        mode: Validity mode every segment satisfies.
        score_kind: Objective the segmentation was optimised for.
        score: Objective value.
        fallback: ``True`` for the single-block fallback used when no valid segmentation exists.
    """

    intervals: tuple[tuple[int, int], ...]
    mode: ValidityMode
    score_kind: ScoreKind
    score: int
    fallback: bool = False

    def __post_init__(self) -> None:
        """Check that the intervals tile [1..n] and the score matches them."""
        if not self.intervals:
            msg = "A segmentation needs at least one interval"
            raise ValidationError(msg)
        expected_start = 1
        for x, y in self.intervals:
            if x != expected_start or y < x:
                msg = f"Interval [{x}..{y}] breaks the partition (expected start {expected_start})"
                raise ValidationError(msg)
            expected_start = y + 1
        recomputed = score_intervals(self.intervals, self.score_kind)
        if recomputed != self.score:
            msg = f"Score {self.score} does not match the intervals ({recomputed})"
            raise ValidationError(msg)

    @property
    def b(self) -> int:
        """Return the number of segments."""
        return len(self.intervals)

    @property
    def n(self) -> int:
        """Return the number of columns covered."""
        return self.intervals[-1][1]

    @property
    def max_length(self) -> int:
        """Return the length of the longest segment."""
        return max(y - x + 1 for x, y in self.intervals)


def score_intervals(intervals: Sequence[tuple[int, int]], kind: ScoreKind) -> int:
    """Recompute a segmentation score from its intervals.

    Args:
        intervals: ``(x, y)`` column intervals.
        kind: Objective to evaluate.

    Returns:
        The number of blocks, or the maximum segment length.
    """
    if kind is ScoreKind.MAXBLOCKS:
        return len(intervals)
    return max(y - x + 1 for x, y in intervals)


@dataclass(frozen=True)
class DpTrace:
    """Per-column scores and predecessor links of a segmentation DP.

    Attributes:
        kind: Which recurrence filled the table (``maxblocks``, ``minmaxlength``,
            ``linear`` or ``elastic``).
        scores: ``scores[j]`` for ``j`` in ``0..n``; ``None`` means no valid
            segmentation of the prefix [1..j].
        predecessors: ``predecessors[j]`` is the end column j' of the block
            preceding the last block [j'+1..j].
        x: Maximal argmin positions of the linear-time recurrence, when recorded.
        threshold: Initial threshold K of the linear-time recurrence, when used.
    """

    kind: str
    scores: tuple[int | None, ...]
    predecessors: tuple[int | None, ...]
    x: tuple[int | None, ...] | None = None
    threshold: int | None = None

    @property
    def n(self) -> int:
        """Return the number of columns."""
        return len(self.scores) - 1

    @property
    def final_score(self) -> int | None:
        """Return the score of the whole alignment, or ``None``."""
        return self.scores[self.n]

    def intervals(self) -> tuple[tuple[int, int], ...] | None:
        """Follow predecessor links back from column n.

        Returns:
            The segment intervals in column order, or ``None`` when no valid
            segmentation exists.
        """
        if self.final_score is None:
            return None
        out: list[tuple[int, int]] = []
        j = self.n
        while j > 0:
            prev = self.predecessors[j]
            assert prev is not None and prev < j
            out.append((prev + 1, j))
            j = prev
        return tuple(reversed(out))


@dataclass(frozen=True)
class SegmentationResult:
    """Everything the segmenter produces for one alignment."""

    msa: Msa
    segmentation: Segmentation
    trace: DpTrace | None = None
    table: ValidityTable | None = None


# ── Founder graphs ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class EfgNode:
    """One labeled node of an elastic founder graph (block index is 0-based)."""

    id: int
    block: int
    label: str


@dataclass(frozen=True)
class Efg:
    """An elastic founder graph in canonical form.

    Node ids are assigned block by block, labels sorted within a block, and
    edges are sorted; ``make_efg`` in ``tools.efg.logic`` produces this form.

    Attributes:
        blocks: Node ids per block.
        nodes: Nodes indexed by id.
        edges: Sorted ``(from, to)`` id pairs.
        provenance: Supporting row indices per edge (aligned with ``edges``), if known.
    """

    blocks: tuple[tuple[int, ...], ...]
    nodes: tuple[EfgNode, ...]
    edges: tuple[tuple[int, int], ...]
    provenance: tuple[frozenset[int], ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Check the block-graph invariants."""
        if not self.blocks:
            msg = "A founder graph needs at least one block"
            raise ValidationError(msg)
        for i, node in enumerate(self.nodes):
            if node.id != i:
                msg = f"Node at position {i} has id {node.id}"
                raise ValidationError(msg)
            if not node.label:
                msg = f"Node {i} has an empty label"
                raise ValidationError(msg)
        seen: set[int] = set()
        for k, block in enumerate(self.blocks):
            if not block:
                msg = f"Block {k} is empty"
                raise ValidationError(msg)
            labels = [self.nodes[v].label for v in block]
            if len(set(labels)) != len(labels):
                msg = f"Block {k} has duplicate labels"
                raise ValidationError(msg)
            for v in block:
                if self.nodes[v].block != k:
                    msg = f"Node {v} is listed in block {k} but claims block {self.nodes[v].block}"
                    raise ValidationError(msg)
                seen.add(v)
        if len(seen) != len(self.nodes):
            msg = "Every node must belong to exactly one block"
            raise ValidationError(msg)
        if list(self.edges) != sorted(set(self.edges)):
            msg = "Edges must be sorted and unique"
            raise ValidationError(msg)
        for v, w in self.edges:
            if not (0 <= v < len(self.nodes) and 0 <= w < len(self.nodes)):
                msg = f"Edge ({v}, {w}) references an unknown node"
                raise ValidationError(msg)
            if self.nodes[w].block != self.nodes[v].block + 1:
                msg = f"Edge ({v}, {w}) does not connect consecutive blocks"
                raise ValidationError(msg)
        if self.provenance is not None and len(self.provenance) != len(self.edges):
            msg = "Provenance must have one entry per edge"
            raise ValidationError(msg)

    @property
    def b(self) -> int:
        """Return the number of blocks."""
        return len(self.blocks)

    @cached_property
    def _successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for v, w in self.edges:
            out[v].append(w)
        return tuple(tuple(ws) for ws in out)

    @cached_property
    def _predecessors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.nodes]
        for v, w in self.edges:
            out[w].append(v)
        return tuple(tuple(us) for us in out)

    def successors(self, v: int) -> tuple[int, ...]:
        """Return the out-neighbours of node *v*."""
        return self._successors[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        """Return the in-neighbours of node *v*."""
        return self._predecessors[v]

    def label(self, v: int) -> str:
        """Return the label of node *v*."""
        return self.nodes[v].label

    @property
    def total_length(self) -> int:
        """Return N, the total label length."""
        return sum(len(node.label) for node in self.nodes)

    @property
    def max_label(self) -> int:
        """Return L, the longest label length."""
        return max(len(node.label) for node in self.nodes)

    @property
    def height(self) -> int:
        """Return H (= W), the largest block size."""
        return max(len(block) for block in self.blocks)

    @cached_property
    def alphabet(self) -> tuple[str, ...]:
        """Return the sorted set of symbols used by the labels."""
        return tuple(sorted({c for node in self.nodes for c in node.label}))


@dataclass(frozen=True)
class EfgStats:
    """Summary statistics of a founder graph."""

    b: int
    heights: tuple[int, ...]
    total_length: int
    max_label: int
    height: int
    edge_count: int


@dataclass(frozen=True)
class Occurrence:
    """Where one occurrence of a pattern starts: block, node id and offset in the label."""

    block: int
    node: int
    offset: int


# ── Automata ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class CharNfa:
    """Node-labelled automaton over single characters; state 0 is the initial state.

    Every edge into a state reads that state's symbol, so all in-edges of a
    state carry one label. ``determinize`` returns the same type with
    ``origins`` holding the NFA subset behind every DFA state.

    Attributes:
        labels: Symbol of each state (``""`` for the initial state).
        edges: Sorted ``(from, to)`` state pairs.
        block_ends: States reading the last character of a block string.
        accepting: States reading the last character of a last-block string.
        origins: Subset provenance per state (empty for an NFA built from a graph).
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    block_ends: frozenset[int] = frozenset()
    accepting: frozenset[int] = frozenset()
    origins: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        """Check the node-labelled form."""
        if not self.labels or self.labels[0] != "":
            msg = "State 0 must be the unlabelled initial state"
            raise ValidationError(msg)
        if any(len(label) != 1 for label in self.labels[1:]):
            msg = "Every non-initial state reads exactly one symbol"
            raise ValidationError(msg)
        if list(self.edges) != sorted(set(self.edges)):
            msg = "Edges must be sorted and unique"
            raise ValidationError(msg)
        size = len(self.labels)
        for v, w in self.edges:
            if not (0 <= v < size and 0 < w < size):
                msg = f"Edge ({v}, {w}) leaves the state range or enters the initial state"
                raise ValidationError(msg)
        if self.origins and len(self.origins) != size:
            msg = "Provenance must have one entry per state"
            raise ValidationError(msg)

    def __len__(self) -> int:
        """Return the number of states."""
        return len(self.labels)

    @cached_property
    def _successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.labels]
        for v, w in self.edges:
            out[v].append(w)
        return tuple(tuple(ws) for ws in out)

    @cached_property
    def _predecessors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.labels]
        for v, w in self.edges:
            out[w].append(v)
        return tuple(tuple(us) for us in out)

    def successors(self, v: int) -> tuple[int, ...]:
        """Return the out-neighbours of state *v*."""
        return self._successors[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        """Return the in-neighbours of state *v*."""
        return self._predecessors[v]


@dataclass(frozen=True)
class WheelerAutomaton(CharNfa):
    """Deterministic node-labelled automaton; once sorted, state ids follow the Wheeler order.

    Attributes:
        p_min: Colexicographically smallest incoming path label per state
            (empty until ``wheeler_sort`` has run).
    """

    p_min: tuple[str, ...] = ()

    @property
    def ordered(self) -> bool:
        """Return whether the states carry their Wheeler order."""
        return bool(self.p_min)


# ── Hardness ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class OvInstance:
    """An Orthogonal Vectors instance: two sets of binary vectors of dimension d."""

    x: tuple[tuple[int, ...], ...]
    y: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        """Check that all vectors are binary and of one dimension."""
        if not self.x or not self.y:
            msg = "Both vector sets must be non-empty"
            raise ValidationError(msg)
        check_vectors(self.x)
        check_vectors(self.y)
        if len(self.x[0]) != len(self.y[0]):
            msg = f"dimension mismatch: X has d={len(self.x[0])}, Y has d={len(self.y[0])}"
            raise ValidationError(msg)

    @property
    def n(self) -> int:
        """Return the number of vectors in X."""
        return len(self.x)

    @property
    def d(self) -> int:
        """Return the vector dimension."""
        return len(self.x[0])


def check_vectors(vectors: Iterable[Sequence[int]]) -> int:
    """Check a non-empty set of binary vectors of uniform dimension.

    Args:
        vectors: The vectors to check.

    Returns:
        The common dimension d.

    Raises:
        ValidationError: On an empty set, a dimension mismatch or a non-binary entry.
    """
    dims: set[int] = set()
    count = 0
    for vec in vectors:
        count += 1
        dims.add(len(vec))
        if any(e not in (0, 1) for e in vec):
            msg = f"Vector {list(vec)} has entries outside {{0, 1}}"
            raise ValidationError(msg)
    if count == 0:
        msg = "At least one vector is required"
        raise ValidationError(msg)
    if len(dims) != 1:
        msg = f"dimension mismatch: got dimensions {sorted(dims)}"
        raise ValidationError(msg)
    d = dims.pop()
    if d < 1:
        msg = "Vectors must have dimension >= 1"
        raise ValidationError(msg)
    return d


@dataclass(frozen=True)
class NodeRole:
    """Where a gadget node sits in an OV reduction graph.

    Attributes:
        part: ``"L"``, ``"M"`` or ``"R"`` for the left, middle and right sub-graphs.
        vector: 0-based index of the Y vector whose middle gadget holds the node (``None`` outside ``"M"``).
        row: Row 1, 2 or 3 of the middle sub-graph (``None`` outside ``"M"``).
    """

    part: str
    vector: int | None = None
    row: int | None = None


@dataclass(frozen=True)
class OvReduction:
    """The founder graph built from the Y side of an OV instance, with the role of every node.

    Attributes:
        graph: The gadget graph.
        roles: Role of each node, indexed by node id.
        query: The query encoded from the X side, when the whole instance was reduced.
    """

    graph: Efg
    roles: tuple[NodeRole, ...]
    query: str | None = None
