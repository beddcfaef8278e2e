"""OV reduction to founder-graph matching, the online matcher and brute-force OV checks."""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from efgkit.core.datatypes import Efg, OvInstance, OvReduction, check_vectors
from efgkit.core.exceptions import InputFormatError, ValidationError
from efgkit.tools.hardness._gadgets import B4, E4, ONE4, ZERO4, build_gadget_graph

logger = logging.getLogger(__name__)


# ── OV text format ────────────────────────────────────────────────────────


def _bits(line: str, lineno: int) -> tuple[int, ...]:
    compact = "".join(line.split())
    if not compact or set(compact) - {"0", "1"}:
        msg = f"Expected a binary vector, got {line.strip()!r}"
        raise InputFormatError(msg, line=lineno)
    return tuple(int(c) for c in compact)


def parse_ov(text: str) -> OvInstance:
    """Parse ``n d`` followed by n X vectors and n Y vectors, one per line.

    Entries may be written ``101`` or ``1 0 1``; blank lines are skipped.

    Raises:
        InputFormatError: On a malformed header, vector or line count.
    """
    lines = [(i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        msg = "Empty OV instance"
        raise InputFormatError(msg)
    lineno, header = lines[0]
    try:
        n, d = (int(v) for v in header.split())
    except ValueError as exc:
        msg = f"Header must be 'n d', got {header.strip()!r}"
        raise InputFormatError(msg, line=lineno) from exc
    if n < 1 or d < 1:
        msg = f"n and d must be positive, got n={n}, d={d}"
        raise InputFormatError(msg, line=lineno)
    body = lines[1:]
    if len(body) != 2 * n:
        msg = f"Expected {2 * n} vector lines, found {len(body)}"
        raise InputFormatError(msg, line=body[-1][0] if body else lineno)
    vectors = [_bits(line, i) for i, line in body]
    for (i, _), vec in zip(body, vectors, strict=True):
        if len(vec) != d:
            msg = f"Vector has dimension {len(vec)}, header says {d}"
            raise InputFormatError(msg, line=i)
    return OvInstance(x=tuple(vectors[:n]), y=tuple(vectors[n:]))


def format_ov(instance: OvInstance) -> str:
    """Return the text form read by ``parse_ov``."""
    rows = ["".join(map(str, vec)) for vec in (*instance.x, *instance.y)]
    return "\n".join([f"{instance.n} {instance.d}", *rows]) + "\n"


def read_ov(path: Path) -> OvInstance:
    """Read an OV instance file."""
    return parse_ov(path.read_text(encoding="utf-8"))


def write_ov(instance: OvInstance, path: Path) -> Path:
    """Write *instance* to *path* and return the path."""
    path.write_text(format_ov(instance), encoding="utf-8")
    return path


def random_ov(rng: random.Random, n: int, d: int, density: float = 0.5) -> OvInstance:
    """Draw an instance with each entry 1 with probability *density*."""

    def vectors() -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(rng.random() < density) for _ in range(d)) for _ in range(n))

    return OvInstance(x=vectors(), y=vectors())


# ── Reduction ─────────────────────────────────────────────────────────────


def build_ov_query(x: Sequence[Sequence[int]]) -> str:
    """Encode the X vectors as ``B⁴ Q₁ … Qₙ E⁴`` with ``Qᵢ = B⁴ (0⁴|1⁴)ᵈ E⁴``.

    Raises:
        ValidationError: On an empty set, a dimension mismatch or a non-binary entry.
    """
    check_vectors(x)
    parts = [B4]
    for vec in x:
        parts.append(B4)
        parts.extend(ONE4 if entry else ZERO4 for entry in vec)
        parts.append(E4)
    parts.append(E4)
    return "".join(parts)


def build_ov_graph(y: Sequence[Sequence[int]]) -> OvReduction:
    """Build the gadget graph of the Y vectors (the graph never depends on X)."""
    return build_gadget_graph(y)


def reduce_ov(instance: OvInstance) -> OvReduction:
    """Return the gadget graph of *instance* together with its query."""
    return replace(build_ov_graph(instance.y), query=build_ov_query(instance.x))


def ov_has_orthogonal_pair(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> bool:
    """Return whether some ``x ∈ X`` and ``y ∈ Y`` have dot product 0 (exhaustive)."""
    if len(x) == 0 or len(y) == 0:
        return False
    if check_vectors(x) != check_vectors(y):
        msg = "dimension mismatch between X and Y"
        raise ValidationError(msg)
    products = np.asarray(x, dtype=np.int64) @ np.asarray(y, dtype=np.int64).T
    return bool((products == 0).any())


# ── Online matching ───────────────────────────────────────────────────────


class OnlineMatcher:
    """Bit-parallel matcher over all ``(node, offset)`` positions of a graph.

    Positions are the characters of the concatenated labels. After reading
    k pattern symbols, the active positions are those where some path spells
    the first k symbols ending there; one step costs O(N + |E|).
    """

    def __init__(self, graph: Efg) -> None:
        """Flatten *graph* into position arrays."""
        self.graph = graph
        lengths = np.asarray([len(node.label) for node in graph.nodes], dtype=np.int64)
        self.starts = np.concatenate(([0], np.cumsum(lengths)[:-1])).astype(np.int64)
        ends = self.starts + lengths - 1
        text = "".join(node.label for node in graph.nodes)
        self.codes = np.fromiter(map(ord, text), dtype=np.int64, count=len(text))
        self.owner = np.repeat(np.arange(len(graph.nodes), dtype=np.int64), lengths)
        self.inner = np.ones(len(text), dtype=bool)
        self.inner[ends] = False
        pairs = np.asarray(graph.edges, dtype=np.int64).reshape(-1, 2)
        self.edge_from = ends[pairs[:, 0]]
        self.edge_to = self.starts[pairs[:, 1]]

    def _step(self, active: np.ndarray, symbol: str) -> np.ndarray:
        nxt = np.zeros_like(active)
        nxt[1:] = active[:-1] & self.inner[:-1]
        nxt[self.edge_to[active[self.edge_from]]] = True
        return nxt & (self.codes == ord(symbol))

    def _actives(self, pattern: str, *, keep: bool) -> list[np.ndarray]:
        active = self.codes == ord(pattern[0])
        history = [active]
        for symbol in pattern[1:]:
            if not active.any():
                break
            active = self._step(active, symbol)
            if keep:
                history.append(active)
            else:
                history[0] = active
        return history

    def occurs(self, pattern: str) -> bool:
        """Return whether *pattern* spells a substring of some path label (the empty pattern always does)."""
        if not pattern:
            return True
        history = self._actives(pattern, keep=False)
        return bool(history[-1].any())

    def walk(self, pattern: str) -> list[tuple[int, int]] | None:
        """Return the ``(node, offset)`` of every symbol of one occurrence of *pattern*, or ``None``."""
        if not pattern:
            return []
        history = self._actives(pattern, keep=True)
        if len(history) < len(pattern) or not history[-1].any():
            return None
        pos = int(np.flatnonzero(history[-1])[0])
        path = [pos]
        for previous in reversed(history[:-1]):
            if pos > 0 and self.inner[pos - 1] and previous[pos - 1]:
                pos -= 1
            else:
                sources = self.edge_from[(self.edge_to == pos) & previous[self.edge_from]]
                pos = int(sources[0])
            path.append(pos)
        path.reverse()
        return [(int(self.owner[p]), int(p - self.starts[self.owner[p]])) for p in path]


def online_match(g: Efg, pattern: str) -> bool:
    """Return whether *pattern* occurs in *g*, in O(|pattern|·(N + |E|)) time."""
    return OnlineMatcher(g).occurs(pattern)


def match_walk(g: Efg, pattern: str) -> list[tuple[int, int]] | None:
    """Return the per-symbol ``(node, offset)`` walk of one occurrence of *pattern*, or ``None``."""
    return OnlineMatcher(g).walk(pattern)


# ── Benchmark ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class BenchmarkRow:
    """Timing of ``online_match`` on one random reduction."""

    n: int
    d: int
    query_length: int
    edge_count: int
    found: bool
    seconds: float


def _time_instance(n: int, d: int, seed: int) -> BenchmarkRow:
    instance = random_ov(random.Random(seed), n, d)
    reduction = reduce_ov(instance)
    query = reduction.query or ""
    matcher = OnlineMatcher(reduction.graph)
    started = time.perf_counter()
    found = matcher.occurs(query)
    seconds = time.perf_counter() - started
    logger.debug("n=%d d=%d: %.4fs", n, d, seconds)
    return BenchmarkRow(n, d, len(query), len(reduction.graph.edges), found, seconds)


def benchmark_online_match(sizes: Iterable[tuple[int, int]], seed: int = 0, workers: int = 1) -> list[BenchmarkRow]:
    """Time online matching on random reductions of the given ``(n, d)`` sizes.

    Instances are independent and may run on *workers* threads; rows come
    back in the order of *sizes*.
    """
    jobs = [(n, d, seed + i) for i, (n, d) in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        rows = list(executor.map(lambda job: _time_instance(*job), jobs))
    logger.info("Benchmarked %d reductions on %d worker(s)", len(rows), max(1, workers))
    return rows


def format_benchmark(rows: Sequence[BenchmarkRow]) -> str:
    """Return a tab-separated table of benchmark rows."""
    lines = ["n\td\t|Q|\t|E|\tmatch\tseconds"]
    lines += [f"{r.n}\t{r.d}\t{r.query_length}\t{r.edge_count}\t{int(r.found)}\t{r.seconds:.6f}" for r in rows]
    return "\n".join(lines) + "\n"
