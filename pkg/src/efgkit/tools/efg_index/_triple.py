"""Triple index for semi-repeat-free graphs: reversed three-node windows with start-node annotations."""

from __future__ import annotations

import logging

import numpy as np

from efgkit.core.datatypes import Efg, Occurrence
from efgkit.core.exceptions import InputFormatError
from efgkit.stringds import SEPARATOR, RankSelectBits, SaInterval
from efgkit.tools.efg_index._base import EfgIndex, Section, WindowText, isolated_nodes
from efgkit.tools.efg_index._tries import LabelTrie, pack_tries, spell_through, unpack_tries

logger = logging.getLogger(__name__)


def triple_windows(graph: Efg) -> list[tuple[int, ...]]:
    """Return every two-edge path, then boundary and uncovered edges, then isolated nodes.

    An edge is a boundary edge when it leaves the first block or enters the
    last one; an edge is uncovered when no two-edge path runs through it.
    """
    windows: list[tuple[int, ...]] = []
    covered: set[tuple[int, int]] = set()
    for v, w in graph.edges:
        for u in graph.successors(w):
            windows.append((v, w, u))
            covered.update(((v, w), (w, u)))
    last = graph.b - 1
    for v, w in graph.edges:
        if graph.nodes[v].block == 0 or graph.nodes[w].block == last or (v, w) not in covered:
            windows.append((v, w))
    windows.extend((v,) for v in isolated_nodes(graph))
    return windows


def _annotate(graph: Efg, text: WindowText) -> np.ndarray:
    """Store v at every suffix α·rev(ℓ(w))·rev(ℓ(v))·0 of a window starting with edge (v, w)."""
    gss = text.gss
    anchors = np.full(len(gss), -1, dtype=np.int64)
    for doc, window in enumerate(text.windows):
        if len(window) < 2:
            continue
        start = int(gss.doc_starts[doc])
        tail = len(graph.label(window[2])) if len(window) == 3 else 0
        for t in range(tail + 1):
            anchors[gss.isa[start + t]] = window[0]
    return anchors


class TripleIndex(EfgIndex):
    """Suffix structure over D = ∏ rev(ℓ(v)ℓ(w)ℓ(u))·0, searched with the reversed pattern.

    The reversed pattern is extended symbol by symbol. Whenever the part read
    so far can be followed by the separator at an annotated suffix, it spells
    ℓ(v)ℓ(w)·β from the start of some v, and only at that v; that position is
    remembered as an anchor. If the whole pattern is found, it lies inside a
    window; otherwise the part left of the last anchor is read leftwards from
    v through the R tries.
    """

    kind = "triple"
    kind_code = 3

    def __init__(
        self,
        graph: Efg,
        *,
        text: WindowText | None = None,
        anchors: np.ndarray | None = None,
        backward: list[LabelTrie] | None = None,
    ) -> None:
        """Build (or adopt) D, its annotations and the R tries."""
        super().__init__(graph)
        self.text = text if text is not None else WindowText.build(graph, triple_windows(graph), reverse=True)
        self.anchors = anchors if anchors is not None else _annotate(graph, self.text)
        self._annotated = RankSelectBits(self.anchors >= 0)
        if backward is None:
            backward = [LabelTrie() for _ in graph.nodes]
            for v, w in graph.edges:
                backward[w].insert(graph.label(v)[::-1], v)
        self.backward = backward
        size, bound = len(self.text.gss), graph.total_length * graph.height**2
        logger.info("Triple index: |D| = %d (N·H² = %d, ratio %.2f)", size, bound, size / max(bound, 1))

    def anchor_nodes(self, interval: SaInterval) -> set[int]:
        """Return the distinct annotations stored at ranks inside *interval*."""
        values = self.anchors[interval.lo : interval.hi]
        return {int(v) for v in values[values >= 0]}

    def _anchor(self, interval: SaInterval) -> int | None:
        first = self._annotated.rank(interval.lo)
        if self._annotated.rank(interval.hi) == first:
            return None
        return int(self.anchors[self._annotated.select(first + 1)])

    def _find(self, pattern: str) -> Occurrence | None:
        gss = self.text.gss
        interval = gss.full_interval()
        anchor: tuple[int, int] | None = None
        for depth, i in enumerate(range(len(pattern) - 1, -1, -1)):
            nxt = gss.extend_right(interval, depth, pattern[i])
            if nxt.is_empty:
                break
            interval = nxt
            ended = gss.extend_right(interval, depth + 1, SEPARATOR)
            if not ended.is_empty:
                node = self._anchor(ended)
                if node is not None:
                    anchor = (i, node)
        else:
            return self.occurrence(*self.text.start_of(self.graph, interval.lo, len(pattern)))
        if anchor is None:
            return None
        start, node = anchor
        if start == 0:
            return self.occurrence(node, 0)
        reached = spell_through(self.backward, node, pattern[:start][::-1])
        if reached is None:
            return None
        owner, depth = reached
        return self.occurrence(owner, len(self.graph.label(owner)) - depth)

    def sections(self) -> list[Section]:
        """Return D, its suffix array, the annotations and the R tries."""
        return [
            *self.text.sections(),
            (b"ANNO", self.anchors.astype("<i8").tobytes()),
            (b"TRIE", pack_tries(self.backward)),
        ]

    @classmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes]) -> TripleIndex:
        """Rebuild from ``sections`` output.

        Raises:
            InputFormatError: If a section is missing or inconsistent.
        """
        text = WindowText.from_sections(graph, sections, reverse=True)
        if b"ANNO" not in sections:
            msg = "Index file lacks section ANNO"
            raise InputFormatError(msg)
        anchors = np.frombuffer(sections[b"ANNO"], dtype="<i8").astype(np.int64)
        if len(anchors) != len(text.gss):
            msg = "Annotation section does not match the text length"
            raise InputFormatError(msg)
        tries = unpack_tries(sections.get(b"TRIE", b""))
        if len(tries) != len(graph.nodes):
            msg = f"Expected {len(graph.nodes)} tries, found {len(tries)}"
            raise InputFormatError(msg)
        return cls(graph, text=text, anchors=anchors, backward=tries)
