"""Expanded backward search over the edge-window text C."""

from __future__ import annotations

import logging

import numpy as np

from efgkit.core.datatypes import Efg, Occurrence
from efgkit.core.exceptions import GraphPropertyError, InputFormatError
from efgkit.stringds import RankSelectBits, SaInterval
from efgkit.tools.efg_index._base import EfgIndex, Section, WindowText
from efgkit.tools.efg_index._classic import edge_windows

logger = logging.getLogger(__name__)


class ExpandedBwtIndex(EfgIndex):
    """Backward search on C = ∏ ℓ(v)ℓ(w)·0 over all edges, with interval expansion.

    For every node v the suffixes of C starting with ℓ(v) form one interval,
    marked by B at its first rank and E at its last. Whenever a backward step
    lands inside a marked interval the pattern read so far starts with (or is
    a prefix of) ℓ(v) at the start of v, and the search widens to the whole
    interval of ℓ(v) so that every predecessor of v can continue it.
    """

    kind = "ebwt"
    kind_code = 2

    def __init__(
        self,
        graph: Efg,
        *,
        text: WindowText | None = None,
        begins: RankSelectBits | None = None,
        ends: RankSelectBits | None = None,
        marked: tuple[int, ...] | None = None,
    ) -> None:
        """Build (or adopt) C and its marks.

        Raises:
            GraphPropertyError: If two label intervals overlap.
        """
        super().__init__(graph)
        self.text = text if text is not None else WindowText.build(graph, edge_windows(graph))
        if begins is None or ends is None or marked is None:
            begins, ends, marked = self._mark()
        self.begins = begins
        self.ends = ends
        self.marked = marked
        logger.info("Expanded BWT index: |C| = %d, %d marked intervals", len(self.text.gss), self.begins.count)

    def _mark(self) -> tuple[RankSelectBits, RankSelectBits, tuple[int, ...]]:
        gss = self.text.gss
        spans = sorted(((gss.find(node.label), node.id) for node in self.graph.nodes), key=lambda s: s[0].lo)
        size = len(gss)
        b = np.zeros(size, dtype=bool)
        e = np.zeros(size, dtype=bool)
        previous_end = 0
        for interval, node in spans:
            if interval.is_empty or interval.lo < previous_end:
                msg = f"Label of node {node} has no interval of its own in C"
                raise GraphPropertyError(msg)
            b[interval.lo] = True
            e[interval.hi - 1] = True
            previous_end = interval.hi
        return RankSelectBits(b), RankSelectBits(e), tuple(node for _, node in spans)

    def marked_interval(self, interval: SaInterval) -> tuple[SaInterval, int] | None:
        """Return the marked interval containing *interval* and its node, if any."""
        r = self.begins.rank(interval.lo + 1)
        if r == 0:
            return None
        lo, last = self.begins.select(r), self.ends.select(r)
        if lo <= interval.lo and interval.hi - 1 <= last:
            return SaInterval(lo, last + 1), self.marked[r - 1]
        return None

    def _find(self, pattern: str) -> Occurrence | None:
        gss = self.text.gss
        interval = gss.full_interval()
        for c in reversed(pattern):
            interval = gss.backward_step(interval, c)
            if interval.is_empty:
                return None
            expansion = self.marked_interval(interval)
            if expansion is not None:
                interval = expansion[0]
        return self.occurrence(*self.text.start_of(self.graph, interval.lo, 1))

    def sections(self) -> list[Section]:
        """Return C, its suffix array, both bit sequences and the marked nodes."""
        size = np.asarray([len(self.begins)], dtype="<i8").tobytes()
        return [
            *self.text.sections(),
            (b"BITB", size + self.begins.packed()),
            (b"BITE", size + self.ends.packed()),
            (b"MARK", np.asarray(self.marked, dtype="<i8").tobytes()),
        ]

    @classmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes]) -> ExpandedBwtIndex:
        """Rebuild from ``sections`` output.

        Raises:
            InputFormatError: If a section is missing or the bit sequences disagree.
        """
        text = WindowText.from_sections(graph, sections, reverse=False)
        try:
            raw_b, raw_e, raw_m = sections[b"BITB"], sections[b"BITE"], sections[b"MARK"]
        except KeyError as exc:
            msg = f"Index file lacks section {exc.args[0].decode()}"
            raise InputFormatError(msg) from exc
        bits = []
        for raw in (raw_b, raw_e):
            length = int(np.frombuffer(raw[:8], dtype="<i8")[0]) if len(raw) >= 8 else -1
            if length != len(text.gss):
                msg = "Mark bit sequences do not match the text length"
                raise InputFormatError(msg)
            bits.append(RankSelectBits.from_packed(raw[8:], length))
        marked = tuple(np.frombuffer(raw_m, dtype="<i8").tolist())
        if not bits[0].count == bits[1].count == len(marked):
            msg = "B and E mark different numbers of intervals"
            raise InputFormatError(msg)
        return cls(graph, text=text, begins=bits[0], ends=bits[1], marked=marked)
