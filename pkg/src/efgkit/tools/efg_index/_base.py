"""Common index interface and the window texts the suffix-based indexes search."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import ClassVar

import numpy as np

from efgkit.core.datatypes import Efg, Occurrence
from efgkit.core.exceptions import InputFormatError, StringStructureError, ValidationError
from efgkit.stringds import SEPARATOR, GeneralizedSuffixStructure, build_gsa

logger = logging.getLogger(__name__)

Section = tuple[bytes, bytes]


class EfgIndex(ABC):
    """An immutable query index over a founder graph.

    ``find`` answers whether a pattern spells a substring of some path label
    and, if so, where one occurrence starts.
    """

    kind: ClassVar[str]
    kind_code: ClassVar[int]

    def __init__(self, graph: Efg) -> None:
        """Bind the index to its graph."""
        self.graph = graph
        self._alphabet = frozenset(graph.alphabet)

    def find(self, pattern: str) -> Occurrence | None:
        """Return the start of one occurrence of *pattern*, or ``None``.

        Symbols outside the graph alphabet make the answer ``None``.

        Raises:
            ValidationError: If *pattern* is empty.
        """
        if not pattern:
            msg = "Query patterns must be non-empty"
            raise ValidationError(msg)
        if not self._alphabet.issuperset(pattern):
            return None
        return self._find(pattern)

    def occurs(self, pattern: str) -> bool:
        """Return whether *pattern* occurs in the graph."""
        return self.find(pattern) is not None

    def occurrence(self, node: int, offset: int) -> Occurrence:
        """Wrap a node/offset pair with its block."""
        return Occurrence(block=self.graph.nodes[node].block, node=node, offset=offset)

    @abstractmethod
    def _find(self, pattern: str) -> Occurrence | None: ...

    @abstractmethod
    def sections(self) -> list[Section]:
        """Return the tagged binary sections that persist this index."""

    @classmethod
    @abstractmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes]) -> EfgIndex:
        """Rebuild the index of *graph* from its persisted sections."""


# ── Window texts ──────────────────────────────────────────────────────────


class WindowText:
    """Suffix structure over path windows, one document per window.

    Args:
        gss: Suffix structure over the window strings.
        windows: Node ids of each window in path order.
        reverse: Whether documents hold the reversed window labels.
    """

    def __init__(self, gss: GeneralizedSuffixStructure, windows: Sequence[tuple[int, ...]], *, reverse: bool) -> None:
        """Store the structure and its window table."""
        self.gss = gss
        self.windows = tuple(windows)
        self.reverse = reverse

    @classmethod
    def build(cls, graph: Efg, windows: Sequence[tuple[int, ...]], *, reverse: bool = False) -> WindowText:
        """Build the suffix structure over the labels of *windows*."""
        docs = ["".join(graph.label(v) for v in window) for window in windows]
        if reverse:
            docs = [doc[::-1] for doc in docs]
        gss = build_gsa(docs, graph.alphabet)
        logger.debug("Window text: %d windows, %d symbols", len(docs), len(gss))
        return cls(gss, windows, reverse=reverse)

    def start_of(self, graph: Efg, rank: int, length: int) -> tuple[int, int]:
        """Map a match of *length* symbols at suffix rank *rank* to the node/offset of its first forward symbol."""
        pos = int(self.gss.sa[rank])
        doc = self.gss.document_of(pos)
        offset = pos - int(self.gss.doc_starts[doc])
        window = self.windows[doc]
        if self.reverse:
            total = sum(len(graph.label(v)) for v in window)
            offset = total - offset - length
        for v in window:
            size = len(graph.label(v))
            if offset < size:
                return v, offset
            offset -= size
        msg = f"Suffix rank {rank} lies past the end of its window"
        raise StringStructureError(msg)

    def sections(self) -> list[Section]:
        """Return TEXT, SUFA and WIND sections."""
        flat: list[int] = []
        for window in self.windows:
            flat.append(len(window))
            flat.extend(window)
        return [
            (b"TEXT", self.gss.text.astype(np.uint8).tobytes()),
            (b"SUFA", self.gss.sa.astype("<i8").tobytes()),
            (b"WIND", np.asarray(flat, dtype="<i8").tobytes()),
        ]

    @classmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes], *, reverse: bool) -> WindowText:
        """Rebuild from ``sections`` output without re-sorting suffixes.

        Raises:
            InputFormatError: If the sections are missing or inconsistent.
        """
        try:
            text = np.frombuffer(sections[b"TEXT"], dtype=np.uint8).astype(np.int64)
            sa = np.frombuffer(sections[b"SUFA"], dtype="<i8").astype(np.int64)
            flat = np.frombuffer(sections[b"WIND"], dtype="<i8").tolist()
        except KeyError as exc:
            msg = f"Index file lacks section {exc.args[0].decode()}"
            raise InputFormatError(msg) from exc
        if len(text) != len(sa) or len(text) == 0 or text[-1] != SEPARATOR:
            msg = "Suffix array and text sections disagree"
            raise InputFormatError(msg)
        windows: list[tuple[int, ...]] = []
        pos = 0
        while pos < len(flat):
            size = flat[pos]
            windows.append(tuple(flat[pos + 1 : pos + 1 + size]))
            pos += 1 + size
        starts = np.concatenate(([0], np.flatnonzero(text == SEPARATOR)[:-1] + 1)).astype(np.int64)
        if len(starts) != len(windows):
            msg = f"{len(windows)} windows for {len(starts)} documents"
            raise InputFormatError(msg)
        return cls(GeneralizedSuffixStructure(text, sa, starts, graph.alphabet), windows, reverse=reverse)


def isolated_nodes(graph: Efg) -> list[int]:
    """Return nodes with neither in- nor out-edges."""
    return [v.id for v in graph.nodes if not graph.successors(v.id) and not graph.predecessors(v.id)]


# ── Single-block graphs ───────────────────────────────────────────────────


class SingleBlockIndex(EfgIndex):
    """Plain suffix structure over the labels of a one-block graph (no edges, every label its own path)."""

    kind = "single-block"
    kind_code = 0

    def __init__(self, graph: Efg, text: WindowText | None = None) -> None:
        """Index the labels of *graph*.

        Raises:
            ValidationError: If *graph* has more than one block.
        """
        super().__init__(graph)
        if graph.b != 1:
            msg = f"A single-block index needs b = 1, got b = {graph.b}"
            raise ValidationError(msg)
        self.text = text if text is not None else WindowText.build(graph, [(v,) for v in graph.blocks[0]])

    def _find(self, pattern: str) -> Occurrence | None:
        interval = self.text.gss.find(pattern)
        if interval.is_empty:
            return None
        return self.occurrence(*self.text.start_of(self.graph, interval.lo, len(pattern)))

    def sections(self) -> list[Section]:
        """Return the window text sections."""
        return self.text.sections()

    @classmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes]) -> SingleBlockIndex:
        """Rebuild from ``sections`` output."""
        return cls(graph, WindowText.from_sections(graph, sections, reverse=False))
