"""Generalized suffix array with LCP, BWT and backward search.

Documents are concatenated as ``d1 0 d2 0 ... dk 0``: symbol code 0 is the
shared separator and the last one doubles as the sentinel, so every suffix is
0-terminated and suffixes sort exactly as a naive ``sorted`` over the text.
"""

from __future__ import annotations

import bisect
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from pydivsufsort import divsufsort

from efgkit.core.exceptions import StringStructureError

logger = logging.getLogger(__name__)

SEPARATOR = 0
_MAX_CODE = 255

IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True)
class SaInterval:
    """Half-open range ``[lo, hi)`` of suffix-array ranks."""

    lo: int
    hi: int

    @property
    def size(self) -> int:
        """Return the number of suffixes in the range."""
        return max(0, self.hi - self.lo)

    @property
    def is_empty(self) -> bool:
        """Return whether the range is empty."""
        return self.hi <= self.lo

    def contains(self, other: SaInterval) -> bool:
        """Return whether *other* lies inside this range."""
        return self.lo <= other.lo and other.hi <= self.hi


EMPTY = SaInterval(0, 0)


class GeneralizedSuffixStructure:
    """Suffix array, inverse, LCP, BWT and occurrence counts over a document set.

    Build with ``build_gsa``; the object is immutable afterwards.

    Attributes:
        text: Encoded concatenation (separators and sentinel are code 0).
        sa: Suffix array.
        isa: Inverse suffix array.
        lcp: ``lcp[i]`` is the longest common prefix of suffixes ``sa[i-1]`` and
            ``sa[i]``; ``lcp[0] == lcp[len(text)] == 0``.
        bwt: ``bwt[i] == text[sa[i] - 1]`` with wraparound.
        doc_starts: Text offset of every document.
        alphabet: Surface symbols; symbol ``alphabet[k]`` has code ``k + 1``.
    """

    def __init__(self, text: IntArray, sa: IntArray, doc_starts: IntArray, alphabet: Sequence[str]) -> None:
        """Derive the remaining arrays from an encoded text and its suffix array."""
        self.text = text
        self.sa = sa
        self.doc_starts = doc_starts
        self.alphabet = tuple(alphabet)
        self.codes = {c: k + 1 for k, c in enumerate(self.alphabet)}
        self.sigma = len(self.alphabet)

        size = len(text)
        self.isa = np.empty(size, dtype=np.int64)
        self.isa[sa] = np.arange(size, dtype=np.int64)
        self.bwt = text[(sa - 1) % size]
        self.lcp = _kasai(text, sa, self.isa)

        counts = np.bincount(text, minlength=self.sigma + 1)
        self._first = np.concatenate(([0], np.cumsum(counts)))
        self._occ = np.zeros((self.sigma + 1, size + 1), dtype=np.int64)
        for c in range(self.sigma + 1):
            np.cumsum(self.bwt == c, out=self._occ[c, 1:])

    def __len__(self) -> int:
        """Return the text length including separators."""
        return len(self.text)

    # ── symbol handling ────────────────────────────────────────

    def code(self, symbol: str | int) -> int | None:
        """Return the code of *symbol*, or ``None`` if it is not in the alphabet.

        Integers are taken as codes already (``0`` is the separator).
        """
        if isinstance(symbol, int):
            return symbol if 0 <= symbol <= self.sigma else None
        return self.codes.get(symbol)

    def encode(self, pattern: str) -> list[int] | None:
        """Encode a surface string, or return ``None`` if a symbol is unknown."""
        out: list[int] = []
        for c in pattern:
            code = self.codes.get(c)
            if code is None:
                return None
            out.append(code)
        return out

    def char_at(self, pos: int) -> int:
        """Return the code at text position *pos*, or ``-1`` past the end."""
        return int(self.text[pos]) if pos < len(self.text) else -1

    # ── intervals ──────────────────────────────────────────────

    def full_interval(self) -> SaInterval:
        """Return the interval of the empty pattern."""
        return SaInterval(0, len(self.text))

    def backward_step(self, interval: SaInterval, symbol: str | int) -> SaInterval:
        """Left-extend the pattern of *interval* by *symbol*.

        Args:
            interval: Interval of some pattern P.
            symbol: The symbol c (surface symbol or code).

        Returns:
            The interval of c·P; empty if c·P does not occur or c is unknown.
        """
        c = self.code(symbol)
        if c is None or interval.is_empty:
            return EMPTY
        lo = int(self._first[c] + self._occ[c, interval.lo])
        hi = int(self._first[c] + self._occ[c, interval.hi])
        return SaInterval(lo, hi) if lo < hi else EMPTY

    def extend_right(self, interval: SaInterval, depth: int, symbol: str | int) -> SaInterval:
        """Right-extend a pattern of length *depth* by *symbol* (binary search).

        Args:
            interval: Interval of a pattern P with ``|P| == depth``.
            depth: Length of P.
            symbol: The symbol c.

        Returns:
            The interval of P·c.
        """
        c = self.code(symbol)
        if c is None or interval.is_empty:
            return EMPTY
        ranks = range(interval.lo, interval.hi)

        def key(rank: int) -> int:
            return self.char_at(int(self.sa[rank]) + depth)

        lo = interval.lo + bisect.bisect_left(ranks, c, key=key)
        hi = interval.lo + bisect.bisect_right(ranks, c, key=key)
        return SaInterval(lo, hi) if lo < hi else EMPTY

    def find(self, pattern: str | Sequence[int]) -> SaInterval:
        """Return the interval of *pattern* by backward search."""
        interval = self.full_interval()
        for symbol in reversed(pattern):
            interval = self.backward_step(interval, symbol)
            if interval.is_empty:
                return EMPTY
        return interval

    def contract(self, interval: SaInterval, depth: int) -> SaInterval:
        """Return the interval of the length-*depth* prefix of the pattern of *interval*.

        Args:
            interval: Non-empty interval of a pattern P.
            depth: New length, ``0 <= depth <= |P|``.
        """
        if depth == 0:
            return self.full_interval()
        lo, hi = interval.lo, interval.hi
        while lo > 0 and self.lcp[lo] >= depth:
            lo -= 1
        while hi < len(self.text) and self.lcp[hi] >= depth:
            hi += 1
        return SaInterval(lo, hi)

    def parent_depth(self, interval: SaInterval) -> int:
        """Return the string depth of the suffix-tree parent of the locus of *interval*."""
        return int(max(self.lcp[interval.lo], self.lcp[interval.hi]))

    def locate(self, interval: SaInterval) -> list[int]:
        """Return the text positions of the suffixes in *interval*, sorted."""
        return sorted(int(p) for p in self.sa[interval.lo : interval.hi])

    def document_of(self, pos: int) -> int:
        """Return the index of the document containing text position *pos*."""
        return int(np.searchsorted(self.doc_starts, pos, side="right")) - 1


def build_gsa(docs: Sequence[str], alphabet: Sequence[str] | None = None) -> GeneralizedSuffixStructure:
    """Build a generalized suffix structure over non-empty documents.

    Args:
        docs: The documents.
        alphabet: Surface alphabet; inferred (sorted) from the documents if omitted.

    Returns:
        The suffix structure.

    Raises:
        StringStructureError: On an empty document list, an empty document,
            an oversized alphabet, or a symbol outside *alphabet*.
    """
    if not docs:
        msg = "build_gsa needs at least one document"
        raise StringStructureError(msg)
    if any(not doc for doc in docs):
        msg = "Documents must be non-empty"
        raise StringStructureError(msg)
    symbols = tuple(sorted({c for doc in docs for c in doc})) if alphabet is None else tuple(alphabet)
    if len(symbols) >= _MAX_CODE:
        msg = f"Alphabet of {len(symbols)} symbols exceeds the byte-coded limit"
        raise StringStructureError(msg)
    codes = {c: k + 1 for k, c in enumerate(symbols)}

    encoded: list[int] = []
    starts: list[int] = []
    for doc in docs:
        starts.append(len(encoded))
        try:
            encoded.extend(codes[c] for c in doc)
        except KeyError as exc:
            msg = f"Symbol {exc.args[0]!r} is not in the alphabet"
            raise StringStructureError(msg) from exc
        encoded.append(SEPARATOR)

    text = np.asarray(encoded, dtype=np.int64)
    sa = np.asarray(divsufsort(bytes(text.astype(np.uint8))), dtype=np.int64)
    logger.debug("Built suffix array over %d documents, %d symbols", len(docs), len(text))
    return GeneralizedSuffixStructure(text, sa, np.asarray(starts, dtype=np.int64), symbols)


def _kasai(text: IntArray, sa: IntArray, isa: IntArray) -> IntArray:
    """Return the LCP array in the ``lcp[i] = lcp(sa[i-1], sa[i])`` convention, padded to ``len(text) + 1``."""
    size = len(text)
    lcp = np.zeros(size + 1, dtype=np.int64)
    values = text.tolist()
    order = sa.tolist()
    h = 0
    for pos in range(size):
        rank = int(isa[pos])
        if rank == 0:
            h = 0
            continue
        prev = order[rank - 1]
        while pos + h < size and prev + h < size and values[pos + h] == values[prev + h]:
            h += 1
        lcp[rank] = h
        if h > 0:
            h -= 1
    return lcp
