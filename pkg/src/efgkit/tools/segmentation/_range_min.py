"""Range-minimum structures used by the segmentation recurrences."""

from __future__ import annotations

from typing import Generic, Protocol, TypeVar


class _Comparable(Protocol):
    def __lt__(self, other: _Comparable, /) -> bool: ...


T = TypeVar("T", bound=_Comparable)


class MinSegmentTree(Generic[T]):
    """Keys ``0..size-1`` with ``upgrade`` (keep the smaller value) and inclusive ``range_min``.

    Empty keys hold no value; a range with no values yields ``None``.
    """

    def __init__(self, size: int) -> None:
        """Create a tree over *size* keys."""
        self._size = 1
        while self._size < max(size, 1):
            self._size *= 2
        self._keys = size
        self._tree: list[T | None] = [None] * (2 * self._size)

    @staticmethod
    def _min(a: T | None, b: T | None) -> T | None:
        if a is None:
            return b
        if b is None:
            return a
        return b if b < a else a

    def upgrade(self, key: int, value: T) -> None:
        """Lower the value at *key* to *value* if it is smaller (or the key is empty)."""
        if not 0 <= key < self._keys:
            msg = f"Key {key} outside [0..{self._keys - 1}]"
            raise IndexError(msg)
        pos = key + self._size
        self._tree[pos] = self._min(self._tree[pos], value)
        pos //= 2
        while pos:
            self._tree[pos] = self._min(self._tree[2 * pos], self._tree[2 * pos + 1])
            pos //= 2

    def range_min(self, lo: int, hi: int) -> T | None:
        """Return the minimum over keys ``lo..hi`` (clamped), or ``None``."""
        lo, hi = max(lo, 0), min(hi, self._keys - 1)
        if lo > hi:
            return None
        best: T | None = None
        lo += self._size
        hi += self._size + 1
        while lo < hi:
            if lo & 1:
                best = self._min(best, self._tree[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                best = self._min(best, self._tree[hi])
            lo //= 2
            hi //= 2
        return best


class SemiDynamicRmq:
    """Append-only sparse table: O(log n) ``append`` and O(1) inclusive ``range_min``."""

    def __init__(self) -> None:
        """Create an empty structure."""
        self._levels: list[list[int]] = [[]]

    def __len__(self) -> int:
        """Return the number of appended values."""
        return len(self._levels[0])

    def append(self, value: int) -> None:
        """Append *value* and complete every table entry that now ends at it."""
        base = self._levels[0]
        base.append(value)
        i = len(base) - 1
        k = 1
        while (1 << k) <= i + 1:
            if len(self._levels) <= k:
                self._levels.append([])
            level, below = self._levels[k], self._levels[k - 1]
            start = i - (1 << k) + 1
            level.append(min(below[start], below[start + (1 << (k - 1))]))
            assert len(level) == start + 1
            k += 1

    def range_min(self, lo: int, hi: int) -> int | None:
        """Return the minimum of positions ``lo..hi``, or ``None`` for an empty range."""
        if lo > hi:
            return None
        if lo < 0 or hi >= len(self):
            msg = f"Range [{lo}..{hi}] outside [0..{len(self) - 1}]"
            raise IndexError(msg)
        k = (hi - lo + 1).bit_length() - 1
        level = self._levels[k]
        return min(level[lo], level[hi - (1 << k) + 1])
