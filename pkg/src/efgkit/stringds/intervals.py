"""IntervalUnionSet — disjoint integer intervals in an augmented AVL tree.

Every tree node stores the maximum right endpoint and the total interval
length of its subtree; rotations recompute both bottom-up.
"""

from __future__ import annotations

from collections.abc import Iterator

from efgkit.core.exceptions import StringStructureError


class _Node:
    __slots__ = ("height", "hi", "left", "lo", "max_hi", "right", "span")

    def __init__(self, lo: int, hi: int) -> None:
        self.lo = lo
        self.hi = hi
        self.left: _Node | None = None
        self.right: _Node | None = None
        self.height = 1
        self.max_hi = hi
        self.span = hi - lo + 1


def _height(node: _Node | None) -> int:
    return node.height if node else 0


def _span(node: _Node | None) -> int:
    return node.span if node else 0


def _update(node: _Node) -> None:
    node.height = 1 + max(_height(node.left), _height(node.right))
    node.span = node.hi - node.lo + 1 + _span(node.left) + _span(node.right)
    node.max_hi = max(
        node.hi,
        node.left.max_hi if node.left else node.hi,
        node.right.max_hi if node.right else node.hi,
    )


def _rotate_right(node: _Node) -> _Node:
    pivot = node.left
    assert pivot is not None
    node.left = pivot.right
    pivot.right = node
    _update(node)
    _update(pivot)
    return pivot


def _rotate_left(node: _Node) -> _Node:
    pivot = node.right
    assert pivot is not None
    node.right = pivot.left
    pivot.left = node
    _update(node)
    _update(pivot)
    return pivot


def _rebalance(node: _Node) -> _Node:
    _update(node)
    balance = _height(node.left) - _height(node.right)
    if balance > 1:
        assert node.left is not None
        if _height(node.left.left) < _height(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if balance < -1:
        assert node.right is not None
        if _height(node.right.right) < _height(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


def _insert(node: _Node | None, lo: int, hi: int) -> _Node:
    if node is None:
        return _Node(lo, hi)
    if lo < node.lo:
        node.left = _insert(node.left, lo, hi)
    else:
        node.right = _insert(node.right, lo, hi)
    return _rebalance(node)


def _pop_min(node: _Node) -> tuple[_Node | None, _Node]:
    if node.left is None:
        return node.right, node
    node.left, smallest = _pop_min(node.left)
    return _rebalance(node), smallest


def _delete(node: _Node | None, lo: int, hi: int) -> _Node | None:
    if node is None:
        msg = f"Interval [{lo}..{hi}] is not stored"
        raise StringStructureError(msg)
    if lo < node.lo:
        node.left = _delete(node.left, lo, hi)
    elif lo > node.lo:
        node.right = _delete(node.right, lo, hi)
    else:
        if node.hi != hi:
            msg = f"Interval [{lo}..{hi}] is not stored (found [{node.lo}..{node.hi}])"
            raise StringStructureError(msg)
        if node.left is None:
            return node.right
        if node.right is None:
            return node.left
        node.right, successor = _pop_min(node.right)
        successor.left, successor.right = node.left, node.right
        node = successor
    return _rebalance(node)


class IntervalUnionSet:
    """Dynamic set of pairwise disjoint closed integer intervals ``[lo..hi]``.

    Supports O(log k) ``insert``, ``delete``, ``overlaps`` and ``span``, where
    ``span(a, b)`` is the total length of the stored intervals contained in ``[a..b]``.
    """

    def __init__(self) -> None:
        """Create an empty set."""
        self._root: _Node | None = None
        self._size = 0

    def __len__(self) -> int:
        """Return the number of stored intervals."""
        return self._size

    def __iter__(self) -> Iterator[tuple[int, int]]:
        """Yield the stored intervals in increasing order."""
        stack: list[_Node] = []
        node = self._root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.lo, node.hi
            node = node.right

    def __contains__(self, interval: object) -> bool:
        """Return whether exactly this interval is stored."""
        if not isinstance(interval, tuple) or len(interval) != 2:
            return False
        lo, hi = interval
        node = self._root
        while node is not None:
            if lo == node.lo:
                return bool(node.hi == hi)
            node = node.left if lo < node.lo else node.right
        return False

    @property
    def total(self) -> int:
        """Return the total length of all stored intervals."""
        return _span(self._root)

    def overlaps(self, lo: int, hi: int) -> bool:
        """Return whether any stored interval intersects ``[lo..hi]``."""
        node = self._root
        while node is not None:
            if node.lo <= hi and lo <= node.hi:
                return True
            if node.left is not None and node.left.max_hi >= lo:
                node = node.left
            else:
                node = node.right
        return False

    def insert(self, lo: int, hi: int) -> None:
        """Insert ``[lo..hi]``.

        Raises:
            StringStructureError: If the interval is malformed or overlaps a stored one.
        """
        if hi < lo:
            msg = f"Malformed interval [{lo}..{hi}]"
            raise StringStructureError(msg)
        if self.overlaps(lo, hi):
            msg = f"Interval [{lo}..{hi}] overlaps a stored interval"
            raise StringStructureError(msg)
        self._root = _insert(self._root, lo, hi)
        self._size += 1

    def delete(self, lo: int, hi: int) -> None:
        """Delete the stored interval ``[lo..hi]``.

        Raises:
            StringStructureError: If the interval is not stored.
        """
        self._root = _delete(self._root, lo, hi)
        self._size -= 1

    def span(self, lo: int, hi: int) -> int:
        """Return the total length of stored intervals contained in ``[lo..hi]``."""
        if hi < lo:
            return 0
        total = self._span_keys_at_least(lo) - self._span_keys_at_least(hi + 1)
        last = self._last_starting_at_most(hi)
        if last is not None and last[0] >= lo and last[1] > hi:
            total -= last[1] - last[0] + 1
        return total

    def within(self, lo: int, hi: int) -> list[tuple[int, int]]:
        """Return the stored intervals contained in ``[lo..hi]``, in order."""
        out: list[tuple[int, int]] = []
        self._collect(self._root, lo, hi, out)
        return out

    # ── internals ──────────────────────────────────────────────

    def _span_keys_at_least(self, key: int) -> int:
        """Return the total length of intervals whose left endpoint is ``>= key``."""
        total = 0
        node = self._root
        while node is not None:
            if node.lo >= key:
                total += node.hi - node.lo + 1 + _span(node.right)
                node = node.left
            else:
                node = node.right
        return total

    def _last_starting_at_most(self, key: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        node = self._root
        while node is not None:
            if node.lo <= key:
                best = (node.lo, node.hi)
                node = node.right
            else:
                node = node.left
        return best

    def _collect(self, node: _Node | None, lo: int, hi: int, out: list[tuple[int, int]]) -> None:
        if node is None:
            return
        if node.lo > lo:
            self._collect(node.left, lo, hi, out)
        if lo <= node.lo and node.hi <= hi:
            out.append((node.lo, node.hi))
        if node.lo < hi:
            self._collect(node.right, lo, hi, out)
