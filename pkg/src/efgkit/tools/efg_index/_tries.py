"""Per-node label tries R(v) / F(v) and the multi-node walk that chains them."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from efgkit.core.exceptions import InputFormatError


class LabelTrie:
    """Trie over the labels of the neighbours of one graph node.

    Every trie state remembers one graph node whose label passes through it
    (``witness``); a state where a complete label ends remembers its owner
    (``terminal``).
    """

    __slots__ = ("_children", "_depth", "_terminal", "_witness")

    def __init__(self) -> None:
        """Create a trie holding only the root."""
        self._children: list[dict[str, int]] = [{}]
        self._terminal: list[int] = [-1]
        self._witness: list[int] = [-1]
        self._depth: list[int] = [0]

    def __len__(self) -> int:
        """Return the number of states including the root."""
        return len(self._children)

    def _new_state(self, depth: int, witness: int) -> int:
        self._children.append({})
        self._terminal.append(-1)
        self._witness.append(witness)
        self._depth.append(depth)
        return len(self._children) - 1

    def insert(self, text: str, owner: int) -> None:
        """Add *text* as the label of graph node *owner*."""
        state = 0
        if self._witness[0] == -1:
            self._witness[0] = owner
        for c in text:
            nxt = self._children[state].get(c)
            if nxt is None:
                nxt = self._new_state(self._depth[state] + 1, owner)
                self._children[state][c] = nxt
            state = nxt
        self._terminal[state] = owner

    def child(self, state: int, symbol: str) -> int | None:
        """Return the state reached from *state* by *symbol*, if any."""
        return self._children[state].get(symbol)

    def terminal(self, state: int) -> int | None:
        """Return the node whose label ends at *state*, if any."""
        owner = self._terminal[state]
        return None if owner < 0 else owner

    def witness(self, state: int) -> int:
        """Return one node whose label passes through *state*."""
        return self._witness[state]

    def depth(self, state: int) -> int:
        """Return the string depth of *state*."""
        return self._depth[state]

    def leaves(self) -> list[int]:
        """Return the owners of all complete labels."""
        return [owner for owner in self._terminal if owner >= 0]

    # ── preorder encoding ──────────────────────────────────────

    def preorder(self) -> list[tuple[int, int, int, int]]:
        """Return ``(depth, symbol code point, terminal, witness)`` per state in preorder, children sorted."""
        out: list[tuple[int, int, int, int]] = []
        stack: list[tuple[int, str]] = [(0, "")]
        while stack:
            state, symbol = stack.pop()
            out.append((self._depth[state], ord(symbol) if symbol else 0, self._terminal[state], self._witness[state]))
            stack.extend((nxt, c) for c, nxt in sorted(self._children[state].items(), reverse=True))
        return out

    @classmethod
    def from_preorder(cls, entries: Sequence[tuple[int, int, int, int]]) -> LabelTrie:
        """Rebuild a trie from ``preorder`` output.

        Raises:
            InputFormatError: If the depths do not describe a tree.
        """
        trie = cls()
        if not entries or entries[0][0] != 0:
            msg = "Trie encoding must start with the root"
            raise InputFormatError(msg)
        trie._terminal[0], trie._witness[0] = entries[0][2], entries[0][3]
        path = [0]
        for depth, code, terminal, witness in entries[1:]:
            if not 1 <= depth <= len(path):
                msg = f"Trie state at depth {depth} has no parent"
                raise InputFormatError(msg)
            del path[depth:]
            state = trie._new_state(depth, witness)
            trie._terminal[state] = terminal
            trie._children[path[-1]][chr(code)] = state
            path.append(state)
        return trie


def spell_through(tries: Sequence[LabelTrie], node: int, text: str) -> tuple[int, int] | None:
    """Read *text* through the tries starting at ``tries[node]``.

    When a complete label is read and *text* continues, the walk moves on to
    the trie of that label's owner. Labels of a node's neighbours never prefix
    one another in (semi-)repeat-free graphs, so the walk never branches.

    Returns:
        ``(owner, depth)``: a node whose label holds the last character read and
        how many of its label characters were read; ``None`` if *text* cannot be read.
    """
    trie, state = tries[node], 0
    for c in text:
        nxt = trie.child(state, c)
        while nxt is None:
            owner = trie.terminal(state)
            if owner is None:
                return None
            trie, state = tries[owner], 0
            nxt = trie.child(0, c)
            if nxt is None:
                return None
        state = nxt
    return trie.witness(state), trie.depth(state)


def pack_tries(tries: Sequence[LabelTrie]) -> bytes:
    """Encode tries as little-endian int64: count, then per trie its state count and preorder rows."""
    flat: list[int] = [len(tries)]
    for trie in tries:
        rows = trie.preorder()
        flat.append(len(rows))
        for row in rows:
            flat.extend(row)
    return np.asarray(flat, dtype="<i8").tobytes()


def unpack_tries(data: bytes) -> list[LabelTrie]:
    """Decode ``pack_tries`` output.

    Raises:
        InputFormatError: If the section is truncated.
    """
    flat = np.frombuffer(data, dtype="<i8").tolist()
    if not flat:
        msg = "Empty trie section"
        raise InputFormatError(msg)
    tries: list[LabelTrie] = []
    pos = 1
    for _ in range(flat[0]):
        if pos >= len(flat):
            msg = "Truncated trie section"
            raise InputFormatError(msg)
        count = flat[pos]
        rows = flat[pos + 1 : pos + 1 + 4 * count]
        if len(rows) != 4 * count:
            msg = "Truncated trie section"
            raise InputFormatError(msg)
        tries.append(LabelTrie.from_preorder([tuple(rows[k : k + 4]) for k in range(0, len(rows), 4)]))  # type: ignore[misc]
        pos += 1 + 4 * count
    return tries
