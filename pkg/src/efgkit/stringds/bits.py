"""Rank/select bit sequences backed by numpy prefix counts."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
import numpy.typing as npt

from efgkit.core.exceptions import StringStructureError


class RankSelectBits:
    """Immutable bit sequence with rank and select directories.

    Positions are 0-based. ``rank(i)`` counts the set bits among the first
    ``i`` positions, so ``rank(select(j) + 1) == j`` for every ``1 <= j <= count``.

    Args:
        bits: Any iterable of truthy/falsy values.
    """

    __slots__ = ("_bits", "_ones", "_prefix")

    def __init__(self, bits: Iterable[bool] | npt.ArrayLike) -> None:
        """Build the rank and select directories."""
        self._bits = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=bool)
        self._prefix = np.zeros(len(self._bits) + 1, dtype=np.int64)
        np.cumsum(self._bits, out=self._prefix[1:])
        self._ones = np.flatnonzero(self._bits)

    def __len__(self) -> int:
        """Return the number of bits."""
        return len(self._bits)

    def __getitem__(self, i: int) -> bool:
        """Return bit *i*."""
        return bool(self._bits[i])

    @property
    def count(self) -> int:
        """Return the number of set bits."""
        return len(self._ones)

    def rank(self, i: int) -> int:
        """Return the number of set bits in positions ``[0, i)``.

        Args:
            i: Prefix length, ``0 <= i <= len(self)``.

        Raises:
            StringStructureError: If *i* is out of range.
        """
        if not 0 <= i <= len(self._bits):
            msg = f"rank position {i} outside [0, {len(self._bits)}]"
            raise StringStructureError(msg)
        return int(self._prefix[i])

    def select(self, j: int) -> int:
        """Return the position of the *j*-th set bit (1-based *j*).

        Raises:
            StringStructureError: If there is no *j*-th set bit.
        """
        if not 1 <= j <= len(self._ones):
            msg = f"select({j}) with only {len(self._ones)} set bits"
            raise StringStructureError(msg)
        return int(self._ones[j - 1])

    def to_array(self) -> npt.NDArray[np.bool_]:
        """Return a copy of the raw bits."""
        return self._bits.copy()

    def packed(self) -> bytes:
        """Return the bits packed eight to a byte (big-endian bit order)."""
        return np.packbits(self._bits).tobytes()

    @classmethod
    def from_packed(cls, data: bytes, length: int) -> RankSelectBits:
        """Rebuild a sequence written by ``packed``.

        Args:
            data: Packed bytes.
            length: Number of meaningful bits.
        """
        raw = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        if len(raw) < length:
            msg = f"Packed bit data holds {len(raw)} bits, expected {length}"
            raise StringStructureError(msg)
        return cls(raw[:length].astype(bool))
