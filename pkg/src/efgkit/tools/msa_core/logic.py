"""Aligned-FASTA parsing, gap handling and column ↔ spelled-position maps."""

from __future__ import annotations

import io
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from Bio import SeqIO
from Bio.Seq import Seq
from Bio.SeqIO.FastaIO import FastaWriter
from Bio.SeqRecord import SeqRecord

from efgkit.core.datatypes import GAP, Msa
from efgkit.core.exceptions import InputFormatError, ValidationError
from efgkit.stringds import RankSelectBits

logger = logging.getLogger(__name__)

# ── Constants ─────────────────────────────────────────────────────────────

DEFAULT_ALPHABET: frozenset[str] = frozenset("ACGTN")
FASTA_WRAP = 80


# ── Parsing ───────────────────────────────────────────────────────────────


def parse_msa(text: str, *, any_alphabet: bool = False) -> Msa:
    """Parse an aligned FASTA document.

    Symbols are upper-cased. Unless *any_alphabet* is set, only ``A C G T N``
    and the gap ``-`` are accepted.

    Args:
        text: The document (LF or CRLF line endings).
        any_alphabet: Accept every non-whitespace symbol.

    Returns:
        The alignment, rows in file order.

    Raises:
        InputFormatError: On an empty document, text before the first header,
            an empty or duplicate record, a foreign symbol or unequal row lengths.
    """
    lines = text.replace("\r\n", "\n").split("\n")
    header_lines = [k + 1 for k, line in enumerate(lines) if line.startswith(">")]
    first_content = next((k + 1 for k, line in enumerate(lines) if line.strip()), None)
    if first_content is None:
        msg = "MSA document is empty"
        raise InputFormatError(msg)
    if not header_lines or header_lines[0] != first_content:
        msg = "expected a FASTA header starting with '>'"
        raise InputFormatError(msg, line=first_content)

    records = list(SeqIO.parse(io.StringIO("\n".join(lines)), "fasta"))
    names: list[str] = []
    rows: list[str] = []
    for record, line in zip(records, header_lines, strict=True):
        name = record.id
        if name in names:
            msg = f"duplicate record '{name}'"
            raise InputFormatError(msg, line=line)
        row = str(record.seq).upper()
        if not row:
            msg = f"record '{name}' has no sequence"
            raise InputFormatError(msg, line=line)
        if not any_alphabet:
            foreign = sorted(set(row) - DEFAULT_ALPHABET - {GAP})
            if foreign:
                msg = f"record '{name}' contains symbols {foreign} outside A,C,G,T,N,'-' (use --any-alphabet)"
                raise InputFormatError(msg, line=line)
        if rows and len(row) != len(rows[0]):
            msg = f"row length mismatch: record '{name}' has {len(row)} columns, expected {len(rows[0])}"
            raise InputFormatError(msg, line=line)
        names.append(name)
        rows.append(row)

    msa = Msa(rows=tuple(rows), names=tuple(names))
    logger.debug("Parsed MSA with m=%d, n=%d, sigma=%d", msa.m, msa.n, msa.sigma)
    return msa


def read_msa(path: Path, *, any_alphabet: bool = False) -> Msa:
    """Read and parse an aligned FASTA file.

    Raises:
        InputFormatError: If the file does not parse.
        OSError: If the file cannot be read.
    """
    msa = parse_msa(path.read_text(encoding="utf-8"), any_alphabet=any_alphabet)
    logger.info("Loaded %d×%d MSA from %s", msa.m, msa.n, path)
    return msa


def format_msa(msa: Msa) -> str:
    """Serialise an alignment as aligned FASTA with LF endings, 80-column wrapped."""
    handle = io.StringIO()
    records = [SeqRecord(Seq(row), id=name, description="") for name, row in zip(msa.names, msa.rows, strict=True)]
    FastaWriter(handle, wrap=FASTA_WRAP).write_file(records)
    return handle.getvalue()


def write_msa(msa: Msa, path: Path) -> Path:
    """Write an alignment to *path* as aligned FASTA and return the path."""
    path.write_text(format_msa(msa), encoding="utf-8")
    return path


# ── Gaps and coordinates ──────────────────────────────────────────────────


def spell(gapped: str) -> str:
    """Return *gapped* with every gap symbol removed."""
    return gapped.replace(GAP, "")


@dataclass(frozen=True)
class GapCoordMap:
    """Per-row residue bits with rank/select, mapping columns to spelled positions.

    Columns and spelled positions are 1-based.

    Attributes:
        residues: One bit sequence per row; bit ``c - 1`` is set iff column c is not a gap.
    """

    residues: tuple[RankSelectBits, ...]

    @property
    def n(self) -> int:
        """Return the number of columns."""
        return len(self.residues[0])

    def spelled_length(self, row: int) -> int:
        """Return the length of the spelled row (0-based *row*)."""
        return self.residues[row].count

    def gap_count(self, row: int) -> int:
        """Return the number of gap columns in *row*."""
        return self.n - self.residues[row].count

    def rank_spelled(self, row: int, col: int) -> int:
        """Return the number of non-gap symbols in columns ``1..col`` of *row*."""
        self._check_column(col, allow_zero=True)
        return self.residues[row].rank(col)

    def col_to_spelled(self, row: int, col: int) -> int | None:
        """Return the spelled position of the first non-gap at or after *col*.

        Args:
            row: 0-based row index.
            col: Column, ``1 <= col <= n``.

        Returns:
            The 1-based spelled position, or ``None`` if the row is all gaps from *col* on.

        Raises:
            ValidationError: If *col* is out of range.
        """
        self._check_column(col)
        before = self.residues[row].rank(col - 1)
        if before == self.residues[row].count:
            return None
        return before + 1

    def spelled_to_col(self, row: int, pos: int) -> int:
        """Return the column holding spelled position *pos* (both 1-based)."""
        if not 1 <= pos <= self.residues[row].count:
            msg = f"Spelled position {pos} outside row {row + 1} of length {self.residues[row].count}"
            raise ValidationError(msg)
        return self.residues[row].select(pos) + 1

    def _check_column(self, col: int, *, allow_zero: bool = False) -> None:
        low = 0 if allow_zero else 1
        if not low <= col <= self.n:
            msg = f"Column {col} outside [{low}..{self.n}]"
            raise ValidationError(msg)


def build_gap_coords(msa: Msa) -> GapCoordMap:
    """Build the coordinate map of an alignment."""
    return GapCoordMap(tuple(RankSelectBits(c != GAP for c in row) for row in msa.rows))


def col_to_spelled(coords: GapCoordMap, row: int, col: int) -> int | None:
    """Return the spelled position of the first non-gap at or after *col* (see ``GapCoordMap``)."""
    return coords.col_to_spelled(row, col)


# ── Random corpora ────────────────────────────────────────────────────────


def random_msa(
    rng: random.Random,
    m: int,
    n: int,
    *,
    alphabet: Sequence[str] = "ACGT",
    gap_probability: float = 0.0,
) -> Msa:
    """Draw an m×n alignment with independent uniform symbols.

    Args:
        rng: Random source (callers seed it for reproducibility).
        m: Number of rows.
        n: Number of columns.
        alphabet: Symbols to draw from.
        gap_probability: Probability that a cell is a gap.

    Returns:
        The alignment; its alphabet is exactly *alphabet*.
    """
    if m < 1 or n < 1:
        msg = f"random_msa needs m, n >= 1, got m={m}, n={n}"
        raise ValidationError(msg)
    symbols = list(alphabet)
    rows = tuple(
        "".join(GAP if rng.random() < gap_probability else rng.choice(symbols) for _ in range(n)) for _ in range(m)
    )
    return Msa(rows=rows, alphabet=tuple(symbols))
