"""Query indexes over founder graphs: construction, queries, persistence and verification."""

from __future__ import annotations

import logging
import random
from pathlib import Path

from efgkit.core.datatypes import Efg, IndexKind, Occurrence, ValidityMode
from efgkit.core.events import EventBus
from efgkit.core.exceptions import GraphPropertyError, InputFormatError, VerificationError
from efgkit.tools.efg.logic import parse_efg, serialize_efg
from efgkit.tools.efg_index._base import EfgIndex, SingleBlockIndex
from efgkit.tools.efg_index._binary import pack, unpack
from efgkit.tools.efg_index._classic import ClassicIndex
from efgkit.tools.efg_index._ebwt import ExpandedBwtIndex
from efgkit.tools.efg_index._triple import TripleIndex
from efgkit.tools.hardness.logic import online_match
from efgkit.tools.validity.logic import require_graph_property

logger = logging.getLogger(__name__)

_REQUIRED_MODE = {
    IndexKind.CLASSIC: ValidityMode.REPEAT_FREE,
    IndexKind.EBWT: ValidityMode.REPEAT_FREE,
    IndexKind.TRIPLE: ValidityMode.SEMI_REPEAT_FREE,
}


# ── Construction ──────────────────────────────────────────────────────────


def build_classic_index(g: Efg) -> ClassicIndex:
    """Build the Aho–Corasick + tries index of a repeat-free graph.

    Raises:
        GraphPropertyError: If *g* is not repeat-free (with the witness).
    """
    require_graph_property(g, ValidityMode.REPEAT_FREE)
    return ClassicIndex(g)


def build_expanded_bwt_index(g: Efg) -> ExpandedBwtIndex:
    """Build the expanded backward-search index of a repeat-free graph.

    Raises:
        GraphPropertyError: If *g* is not repeat-free (with the witness).
    """
    require_graph_property(g, ValidityMode.REPEAT_FREE)
    return ExpandedBwtIndex(g)


def build_triple_index(g: Efg) -> TripleIndex:
    """Build the reversed-triple index of a semi-repeat-free graph.

    Raises:
        GraphPropertyError: If *g* is not semi-repeat-free (with the witness).
    """
    require_graph_property(g, ValidityMode.SEMI_REPEAT_FREE)
    return TripleIndex(g)


_BUILDERS = {
    IndexKind.CLASSIC: build_classic_index,
    IndexKind.EBWT: build_expanded_bwt_index,
    IndexKind.TRIPLE: build_triple_index,
}


def build_index(g: Efg, kind: IndexKind = IndexKind.TRIPLE, *, event_bus: EventBus | None = None) -> EfgIndex:
    """Build the index of *kind*; one-block graphs always get a plain single-block index.

    Args:
        g: The founder graph.
        kind: Requested index kind.
        event_bus: Receives one progress event per construction stage.

    Returns:
        The index.

    Raises:
        GraphPropertyError: If *g* lacks the property *kind* needs.
    """
    if event_bus is not None:
        event_bus.progress("indexer", 1, 2, f"Checking graph for {kind.value}")
    if g.b == 1:
        logger.info("One-block graph: building a single-block index instead of %s", kind.value)
        index: EfgIndex = SingleBlockIndex(g)
    else:
        index = _BUILDERS[kind](g)
    if event_bus is not None:
        event_bus.progress("indexer", 2, 2, f"Built {index.kind} index")
    return index


# ── Queries ───────────────────────────────────────────────────────────────


def occurs(index: EfgIndex, pattern: str) -> bool:
    """Return whether *pattern* spells a substring of some path label of the indexed graph."""
    return index.occurs(pattern)


def find_occurrence(index: EfgIndex, pattern: str) -> Occurrence | None:
    """Return where one occurrence of *pattern* starts, or ``None``."""
    return index.find(pattern)


# ── Persistence ───────────────────────────────────────────────────────────

_LOADERS: dict[int, type[EfgIndex]] = {
    cls.kind_code: cls for cls in (SingleBlockIndex, ClassicIndex, ExpandedBwtIndex, TripleIndex)
}


def serialize_index(index: EfgIndex) -> bytes:
    """Return the binary container of *index*, its graph embedded as the GRPH section."""
    sections = [(b"GRPH", serialize_efg(index.graph).encode("utf-8")), *index.sections()]
    return pack(index.kind_code, sections)


def deserialize_index(data: bytes) -> EfgIndex:
    """Rebuild an index from ``serialize_index`` output.

    Raises:
        InputFormatError: On a malformed container or section.
        VerificationError: If the checksum does not match.
    """
    kind_code, sections = unpack(data)
    if b"GRPH" not in sections:
        msg = "Index file lacks its graph section"
        raise InputFormatError(msg)
    graph = parse_efg(sections[b"GRPH"].decode("utf-8"))
    loader = _LOADERS.get(kind_code)
    if loader is None:
        msg = f"Unknown index kind code {kind_code}"
        raise InputFormatError(msg)
    return loader.from_sections(graph, sections)


def save_index(index: EfgIndex, path: Path) -> Path:
    """Write *index* to *path* and return the path."""
    path.write_bytes(serialize_index(index))
    logger.info("Wrote %s index to %s", index.kind, path)
    return path


def load_index(path: Path) -> EfgIndex:
    """Read an index written by ``save_index``."""
    return deserialize_index(path.read_bytes())


# ── Verification ──────────────────────────────────────────────────────────


def sample_patterns(g: Efg, rng: random.Random, count: int, max_length: int = 12) -> list[str]:
    """Draw *count* path substrings by random walks and *count* random strings over the alphabet."""
    patterns: list[str] = []
    for _ in range(count):
        node = rng.choice(g.nodes)
        offset = rng.randrange(len(node.label))
        target = rng.randint(1, max_length)
        chars: list[str] = []
        v = node.id
        while len(chars) < target:
            label = g.label(v)
            chars.extend(label[offset : offset + target - len(chars)])
            successors = g.successors(v)
            if len(chars) >= target or not successors:
                break
            v, offset = rng.choice(successors), 0
        patterns.append("".join(chars))
    symbols = g.alphabet
    patterns.extend("".join(rng.choice(symbols) for _ in range(rng.randint(1, max_length))) for _ in range(count))
    return patterns


def verify_index(index: EfgIndex, *, samples: int = 200, max_length: int = 12, seed: int = 0) -> int:
    """Re-check the graph property of *index* and its agreement with ``online_match``.

    Args:
        index: The index to check.
        samples: Number of positive and of random patterns drawn.
        max_length: Longest sampled pattern.
        seed: Seed of the pattern sampler.

    Returns:
        The number of patterns checked.

    Raises:
        VerificationError: On a graph-property violation or the first disagreement.
    """
    g = index.graph
    mode = _REQUIRED_MODE.get(index.kind)  # type: ignore[call-overload]
    if mode is not None:
        try:
            require_graph_property(g, mode)
        except GraphPropertyError as exc:
            msg = f"Indexed graph lost its property: {exc}"
            raise VerificationError(msg, witness=exc.witness) from exc

    patterns = sample_patterns(g, random.Random(seed), samples, max_length)
    for pattern in patterns:
        expected = online_match(g, pattern)
        got = index.occurs(pattern)
        if got != expected:
            msg = f"{index.kind} index answers {int(got)} for {pattern!r}, online matching answers {int(expected)}"
            raise VerificationError(msg, witness=pattern)
    logger.info("Verified %s index on %d patterns", index.kind, len(patterns))
    return len(patterns)
