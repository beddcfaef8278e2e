"""Elastic founder graphs: construction, statistics, walks and serialisation."""

from __future__ import annotations

import json
import logging
import re
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

from efgkit.core.datatypes import Efg, EfgNode, EfgStats, Msa, Segmentation
from efgkit.core.exceptions import InputFormatError, ValidationError
from efgkit.tools.msa_core.logic import spell

logger = logging.getLogger(__name__)

# ── Constants ─────────────────────────────────────────────────────────────

FORMAT_VERSION = 1

EdgeSpec = tuple[int, str, str]
"""``(k, left, right)``: an edge from label *left* of block k to label *right* of block k+1."""


# ── Construction ──────────────────────────────────────────────────────────


def make_efg(
    blocks: Sequence[Iterable[str]],
    edges: Iterable[EdgeSpec],
    provenance: Mapping[EdgeSpec, Iterable[int]] | None = None,
) -> Efg:
    """Build a founder graph in canonical form from labels and labelled edges.

    Node ids are assigned block by block with labels sorted inside a block;
    edges are sorted by id pair.

    Args:
        blocks: Labels per block (duplicates collapse).
        edges: ``(k, left, right)`` triples.
        provenance: Supporting rows per edge triple.

    Returns:
        The canonical ``Efg``.

    Raises:
        ValidationError: On an empty label, an unknown edge endpoint or an
            edge leaving the last block.
    """
    ids: dict[tuple[int, str], int] = {}
    nodes: list[EfgNode] = []
    block_ids: list[tuple[int, ...]] = []
    for k, labels in enumerate(blocks):
        members: list[int] = []
        for label in sorted(set(labels)):
            if not label:
                msg = f"Block {k} has an empty label"
                raise ValidationError(msg)
            ids[(k, label)] = len(nodes)
            members.append(len(nodes))
            nodes.append(EfgNode(id=len(nodes), block=k, label=label))
        block_ids.append(tuple(members))

    support: dict[tuple[int, int], set[int]] = defaultdict(set)
    for edge in edges:
        k, left, right = edge
        try:
            pair = (ids[(k, left)], ids[(k + 1, right)])
        except KeyError as exc:
            msg = f"Edge {left!r} -> {right!r} from block {k} references an unknown node"
            raise ValidationError(msg) from exc
        support[pair].update(provenance.get(edge, ()) if provenance is not None else ())
    pairs = sorted(support)
    rows = tuple(frozenset(support[pair]) for pair in pairs) if provenance is not None else None
    return Efg(blocks=tuple(block_ids), nodes=tuple(nodes), edges=tuple(pairs), provenance=rows)


def _intervals(seg: Segmentation | Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    return seg.intervals if isinstance(seg, Segmentation) else tuple(seg)


def build_efg(msa: Msa, seg: Segmentation | Sequence[tuple[int, int]]) -> Efg:
    """Build the founder graph induced by a segmentation.

    Blocks are the distinct spelled row strings of each segment; an edge joins
    two consecutive-block nodes iff some row spells them consecutively.

    Args:
        msa: The alignment.
        seg: A segmentation or its column intervals (1-based, inclusive).

    Returns:
        The graph, with per-edge supporting rows as provenance.

    Raises:
        ValidationError: If the intervals do not partition ``[1..n]`` or a row
            spells empty over a segment.
    """
    intervals = _intervals(seg)
    expected = 1
    for x, y in intervals:
        if x != expected or y < x:
            msg = f"Interval [{x}..{y}] breaks the partition (expected start {expected})"
            raise ValidationError(msg)
        expected = y + 1
    if expected != msa.n + 1:
        msg = f"Segmentation covers [1..{expected - 1}], MSA has {msa.n} columns"
        raise ValidationError(msg)

    strings: list[list[str]] = []
    for k, (x, y) in enumerate(intervals):
        column = [spell(row[x - 1 : y]) for row in msa.rows]
        for t, s in enumerate(column):
            if not s:
                msg = f"Row {t + 1} ({msa.names[t]}) spells empty over segment {k + 1} [{x}..{y}]"
                raise ValidationError(msg)
        strings.append(column)

    edges: list[EdgeSpec] = []
    provenance: dict[EdgeSpec, set[int]] = defaultdict(set)
    for k in range(len(intervals) - 1):
        for t in range(msa.m):
            edge = (k, strings[k][t], strings[k + 1][t])
            edges.append(edge)
            provenance[edge].add(t)
    g = make_efg(strings, edges, provenance)
    logger.info("Built founder graph: %d blocks, %d nodes, %d edges", g.b, len(g.nodes), len(g.edges))
    return g


def make_degenerate_string(blocks: Sequence[Iterable[str]]) -> Efg:
    """Build the fully connected block graph of a generalized degenerate string.

    Raises:
        ValidationError: If the strings of one block differ in length.
    """
    labels = [sorted(set(block)) for block in blocks]
    for k, block in enumerate(labels):
        if len({len(s) for s in block}) > 1:
            msg = f"Block {k} mixes string lengths {sorted({len(s) for s in block})}"
            raise ValidationError(msg)
    edges = [(k, u, w) for k in range(len(labels) - 1) for u in labels[k] for w in labels[k + 1]]
    return make_efg(labels, edges)


def is_degenerate_string(g: Efg) -> bool:
    """Return whether consecutive blocks are fully connected and every block has one label length."""
    for k, block in enumerate(g.blocks):
        if len({len(g.label(v)) for v in block}) > 1:
            return False
        if k + 1 < g.b and any(len(g.successors(v)) != len(g.blocks[k + 1]) for v in block):
            return False
    return True


def efg_stats(g: Efg) -> EfgStats:
    """Return block count, per-block heights, N, L, H and |E|."""
    return EfgStats(
        b=g.b,
        heights=tuple(len(block) for block in g.blocks),
        total_length=g.total_length,
        max_label=g.max_label,
        height=g.height,
        edge_count=len(g.edges),
    )


# ── Walks ─────────────────────────────────────────────────────────────────


def match_from(g: Efg, node: int, offset: int, pattern: str) -> list[tuple[int, int]] | None:
    """Spell *pattern* along a path starting at ``(node, offset)``.

    Args:
        g: The graph.
        node: Start node id.
        offset: 0-based start offset inside the start label.
        pattern: The string to spell.

    Returns:
        The ``(node, offset)`` of every pattern character, or ``None`` if no path spells it.
    """
    stack: list[tuple[int, int, int, tuple[tuple[int, int], ...]]] = [(node, offset, 0, ())]
    while stack:
        v, o, k, walk = stack.pop()
        if k == len(pattern):
            return list(walk)
        label = g.label(v)
        if o == len(label):
            stack.extend((w, 0, k, walk) for w in reversed(g.successors(v)))
        elif label[o] == pattern[k]:
            stack.append((v, o + 1, k + 1, (*walk, (v, o))))
    return None


def path_labels(g: Efg, max_length: int | None = None) -> set[str]:
    """Return the labels of all source-to-sink paths, skipping those longer than *max_length*."""
    out: set[str] = set()
    stack = [(v, g.label(v)) for v in g.blocks[0]]
    while stack:
        v, text = stack.pop()
        if max_length is not None and len(text) > max_length:
            continue
        if g.nodes[v].block == g.b - 1:
            out.add(text)
            continue
        stack.extend((w, text + g.label(w)) for w in g.successors(v))
    return out


def spells_source_to_sink(g: Efg, text: str) -> bool:
    """Return whether *text* is the label of some source-to-sink path."""
    frontier = {(v, len(g.label(v))) for v in g.blocks[0] if text.startswith(g.label(v))}
    while frontier:
        nxt: set[tuple[int, int]] = set()
        for v, pos in frontier:
            if g.nodes[v].block == g.b - 1:
                if pos == len(text):
                    return True
                continue
            for w in g.successors(v):
                label = g.label(w)
                if text.startswith(label, pos):
                    nxt.add((w, pos + len(label)))
        frontier = nxt
    return False


# ── Serialisation ─────────────────────────────────────────────────────────


def serialize_efg(g: Efg) -> str:
    """Serialise *g* as canonical JSON, one node or edge per line."""
    lines = [
        "{",
        f'  "version": {FORMAT_VERSION},',
        f'  "sigma": {json.dumps(list(g.alphabet))},',
        f'  "blocks": {json.dumps([list(block) for block in g.blocks])},',
        '  "nodes": [',
    ]
    for i, node in enumerate(g.nodes):
        sep = "," if i + 1 < len(g.nodes) else ""
        entry = {"id": node.id, "block": node.block, "label": node.label}
        lines.append(f"    {json.dumps(entry)}{sep}")
    lines.append("  ],")
    edge_lines = [json.dumps(list(edge)) for edge in g.edges]
    if g.provenance is not None:
        lines.append('  "edges": [' + ("" if edge_lines else "],"))
        lines.extend(f"    {e}{',' if i + 1 < len(edge_lines) else ''}" for i, e in enumerate(edge_lines))
        if edge_lines:
            lines.append("  ],")
        lines.append(f'  "provenance": {json.dumps([sorted(rows) for rows in g.provenance])}')
    else:
        lines.append('  "edges": [' + ("" if edge_lines else "]"))
        lines.extend(f"    {e}{',' if i + 1 < len(edge_lines) else ''}" for i, e in enumerate(edge_lines))
        if edge_lines:
            lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _line_of(text: str, pattern: str) -> int | None:
    """Return the 1-based line of the first regex match of *pattern* in *text*."""
    match = re.search(pattern, text)
    return text.count("\n", 0, match.start()) + 1 if match else None


def _require(condition: bool, message: str, text: str, where: str | None = None) -> None:
    if not condition:
        raise InputFormatError(message, line=_line_of(text, where) if where else None)


def parse_efg(text: str) -> Efg:
    """Parse a graph document written by ``serialize_efg``.

    Args:
        text: The JSON document.

    Returns:
        The graph, in canonical form.

    Raises:
        InputFormatError: On malformed JSON or a document violating the graph
            invariants; the line number points at the offending entry when known.
    """
    try:
        doc: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        msg = f"Invalid graph JSON: {exc.msg}"
        raise InputFormatError(msg, line=exc.lineno) from exc
    _require(isinstance(doc, dict), "Graph document must be a JSON object", text)
    version = doc.get("version")
    _require(version == FORMAT_VERSION, f"Unsupported graph version {version!r}", text, '"version"')
    for key in ("blocks", "nodes", "edges"):
        _require(isinstance(doc.get(key), list), f"Missing or malformed '{key}'", text)

    labels: dict[int, tuple[int, str]] = {}
    for entry in doc["nodes"]:
        ok = isinstance(entry, dict) and isinstance(entry.get("id"), int) and isinstance(entry.get("label"), str)
        _require(ok, f"Malformed node entry {entry!r}", text, re.escape(json.dumps(entry)) if ok else None)
        node_id, label = entry["id"], entry["label"]
        where = rf'"id":\s*{node_id}\b'
        _require(node_id not in labels, f"Duplicate node id {node_id}", text, where)
        _require(bool(label), f"Node {node_id} has an empty label", text, where)
        labels[node_id] = (entry.get("block", -1), label)

    blocks: list[list[str]] = []
    for k, block in enumerate(doc["blocks"]):
        _require(isinstance(block, list) and bool(block), f"Block {k} is empty or malformed", text, '"blocks"')
        current: list[str] = []
        for node_id in block:
            _require(node_id in labels, f"Block {k} lists unknown node {node_id}", text, '"blocks"')
            claimed, label = labels[node_id]
            where = rf'"id":\s*{node_id}\b'
            _require(claimed == k, f"Node {node_id} is listed in block {k} but claims block {claimed}", text, where)
            _require(label not in current, f"Block {k} has duplicate label '{label}'", text, where)
            current.append(label)
        blocks.append(current)
    listed = sum(len(block) for block in blocks)
    _require(listed == len(labels), "Every node must belong to exactly one block", text, '"blocks"')

    provenance_doc = doc.get("provenance")
    if provenance_doc is not None:
        _require(
            isinstance(provenance_doc, list) and len(provenance_doc) == len(doc["edges"]),
            "Provenance must have one entry per edge",
            text,
            '"provenance"',
        )
    edges: list[EdgeSpec] = []
    provenance: dict[EdgeSpec, list[int]] = {}
    for i, edge in enumerate(doc["edges"]):
        ok = isinstance(edge, list) and len(edge) == 2 and all(isinstance(v, int) for v in edge)
        _require(ok, f"Malformed edge {edge!r}", text, '"edges"')
        v, w = edge
        where = rf"\[\s*{v}\s*,\s*{w}\s*\]"
        _require(v in labels and w in labels, f"Edge ({v}, {w}) references an unknown node", text, where)
        (kv, lv), (kw, lw) = labels[v], labels[w]
        _require(kw == kv + 1, f"Edge ({v}, {w}) does not connect consecutive blocks", text, where)
        spec = (kv, lv, lw)
        _require(spec not in provenance, f"Duplicate edge ({v}, {w})", text, where)
        edges.append(spec)
        provenance[spec] = list(provenance_doc[i]) if provenance_doc is not None else []

    try:
        return make_efg(blocks, edges, provenance if provenance_doc is not None else None)
    except ValidationError as exc:
        raise InputFormatError(str(exc)) from exc


def write_efg(g: Efg, path: Path) -> Path:
    """Write *g* as canonical JSON and return the path."""
    path.write_text(serialize_efg(g), encoding="utf-8")
    return path


def read_efg(path: Path) -> Efg:
    """Read a graph document.

    Raises:
        InputFormatError: If the document does not parse.
    """
    return parse_efg(path.read_text(encoding="utf-8"))


def dot_escape(text: str) -> str:
    """Escape backslashes and double quotes for a quoted DOT string."""
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: Efg) -> str:
    """Return a Graphviz DOT rendering: one statement per node and per edge."""
    lines = ["digraph efg {", "  rankdir=LR;"]
    lines.extend(f'  n{node.id} [label="{dot_escape(node.label)}", block={node.block}];' for node in g.nodes)
    lines.extend(f"  n{v} -> n{w};" for v, w in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_gfa(g: Efg) -> str:
    """Return a GFA 1.0 rendering with one segment per node and one link per edge."""
    lines = ["H\tVN:Z:1.0"]
    lines.extend(f"S\tn{node.id}\t{node.label}\tBK:i:{node.block}" for node in g.nodes)
    lines.extend(f"L\tn{v}\t+\tn{w}\t+\t0M" for v, w in g.edges)
    return "\n".join(lines) + "\n"
