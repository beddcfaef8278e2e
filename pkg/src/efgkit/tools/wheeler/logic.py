"""Repeat-free founder graph → character NFA → DFA → Wheeler DFA, with a bounded verifier."""

from __future__ import annotations

import json
import logging
from collections import defaultdict, deque
from collections.abc import Callable, Iterable, Sequence
from graphlib import CycleError, TopologicalSorter
from itertools import pairwise
from pathlib import Path

from efgkit.core.datatypes import CharNfa, Efg, ValidityMode, WheelerAutomaton
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError, VerificationError
from efgkit.tools.efg.logic import dot_escape
from efgkit.tools.validity.logic import require_graph_property

logger = logging.getLogger(__name__)

Violation = tuple[int, str]
"""``(state, path label)`` witnessing that an automaton is not Wheeler."""


# ── Graph → NFA → DFA ─────────────────────────────────────────────────────


def efg_to_nfa(g: Efg) -> CharNfa:
    """Expand every node label into a chain of character states behind a new initial state.

    The initial state points to the first character of every first-block
    label; the last character of a label is a block end and points to the
    first character of every successor label.

    Raises:
        GraphPropertyError: If *g* is not repeat-free.
    """
    require_graph_property(g, ValidityMode.REPEAT_FREE)
    labels = [""]
    first: list[int] = []
    last: list[int] = []
    edges: list[tuple[int, int]] = []
    for node in g.nodes:
        first.append(len(labels))
        for i, c in enumerate(node.label):
            if i:
                edges.append((len(labels) - 1, len(labels)))
            labels.append(c)
        last.append(len(labels) - 1)
    edges.extend((0, first[v]) for v in g.blocks[0])
    edges.extend((last[v], first[w]) for v, w in g.edges)
    sink = g.b - 1
    return CharNfa(
        labels=tuple(labels),
        edges=tuple(sorted(edges)),
        block_ends=frozenset(last),
        accepting=frozenset(last[v] for v in g.blocks[sink]),
    )


def determinize(nfa: CharNfa) -> CharNfa:
    """Run the subset construction over the subsets reachable from the initial state.

    A DFA state is a block end (accepting) when one of its NFA states is.
    """
    start = frozenset({0})
    index = {start: 0}
    subsets = [start]
    labels = [""]
    edges: list[tuple[int, int]] = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        moves: dict[str, set[int]] = defaultdict(set)
        for q in current:
            for r in nfa.successors(q):
                moves[nfa.labels[r]].add(r)
        for symbol in sorted(moves):
            target = frozenset(moves[symbol])
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
                labels.append(symbol)
                queue.append(target)
            edges.append((index[current], index[target]))
    logger.debug("Subset construction: %d NFA states -> %d DFA states", len(nfa), len(subsets))
    return CharNfa(
        labels=tuple(labels),
        edges=tuple(sorted(edges)),
        block_ends=frozenset(i for i, s in enumerate(subsets) if s & nfa.block_ends),
        accepting=frozenset(i for i, s in enumerate(subsets) if s & nfa.accepting),
        origins=tuple(subsets),
    )


def topological_order(aut: CharNfa) -> list[int]:
    """Return the states in a topological order.

    Raises:
        ValidationError: If the automaton has a cycle.
    """
    sorter: TopologicalSorter[int] = TopologicalSorter({v: aut.predecessors(v) for v in range(len(aut))})
    try:
        return list(sorter.static_order())
    except CycleError as exc:
        msg = f"Automaton has a cycle through states {exc.args[1]}"
        raise ValidationError(msg) from exc


# ── Expansion ─────────────────────────────────────────────────────────────


def wheeler_expand(dfa: CharNfa) -> WheelerAutomaton:
    """Distribute the in-edges of every non-block-end state over copies of it.

    States are processed in topological order. A state v that does not end a
    block and has in-neighbours u₁..u_k is replaced by copies v₁..v_k with the
    single in-edge (uᵢ, vᵢ) each and all out-edges of v duplicated.

    Raises:
        ValidationError: If *dfa* has a cycle.
    """
    order = topological_order(dfa)
    labels = list(dfa.labels)
    origins = list(dfa.origins) if dfa.origins else [frozenset({v}) for v in range(len(dfa))]
    block_ends = set(dfa.block_ends)
    accepting = set(dfa.accepting)
    preds: list[list[int]] = [list(dfa.predecessors(v)) for v in range(len(dfa))]
    succs: list[list[int]] = [list(dfa.successors(v)) for v in range(len(dfa))]

    for v in order:
        if v in block_ends or len(preds[v]) < 2:
            continue
        for u in preds[v][1:]:
            copy = len(labels)
            labels.append(labels[v])
            origins.append(origins[v])
            if v in accepting:
                accepting.add(copy)
            preds.append([u])
            succs.append(list(succs[v]))
            succs[u] = [copy if w == v else w for w in succs[u]]
            for w in succs[v]:
                preds[w].append(copy)
        preds[v] = preds[v][:1]

    edges = sorted((v, w) for v, ws in enumerate(succs) for w in ws)
    logger.debug("Expansion: %d DFA states -> %d states", len(dfa), len(labels))
    return WheelerAutomaton(
        labels=tuple(labels),
        edges=tuple(edges),
        block_ends=frozenset(block_ends),
        accepting=frozenset(accepting),
        origins=tuple(origins),
    )


def expansion_bound(g: Efg) -> int:
    """Return N·W + N + 1, the largest state count expansion may produce for *g*."""
    return g.total_length * g.height + g.total_length + 1


# ── Wheeler order ─────────────────────────────────────────────────────────


def _reversed_extremes(aut: CharNfa, pick: Callable[[Iterable[str]], str]) -> list[str]:
    """Return, per state, the reversed colex-extreme incoming path label."""
    best = [""] * len(aut)
    for v in topological_order(aut):
        preds = aut.predecessors(v)
        if v and preds:
            best[v] = aut.labels[v] + pick(best[u] for u in preds)
    return best


def permute_states(aut: WheelerAutomaton, order: Sequence[int], p_min: Sequence[str] = ()) -> WheelerAutomaton:
    """Renumber states so that new state i is old state ``order[i]``.

    Raises:
        ValidationError: If *order* is not a permutation keeping the initial state first.
    """
    if sorted(order) != list(range(len(aut))) or order[0] != 0:
        msg = "order must be a permutation of the states starting with 0"
        raise ValidationError(msg)
    new_id = {old: new for new, old in enumerate(order)}
    origins = aut.origins
    return WheelerAutomaton(
        labels=tuple(aut.labels[old] for old in order),
        edges=tuple(sorted((new_id[v], new_id[w]) for v, w in aut.edges)),
        block_ends=frozenset(new_id[v] for v in aut.block_ends),
        accepting=frozenset(new_id[v] for v in aut.accepting),
        origins=tuple(origins[old] for old in order) if origins else (),
        p_min=tuple(p_min),
    )


def wheeler_sort(aut: WheelerAutomaton) -> WheelerAutomaton:
    """Order states by P_min, their colexicographically smallest incoming path label.

    P_min follows from P_min of the in-neighbours by dynamic programming over
    the DAG. Distinct states of a deterministic atomic automaton never share it.

    Raises:
        VerificationError: If two states tie (the automaton is not atomic or not deterministic).
    """
    reversed_min = _reversed_extremes(aut, min)
    order = sorted(range(len(aut)), key=lambda v: reversed_min[v])
    for a, b in pairwise(order):
        if reversed_min[a] == reversed_min[b]:
            label = reversed_min[a][::-1]
            msg = f"States {a} and {b} share P_min {label!r}: automaton is not atomic or not deterministic"
            raise VerificationError(msg, witness=(b, label))
    return permute_states(aut, order, [reversed_min[v][::-1] for v in order])


def p_max(aut: CharNfa) -> tuple[str, ...]:
    """Return the colexicographically largest incoming path label of every state."""
    return tuple(label[::-1] for label in _reversed_extremes(aut, max))


# ── Verification ──────────────────────────────────────────────────────────


def dag_depth(aut: CharNfa) -> int:
    """Return the number of edges on a longest path from the initial state."""
    depth = [0] * len(aut)
    for v in topological_order(aut):
        for w in aut.successors(v):
            depth[w] = max(depth[w], depth[v] + 1)
    return max(depth)


def _walk(aut: CharNfa, depth: int) -> list[tuple[int, str]]:
    """Return ``(state, label)`` for every path from the initial state with at most *depth* edges."""
    out: list[tuple[int, str]] = []
    stack = [(0, "")]
    while stack:
        v, text = stack.pop()
        out.append((v, text))
        if len(text) < depth:
            stack.extend((w, text + aut.labels[w]) for w in aut.successors(v))
    return out


def language_up_to(aut: CharNfa, depth: int) -> set[str]:
    """Return the accepted strings of length at most *depth*."""
    return {text for v, text in _walk(aut, depth) if v in aut.accepting}


def verify_wheeler(aut: WheelerAutomaton, depth: int | None = None) -> tuple[bool, Violation | None]:
    """Check determinism, atomicity and the order of *aut* on all path labels up to *depth*.

    Listing every path label in colexicographic order, the states reached
    must never decrease; that makes each P(v) an interval and orders the
    intervals like the states. With *depth* at least the DAG depth the check
    is exact, and stored P_min values are compared as well.

    Returns:
        ``(True, None)``, or ``(False, (state, label))`` for the first violation.
    """
    full = dag_depth(aut)
    depth = full if depth is None else depth
    for v in range(len(aut)):
        seen: set[str] = set()
        for w in aut.successors(v):
            symbol = aut.labels[w]
            if symbol in seen:
                return False, (v, symbol)
            seen.add(symbol)

    ranked = sorted(_walk(aut, depth), key=lambda pair: pair[1][::-1])
    for (v, _), (w, text) in pairwise(ranked):
        if w < v:
            logger.debug("State %d reached by %r after state %d", w, text, v)
            return False, (w, text)

    if aut.p_min and depth >= full:
        first: dict[int, str] = {}
        for v, text in ranked:
            first.setdefault(v, text)
        for v, text in first.items():
            if aut.p_min[v] != text:
                return False, (v, aut.p_min[v])
    return True, None


# ── Pipeline ──────────────────────────────────────────────────────────────


def efg_to_wheeler(g: Efg, *, event_bus: EventBus | None = None) -> WheelerAutomaton:
    """Run NFA expansion, subset construction, in-edge distribution and sorting on *g*.

    Raises:
        GraphPropertyError: If *g* is not repeat-free.
    """
    stages = ("NFA", "DFA", "expansion", "Wheeler order")

    def report(i: int) -> None:
        if event_bus is not None:
            event_bus.progress("wheeler_converter", i, len(stages), stages[i - 1])

    nfa = efg_to_nfa(g)
    report(1)
    dfa = determinize(nfa)
    report(2)
    expanded = wheeler_expand(dfa)
    report(3)
    aut = wheeler_sort(expanded)
    report(4)
    bound = expansion_bound(g)
    logger.info(
        "Wheeler DFA: %d NFA, %d DFA, %d sorted states (N·W + N + 1 = %d, ratio %.2f)",
        len(nfa),
        len(dfa),
        len(aut),
        bound,
        len(aut) / bound,
    )
    return aut


# ── Export ────────────────────────────────────────────────────────────────


def to_dot(aut: WheelerAutomaton) -> str:
    """Render *aut* in Graphviz DOT, each state annotated with its rank and P_min."""
    lines = ["digraph wheeler {", "  rankdir=LR;"]
    for v, symbol in enumerate(aut.labels):
        shape = "doublecircle" if v in aut.accepting else "circle"
        note = f"\\nP_min={dot_escape(aut.p_min[v] or 'ε')}" if aut.p_min else ""
        lines.append(f'  s{v} [shape={shape}, label="{v}: {dot_escape(symbol or "ε")}{note}"];')
    lines.extend(f'  s{v} -> s{w} [label="{dot_escape(aut.labels[w])}"];' for v, w in aut.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(aut: WheelerAutomaton) -> str:
    """Dump *aut* with states in Wheeler order and edges as ``[from, to, symbol]`` triples."""
    states = [
        {
            "id": v,
            "symbol": symbol,
            "p_min": aut.p_min[v] if aut.p_min else None,
            "block_end": v in aut.block_ends,
            "accepting": v in aut.accepting,
        }
        for v, symbol in enumerate(aut.labels)
    ]
    edges = [[v, w, aut.labels[w]] for v, w in aut.edges]
    return json.dumps({"version": 1, "ordered": aut.ordered, "states": states, "edges": edges}, indent=2) + "\n"


def write_automaton(aut: WheelerAutomaton, path: Path) -> Path:
    """Write *aut* as DOT when *path* ends in ``.dot``, as JSON otherwise."""
    text = to_dot(aut) if path.suffix == ".dot" else to_json(aut)
    path.write_text(text, encoding="utf-8")
    return path
