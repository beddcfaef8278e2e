"""Classic index: Aho–Corasick over node labels, neighbour tries, and a short-pattern text."""

from __future__ import annotations

import logging

import ahocorasick

from efgkit.core.datatypes import Efg, Occurrence
from efgkit.core.exceptions import InputFormatError
from efgkit.tools.efg_index._base import EfgIndex, Section, WindowText, isolated_nodes
from efgkit.tools.efg_index._tries import LabelTrie, pack_tries, spell_through, unpack_tries

logger = logging.getLogger(__name__)


def _label_automaton(graph: Efg) -> ahocorasick.Automaton:
    automaton = ahocorasick.Automaton()
    for node in graph.nodes:
        automaton.add_word(node.label, node.id)
    automaton.make_automaton()
    return automaton


def _neighbour_tries(graph: Efg) -> tuple[list[LabelTrie], list[LabelTrie]]:
    """Return R(v) over reversed predecessor labels and F(v) over successor labels."""
    backward = [LabelTrie() for _ in graph.nodes]
    forward = [LabelTrie() for _ in graph.nodes]
    for v, w in graph.edges:
        backward[w].insert(graph.label(v)[::-1], v)
        forward[v].insert(graph.label(w), w)
    return backward, forward


def edge_windows(graph: Efg) -> list[tuple[int, ...]]:
    """Return one window per edge plus one per isolated node."""
    return [*graph.edges, *((v,) for v in isolated_nodes(graph))]


class ClassicIndex(EfgIndex):
    """Index of a repeat-free graph answering queries by one verified label anchor.

    A full node label inside the pattern can only sit at the start of its own
    node, so the leftmost label found by the automaton fixes the alignment;
    the rest is checked leftwards through R tries and rightwards through F
    tries. Patterns holding no complete label span at most two nodes and are
    looked up in the text of all edge windows.
    """

    kind = "classic"
    kind_code = 1

    def __init__(
        self,
        graph: Efg,
        *,
        short: WindowText | None = None,
        backward: list[LabelTrie] | None = None,
        forward: list[LabelTrie] | None = None,
    ) -> None:
        """Build (or adopt) the index parts for *graph*."""
        super().__init__(graph)
        self.automaton = _label_automaton(graph)
        if backward is None or forward is None:
            backward, forward = _neighbour_tries(graph)
        self.backward = backward
        self.forward = forward
        self.short = short if short is not None else WindowText.build(graph, edge_windows(graph))
        logger.info("Classic index: %d labels, %d edge windows", len(graph.nodes), len(self.short.windows))

    def candidates(self, pattern: str) -> list[tuple[int, int]]:
        """Return every ``(start, node)`` with ``pattern[start:]`` beginning with the node's label."""
        return sorted(
            (end - len(self.graph.label(node)) + 1, node) for end, node in self.automaton.iter(pattern)
        )

    def verify_candidate(self, pattern: str, start: int, node: int) -> Occurrence | None:
        """Check that *pattern* occurs with *node* starting at pattern position *start*.

        Returns:
            The occurrence start, or ``None`` if the neighbourhood cannot spell the rest.
        """
        right = pattern[start + len(self.graph.label(node)) :]
        if right and spell_through(self.forward, node, right) is None:
            return None
        if start == 0:
            return self.occurrence(node, 0)
        reached = spell_through(self.backward, node, pattern[:start][::-1])
        if reached is None:
            return None
        owner, depth = reached
        return self.occurrence(owner, len(self.graph.label(owner)) - depth)

    def _find(self, pattern: str) -> Occurrence | None:
        anchors = self.candidates(pattern)
        if anchors:
            start, node = anchors[0]
            logger.debug("Pattern %r anchored at %d on node %d", pattern, start, node)
            return self.verify_candidate(pattern, start, node)
        interval = self.short.gss.find(pattern)
        if interval.is_empty:
            return None
        return self.occurrence(*self.short.start_of(self.graph, interval.lo, len(pattern)))

    def sections(self) -> list[Section]:
        """Return the short-pattern text and both trie families."""
        return [*self.short.sections(), (b"TRIE", pack_tries([*self.backward, *self.forward]))]

    @classmethod
    def from_sections(cls, graph: Efg, sections: dict[bytes, bytes]) -> ClassicIndex:
        """Rebuild from ``sections`` output; the automaton is rebuilt from the labels."""
        tries = unpack_tries(sections.get(b"TRIE", b""))
        count = len(graph.nodes)
        if len(tries) != 2 * count:
            msg = f"Expected {2 * count} tries, found {len(tries)}"
            raise InputFormatError(msg)
        short = WindowText.from_sections(graph, sections, reverse=False)
        return cls(graph, short=short, backward=tries[:count], forward=tries[count:])
