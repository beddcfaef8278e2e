"""Tests for WheelerConverterTool (BaseTool integration)."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from efgkit.core.datatypes import Efg, Msa, WheelerAutomaton
from efgkit.core.events import EventBus
from efgkit.core.exceptions import GraphPropertyError, ValidationError
from efgkit.tools.efg.logic import build_efg, write_efg
from efgkit.tools.wheeler.tool import WheelerConverterTool


class TestWheelerConverterTool:
    """Tests for the Wheeler converter tool."""

    def test_metadata(self) -> None:
        """Ports and identity; verification is on by default."""
        tool = WheelerConverterTool()
        assert tool.name == "wheeler_converter"
        assert tool.input_types() == [Efg]
        assert tool.output_types() == [WheelerAutomaton]
        verify = next(p for p in tool.define_parameters() if p.name == "verify")
        assert verify.default is True

    def test_from_file_with_exports(self, graph_a: Efg, tmp_path: Path) -> None:
        """JSON and DOT are written next to the returned automaton."""
        write_efg(graph_a, tmp_path / "g.json")
        params = {"input_path": tmp_path / "g.json", "json_path": tmp_path / "w.json", "dot_path": tmp_path / "w.dot"}
        aut = WheelerConverterTool().run(params=params)
        assert len(aut) == 7
        assert len(json.loads((tmp_path / "w.json").read_text(encoding="utf-8"))["states"]) == 7
        assert (tmp_path / "w.dot").read_text(encoding="utf-8").startswith("digraph")

    def test_completed_event(self, graph_a: Efg) -> None:
        """Completion reports the state count."""
        bus = EventBus()
        done: list[str] = []
        bus.subscribe("completed", lambda **kw: done.append(kw["message"]))
        WheelerConverterTool(event_bus=bus).run(params={"verify": False}, input_data=graph_a)
        assert done == ["Wheeler DFA with 7 states"]

    def test_semi_repeat_free_refused(self, msa_a: Msa) -> None:
        """Only repeat-free graphs are converted."""
        g = build_efg(msa_a, [(1, 1), (2, 2), (3, 4)])
        with pytest.raises(GraphPropertyError):
            WheelerConverterTool().run(params={}, input_data=g)

    def test_missing_input(self) -> None:
        """Without a graph there is nothing to convert."""
        with pytest.raises(ValidationError):
            WheelerConverterTool().run(params={})
