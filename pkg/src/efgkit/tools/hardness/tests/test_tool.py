"""Tests for OvGadgetTool (BaseTool integration)."""

from __future__ import annotations

from pathlib import Path

import pytest

from efgkit.core.datatypes import OvInstance, OvReduction
from efgkit.core.events import EventBus
from efgkit.core.exceptions import InputFormatError, ValidationError
from efgkit.tools.efg.logic import read_efg
from efgkit.tools.hardness.logic import online_match
from efgkit.tools.hardness.tool import OvGadgetTool


class TestOvGadgetTool:
    """Tests for the OV gadget tool."""

    def test_metadata(self) -> None:
        """Ports and identity."""
        tool = OvGadgetTool()
        assert tool.name == "ov_gadget"
        assert tool.input_types() == [OvInstance]
        assert tool.output_types() == [OvReduction]

    def test_from_file(self, tmp_path: Path) -> None:
        """An instance file is reduced; graph and query are written."""
        src = tmp_path / "ov.txt"
        src.write_text("1 2\n10\n01\n", encoding="utf-8")
        params = {"input_path": src, "graph_path": tmp_path / "g.json", "query_path": tmp_path / "q.txt"}
        reduction = OvGadgetTool().run(params=params)
        query = (tmp_path / "q.txt").read_text(encoding="utf-8").strip()
        assert query == reduction.query
        assert read_efg(tmp_path / "g.json") == reduction.graph
        assert online_match(reduction.graph, query)

    def test_piped_instance_emits_completed(self) -> None:
        """A piped instance needs no file and reports completion."""
        bus = EventBus()
        messages: list[str] = []
        bus.subscribe("completed", lambda **kw: messages.append(kw["message"]))
        reduction = OvGadgetTool(event_bus=bus).run(params={}, input_data=OvInstance(x=((1, 1),), y=((1, 1),)))
        assert not online_match(reduction.graph, reduction.query or "")
        assert messages and "n=1, d=2" in messages[0]

    def test_bad_file(self, tmp_path: Path) -> None:
        """Malformed instance text is an input error."""
        src = tmp_path / "ov.txt"
        src.write_text("1\n", encoding="utf-8")
        with pytest.raises(InputFormatError):
            OvGadgetTool().run(params={"input_path": src})

    def test_missing_input(self) -> None:
        """Without input there is nothing to reduce."""
        with pytest.raises(ValidationError, match="OvGadgetTool needs a piped OvInstance"):
            OvGadgetTool().run(params={})
