"""Tests for IndexerTool (BaseTool integration)."""

from __future__ import annotations

from pathlib import Path

import pytest

from efgkit.core.datatypes import Efg, Msa
from efgkit.core.events import EventBus
from efgkit.core.exceptions import GraphPropertyError, ValidationError
from efgkit.tools.efg.logic import build_efg, write_efg
from efgkit.tools.efg_index._base import EfgIndex, SingleBlockIndex
from efgkit.tools.efg_index.logic import load_index
from efgkit.tools.efg_index.tool import IndexerTool


class TestIndexerTool:
    """Tests for the indexer tool."""

    def test_metadata(self) -> None:
        """Ports, identity and the default kind."""
        tool = IndexerTool()
        assert tool.name == "indexer"
        assert tool.input_types() == [Efg]
        assert tool.output_types() == [EfgIndex]
        kind = next(p for p in tool.define_parameters() if p.name == "kind")
        assert kind.default == "triple"

    def test_writes_index(self, graph_a: Efg, tmp_path: Path) -> None:
        """A graph file is indexed and the index file loads back."""
        write_efg(graph_a, tmp_path / "g.json")
        params = {"kind": "ebwt", "input_path": tmp_path / "g.json", "output_path": tmp_path / "g.idx"}
        index = IndexerTool().run(params=params)
        assert index.kind == "ebwt"
        loaded = load_index(tmp_path / "g.idx")
        assert loaded.kind == "ebwt"
        assert loaded.occurs("CGT")

    def test_events(self, graph_a: Efg) -> None:
        """Two progress events and one completion."""
        bus = EventBus()
        progress: list[int] = []
        done: list[str] = []
        bus.subscribe("progress", lambda **kw: progress.append(kw["current"]))
        bus.subscribe("completed", lambda **kw: done.append(kw["message"]))
        IndexerTool(event_bus=bus).run(params={"kind": "classic"}, input_data=graph_a)
        assert progress == [1, 2]
        assert done == ["Built classic index over 3 nodes"]

    def test_single_block(self, msa_a: Msa) -> None:
        """b = 1 yields the plain index."""
        index = IndexerTool().run(params={"kind": "classic"}, input_data=build_efg(msa_a, [(1, 4)]))
        assert isinstance(index, SingleBlockIndex)

    def test_refused(self, msa_a: Msa) -> None:
        """A graph without the property is refused."""
        g = build_efg(msa_a, [(1, 1), (2, 2), (3, 4)])
        with pytest.raises(GraphPropertyError):
            IndexerTool().run(params={"kind": "triple"}, input_data=g)

    def test_unknown_kind(self, graph_a: Efg) -> None:
        """Kinds are restricted to the known choices."""
        with pytest.raises(ValidationError):
            IndexerTool().run(params={"kind": "fm"}, input_data=graph_a)

    def test_missing_input(self) -> None:
        """Without a graph there is nothing to index."""
        with pytest.raises(ValidationError, match="needs a piped Efg or 'input_path'"):
            IndexerTool().run(params={})
