"""IndexerTool — BaseTool wrapper building and saving a query index over a founder graph."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Efg, IndexKind
from efgkit.core.events import EventBus
from efgkit.tools.efg.logic import read_efg
from efgkit.tools.efg_index._base import EfgIndex
from efgkit.tools.efg_index.logic import build_index, save_index


class IndexerTool(BaseTool):
    """Build a classic, expanded-BWT or triple index over a founder graph."""

    name = "indexer"
    display_name = "Indexer"
    description = "Index a founder graph for pattern occurrence queries"
    version = "0.1.0"
    category = "Index"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the indexer.

        Args:
            event_bus: Shared event bus for progress events.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for index construction."""
        return [
            ToolParameter(
                name="kind",
                label="Index kind",
                type=str,
                default=IndexKind.TRIPLE.value,
                choices=[k.value for k in IndexKind],
                help="classic and ebwt need a repeat-free graph, triple a semi-repeat-free one.",
            ),
            ToolParameter(name="input_path", label="Graph JSON", type=Path, help="Graph file (when not piped)."),
            ToolParameter(name="output_path", label="Index file", type=Path, help="Write the binary index here."),
        ]

    def input_types(self) -> list[type]:
        """Accept an ``Efg``."""
        return [Efg]

    def output_types(self) -> list[type]:
        """Produce an ``EfgIndex``."""
        return [EfgIndex]

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> EfgIndex:
        """Build the index and optionally write it.

        Args:
            params: Validated parameter dictionary.
            input_data: Optional ``Efg`` from the graph builder.

        Returns:
            The index.

        Raises:
            ValidationError: If no graph was piped in and no input path is given.
            GraphPropertyError: If the graph lacks the property the index kind needs.
        """
        g = self._piped_or_loaded(input_data, params, read_efg)

        index = build_index(g, IndexKind(params["kind"]), event_bus=self.event_bus)
        if params.get("output_path") is not None:
            save_index(index, Path(params["output_path"]))
        self.event_bus.completed(self.name, f"Built {index.kind} index over {len(g.nodes)} nodes")
        return index
