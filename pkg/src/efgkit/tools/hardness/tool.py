"""OvGadgetTool — BaseTool wrapper reducing an OV instance to a query and a founder graph."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import OvInstance, OvReduction
from efgkit.core.events import EventBus
from efgkit.tools.efg.logic import write_efg
from efgkit.tools.hardness.logic import read_ov, reduce_ov


class OvGadgetTool(BaseTool):
    """Encode X as a query string and Y as a gadget graph."""

    name = "ov_gadget"
    display_name = "OV Gadget"
    description = "Reduce an Orthogonal Vectors instance to founder-graph matching"
    version = "0.1.0"
    category = "Hardness"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the gadget builder.

        Args:
            event_bus: Shared event bus for status events.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for the reduction."""
        return [
            ToolParameter(name="input_path", label="OV instance", type=Path, help="OV text file (when not piped)."),
            ToolParameter(name="graph_path", label="Graph JSON", type=Path, help="Write the gadget graph here."),
            ToolParameter(name="query_path", label="Query file", type=Path, help="Write the query string here."),
        ]

    def input_types(self) -> list[type]:
        """Accept an ``OvInstance``."""
        return [OvInstance]

    def output_types(self) -> list[type]:
        """Produce an ``OvReduction``."""
        return [OvReduction]

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> OvReduction:
        """Build the query and the graph, writing them if paths are given.

        Raises:
            ValidationError: If no instance was piped in and no input path is given.
        """
        instance = self._piped_or_loaded(input_data, params, read_ov)

        reduction = reduce_ov(instance)
        if params.get("graph_path") is not None:
            write_efg(reduction.graph, Path(params["graph_path"]))
        if params.get("query_path") is not None:
            Path(params["query_path"]).write_text(f"{reduction.query}\n", encoding="utf-8")
        self.event_bus.completed(
            self.name,
            f"Reduced n={instance.n}, d={instance.d} to |Q|={len(reduction.query or '')}, "
            f"{len(reduction.graph.edges)} edges",
        )
        return reduction
