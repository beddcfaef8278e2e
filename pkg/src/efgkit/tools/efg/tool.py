"""GraphBuilderTool — BaseTool wrapper building the founder graph of a segmentation."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Efg, Msa, Segmentation, SegmentationResult
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError
from efgkit.tools.efg.logic import build_efg, to_dot, to_gfa, write_efg


class GraphBuilderTool(BaseTool):
    """Build the elastic founder graph induced by a segmentation."""

    name = "graph_builder"
    display_name = "Graph Builder"
    description = "Build the elastic founder graph of a segmented MSA"
    version = "0.1.0"
    category = "Graph"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the graph builder.

        Args:
            event_bus: Shared event bus for status events.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for graph building."""
        return [
            ToolParameter(name="msa", label="MSA", type=Msa, help="Alignment (when not piped)."),
            ToolParameter(
                name="segmentation",
                label="Segmentation",
                type=Segmentation,
                help="Segmentation of the alignment (when not piped).",
            ),
            ToolParameter(name="output_path", label="Graph JSON", type=Path, help="Write the graph JSON here."),
            ToolParameter(name="dot_path", label="DOT export", type=Path, help="Write a Graphviz rendering here."),
            ToolParameter(name="gfa_path", label="GFA export", type=Path, help="Write a GFA rendering here."),
        ]

    def input_types(self) -> list[type]:
        """Accept a ``SegmentationResult``."""
        return [SegmentationResult]

    def output_types(self) -> list[type]:
        """Produce an ``Efg``."""
        return [Efg]

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> Efg:
        """Build the graph and write the requested files.

        Args:
            params: Validated parameter dictionary.
            input_data: Optional ``SegmentationResult`` from the segmenter.

        Returns:
            The founder graph.

        Raises:
            ValidationError: If neither pipeline input nor msa/segmentation are given.
        """
        if isinstance(input_data, SegmentationResult):
            msa, segmentation = input_data.msa, input_data.segmentation
        else:
            msa, segmentation = params.get("msa"), params.get("segmentation")
            if msa is None or segmentation is None:
                msg = "GraphBuilderTool needs a SegmentationResult or both 'msa' and 'segmentation'"
                raise ValidationError(msg)

        g = build_efg(msa, segmentation)
        if params.get("output_path") is not None:
            write_efg(g, Path(params["output_path"]))
        if params.get("dot_path") is not None:
            Path(params["dot_path"]).write_text(to_dot(g), encoding="utf-8")
        if params.get("gfa_path") is not None:
            Path(params["gfa_path"]).write_text(to_gfa(g), encoding="utf-8")
        self.event_bus.completed(
            self.name,
            f"Built graph with {g.b} blocks, {len(g.nodes)} nodes, {len(g.edges)} edges",
        )
        return g
