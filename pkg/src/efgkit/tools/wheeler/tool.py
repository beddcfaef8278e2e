"""WheelerConverterTool — BaseTool wrapper turning a repeat-free founder graph into a Wheeler DFA."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Efg, WheelerAutomaton
from efgkit.core.events import EventBus
from efgkit.core.exceptions import VerificationError
from efgkit.tools.efg.logic import read_efg
from efgkit.tools.wheeler.logic import efg_to_wheeler, to_dot, to_json, verify_wheeler


class WheelerConverterTool(BaseTool):
    """Convert a repeat-free founder graph into a sorted, verified Wheeler DFA."""

    name = "wheeler_converter"
    display_name = "Wheeler Converter"
    description = "Convert a repeat-free founder graph into a Wheeler DFA"
    version = "0.1.0"
    category = "Graph"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the converter.

        Args:
            event_bus: Shared event bus for progress events.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for the conversion."""
        return [
            ToolParameter(name="input_path", label="Graph JSON", type=Path, help="Graph file (when not piped)."),
            ToolParameter(name="json_path", label="JSON dump", type=Path, help="Write the automaton as JSON here."),
            ToolParameter(name="dot_path", label="DOT export", type=Path, help="Write a Graphviz rendering here."),
            ToolParameter(
                name="verify",
                label="Verify",
                type=bool,
                default=True,
                help="Check the order on all path labels before returning.",
            ),
        ]

    def input_types(self) -> list[type]:
        """Accept an ``Efg``."""
        return [Efg]

    def output_types(self) -> list[type]:
        """Produce a ``WheelerAutomaton``."""
        return [WheelerAutomaton]

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> WheelerAutomaton:
        """Convert, optionally verify, and write the requested files.

        Raises:
            ValidationError: If no graph was piped in and no input path is given.
            GraphPropertyError: If the graph is not repeat-free.
            VerificationError: If verification finds a violation.
        """
        g = self._piped_or_loaded(input_data, params, read_efg)

        aut = efg_to_wheeler(g, event_bus=self.event_bus)
        if params["verify"]:
            _, violation = verify_wheeler(aut)
            if violation is not None:
                msg = f"Wheeler order violated at state {violation[0]} by {violation[1]!r}"
                raise VerificationError(msg, witness=violation)
        if params.get("json_path") is not None:
            Path(params["json_path"]).write_text(to_json(aut), encoding="utf-8")
        if params.get("dot_path") is not None:
            Path(params["dot_path"]).write_text(to_dot(aut), encoding="utf-8")
        self.event_bus.completed(self.name, f"Wheeler DFA with {len(aut)} states")
        return aut
