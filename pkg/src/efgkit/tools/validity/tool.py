"""ValidityTool — BaseTool wrapper computing the validity table of an MSA."""

from __future__ import annotations

from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Msa, ValidityMode, ValidityTable
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError
from efgkit.tools.validity.logic import compute_validity_table


class ValidityTool(BaseTool):
    """Compute v(j)/f(j) for the chosen validity mode."""

    name = "validity_table"
    display_name = "Validity Table"
    description = "Compute the segment validity tables of an MSA"
    version = "0.1.0"
    category = "Segmentation"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the tool.

        Args:
            event_bus: Shared event bus for progress reporting.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema."""
        return [
            ToolParameter(
                name="mode",
                label="Validity mode",
                type=str,
                default=ValidityMode.SEMI_REPEAT_FREE.value,
                choices=[m.value for m in ValidityMode],
                help="repeat-free (gapless MSAs) or semi-repeat-free.",
            ),
            ToolParameter(name="msa", label="MSA", type=Msa, help="Alignment (when not piped)."),
        ]

    def input_types(self) -> list[type]:
        """Accept an ``Msa``."""
        return [Msa]

    def output_types(self) -> list[type]:
        """Produce a ``ValidityTable``."""
        return [ValidityTable]

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> ValidityTable:
        """Compute the table.

        Args:
            params: Validated parameter dictionary.
            input_data: Optional ``Msa`` from a preceding stage.

        Returns:
            The validity table.
        """
        msa = input_data if isinstance(input_data, Msa) else params.get("msa")
        if msa is None:
            msg = "ValidityTool needs an Msa"
            raise ValidationError(msg)
        table = compute_validity_table(msa, ValidityMode(params["mode"]), event_bus=self.event_bus)
        self.event_bus.completed(self.name, f"Computed {table.mode.value} table")
        return table
