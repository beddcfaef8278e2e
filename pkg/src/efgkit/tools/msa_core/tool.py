"""MsaLoaderTool — BaseTool wrapper around aligned FASTA parsing."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Msa
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError
from efgkit.tools.msa_core.logic import parse_msa, read_msa


class MsaLoaderTool(BaseTool):
    """Load a multiple sequence alignment from aligned FASTA."""

    name = "msa_loader"
    display_name = "MSA Loader"
    description = "Parse an aligned FASTA file into an MSA"
    version = "0.1.0"
    category = "Alignment"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the loader.

        Args:
            event_bus: Shared event bus for status events.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for MSA loading."""
        return [
            ToolParameter(
                name="input_path",
                label="Aligned FASTA file",
                type=Path,
                default=None,
                help="Path of the aligned FASTA file.",
            ),
            ToolParameter(
                name="text",
                label="Aligned FASTA text",
                type=str,
                default=None,
                help="Document text; used when no path is given.",
            ),
            ToolParameter(
                name="any_alphabet",
                label="Any alphabet",
                type=bool,
                default=False,
                help="Accept symbols outside A,C,G,T,N.",
            ),
        ]

    def input_types(self) -> list[type]:
        """Entry point: no pipeline input."""
        return []

    def output_types(self) -> list[type]:
        """Produce an ``Msa``."""
        return [Msa]

    def validate(self, params: dict[str, Any]) -> None:
        """Require exactly one of ``input_path`` and ``text``.

        Raises:
            ValidationError: If both or neither are given.
        """
        super().validate(params)
        if (params.get("input_path") is None) == (params.get("text") is None):
            msg = "Give exactly one of 'input_path' and 'text'"
            raise ValidationError(msg)

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> Msa:
        """Parse the document.

        Args:
            params: Validated parameter dictionary.
            input_data: Unused.

        Returns:
            The parsed ``Msa``.
        """
        any_alphabet = bool(params.get("any_alphabet", False))
        if params.get("input_path") is not None:
            msa = read_msa(Path(params["input_path"]), any_alphabet=any_alphabet)
        else:
            msa = parse_msa(params["text"], any_alphabet=any_alphabet)
        self.event_bus.completed(self.name, f"Loaded MSA with m={msa.m}, n={msa.n}")
        return msa
