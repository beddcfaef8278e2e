"""SegmenterTool — BaseTool wrapper around the segmentation recurrences."""

from __future__ import annotations

from pathlib import Path
from typing import Any

from efgkit.core.base_tool import BaseTool, ToolParameter
from efgkit.core.datatypes import Engine, Msa, ScoreKind, SegmentationResult, ValidityMode
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError
from efgkit.tools.segmentation.logic import segment, write_segmentation


class SegmenterTool(BaseTool):
    """Segment an MSA optimally under a validity mode and score."""

    name = "segmenter"
    display_name = "Segmenter"
    description = "Find an optimal (semi-)repeat-free segmentation of an MSA"
    version = "0.1.0"
    category = "Segmentation"

    def __init__(self, event_bus: EventBus | None = None) -> None:
        """Initialise the segmenter.

        Args:
            event_bus: Shared event bus for progress reporting.
        """
        super().__init__(event_bus=event_bus)

    def define_parameters(self) -> list[ToolParameter]:
        """Return the parameter schema for segmentation."""
        return [
            ToolParameter(
                name="mode",
                label="Validity mode",
                type=str,
                default=ValidityMode.SEMI_REPEAT_FREE.value,
                choices=[m.value for m in ValidityMode],
                help="Property every segment must have.",
            ),
            ToolParameter(
                name="score",
                label="Score",
                type=str,
                default=ScoreKind.MINMAXLENGTH.value,
                choices=[s.value for s in ScoreKind],
                help="maxblocks maximises the block count; minmaxlength minimises the longest segment.",
            ),
            ToolParameter(
                name="engine",
                label="Engine",
                type=str,
                default=Engine.AUTO.value,
                choices=[e.value for e in Engine],
                help="auto, gapless-linear (gapless MSAs only) or elastic.",
            ),
            ToolParameter(
                name="strict",
                label="Strict",
                type=bool,
                default=False,
                help="Fail instead of falling back to a single block.",
            ),
            ToolParameter(name="msa", label="MSA", type=Msa, help="Alignment (when not piped)."),
            ToolParameter(
                name="output_path",
                label="Segmentation JSON",
                type=Path,
                help="Write the segmentation document here.",
            ),
        ]

    def input_types(self) -> list[type]:
        """Accept an ``Msa``."""
        return [Msa]

    def output_types(self) -> list[type]:
        """Produce a ``SegmentationResult``."""
        return [SegmentationResult]

    def validate(self, params: dict[str, Any]) -> None:
        """Reject the gapless-linear engine for a gapped MSA given as a parameter.

        Raises:
            ValidationError: If parameters are invalid.
        """
        super().validate(params)
        msa = params.get("msa")
        if params.get("engine") == Engine.GAPLESS_LINEAR.value and isinstance(msa, Msa) and not msa.is_gapless:
            msg = "Engine 'gapless-linear' requires a gapless MSA; use --engine elastic"
            raise ValidationError(msg)

    def _do_execute(self, params: dict[str, Any], input_data: Any) -> SegmentationResult:
        """Run the segmentation.

        Args:
            params: Validated parameter dictionary.
            input_data: Optional ``Msa`` from the loader.

        Returns:
            The segmentation with its trace.
        """
        msa = input_data if isinstance(input_data, Msa) else params.get("msa")
        if msa is None:
            msg = "SegmenterTool needs an Msa"
            raise ValidationError(msg)
        result = segment(
            msa,
            mode=ValidityMode(params["mode"]),
            score=ScoreKind(params["score"]),
            engine=Engine(params["engine"]),
            strict=bool(params["strict"]),
            event_bus=self.event_bus,
        )
        if params.get("output_path") is not None:
            write_segmentation(result.segmentation, Path(params["output_path"]))
        return result
