"""Pipeline: chains registered tools, e.g. MSA → segmentation → founder graph → index."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from efgkit.core.exceptions import PipelineError

logger = logging.getLogger(__name__)


@dataclass
class PipelineStage:
    """A tool slug bound to the parameters passed to its ``run``."""

    tool_name: str
    params: dict[str, Any] = field(default_factory=dict)


class Pipeline:
    """Ordered stages; the result of one stage is the ``input_data`` of the next.

    Args:
        name: Human-readable pipeline name, used in logs and errors.
    """

    def __init__(self, name: str) -> None:
        """Initialise an empty pipeline called ``name``."""
        self.name = name
        self._stages: list[PipelineStage] = []

    @classmethod
    def founder_index(
        cls,
        mode: str = "semi-repeat-free",
        kind: str = "triple",
        score: str = "minmaxlength",
    ) -> Pipeline:
        """Return the segmenter → graph_builder → indexer chain.

        Feed it an ``Msa``; the result is the index. With ``kind="ebwt"`` or
        ``"classic"`` the segmentation mode must give a repeat-free graph.
        """
        return (
            cls(name=f"{mode} {kind} index")
            .add_stage("segmenter", params={"mode": mode, "score": score})
            .add_stage("graph_builder")
            .add_stage("indexer", params={"kind": kind})
        )

    @property
    def stages(self) -> list[PipelineStage]:
        """Return a copy of the stage list."""
        return list(self._stages)

    def add_stage(self, tool_name: str, params: dict[str, Any] | None = None) -> Pipeline:
        """Append a stage and return the pipeline, so stages can be chained."""
        self._stages.append(PipelineStage(tool_name=tool_name, params=params or {}))
        return self

    def validate(self) -> None:
        """Check that the pipeline is non-empty and that adjacent ports connect.

        Raises:
            PipelineError: If the pipeline is empty, a tool is unknown, or a
                stage cannot consume what the previous stage produces.
        """
        from efgkit.core.registry import ToolRegistry

        if not self._stages:
            msg = f"Pipeline '{self.name}' has no stages"
            raise PipelineError(msg)

        registry = ToolRegistry()
        previous: tuple[str, list[type]] | None = None
        for stage in self._stages:
            tool = registry.require(stage.tool_name)
            if previous is not None:
                producer, outputs = previous
                if not any(issubclass(out, inp) for out in outputs for inp in tool.input_types()):
                    produced = [t.__name__ for t in outputs]
                    consumers = sorted({c for out in outputs for c in registry.consumers_of(out)})
                    msg = (
                        f"Stage '{stage.tool_name}' cannot consume {produced} from '{producer}'"
                        f" (stages that can: {consumers})"
                    )
                    raise PipelineError(msg)
            previous = (stage.tool_name, tool.output_types())

    def run(self, input_data: Any = None) -> Any:
        """Validate, then execute all stages in order.

        Returns:
            The result produced by the last stage.

        Raises:
            PipelineError: If the pipeline does not validate.
        """
        from efgkit.core.registry import ToolRegistry

        self.validate()
        registry = ToolRegistry()
        result = input_data

        for stage in self._stages:
            logger.info(
                "Pipeline '%s': running stage '%s' on %s", self.name, stage.tool_name, type(result).__name__
            )
            result = registry.require(stage.tool_name).run(params=stage.params, input_data=result)

        return result
