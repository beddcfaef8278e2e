"""ToolRegistry: singleton that discovers the efgkit tools and answers which stage can follow which."""

from __future__ import annotations

import importlib
import logging
import pkgutil
from typing import TYPE_CHECKING

from efgkit.core.exceptions import PipelineError

if TYPE_CHECKING:
    from efgkit.core.base_tool import BaseTool
    from efgkit.core.events import EventBus

logger = logging.getLogger(__name__)


class ToolRegistry:
    """Singleton registry that discovers all ``BaseTool`` subclasses.

    ``discover`` scans ``efgkit.tools.*`` sub-packages and instantiates every
    concrete ``BaseTool`` defined in their ``tool`` module. Packages without a
    ``tool`` module are skipped. All tools share the injected event bus.
    """

    _instance: ToolRegistry | None = None
    _tools: dict[str, BaseTool]

    def __new__(cls) -> ToolRegistry:
        """Return the singleton instance, creating it on first call."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._tools = {}
        return cls._instance

    def discover(self, event_bus: EventBus | None = None) -> None:
        """Scan ``efgkit.tools`` and register all ``BaseTool`` subclasses.

        Args:
            event_bus: Shared event bus injected into each tool.
        """
        from efgkit.core.base_tool import BaseTool

        tools_package = importlib.import_module("efgkit.tools")

        for _importer, module_name, is_pkg in pkgutil.iter_modules(tools_package.__path__):
            if not is_pkg:
                continue
            try:
                tool_module = importlib.import_module(f"efgkit.tools.{module_name}.tool")
            except ModuleNotFoundError:
                logger.debug("Skipping %s: no tool.py found", module_name)
                continue

            for attr_name in dir(tool_module):
                attr = getattr(tool_module, attr_name)
                if (
                    isinstance(attr, type)
                    and issubclass(attr, BaseTool)
                    and attr is not BaseTool
                    and attr.__module__ == tool_module.__name__
                ):
                    tool_instance = attr(event_bus=event_bus)
                    self._tools[tool_instance.name] = tool_instance
                    logger.info("Registered tool: %s", tool_instance.name)

    def get(self, name: str) -> BaseTool | None:
        """Look up a tool by its unique slug.

        Args:
            name: The tool's ``name`` attribute (e.g. ``"segmenter"``).

        Returns:
            The tool instance, or ``None`` if not found.
        """
        return self._tools.get(name)

    def require(self, name: str) -> BaseTool:
        """Look up a tool by slug, raising when it is not registered.

        Raises:
            PipelineError: If no tool is registered under ``name``.
        """
        tool = self._tools.get(name)
        if tool is None:
            msg = f"Tool '{name}' not found in registry"
            raise PipelineError(msg)
        return tool

    def consumers_of(self, data_type: type) -> list[str]:
        """Return the sorted slugs of tools that accept ``data_type`` as pipeline input.

        ``consumers_of(Efg)`` names the stages that can follow the graph builder.
        """
        return sorted(
            name for name, tool in self._tools.items() if any(issubclass(data_type, t) for t in tool.input_types())
        )

    def all_tools(self) -> dict[str, BaseTool]:
        """Return all registered tools as a name → instance mapping."""
        return dict(self._tools)

    @classmethod
    def reset(cls) -> None:
        """Reset the singleton — intended for testing only."""
        cls._instance = None
