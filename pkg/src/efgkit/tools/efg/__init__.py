"""Graph builder — elastic founder graphs induced by segmentations."""

from efgkit.tools.efg.tool import GraphBuilderTool

__all__ = ["GraphBuilderTool"]
