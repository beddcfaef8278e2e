"""Wheeler converter — Wheeler DFAs of repeat-free founder graphs."""

from efgkit.tools.wheeler.tool import WheelerConverterTool

__all__ = ["WheelerConverterTool"]
