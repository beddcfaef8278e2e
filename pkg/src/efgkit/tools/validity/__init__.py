"""Validity tables — (semi-)repeat-free segment checks and the v(j), f(j) tables."""

from efgkit.tools.validity.tool import ValidityTool

__all__ = ["ValidityTool"]
