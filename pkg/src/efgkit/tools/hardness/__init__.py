"""OV gadget — Orthogonal Vectors reduction, online matcher and brute-force checks."""

from efgkit.tools.hardness.tool import OvGadgetTool

__all__ = ["OvGadgetTool"]
