"""Segmenter — optimal (semi-)repeat-free segmentations of an MSA."""

from efgkit.tools.segmentation.tool import SegmenterTool

__all__ = ["SegmenterTool"]
