"""efgkit — elastic founder graphs: segmentation, indexing, Wheeler conversion and oracles."""

__version__ = "0.1.0"
