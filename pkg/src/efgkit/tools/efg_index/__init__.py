"""Indexer — classic, expanded-BWT and triple occurrence indexes over founder graphs."""

from efgkit.tools.efg_index.tool import IndexerTool

__all__ = ["IndexerTool"]
