"""MSA loader — aligned FASTA parsing and gap-aware coordinate maps."""

from efgkit.tools.msa_core.tool import MsaLoaderTool

__all__ = ["MsaLoaderTool"]
