"""Allow running as ``python -m efgkit``."""

from efgkit.cli.main import cli

if __name__ == "__main__":
    cli()
