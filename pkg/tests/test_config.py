"""Integration tests for the ConfigManager and RunConfig."""

from __future__ import annotations

from pathlib import Path

import pytest

from efgkit.core.config import ConfigManager, RunConfig
from efgkit.core.datatypes import Engine, IndexKind, Msa, ScoreKind, ValidityMode
from efgkit.core.exceptions import InputFormatError, ValidationError


class TestConfigManagerDefaults:
    """Tests for in-memory configuration."""

    def test_get_returns_default_when_empty(self) -> None:
        """An empty config returns the provided default."""
        cfg = ConfigManager(config_dir=Path("/nonexistent"))
        assert cfg.get("mode", default="repeat-free") == "repeat-free"

    def test_set_global_and_get(self) -> None:
        """Values set via ``set_global`` are retrievable."""
        cfg = ConfigManager(config_dir=Path("/nonexistent"))
        cfg.set_global("seed", 3)

        assert cfg.get("seed") == 3

    def test_get_returns_none_when_no_default(self) -> None:
        """Without a default, missing keys return ``None``."""
        cfg = ConfigManager(config_dir=Path("/nonexistent"))
        assert cfg.get("missing_key") is None


class TestConfigManagerToml:
    """Tests for TOML-based configuration loading."""

    def test_load_global_config(self, config_dir: Path) -> None:
        """Global config.toml values are loaded correctly."""
        (config_dir / "config.toml").write_text('mode = "repeat-free"\n')

        cfg = ConfigManager(config_dir=config_dir)
        cfg.load()

        assert cfg.get("mode") == "repeat-free"

    def test_load_per_tool_config(self, config_dir: Path) -> None:
        """Per-tool TOML files override global values."""
        (config_dir / "tools").mkdir()
        (config_dir / "config.toml").write_text('index_kind = "triple"\n')
        (config_dir / "tools" / "indexer.toml").write_text('index_kind = "ebwt"\n')

        cfg = ConfigManager(config_dir=config_dir)
        cfg.load()

        assert cfg.get("index_kind", tool="indexer") == "ebwt"
        assert cfg.get("index_kind") == "triple"

    def test_load_missing_dir_is_silent(self, tmp_path: Path) -> None:
        """Loading from a non-existent directory does not raise."""
        cfg = ConfigManager(config_dir=tmp_path / "does_not_exist")
        cfg.load()

        assert cfg.get("anything") is None

    def test_invalid_toml_raises(self, config_dir: Path) -> None:
        """A syntax error is reported as an input format error."""
        (config_dir / "config.toml").write_text("seed = = 1\n")

        with pytest.raises(InputFormatError, match="Invalid TOML"):
            ConfigManager(config_dir=config_dir).load()


class TestRunConfig:
    """Tests for resolving run settings."""

    def test_defaults(self) -> None:
        """Nothing given: semi-repeat-free, minmaxlength, auto, triple, seed 0."""
        run = RunConfig.from_values()
        assert (run.mode, run.score, run.engine, run.index_kind) == (
            ValidityMode.SEMI_REPEAT_FREE,
            ScoreKind.MINMAXLENGTH,
            Engine.AUTO,
            IndexKind.TRIPLE,
        )
        assert run.seed == 0
        assert not run.strict

    def test_explicit_value_wins(self, config_dir: Path) -> None:
        """A flag overrides the config file; ``None`` falls through to it."""
        (config_dir / "config.toml").write_text('score = "maxblocks"\nseed = 9\n')
        cfg = ConfigManager(config_dir=config_dir)
        cfg.load()

        assert RunConfig.from_values(cfg, score="minmaxlength").score is ScoreKind.MINMAXLENGTH
        assert RunConfig.from_values(cfg, score=None).score is ScoreKind.MAXBLOCKS
        assert RunConfig.from_values(cfg, seed=None).seed == 9

    def test_unknown_value_raises(self) -> None:
        """Enumerated settings reject unknown values."""
        with pytest.raises(ValidationError, match="Invalid engine"):
            RunConfig.from_values(engine="quantum")

    def test_paths_are_coerced(self) -> None:
        """String paths become ``Path`` objects."""
        run = RunConfig.from_values(input_path="a.fasta", output_path="b.json")
        assert run.input_path == Path("a.fasta")
        assert run.output_path == Path("b.json")

    def test_gapless_engine_needs_gapless_msa(self) -> None:
        """``check`` refuses the linear engine on gapped input."""
        run = RunConfig.from_values(engine="gapless-linear")
        run.check(Msa(rows=("ACGT", "ATGT")))
        with pytest.raises(ValidationError, match="gapless"):
            run.check(Msa(rows=("A-GT", "ATGT")))
