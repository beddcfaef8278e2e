"""ConfigManager (TOML-backed defaults) and RunConfig (validated run settings)."""

from __future__ import annotations

import logging
import tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

from efgkit.core.datatypes import Engine, IndexKind, ScoreKind, ValidityMode
from efgkit.core.exceptions import InputFormatError, ValidationError

if TYPE_CHECKING:
    from efgkit.core.datatypes import Msa

logger = logging.getLogger(__name__)

_DEFAULT_CONFIG_DIR = Path.home() / ".config" / "efgkit"


class ConfigManager:
    """Hierarchical configuration: global defaults overridden by per-tool settings.

    Settings are loaded from ``config.toml`` and ``tools/<slug>.toml`` below
    ``config_dir``.

    Args:
        config_dir: Root directory for configuration files.
                    Defaults to ``~/.config/efgkit/``.
    """

    def __init__(self, config_dir: Path | None = None) -> None:
        """Initialise the config manager.

        Args:
            config_dir: Custom configuration directory.  Uses the
                        platform default if ``None``.
        """
        self._config_dir = config_dir or _DEFAULT_CONFIG_DIR
        self._global: dict[str, Any] = {}
        self._per_tool: dict[str, dict[str, Any]] = {}

    @property
    def config_dir(self) -> Path:
        """Return the configuration directory path."""
        return self._config_dir

    def load(self) -> None:
        """Load global and per-tool config from ``config_dir``.

        Missing files are silently skipped.

        Raises:
            InputFormatError: If a TOML file exists but does not parse.
        """
        global_file = self._config_dir / "config.toml"
        if global_file.is_file():
            self._global = self._read_toml(global_file)
            logger.info("Loaded global config from %s", global_file)

        tools_dir = self._config_dir / "tools"
        if tools_dir.is_dir():
            for toml_file in sorted(tools_dir.glob("*.toml")):
                tool_name = toml_file.stem
                self._per_tool[tool_name] = self._read_toml(toml_file)
                logger.info("Loaded config for tool '%s'", tool_name)

    def get(self, key: str, *, tool: str | None = None, default: Any = None) -> Any:
        """Retrieve a config value with optional tool-level override.

        Args:
            key: The configuration key.
            tool: If given, check the tool-specific config first.
            default: Fallback value when the key is not found.

        Returns:
            The configuration value, or *default*.
        """
        if tool and tool in self._per_tool:
            value = self._per_tool[tool].get(key)
            if value is not None:
                return value
        return self._global.get(key, default)

    def set_global(self, key: str, value: Any) -> None:
        """Set a global configuration value (in-memory only).

        Args:
            key: The configuration key.
            value: The value to store.
        """
        self._global[key] = value

    @staticmethod
    def _read_toml(path: Path) -> dict[str, Any]:
        """Read and parse a TOML file.

        Args:
            path: Path to the TOML file.

        Returns:
            Parsed dictionary.

        Raises:
            InputFormatError: If the file is not valid TOML.
        """
        try:
            with path.open("rb") as fh:
                return tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            msg = f"Invalid TOML in {path}: {exc}"
            raise InputFormatError(msg) from exc


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one CLI run.

    Attributes:
        mode: Validity mode of the segmentation.
        score: Score optimised by the segmentation.
        engine: Which segmentation engine to use.
        index_kind: Which index to build.
        input_path: Primary input file.
        output_path: Primary output file.
        seed: Seed for sampled checks and random generators.
        strict: Fail instead of falling back to a single block.
    """

    mode: ValidityMode = ValidityMode.SEMI_REPEAT_FREE
    score: ScoreKind = ScoreKind.MINMAXLENGTH
    engine: Engine = Engine.AUTO
    index_kind: IndexKind = IndexKind.TRIPLE
    input_path: Path | None = None
    output_path: Path | None = None
    seed: int = 0
    strict: bool = False

    @classmethod
    def from_values(cls, config: ConfigManager | None = None, *, tool: str | None = None, **values: Any) -> RunConfig:
        """Build a config from explicit values, falling back to ``config`` then to defaults.

        Args:
            config: Loaded configuration supplying defaults.
            tool: Tool slug whose per-tool section is consulted first.
            **values: Explicit values; ``None`` means "not given".

        Returns:
            The validated ``RunConfig``.

        Raises:
            ValidationError: If a value is not a member of its enumeration.
        """
        fields = {
            "mode": ValidityMode,
            "score": ScoreKind,
            "engine": Engine,
            "index_kind": IndexKind,
        }
        resolved: dict[str, Any] = {}
        for key, enum_type in fields.items():
            raw = values.get(key)
            if raw is None and config is not None:
                raw = config.get(key, tool=tool)
            if raw is None:
                continue
            try:
                resolved[key] = enum_type(raw)
            except ValueError as exc:
                allowed = [e.value for e in enum_type]
                msg = f"Invalid {key} '{raw}', expected one of {allowed}"
                raise ValidationError(msg) from exc

        for key in ("input_path", "output_path"):
            if values.get(key) is not None:
                resolved[key] = Path(values[key])
        seed = values.get("seed")
        if seed is None and config is not None:
            seed = config.get("seed", tool=tool)
        if seed is not None:
            resolved["seed"] = int(seed)
        if values.get("strict") is not None:
            resolved["strict"] = bool(values["strict"])
        return cls(**resolved)

    def check(self, msa: Msa) -> None:
        """Check the settings against the MSA they will run on.

        Args:
            msa: The input alignment.

        Raises:
            ValidationError: If the gapless-linear engine meets a gapped MSA.
        """
        if self.engine is Engine.GAPLESS_LINEAR and not msa.is_gapless:
            msg = "Engine 'gapless-linear' requires a gapless MSA; use --engine elastic"
            raise ValidationError(msg)
