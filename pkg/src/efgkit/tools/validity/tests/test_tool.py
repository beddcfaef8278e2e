"""Tests for ValidityTool (BaseTool integration)."""

from __future__ import annotations

from typing import Any

import pytest

from efgkit.core.datatypes import Msa, ValidityTable
from efgkit.core.events import EventBus
from efgkit.core.exceptions import ValidationError
from efgkit.tools.validity.tool import ValidityTool


class TestValidityTool:
    """Tests for the validity table tool."""

    def test_metadata(self) -> None:
        """Ports and default mode."""
        tool = ValidityTool()
        assert tool.name == "validity_table"
        assert tool.input_types() == [Msa]
        assert tool.output_types() == [ValidityTable]
        mode = next(p for p in tool.define_parameters() if p.name == "mode")
        assert mode.default == "semi-repeat-free"

    def test_piped_msa(self, msa_b: Msa) -> None:
        """A piped MSA produces its elastic f table with progress events."""
        events: list[dict[str, Any]] = []
        bus = EventBus()
        bus.subscribe("progress", lambda **kw: events.append(kw))
        table = ValidityTool(event_bus=bus).run(params={}, input_data=msa_b)
        assert table.f == (None, 3, None)
        assert len(events) == msa_b.n

    def test_repeat_free_param(self, msa_a: Msa) -> None:
        """Repeat-free mode on a gapless MSA yields v and f."""
        table = ValidityTool().run(params={"mode": "repeat-free", "msa": msa_a})
        assert table.v == (None, 0, 0, 2, 2)

    def test_bad_mode(self, msa_a: Msa) -> None:
        """Unknown modes are rejected."""
        with pytest.raises(ValidationError):
            ValidityTool().run(params={"mode": "nope", "msa": msa_a})
