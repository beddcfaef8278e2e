"""Integration tests for the EventBus."""

from __future__ import annotations

from typing import Any

import pytest

from efgkit.core.datatypes import Msa
from efgkit.core.events import COMPLETED, PROGRESS, EventBus
from efgkit.tools.segmentation import SegmenterTool


class TestEventBusSubscribeEmit:
    """Tests for basic subscribe/emit behaviour."""

    def test_handler_receives_emitted_kwargs(self) -> None:
        """A subscribed handler receives all keyword arguments."""
        bus = EventBus()
        received: list[dict[str, Any]] = []
        bus.subscribe("progress", lambda **kw: received.append(kw))

        bus.emit("progress", current=1, total=4, message="column 1")

        assert received == [{"current": 1, "total": 4, "message": "column 1"}]

    def test_multiple_handlers_all_called(self) -> None:
        """All handlers subscribed to the same event are called."""
        bus = EventBus()
        calls: list[str] = []
        bus.subscribe("completed", lambda **_kw: calls.append("a"))
        bus.subscribe("completed", lambda **_kw: calls.append("b"))

        bus.emit("completed")

        assert calls == ["a", "b"]

    def test_emit_without_subscribers_is_noop(self) -> None:
        """Emitting an event with no subscribers does not raise."""
        bus = EventBus()
        bus.emit("unknown_event", data=123)

    def test_different_events_are_independent(self) -> None:
        """Subscribing to one event does not receive another."""
        bus = EventBus()
        received: list[str] = []
        bus.subscribe("progress", lambda **_kw: received.append("progress"))

        bus.emit("completed", tool="segmenter")

        assert received == []


class TestEventBusUnsubscribe:
    """Tests for handler removal."""

    def test_unsubscribed_handler_not_called(self) -> None:
        """After unsubscribe, the handler is no longer invoked."""
        bus = EventBus()
        calls: list[int] = []

        def handler(**_kw: Any) -> None:
            calls.append(1)

        bus.subscribe("progress", handler)
        bus.unsubscribe("progress", handler)
        bus.emit("progress")

        assert calls == []

    def test_unsubscribe_unknown_handler_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """Removing a handler that was never subscribed logs a warning."""
        bus = EventBus()
        bus.unsubscribe("progress", lambda **_kw: None)

        assert "was not subscribed" in caplog.text


class TestEventBusErrorHandling:
    """Tests for handler error isolation."""

    def test_failing_handler_does_not_break_others(self, caplog: pytest.LogCaptureFixture) -> None:
        """A handler that raises does not prevent subsequent handlers."""
        bus = EventBus()
        results: list[str] = []

        def bad_handler(**_kw: Any) -> None:
            msg = "boom"
            raise RuntimeError(msg)

        bus.subscribe("progress", bad_handler)
        bus.subscribe("progress", lambda **_kw: results.append("ok"))

        bus.emit("progress")

        assert results == ["ok"]
        assert "boom" in caplog.text

    def test_failing_handler_does_not_break_a_tool(self) -> None:
        """A tool run completes even when a progress handler raises."""
        bus = EventBus()
        done: list[str] = []

        def bad_handler(**_kw: Any) -> None:
            msg = "boom"
            raise RuntimeError(msg)

        bus.subscribe("progress", bad_handler)
        bus.subscribe("completed", lambda **kw: done.append(kw["tool"]))
        result = SegmenterTool(event_bus=bus).run(params={}, input_data=Msa(rows=("ACGT", "ATGT")))

        assert result.segmentation.b >= 1
        assert done == ["segmenter"]


class TestEventBusHelpers:
    """Tests for the ``progress`` and ``completed`` shorthands."""

    def test_progress_payload(self) -> None:
        """``progress`` emits the tool, the step counters and the message."""
        bus = EventBus()
        received: list[dict[str, Any]] = []
        bus.subscribe(PROGRESS, lambda **kw: received.append(kw))

        bus.progress("validity", 3, 10, "Column 8")

        assert received == [{"tool": "validity", "current": 3, "total": 10, "message": "Column 8"}]

    def test_completed_payload(self) -> None:
        """``completed`` emits the tool and its summary."""
        bus = EventBus()
        received: list[dict[str, Any]] = []
        bus.subscribe(COMPLETED, lambda **kw: received.append(kw))

        bus.completed("indexer", "Built triple index over 3 nodes")

        assert received == [{"tool": "indexer", "message": "Built triple index over 3 nodes"}]
