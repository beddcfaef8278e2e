"""EventBus: progress and completion notices from the segmentation, indexing and conversion stages."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable
from typing import Any

logger = logging.getLogger(__name__)

EventHandler = Callable[..., None]

PROGRESS = "progress"
COMPLETED = "completed"


class EventBus:
    """Publish/subscribe bus shared by the tools of one run.

    Stages that sweep MSA columns or build graph structures report through
    ``progress`` (``tool``, ``current``, ``total``, ``message``); every tool
    reports ``completed`` (``tool``, ``message``) once its result exists.
    The CLI echoes progress on stderr; tests subscribe to assert on stages.
    """

    def __init__(self) -> None:
        """Initialise an empty event bus."""
        self._handlers: dict[str, list[EventHandler]] = defaultdict(list)

    def subscribe(self, event: str, handler: EventHandler) -> None:
        """Register ``handler`` for ``event``; it is called with the event's keyword arguments."""
        self._handlers[event].append(handler)

    def unsubscribe(self, event: str, handler: EventHandler) -> None:
        """Remove a handler. Removing one that was never registered only logs a warning."""
        try:
            self._handlers[event].remove(handler)
        except ValueError:
            logger.warning("Handler %r was not subscribed to event %r", handler, event)

    def emit(self, event: str, **kwargs: Any) -> None:
        """Fire an event, calling all subscribed handlers in subscription order.

        A failing handler is logged and does not stop the remaining handlers.

        Args:
            event: The event name to fire.
            **kwargs: Data passed to each handler.
        """
        for handler in self._handlers.get(event, []):
            try:
                handler(**kwargs)
            except Exception:
                logger.exception("Error in handler %r for event %r", handler, event)

    def progress(self, tool: str, current: int, total: int, message: str) -> None:
        """Report step ``current`` of ``total`` for ``tool``."""
        self.emit(PROGRESS, tool=tool, current=current, total=total, message=message)

    def completed(self, tool: str, message: str) -> None:
        """Report that ``tool`` finished with a one-line summary of its result."""
        logger.debug("%s: %s", tool, message)
        self.emit(COMPLETED, tool=tool, message=message)
