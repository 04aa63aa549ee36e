"""Telemetry that records nothing; every solver entry point defaults to `NOOP_SPAN`."""

from typing import Any
from uuid import UUID

from .core import Attributes, Span, TelemetryStats
from .spans import NoOpSpan

NOOP_SPAN = NoOpSpan(UUID(int=0), UUID(int=0), None)


class NoOpTracer:
    """Hands out the shared `NOOP_SPAN`; `QPSSE_TRACER=noop` selects it."""

    __slots__ = ()

    def __enter__(self) -> NoOpTracer:
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None: ...

    def create(
        self, name: str, attributes: Attributes | None = None, /, *, parent: Span | None = None
    ) -> Span:
        return NOOP_SPAN

    def on_end(self, span: Span) -> None: ...

    def stats(self) -> TelemetryStats:
        return TelemetryStats()


NOOP_TRACER = NoOpTracer()
