"""Recording tracer for tests that assert on solver spans."""

from dataclasses import dataclass, field
from types import TracebackType
from typing import Any, Self, cast
from uuid import UUID

from qpsse.telemetry.core import Attributes, Span, TelemetryStats
from qpsse.telemetry.spans import RecordingSpan

_UNSET: Any = object()


@dataclass(frozen=True, slots=True)
class TelemetryEvent:
    name: str
    time_ns: int
    attributes: dict[str, Any] = field(default_factory=dict)
    body: str | None = None


@dataclass(frozen=True, slots=True)
class TelemetrySpan:
    id: UUID
    name: str
    parent_id: UUID | None
    start_ns: int
    end_ns: int
    status: str
    error: str | None
    attributes: dict[str, Any]
    events: tuple[TelemetryEvent, ...]


def _snapshot(span: RecordingSpan) -> TelemetrySpan:
    if span.start_ns is None or span.end_ns is None:
        raise RuntimeError("Cannot snapshot an unfinished telemetry span.")
    return TelemetrySpan(
        id=span.id,
        name=span.name,
        parent_id=span.parent_id,
        start_ns=span.start_ns,
        end_ns=span.end_ns,
        status="error" if span.error else "ok",
        error=span.error,
        attributes=dict(span.attributes or {}),
        events=tuple(
            TelemetryEvent(e.name, e.time_ns, dict(e.attributes or {}), e.body)
            for e in span.events or ()
        ),
    )


class TestTracer:
    """`Tracer` that keeps finished span snapshots in end order.

    Query helpers only see finished spans.
    """

    __test__ = False

    def __init__(self) -> None:
        self._depth = 0
        self._open: set[UUID] = set()
        self.finished: list[TelemetrySpan] = []

    def __enter__(self) -> Self:
        self._depth += 1
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: TracebackType | None,
    ) -> None:
        if self._depth > 0:
            self._depth -= 1

    def create(
        self, name: str, attributes: Attributes | None = None, /, *, parent: Span | None = None
    ) -> Span:
        if self._depth <= 0:
            raise RuntimeError("TestTracer must be entered before creating spans.")
        span = RecordingSpan.open(self, name, attributes, parent)
        self._open.add(span.id)
        return span

    def on_end(self, span: Span) -> None:
        snapshot = _snapshot(cast(RecordingSpan, span))
        self.finished.append(snapshot)
        self._open.discard(snapshot.id)

    def stats(self) -> TelemetryStats:
        return TelemetryStats()

    def spans(self, name: str) -> list[TelemetrySpan]:
        return [s for s in self.finished if s.name == name]

    def find_span(self, name: str, *, parent_id: UUID | None = None) -> TelemetrySpan | None:
        """First finished span named `name` in end order."""
        for s in self.finished:
            if s.name == name and (parent_id is None or s.parent_id == parent_id):
                return s
        return None

    def get_events(self, span: TelemetrySpan, *, name: str | None = None) -> tuple[TelemetryEvent, ...]:
        if name is None:
            return span.events
        return tuple(e for e in span.events if e.name == name)

    def has_event(self, span: TelemetrySpan, event_name: str) -> bool:
        return any(e.name == event_name for e in span.events)

    def has_attribute(self, span: TelemetrySpan, key: str, value: Any = _UNSET) -> bool:
        if key not in span.attributes:
            return False
        return value is _UNSET or span.attributes[key] == value

    def has_open_spans(self) -> bool:
        return bool(self._open)
