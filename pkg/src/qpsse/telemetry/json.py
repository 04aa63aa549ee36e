"""Emits finished spans as newline-delimited JSON."""

import sys
from typing import Any, TextIO, cast

from .core import Attributes, Span, TelemetryStats
from .formatters import dumps_json
from .spans import RecordedEvent, RecordingSpan


def _event_record(event: RecordedEvent) -> dict[str, Any]:
    record: dict[str, Any] = {"time_ns": event.time_ns, "name": event.name}
    if event.attributes:
        record["attributes"] = event.attributes
    if event.body is not None:
        record["body"] = event.body
    return record


def serialize_span(span: RecordingSpan) -> dict[str, Any]:
    """One NDJSON object; optional keys appear only when set."""
    duration = span.duration_ns
    if duration is None:
        raise RuntimeError("JsonTracer can only serialize finished spans")
    optional = {
        "parent_id": None if span.parent_id is None else str(span.parent_id),
        "error": span.error,
        "attributes": span.attributes,
        "events": [_event_record(e) for e in span.events] if span.events else None,
    }
    return {
        "span_id": str(span.id),
        "trace_id": str(span.trace_id),
        "name": span.name,
        "start_ns": span.start_ns,
        "end_ns": span.end_ns,
        "duration_ns": duration,
        "status": "error" if span.failed else "ok",
    } | {key: value for key, value in optional.items() if value}


class JsonTracer:
    """NDJSON sink: one object per finished span, written when the span ends.

    A span that fails to serialize is dropped and counted in `stats()`.
    """

    __slots__ = ("_entered", "_errors", "_flush_each", "_last_error", "_output", "_writer_errors")

    def __init__(self, output: TextIO | None = None, *, flush_each: bool = True) -> None:
        self._output: TextIO = output if output is not None else sys.stderr
        self._flush_each = flush_each
        self._entered = False
        self._errors = 0
        self._writer_errors = 0
        self._last_error: str | None = None

    def __enter__(self) -> JsonTracer:
        self._entered = True
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self._entered = False
        try:
            self._output.flush()
        except Exception as exc:
            self._record_writer_error(exc)

    def create(
        self, name: str, attributes: Attributes | None = None, /, *, parent: Span | None = None
    ) -> RecordingSpan:
        if not self._entered:
            raise RuntimeError("JsonTracer must be entered before creating spans.")
        return RecordingSpan.open(self, name, attributes, parent)

    def on_end(self, span: Span) -> None:
        record = cast(RecordingSpan, span)
        try:
            line = dumps_json(serialize_span(record))
        except Exception as exc:
            self._errors += 1
            self._emit_stderr(
                f"json tracer serialization error for span {record.name!r}; "
                f"span omitted: {type(exc).__name__}: {exc}"
            )
            return
        try:
            self._output.write(line + "\n")
            if self._flush_each:
                self._output.flush()
        except Exception as exc:
            self._record_writer_error(exc)

    def stats(self) -> TelemetryStats:
        return TelemetryStats(
            serialization_error_count=self._errors,
            writer_error_count=self._writer_errors,
            last_writer_error=self._last_error,
        )

    def _record_writer_error(self, exc: Exception) -> None:
        self._writer_errors += 1
        self._last_error = f"{type(exc).__name__}: {exc}"

    def _emit_stderr(self, message: str) -> None:
        try:
            sys.stderr.write(f"[qpsse] {message}\n")
            sys.stderr.flush()
        except Exception:
            pass
