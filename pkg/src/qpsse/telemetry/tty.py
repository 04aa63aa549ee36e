"""Span trees on a terminal for interactive runs.

Finished root spans print as an indented tree with attributes and events,
children ordered by start time. `TTYRenderer` is the pure span-to-string
layer; `TTYTracer` owns the stream.
"""

import sys
from collections.abc import Mapping
from itertools import chain
from typing import Any, TextIO, cast
from uuid import UUID

from qpsse._terminal import styled

from .core import Attributes, Span, TelemetryStats
from .spans import RecordedEvent, RecordingSpan


def fmt_duration(ns: int) -> str:
    if ns < 1_000_000:
        return f"{ns / 1e3:.0f} us"
    ms = ns / 1e6
    if ms < 1000:
        return f"{ms:.1f} ms"
    if ms < 60_000:
        return f"{ms / 1000:.2f} s"
    minutes, seconds = divmod(int(ms / 1000), 60)
    return f"{minutes}:{seconds:02d} min"


class TTYRenderer:
    """Pure rendering: no I/O. `children` maps a parent id to its finished spans."""

    __slots__ = ("_children", "_file")

    def __init__(
        self, children: Mapping[UUID, list[RecordingSpan]], *, file: TextIO | None = None
    ) -> None:
        self._children = children
        self._file = file

    def _style(self, text: str, style: str) -> str:
        return styled(text, style, file=self._file)

    def header(self, span: RecordingSpan, indent: int) -> str:
        status = "red" if span.failed else "green"
        dur = "…" if span.duration_ns is None else fmt_duration(span.duration_ns)
        line = "  " * indent + self._style(span.name, "bold") + " " + self._style(dur, "dim")
        if span.failed:
            line += " " + self._style(f"[{span.error}]", status)
        return line

    def attribute_lines(self, attrs: Mapping[str, Any], indent: int) -> list[str]:
        width = max(len(k) for k in attrs) + 1
        base = "  " * indent
        return [
            base + self._style(f"{key}:".ljust(width), "dim") + " " + str(attrs[key])
            for key in sorted(attrs)
        ]

    def event_lines(self, event: RecordedEvent, indent: int) -> list[str]:
        base = "  " * indent
        style = "red" if event.name == "exception" else "cyan"
        line = base + self._style(event.name, style)
        if event.attributes:
            line += "  " + " ".join(f"{k}={v}" for k, v in event.attributes.items())
        lines = [line]
        if event.body:
            lines.extend(base + "  " + self._style(ln, "dim") for ln in event.body.splitlines())
        return lines

    def tree(self, span: RecordingSpan, indent: int = 0) -> str:
        lines = [self.header(span, indent)]
        if span.attributes:
            lines.extend(self.attribute_lines(span.attributes, indent + 1))
        items = sorted(
            chain(
                ((e.time_ns, 0, e) for e in span.events or ()),
                ((c.start_ns or 0, 1, c) for c in self._children.get(span.id, ())),
            ),
            key=lambda item: (item[0], item[1]),
        )
        for _, _, item in items:
            if isinstance(item, RecordedEvent):
                lines.extend(self.event_lines(item, indent + 1))
            else:
                lines.append(self.tree(item, indent + 1))
        return "\n".join(lines)


class TTYTracer:
    """Prints each finished root span with its subtree; `stats()` is always zero."""

    __slots__ = ("_children", "_entered", "_out")

    def __init__(self, *, out: TextIO | None = None) -> None:
        self._out = out if out is not None else sys.stderr
        self._children: dict[UUID, list[RecordingSpan]] = {}
        self._entered = False

    def __enter__(self) -> TTYTracer:
        self._entered = True
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self._entered = False
        self._out.flush()

    def create(
        self, name: str, attributes: Attributes | None = None, /, *, parent: Span | None = None
    ) -> RecordingSpan:
        if not self._entered:
            raise RuntimeError("TTYTracer must be entered before creating spans.")
        return RecordingSpan.open(self, name, attributes, parent)

    def on_end(self, span: Span) -> None:
        record = cast(RecordingSpan, span)
        if record.parent_id is not None:
            self._children.setdefault(record.parent_id, []).append(record)
            return
        text = TTYRenderer(self._children, file=self._out).tree(record)
        self._out.write(text + "\n")
        self._out.flush()
        self._forget(record.id)

    def _forget(self, span_id: UUID) -> None:
        for child in self._children.pop(span_id, ()):
            self._forget(child.id)

    def stats(self) -> TelemetryStats:
        return TelemetryStats()
