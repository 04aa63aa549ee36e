"""TTY tracer tests.

Formatting is verified through `TTYRenderer` on hand-built `RecordingSpan`
records; the tracer lifecycle through its context manager with an injected
`out` stream.
"""

import io
from uuid import UUID, uuid7

from qpsse.telemetry.noop import NoOpTracer
from qpsse.telemetry.spans import RecordedEvent, RecordingSpan
from qpsse.telemetry.tty import TTYRenderer, TTYTracer, fmt_duration

_NOOP = NoOpTracer()
_T0 = 1_700_000_000 * 1_000_000_000


def make_span(
    name: str = "solve",
    *,
    parent: RecordingSpan | None = None,
    start_ns: int = _T0,
    end_ns: int | None = _T0 + 5_000_000,
    error: str | None = None,
    attributes: dict | None = None,
    events: list[RecordedEvent] | None = None,
) -> RecordingSpan:
    span_id = uuid7()
    return RecordingSpan(
        id=span_id,
        tracer=_NOOP,
        trace_id=span_id if parent is None else parent.trace_id,
        parent_id=None if parent is None else parent.id,
        name=name,
        start_ns=start_ns,
        end_ns=end_ns,
        error=error,
        attributes=attributes,
        events=events,
    )


def render(span: RecordingSpan, *, children: dict[UUID, list[RecordingSpan]] | None = None) -> str:
    return TTYRenderer(children or {}, file=io.StringIO()).tree(span)


class TestDurations:
    def test_units(self):
        assert fmt_duration(500_000) == "500 us"
        assert fmt_duration(5_000_000) == "5.0 ms"
        assert fmt_duration(2_500_000_000) == "2.50 s"
        assert fmt_duration(125_000_000_000) == "2:05 min"


class TestTTYRenderer:
    def test_header_and_sorted_attributes(self):
        span = make_span(attributes={"lp.solves": 4, "bnb.nodes": 2})
        lines = render(span).splitlines()
        assert lines[0] == "solve 5.0 ms"
        assert lines[1].strip().startswith("bnb.nodes:")
        assert lines[2].strip().startswith("lp.solves:")

    def test_in_progress_span_shows_ellipsis(self):
        assert "…" in render(make_span(end_ns=None))

    def test_failed_span_shows_error(self):
        assert "[ε is too large]" in render(make_span(error="ε is too large"))

    def test_events_and_children_in_start_order(self):
        root = make_span(
            "sweep",
            end_ns=_T0 + 10_000_000,
            events=[RecordedEvent(_T0 + 3_000_000, "verify.lemma5", {"first_passing": 0})],
        )
        early = make_span("solve", parent=root, start_ns=_T0 + 1_000_000, end_ns=_T0 + 2_000_000)
        late = make_span(
            "solve",
            parent=root,
            start_ns=_T0 + 4_000_000,
            end_ns=_T0 + 6_000_000,
            events=[RecordedEvent(_T0 + 5_000_000, "bnb.incumbent", {"value": "52/15"}, body="found")],
        )
        text = render(root, children={root.id: [late, early]})
        lines = text.splitlines()
        assert [ln.strip().split()[0] for ln in lines] == [
            "sweep",
            "solve",
            "verify.lemma5",
            "solve",
            "bnb.incumbent",
            "found",
        ]
        assert "value=52/15" in text
        assert lines[-1].startswith("      ")


class TestTracerLifecycle:
    def test_root_prints_with_its_subtree(self):
        output = io.StringIO()
        with TTYTracer(out=output) as tracer, tracer.create("sweep", {"mode": "qpsse-anytime"}) as sweep:
            with sweep.step("solve", {"eps": "1/10"}):
                pass
            assert output.getvalue() == ""

        text = output.getvalue()
        assert text.index("sweep") < text.index("solve")
        assert "mode:" in text and "eps:" in text

    def test_open_roots_are_not_printed(self):
        output = io.StringIO()
        with TTYTracer(out=output) as tracer:
            tracer.create("sweep").start()
        assert output.getvalue() == ""
