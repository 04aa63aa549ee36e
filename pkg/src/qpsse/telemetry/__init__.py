"""
Telemetry sinks and span types.

Solver entry points take a `span` (default: the shared no-op span). Import
tracer backends from their modules when wiring a process:

```python
from qpsse.telemetry.json import JsonTracer
from qpsse.telemetry.tty import TTYTracer
from qpsse.telemetry.noop import NoOpTracer
```

The CLI reads `QPSSE_TRACER` via `qpsse.cli.env.tracer_from_env()`.
"""

from .core import EventBody, Span, TelemetryStats, Tracer
from .noop import NOOP_SPAN
from .spans import NoOpSpan, RecordedEvent, RecordingSpan

__all__ = [
    "NOOP_SPAN",
    "EventBody",
    "NoOpSpan",
    "RecordedEvent",
    "RecordingSpan",
    "Span",
    "TelemetryStats",
    "Tracer",
]
