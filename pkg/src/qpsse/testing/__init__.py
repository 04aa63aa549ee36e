"""Test support: a recording tracer for asserting on solver spans."""

from qpsse.testing.tracer import TelemetryEvent, TelemetrySpan, TestTracer

__all__ = ["TelemetryEvent", "TelemetrySpan", "TestTracer"]
