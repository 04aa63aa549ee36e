"""Tests for shared telemetry formatting helpers."""

from fractions import Fraction
from uuid import UUID

import pytest

from qpsse.exceptions import FormatError
from qpsse.numeric import parse_rational
from qpsse.telemetry.formatters import (
    dumps_json,
    format_exception_for_telemetry,
    serialize_event_body,
)


class TestFormatExceptionForTelemetry:
    def test_exception_without_traceback_formats_message_only(self):
        text = format_exception_for_telemetry(ValueError("plain"))
        assert text == "ValueError: plain\n"

    def test_caller_frames_are_kept(self):
        def caller() -> None:
            raise RuntimeError("inner boom")

        with pytest.raises(RuntimeError) as exc_info:
            caller()
        text = format_exception_for_telemetry(exc_info.value)
        assert "Traceback (most recent call last):" in text
        assert "caller" in text
        assert text.endswith("RuntimeError: inner boom\n")

    def test_frames_inside_qpsse_are_hidden(self):
        def read_eps() -> None:
            parse_rational("one tenth")

        with pytest.raises(FormatError) as exc_info:
            read_eps()
        text = format_exception_for_telemetry(exc_info.value)
        assert "read_eps" in text
        assert "qpsse/numeric.py" not in text.replace("\\", "/")


class TestSerializeEventBody:
    def test_string_passes_through(self):
        assert serialize_event_body("pivot log") == "pivot log"

    def test_exception_is_formatted(self):
        assert serialize_event_body(ValueError("x")) == "ValueError: x\n"

    def test_other_objects_are_rejected(self):
        with pytest.raises(TypeError, match="structured data in attributes"):
            serialize_event_body({"nodes": 3})  # type: ignore[arg-type]


class TestJsonHelpers:
    def test_compact_and_unicode(self):
        assert dumps_json({"eps": "1/10", "msg": "ε"}) == '{"eps":"1/10","msg":"ε"}'

    def test_fractions_export_exactly(self):
        assert dumps_json({"value": Fraction(52, 15)}) == '{"value":"52/15"}'
        uid = UUID(int=1)
        assert dumps_json({"id": uid}) == f'{{"id":"{uid}"}}'
