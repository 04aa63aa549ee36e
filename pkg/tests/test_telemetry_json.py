import io
import json
from fractions import Fraction

from qpsse.telemetry import TelemetryStats
from qpsse.telemetry.json import JsonTracer


class BrokenWriteOutput(io.StringIO):
    def write(self, s: str) -> int:
        raise OSError("closed collector")


def test_json_tracer_writes_each_span_when_it_ends() -> None:
    output = io.StringIO()
    with JsonTracer(output) as tracer, tracer.create("sweep") as sweep:
        with sweep.step("solve", {"eps": "1/10"}) as span:
            span.attr("leader_value", Fraction(52, 15))
        assert len(output.getvalue().splitlines()) == 1

    child, root = (json.loads(line) for line in output.getvalue().splitlines())
    assert child["attributes"] == {"eps": "1/10", "leader_value": "52/15"}
    assert root["name"] == "sweep"


def test_json_tracer_counts_write_errors() -> None:
    tracer = JsonTracer(BrokenWriteOutput())
    with tracer, tracer.create("solve"):
        pass

    assert tracer.stats() == TelemetryStats(
        writer_error_count=1, last_writer_error="OSError: closed collector"
    )


def test_json_tracer_skips_non_serializable_span(capsys) -> None:
    output = io.StringIO()
    tracer = JsonTracer(output)

    cyclical: dict[str, object] = {}
    cyclical["self"] = cyclical

    with tracer:
        with tracer.create("bad") as span:
            span.attr("key", cyclical)
        with tracer.create("good") as span:
            span.attr("ok", True)

    assert tracer.stats().serialization_error_count == 1
    assert "json tracer serialization error" in capsys.readouterr().err
    lines = [json.loads(line) for line in output.getvalue().splitlines() if line.strip()]
    assert [line["name"] for line in lines] == ["good"]


def test_json_tracer_must_be_entered() -> None:
    tracer = JsonTracer(io.StringIO())
    try:
        tracer.create("solve")
    except RuntimeError as exc:
        assert "entered" in str(exc)
    else:
        raise AssertionError("create() outside the tracer context must fail")
