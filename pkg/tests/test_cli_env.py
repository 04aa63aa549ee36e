"""Tests for QPSSE_* environment handling in the CLI."""

import sys
import types
from typing import Any, cast

import pytest

from qpsse.cli.env import solver_settings_from_env, tracer_from_env
from qpsse.cli.errors import CliError
from qpsse.telemetry.json import JsonTracer
from qpsse.telemetry.noop import NoOpTracer
from qpsse.telemetry.tty import TTYTracer
from qpsse.testing import TestTracer


def test_tracer_from_env_defaults_to_auto_tty_or_json(monkeypatch) -> None:
    monkeypatch.delenv("QPSSE_TRACER", raising=False)
    monkeypatch.setattr("sys.stderr.isatty", lambda: True)
    assert isinstance(tracer_from_env(), TTYTracer)

    monkeypatch.setattr("sys.stderr.isatty", lambda: False)
    assert isinstance(tracer_from_env(), JsonTracer)


@pytest.mark.parametrize(
    ("value", "cls"),
    [("tty", TTYTracer), ("JSON", JsonTracer), ("noop", NoOpTracer)],
)
def test_tracer_from_env_builtin_names(monkeypatch, value: str, cls: type) -> None:
    monkeypatch.setenv("QPSSE_TRACER", value)
    assert isinstance(tracer_from_env(), cls)


def test_tracer_from_env_custom_factory(monkeypatch) -> None:
    module = types.ModuleType("good_tracer_module")
    cast(Any, module).factory = TestTracer
    monkeypatch.setitem(sys.modules, module.__name__, module)
    monkeypatch.setenv("QPSSE_TRACER", "good_tracer_module:factory")

    assert isinstance(tracer_from_env(), TestTracer)


def test_tracer_from_env_custom_invalid_return_raises(monkeypatch) -> None:
    module = types.ModuleType("bad_tracer_module")

    def factory():
        return object()

    cast(Any, module).factory = factory
    monkeypatch.setitem(sys.modules, module.__name__, module)
    monkeypatch.setenv("QPSSE_TRACER", "bad_tracer_module:factory")

    with pytest.raises(CliError, match="must return a Tracer"):
        tracer_from_env()


def test_tracer_from_env_factory_failure_raises(monkeypatch) -> None:
    module = types.ModuleType("boom_tracer_module")

    def factory():
        raise RuntimeError("boom")

    cast(Any, module).factory = factory
    monkeypatch.setitem(sys.modules, module.__name__, module)
    monkeypatch.setenv("QPSSE_TRACER", "boom_tracer_module:factory")

    with pytest.raises(CliError, match="failed: boom"):
        tracer_from_env()


@pytest.mark.parametrize(
    ("env_name", "value", "fragment"),
    [
        ("QPSSE_PIVOT_RULE", "nope", "QPSSE_PIVOT_RULE"),
        ("QPSSE_MAX_BNB_NODES", "0", "max_bnb_nodes"),
        ("QPSSE_HYBRID_DEGENERATE_LIMIT", "x", "QPSSE_HYBRID_DEGENERATE_LIMIT"),
    ],
)
def test_invalid_solver_env_raises_cli_error(monkeypatch, env_name, value, fragment) -> None:
    monkeypatch.setenv(env_name, value)
    with pytest.raises(CliError, match=fragment):
        solver_settings_from_env()
