"""Solver and telemetry configuration from `QPSSE_*` environment variables.

Library code reads settings with `qpsse.config.solver_settings_from_env`,
which raises `QpsseError`/`ValueError`; the CLI wrappers here turn those into
`CliError`.
"""

import sys
from collections.abc import Callable
from typing import cast

from qpsse._env import env_str
from qpsse.cli.errors import CliError
from qpsse.cli.imports import load_symbol
from qpsse.config import SolverSettings
from qpsse.config import solver_settings_from_env as _solver_settings_from_env
from qpsse.exceptions import QpsseError
from qpsse.telemetry.core import Tracer
from qpsse.telemetry.json import JsonTracer
from qpsse.telemetry.noop import NoOpTracer
from qpsse.telemetry.tty import TTYTracer


def tracer_from_env() -> Tracer:
    """Read `QPSSE_TRACER`.

    Built-in values: `auto` (TTY span trees when stderr is a TTY, else NDJSON
    on stderr), `tty`, `json`, `noop`, or `module:callable` for a factory
    that returns a `Tracer`.
    """
    effective = env_str("QPSSE_TRACER", "auto")
    match effective.lower():
        case "auto":
            return TTYTracer() if sys.stderr.isatty() else JsonTracer()
        case "tty":
            return TTYTracer()
        case "json":
            return JsonTracer()
        case "noop":
            return NoOpTracer()
        case _:
            pass

    loaded = load_symbol(effective, label="tracer")
    if not callable(loaded):
        raise CliError(f"Tracer '{effective}' must be callable.")
    try:
        tracer = cast(Callable[[], Tracer], loaded)()
    except Exception as exc:
        raise CliError(f"Tracer '{effective}' failed: {exc}") from exc
    for name in ("__enter__", "__exit__", "create", "on_end", "stats"):
        if not callable(getattr(tracer, name, None)):
            raise CliError(f"Tracer '{effective}' must return a Tracer (missing {name!r}).")
    return tracer


def solver_settings_from_env() -> SolverSettings:
    try:
        return _solver_settings_from_env()
    except (QpsseError, ValueError) as exc:
        raise CliError(str(exc)) from exc
