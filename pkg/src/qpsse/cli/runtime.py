"""CLI commands: solve, generate, matrices, validate.

Every command raises `CliError` for bad flags and lets `QpsseError` through;
`qpsse.cli.main` maps both to exit codes. Results go to files or stdout,
telemetry goes to the tracer.
"""

import time
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Literal

from qpsse.benchmarks import (
    GAME_NAMES,
    SearchGameConfig,
    gen_fig1a_shape,
    gen_goofspiel3,
    gen_observation1_game,
    gen_search_game,
)
from qpsse.cli.errors import CliError
from qpsse.cli.term import echo, style
from qpsse.config import SolverSettings
from qpsse.exceptions import FormatError, QpsseError
from qpsse.game import GameTree, dumps_game, load_game, require_perfect_recall
from qpsse.numeric import as_float_text, format_rational, parse_rational
from qpsse.perturbation import (
    PerturbationScheme,
    load_scheme,
    miltersen_scheme,
    require_valid_scheme,
)
from qpsse.reports import write_solution, write_sweep_csv
from qpsse.sefce import AnytimeRun, RowStatus, anytime_qpsse, solve_unperturbed, validate_schedule
from qpsse.seqform import SeqFormMatrices, build_matrices, dump_matrices
from qpsse.telemetry import Span
from qpsse.telemetry.core import Tracer

type Mode = Literal["sse-unperturbed", "sse-perturbed", "qpsse-anytime"]

MODES: tuple[Mode, ...] = ("sse-unperturbed", "sse-perturbed", "qpsse-anytime")


@dataclass(frozen=True, slots=True)
class RunConfig:
    game: Path
    mode: Mode = "qpsse-anytime"
    scheme: str = "miltersen"
    schedule: tuple[Fraction, ...] = ()
    out_solution: Path | None = None
    out_csv: Path | None = None
    timeout_seconds: float | None = None
    timings: bool = True


def parse_schedule(text: str) -> tuple[Fraction, ...]:
    """`1/10,1/100,1/1000` → strictly decreasing rationals in (0, 1]."""
    items = [item for item in text.split(",") if item.strip()]
    try:
        values = tuple(parse_rational(item) for item in items)
    except FormatError as exc:
        raise CliError(f"--eps-schedule: {exc.message}") from exc
    try:
        return validate_schedule(values)
    except QpsseError as exc:
        raise CliError(str(exc)) from exc


def build_run_config(
    *,
    game: str,
    mode: str,
    scheme: str,
    eps: str | None,
    eps_schedule: str | None,
    out_solution: str | None,
    out_csv: str | None,
    timeout_seconds: float | None,
    timings: bool,
) -> RunConfig:
    if mode not in MODES:
        raise CliError(f"--mode must be one of {', '.join(MODES)}")
    if eps is not None and eps_schedule is not None:
        raise CliError("Pass either --eps or --eps-schedule, not both.")
    schedule: tuple[Fraction, ...] = ()
    if eps is not None:
        schedule = parse_schedule(eps)
    elif eps_schedule is not None:
        schedule = parse_schedule(eps_schedule)
    match mode:
        case "sse-perturbed" if len(schedule) != 1:
            raise CliError("--mode sse-perturbed needs exactly one ε (--eps 1/100).")
        case "qpsse-anytime" if not schedule:
            raise CliError("--mode qpsse-anytime needs --eps-schedule (for example 1/10,1/100,1/1000).")
        case "sse-unperturbed" if schedule:
            raise CliError("--mode sse-unperturbed takes no ε.")
        case _:
            pass
    if timeout_seconds is not None and timeout_seconds <= 0:
        raise CliError("--timeout-seconds must be positive.")
    return RunConfig(
        game=Path(game),
        mode=mode,  # type: ignore[arg-type]
        scheme=scheme,
        schedule=schedule,
        out_solution=None if out_solution is None else Path(out_solution),
        out_csv=None if out_csv is None else Path(out_csv),
        timeout_seconds=timeout_seconds,
        timings=timings,
    )


def resolve_scheme(spec: str, m: SeqFormMatrices) -> PerturbationScheme:
    """`miltersen` or a scheme file path; the scheme must pass validation."""
    scheme = miltersen_scheme(m) if spec == "miltersen" else load_scheme(spec, m)
    require_valid_scheme(scheme, m)
    return scheme


def _print_rows(run: AnytimeRun) -> None:
    echo(style(f"unperturbed SSE value {format_rational(run.baseline.leader_value)}", "bold"))
    for row in run.rows:
        eps = format_rational(row.eps)
        if row.status is RowStatus.OK and row.result is not None and row.loss is not None:
            echo(
                f"ε={eps}  value={format_rational(row.result.leader_value)}"
                f"  loss={format_rational(row.loss)} (~{as_float_text(row.loss, 6)})"
                f"  nodes={row.stats.nodes}  {row.seconds:.2f}s"
            )
        else:
            echo(style(f"ε={eps}  {row.status.value}", "yellow"), f"  nodes={row.stats.nodes}")


def run(cfg: RunConfig, *, settings: SolverSettings, tracer: Tracer) -> int:
    """The `solve` command. A single-ε solve that did not finish re-raises its error."""
    game = load_game(cfg.game)
    require_perfect_recall(game)
    m = build_matrices(game)
    with tracer:
        with tracer.create("sweep", {"game": str(cfg.game), "mode": cfg.mode}) as sweep:
            if cfg.mode == "sse-unperturbed":
                return _run_unperturbed(cfg, m, settings, sweep)
            scheme = resolve_scheme(cfg.scheme, m)
            sweep.attr("scheme", scheme.name)
            outcome = anytime_qpsse(
                m,
                scheme,
                cfg.schedule,
                settings=settings,
                span=sweep,
                timeout_seconds=cfg.timeout_seconds,
                mode=cfg.mode,
            )
    _print_rows(outcome)
    if cfg.out_csv is not None:
        write_sweep_csv(cfg.out_csv, outcome, timings=cfg.timings)
    final = outcome.final
    if cfg.out_solution is not None and final is not None and final.result is not None:
        write_solution(
            cfg.out_solution,
            final.result,
            mode=cfg.mode,
            loss=final.loss,
            seconds=final.seconds if cfg.timings else None,
        )
    if cfg.mode == "sse-perturbed" and final is None:
        error = outcome.rows[0].error
        if error is not None:
            raise error
    return 0


def _run_unperturbed(cfg: RunConfig, m: SeqFormMatrices, settings: SolverSettings, sweep: Span) -> int:
    started = time.monotonic()
    deadline = None if cfg.timeout_seconds is None else started + cfg.timeout_seconds
    with sweep.step("solve", {"eps": "0", "mode": cfg.mode}) as child:
        result = solve_unperturbed(m, settings=settings, span=child, deadline=deadline)
    seconds = time.monotonic() - started
    echo(
        style(f"SSE value {format_rational(result.leader_value)}", "bold"),
        f"  nodes={result.stats.nodes}  {seconds:.2f}s",
    )
    if cfg.out_solution is not None:
        write_solution(
            cfg.out_solution, result, mode=cfg.mode, seconds=seconds if cfg.timings else None
        )
    return 0


def generate(name: str, *, horizon: int, settings: SolverSettings) -> GameTree:
    match name:
        case "goofspiel3":
            return gen_goofspiel3()
        case "search":
            return gen_search_game(
                SearchGameConfig(horizon=horizon, timeout_payoff=settings.timeout_payoff)
            )
        case "observation1":
            return gen_observation1_game()
        case "fig1a":
            return gen_fig1a_shape()
        case _:
            raise CliError(f"Unknown game {name!r}; choose one of {', '.join(GAME_NAMES)}.")


def write_or_echo(text: str, out: str | None) -> None:
    if out is None:
        echo(text, end="")
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"Cannot write {out!r}: {exc.strerror}") from exc


def run_generate(name: str, *, horizon: int, out: str | None, settings: SolverSettings) -> int:
    write_or_echo(dumps_game(generate(name, horizon=horizon, settings=settings)), out)
    return 0


def run_matrices(game_path: str, *, out: str | None) -> int:
    write_or_echo(dump_matrices(build_matrices(load_game(game_path))), out)
    return 0


def run_validate(game_path: str, schemes: Sequence[str]) -> int:
    game = load_game(game_path)
    require_perfect_recall(game)
    echo(f"{game_path}: {len(game)} nodes, perfect recall ok")
    if schemes:
        m = build_matrices(game)
        for spec in schemes:
            scheme = resolve_scheme(spec, m)
            echo(f"{spec}: scheme {scheme.name} ok")
    return 0
