"""qpsse CLI entry point: argparse wiring and command dispatch."""

import argparse
import sys

from qpsse import __version__
from qpsse.benchmarks import GAME_NAMES
from qpsse.cli.errors import CliError
from qpsse.cli.help import GENERATE_EPILOG, ROOT_EPILOG, SOLVE_EPILOG
from qpsse.config import PIVOT_RULES, VERIFY_LEVELS
from qpsse.exceptions import QpsseError

from . import term
from .env import solver_settings_from_env, tracer_from_env
from .runtime import (
    MODES,
    build_run_config,
    run,
    run_generate,
    run_matrices,
    run_validate,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpsse",
        description="Exact strong Stackelberg equilibria of perturbed extensive-form games.",
        epilog=ROOT_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser(
        "solve",
        help="Solve a game for one ε, an ε schedule, or the unperturbed baseline.",
        description="Solve a game for one ε, an ε schedule, or the unperturbed baseline.",
        epilog=SOLVE_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    solve_p.add_argument("--game", required=True, metavar="PATH", help="Game file")
    solve_p.add_argument("--mode", choices=MODES, default="qpsse-anytime")
    solve_p.add_argument(
        "--scheme",
        default="miltersen",
        metavar="miltersen|PATH",
        help="Perturbation scheme: the e^|σ| default or a scheme file",
    )
    solve_p.add_argument("--eps", metavar="RATIONAL", help="Single ε for sse-perturbed")
    solve_p.add_argument(
        "--eps-schedule",
        metavar="LIST",
        help="Strictly decreasing comma-separated ε values for qpsse-anytime",
    )
    solve_p.add_argument("--out-solution", metavar="PATH", help="Solution file of the last solved ε")
    solve_p.add_argument("--out-csv", metavar="PATH", help="One CSV row per ε")
    solve_p.add_argument("--verify", choices=VERIFY_LEVELS, help="Overrides QPSSE_VERIFY")
    solve_p.add_argument("--pivot-rule", choices=PIVOT_RULES, help="Overrides QPSSE_PIVOT_RULE")
    solve_p.add_argument(
        "--timeout-seconds",
        type=float,
        metavar="SECONDS",
        help="Wall clock per ε and for the baseline; timed-out ε rows are marked and the schedule continues",
    )
    solve_p.add_argument(
        "--no-timings",
        dest="timings",
        action="store_false",
        help="Leave wall times out of output files so reruns are byte-identical",
    )

    gen_p = sub.add_parser(
        "generate",
        help="Write a benchmark game file.",
        description="Write a benchmark game file.",
        epilog=GENERATE_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    gen_p.add_argument("name", choices=GAME_NAMES)
    gen_p.add_argument("--horizon", type=int, default=2, help="Search game time steps (default 2)")
    gen_p.add_argument("--out", metavar="PATH", help="Output file (default stdout)")

    mat_p = sub.add_parser(
        "matrices",
        help="Dump the sequence-form matrices of a game.",
        description="Dump F, f and U of a game with exact rationals.",
    )
    mat_p.add_argument("--game", required=True, metavar="PATH")
    mat_p.add_argument("--out", metavar="PATH", help="Output file (default stdout)")

    val_p = sub.add_parser(
        "validate",
        help="Check perfect recall and perturbation schemes.",
        description="Check a game for perfect recall and, optionally, schemes against it.",
    )
    val_p.add_argument("--game", required=True, metavar="PATH")
    val_p.add_argument(
        "--scheme",
        dest="schemes",
        action="append",
        default=[],
        metavar="miltersen|PATH",
        help="Scheme to validate; repeatable",
    )
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    match args.command:
        case "solve":
            cfg = build_run_config(
                game=args.game,
                mode=args.mode,
                scheme=args.scheme,
                eps=args.eps,
                eps_schedule=args.eps_schedule,
                out_solution=args.out_solution,
                out_csv=args.out_csv,
                timeout_seconds=args.timeout_seconds,
                timings=args.timings,
            )
            settings = solver_settings_from_env()
            overrides = {
                name: value
                for name, value in (("verify", args.verify), ("pivot_rule", args.pivot_rule))
                if value is not None
            }
            if overrides:
                settings = settings.replace(**overrides)
            return run(cfg, settings=settings, tracer=tracer_from_env())
        case "generate":
            if args.horizon < 1:
                raise CliError("--horizon must be at least 1.")
            return run_generate(
                args.name, horizon=args.horizon, out=args.out, settings=solver_settings_from_env()
            )
        case "matrices":
            return run_matrices(args.game, out=args.out)
        case "validate":
            return run_validate(args.game, args.schemes)
        case _:
            return 2


def main(argv: list[str] | None = None) -> int:
    """Run the qpsse CLI and return a process exit code.

    `argv` defaults to `sys.argv[1:]`. Returns `0` on success, `2` for bad
    input (argparse usage errors, `CliError`, invalid games or schemes), `3`
    for infeasible or unsupported instances, `4` for failed certificates and
    timeouts, and `130` after `KeyboardInterrupt`. Failures print one JSON
    report line on stderr, then the human message.
    """
    argv = sys.argv[1:] if argv is None else argv
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2

    try:
        return _dispatch(args)
    except CliError as e:
        term.report_error(e.report(), str(e))
        return e.exit_code
    except QpsseError as e:
        term.report_error(e.report(), str(e))
        return e.exit_code
    except KeyboardInterrupt:
        term.report_interrupt()
        return 130


if __name__ == "__main__":
    raise SystemExit(main())
