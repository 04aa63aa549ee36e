"""
ε-sweep timings for the bundled benchmark games.

Run from the project root:

    uv run benchmarks/sweep.py
    uv run benchmarks/sweep.py --pivots   # Bland against the hybrid rule
    uv run benchmarks/sweep.py search2    # one game only

Each game is solved unperturbed and then for every ε in SCHEDULE. Times are
best-of-N seconds per full sweep; loss is the exact distance to the
unperturbed SSE value. Verification is off so only the solver is timed;
after timing, `check_trend` fails the run when the losses do not shrink to
within LOSS_TOLERANCE or the final follower choice is no best response.
"""

import sys
import time
from collections.abc import Callable
from fractions import Fraction

from qpsse.benchmarks import SearchGameConfig, gen_goofspiel3, gen_search_game
from qpsse.bestresponse import check_I_best_response
from qpsse.config import SolverSettings
from qpsse.game import GameTree
from qpsse.numeric import as_float_text, format_rational
from qpsse.perturbation import miltersen_scheme
from qpsse.sefce import AnytimeRun, RowStatus, anytime_qpsse
from qpsse.seqform import SeqFormMatrices, build_matrices

SCHEDULE = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))
LOSS_TOLERANCE = Fraction(1, 100)

GAMES: dict[str, Callable[[], GameTree]] = {
    "goofspiel3": gen_goofspiel3,
    "search1": lambda: gen_search_game(SearchGameConfig(horizon=1)),
    "search2": lambda: gen_search_game(SearchGameConfig(horizon=2)),
}


def sweep(m: SeqFormMatrices, settings: SolverSettings, repeat: int = 3) -> tuple[float, AnytimeRun]:
    scheme = miltersen_scheme(m)
    best = float("inf")
    run: AnytimeRun | None = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        run = anytime_qpsse(m, scheme, SCHEDULE, settings=settings)
        best = min(best, time.perf_counter() - t0)
    assert run is not None
    return best, run


def check_trend(m: SeqFormMatrices, run: AnytimeRun) -> list[str]:
    """
    Problems with the sweep's convergence; empty when the trend holds.

    The last loss must not exceed the first and must lie within
    LOSS_TOLERANCE, and the last ε's pure follower choice must be a best
    response at every follower infoset.
    """
    if any(row.status is not RowStatus.OK for row in run.rows):
        return ["not every ε solved"]
    first, last = run.rows[0], run.rows[-1]
    assert first.loss is not None and last.loss is not None and last.result is not None
    problems: list[str] = []
    if last.loss > first.loss:
        problems.append(f"loss grew from {format_rational(first.loss)} to {format_rational(last.loss)}")
    if abs(last.loss) > LOSS_TOLERANCE:
        problems.append(f"loss {format_rational(last.loss)} at ε={format_rational(last.eps)}")
    pi_l = last.result.leader_strategy()
    pi_f = last.result.limit_follower_strategy()
    for label in m.follower.infosets:
        if check_I_best_response(m, pi_l, pi_f, label) is not None:
            problems.append(f"follower choice at {label} is no best response")
    return problems


def report(name: str, seconds: float, run: AnytimeRun, label: str = "") -> None:
    print(f"{name} {label}".rstrip() + f"  ({seconds:.3f} s, SSE {format_rational(run.baseline.leader_value)})")
    for row in run.rows:
        if row.status is not RowStatus.OK or row.loss is None:
            print(f"  ε={format_rational(row.eps):<8} {row.status.value}")
            continue
        print(
            f"  ε={format_rational(row.eps):<8} loss={as_float_text(row.loss, 6):<12}"
            f" nodes={row.stats.nodes:<5} lp={row.stats.lp_solves:<5} pivots={row.stats.lp_pivots}"
        )


def main(argv: list[str]) -> None:
    compare = "--pivots" in argv
    names = [arg for arg in argv if not arg.startswith("--")] or list(GAMES)
    unknown = [name for name in names if name not in GAMES]
    if unknown:
        raise SystemExit(f"unknown game(s): {', '.join(unknown)}; choose from {', '.join(GAMES)}")
    rules = ("bland", "hybrid") if compare else ("bland",)
    failed: list[str] = []
    for name in names:
        m = build_matrices(GAMES[name]())
        for rule in rules:
            settings = SolverSettings(pivot_rule=rule, verify="off")
            seconds, run = sweep(m, settings)
            report(name, seconds, run, f"[{rule}]" if compare else "")
            failed.extend(f"{name} [{rule}]: {problem}" for problem in check_trend(m, run))
    if failed:
        raise SystemExit("trend check failed:\n  " + "\n  ".join(failed))


if __name__ == "__main__":
    main(sys.argv[1:])
