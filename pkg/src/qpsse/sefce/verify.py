"""Oracle cross-checks run under `verify="paranoid"` on small games."""

from fractions import Fraction
from typing import TYPE_CHECKING

from qpsse.bestresponse import best_response, commitment_lp, enumerate_choices, leakage_value
from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import SolverInvariantError
from qpsse.game import Player
from qpsse.perturbation import PerturbedInstance
from qpsse.telemetry import NOOP_SPAN, Span

if TYPE_CHECKING:
    from .extract import SseResult


def brute_force_sse_value(
    inst: PerturbedInstance, *, settings: SolverSettings = DEFAULT_SETTINGS
) -> Fraction:
    """Best commitment over every residual-pure follower plan."""
    best: Fraction | None = None
    for choice in enumerate_choices(inst.table(Player.FOLLOWER)):
        settled = commitment_lp(inst, choice, settings=settings)
        if settled is not None and (best is None or settled.value > best):
            best = settled.value
    if best is None:
        raise SolverInvariantError("no follower plan is a best response to any commitment")
    return best


def cross_check(
    result: SseResult,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
    span: Span = NOOP_SPAN,
) -> None:
    inst = result.inst
    oracle = brute_force_sse_value(inst, settings=settings)
    _, sol = best_response(inst, result.leader, settings=settings)
    best_follower = sol.require_optimal() + leakage_value(inst, result.leader)
    ok = oracle == result.leader_value and best_follower == result.follower_value
    span.event(
        "verify.oracle",
        {
            "ok": ok,
            "oracle_value": str(oracle),
            "leader_value": str(result.leader_value),
            "best_response_value": str(best_follower),
            "follower_value": str(result.follower_value),
        },
    )
    if not ok:
        raise SolverInvariantError(
            "branch-and-bound disagrees with the brute-force oracle",
            context={
                "oracle": str(oracle),
                "leader_value": str(result.leader_value),
                "best_response_value": str(best_follower),
                "follower_value": str(result.follower_value),
            },
        )
