"""
Branch-and-bound over follower recommendations.

Each node forces some follower infosets to a single recommended action and
solves the SEFCE LP with those forcings; the LP value bounds every SSE in
the node's subtree. Residual-pure solutions are extracted, everything else
branches on the shallowest infoset that still splits its mass. Nodes are
explored depth first, children in descending order of mass.
"""

import time
from collections.abc import Mapping
from dataclasses import dataclass, replace
from fractions import Fraction

from qpsse.bestresponse import check_theorem2, commitment_lp
from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import SolverInvariantError, SolveTimeout
from qpsse.game import Player
from qpsse.lp import LpSolution, solve
from qpsse.perturbation import PerturbedInstance, instantiate_unperturbed
from qpsse.seqform import RelevanceMap, SeqFormMatrices, relevance
from qpsse.telemetry import NOOP_SPAN, Span

from .extract import SseResult, is_residual_pure, try_extract
from .lp import SefceLP, build_sefce_lp
from .stats import BnBStats
from .verify import cross_check


@dataclass(frozen=True, slots=True)
class BnBNode:
    forced: Mapping[str, int]
    depth: int
    bound: Fraction | None = None

    def child(self, label: str, action: int, bound: Fraction) -> BnBNode:
        return BnBNode({**self.forced, label: action}, self.depth + 1, bound)


def _order_by_mass(masses: tuple[Fraction, ...]) -> tuple[int, ...]:
    return tuple(sorted(range(len(masses)), key=lambda a: (-masses[a], a)))


def branch_select(built: SefceLP, sol: LpSolution) -> tuple[str, tuple[int, ...]] | None:
    """Shallowest infoset with at least two recommended actions, and its actions by mass."""
    follower = built.inst.table(Player.FOLLOWER)
    best: tuple[int, int, str, tuple[Fraction, ...]] | None = None
    for order, label in enumerate(follower.infosets):
        masses = built.masses(sol.values, label)
        if sum(1 for x in masses if x > 0) < 2:
            continue
        key = (follower.infoset_depth(label), order)
        if best is None or key < best[:2]:
            best = (*key, label, masses)
    if best is None:
        return None
    return best[2], _order_by_mass(best[3])


def _fallback_select(built: SefceLP, sol: LpSolution) -> tuple[str, tuple[int, ...]] | None:
    follower = built.inst.table(Player.FOLLOWER)
    free = [label for label in follower.infosets if label not in built.forced]
    if not free:
        return None
    label = min(free, key=lambda lab: (follower.infoset_depth(lab), follower.infosets.index(lab)))
    return label, _order_by_mass(built.masses(sol.values, label))


def _settle(
    inst: PerturbedInstance, forced: Mapping[str, int], settings: SolverSettings, stats: BnBStats
) -> SseResult | None:
    """Best commitment inducing the fully forced follower plan, if any."""
    settled = commitment_lp(inst, forced, settings=settings)
    stats.lp_solves += 1
    if settled is None:
        return None
    stats.lp_pivots += settled.solution.pivots
    m = inst.matrices
    return SseResult(
        inst=inst,
        leader=settled.leader,
        follower=settled.follower,
        leader_value=settled.value,
        follower_value=m.payoff(Player.FOLLOWER, settled.leader.values, settled.follower.values),
        choice=dict(forced),
        certificate=settled.solution,
    )


def solve_sse(
    inst: PerturbedInstance,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
    span: Span = NOOP_SPAN,
    rel: RelevanceMap | None = None,
    stats: BnBStats | None = None,
    deadline: float | None = None,
) -> SseResult:
    """
    A strong Stackelberg equilibrium of Γ(ε).

    `deadline` is a `time.monotonic()` instant; past it the search raises
    `SolveTimeout` carrying the incumbent.
    """
    rel = rel if rel is not None else relevance(inst.matrices)
    stats = stats if stats is not None else BnBStats()
    incumbent: SseResult | None = None
    stack = [BnBNode({}, 0)]
    while stack:
        if deadline is not None and time.monotonic() > deadline:
            span.attrs(stats.as_attributes())
            raise SolveTimeout(
                "per-ε time limit reached",
                incumbent=incumbent,
                context={"eps": inst.eps_text(), "nodes": stats.nodes},
            )
        node = stack.pop()
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, node.depth)
        if settings.max_bnb_nodes is not None and stats.nodes > settings.max_bnb_nodes:
            raise SolverInvariantError(
                "branch-and-bound node cap exceeded",
                context={"max_bnb_nodes": settings.max_bnb_nodes, "eps": inst.eps_text()},
                help_text="Raise QPSSE_MAX_BNB_NODES or unset it for an exhaustive search.",
            )
        built = build_sefce_lp(inst, rel, node.forced)
        sol = solve(built.lp, settings=settings)
        stats.lp_solves += 1
        stats.lp_pivots += sol.pivots
        if not sol.is_optimal:
            if node.depth == 0:
                raise SolverInvariantError(
                    "root SEFCE LP is not solvable", context={"status": sol.status.value}
                )
            stats.pruned += 1
            continue
        value = sol.require_optimal()
        if incumbent is not None and value <= incumbent.leader_value:
            stats.pruned += 1
            continue

        if is_residual_pure(built, sol):
            found = try_extract(built, sol)
            if found is not None:
                incumbent = found
                span.event(
                    "bnb.incumbent", {"value": str(value), "node": stats.nodes, "depth": node.depth}
                )
                continue
            split = _fallback_select(built, sol)
            stats.fallbacks += 1
            if split is None:
                settled = _settle(inst, node.forced, settings, stats)
                if settled is not None and (
                    incumbent is None or settled.leader_value > incumbent.leader_value
                ):
                    incumbent = settled
                    span.event(
                        "bnb.incumbent",
                        {
                            "value": str(settled.leader_value),
                            "node": stats.nodes,
                            "depth": node.depth,
                            "settled": True,
                        },
                    )
                continue
            span.event("bnb.fallback_branch", {"infoset": split[0], "lp_value": str(value)})
        else:
            split = branch_select(built, sol)
            assert split is not None
        label, order = split
        for action in reversed(order):
            stack.append(node.child(label, action, value))

    if incumbent is None:
        raise SolverInvariantError(
            "branch-and-bound ended without an equilibrium", context={"eps": inst.eps_text()}
        )
    result = replace(incumbent, stats=stats)
    span.attrs(stats.as_attributes())
    span.attr("leader_value", str(result.leader_value))
    _verify(result, settings, span)
    return result


def _verify(result: SseResult, settings: SolverSettings, span: Span) -> None:
    if settings.verify == "off":
        return
    cex = check_theorem2(result.inst, result.leader, result.follower, settings=settings)
    span.event("verify.theorem2", {"ok": cex is None} | ({} if cex is None else cex.as_dict()))
    if cex is not None:
        raise SolverInvariantError(
            "solver best response violates the subgame-value property", context=cex.as_dict()
        )
    if settings.verify == "paranoid" and len(result.inst.game) <= settings.paranoid_max_nodes:
        cross_check(result, settings=settings, span=span)


def solve_unperturbed(
    m: SeqFormMatrices,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
    span: Span = NOOP_SPAN,
    deadline: float | None = None,
) -> SseResult:
    """SSE of the unperturbed game: the baseline of every loss figure."""
    return solve_sse(instantiate_unperturbed(m), settings=settings, span=span, deadline=deadline)
