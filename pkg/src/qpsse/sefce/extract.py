"""Reading strategy profiles off residual-pure SEFCE LP solutions."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from qpsse.bestresponse import residual_pure_realization
from qpsse.exceptions import SolverInvariantError
from qpsse.game import BehavioralStrategy, Player
from qpsse.lp import LpSolution
from qpsse.perturbation import PerturbedInstance
from qpsse.seqform import EMPTY, RealizationPlan, realization_to_behavioral

from .lp import SefceLP
from .stats import BnBStats


@dataclass(frozen=True, slots=True, eq=False)
class SseResult:
    """A strong Stackelberg equilibrium of one Γ(ε) and the solve that produced it."""

    inst: PerturbedInstance
    leader: RealizationPlan
    follower: RealizationPlan
    leader_value: Fraction
    follower_value: Fraction
    choice: Mapping[str, int]
    certificate: LpSolution
    stats: BnBStats = field(default_factory=BnBStats)

    @property
    def eps(self) -> Fraction | None:
        return self.inst.eps

    def leader_strategy(self) -> BehavioralStrategy:
        return realization_to_behavioral(self.leader)

    def follower_strategy(self) -> BehavioralStrategy:
        return realization_to_behavioral(self.follower)

    def limit_follower_strategy(self) -> BehavioralStrategy:
        """Pure strategy on `choice`: what the follower plays once the floors vanish."""
        game = self.inst.game
        return BehavioralStrategy.pure(
            game,
            Player.FOLLOWER,
            {label: game.infoset(label).actions[a] for label, a in self.choice.items()},
        )


def positive_actions(built: SefceLP, sol: LpSolution, label: str) -> list[int]:
    return [a for a, mass in enumerate(built.masses(sol.values, label)) if mass > 0]


def is_residual_pure(built: SefceLP, sol: LpSolution) -> bool:
    """At most one action with positive recommended mass at every follower infoset."""
    sol.require_optimal()
    follower = built.inst.table(Player.FOLLOWER)
    return all(len(positive_actions(built, sol, label)) <= 1 for label in follower.infosets)


def recommended_mass(built: SefceLP, sol: LpSolution, label: str, action: int) -> Fraction:
    return built.recommended_mass(sol.values, label, action)


def _is_product_form(built: SefceLP, sol: LpSolution, r_l: tuple[Fraction, ...]) -> bool:
    """Every positive-mass reference σ_f recommends the marginal leader plan."""
    values = sol.values
    for channel in built.channels:
        for sf in channel.sequences:
            ref = values[channel.p[(EMPTY, sf)]]
            if ref == 0:
                continue
            for sl in built.rel.rel_of_follower_seq[sf]:
                if values[channel.p[(sl, sf)]] != ref * r_l[sl]:
                    return False
    return True


def try_extract(built: SefceLP, sol: LpSolution) -> SseResult | None:
    """The profile of a residual-pure solution, or None when it does not attain the LP value."""
    inst = built.inst
    follower = inst.table(Player.FOLLOWER)
    choice: dict[str, int] = {}
    for label in follower.infosets:
        positive = positive_actions(built, sol, label)
        if len(positive) > 1:
            raise SolverInvariantError(
                "extraction needs a residual-pure solution",
                context={"infoset": label, "actions": positive},
            )
        choice[label] = positive[0] if positive else built.forced.get(label, 0)
    r_l = built.leader_marginal(sol.values)
    if not _is_product_form(built, sol, r_l):
        return None
    leader = RealizationPlan(inst.table(Player.LEADER), r_l)
    plan = residual_pure_realization(inst, choice)
    m = inst.matrices
    value = m.payoff(Player.LEADER, leader.values, plan.values)
    if value != sol.require_optimal():
        return None
    return SseResult(
        inst=inst,
        leader=leader,
        follower=plan,
        leader_value=value,
        follower_value=m.payoff(Player.FOLLOWER, leader.values, plan.values),
        choice=choice,
        certificate=sol,
    )


def extract_profile(built: SefceLP, sol: LpSolution) -> SseResult:
    result = try_extract(built, sol)
    if result is None:
        raise SolverInvariantError(
            "extracted profile does not attain the LP value",
            context={"lp_value": str(sol.objective)},
        )
    return result
