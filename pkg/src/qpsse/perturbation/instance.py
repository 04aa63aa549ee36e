"""
Concrete perturbed games Γ(ε) and the quantities derived from their bounds.

`instantiate` evaluates a scheme at a rational ε and proves R_i(ε) is
nonempty for both players with an exact feasibility LP. The floor closure
`floor(σ) = max(ξ(σ), max_K Σ_b floor(σ(K)b))` is the least probability any
feasible plan puts on σ; it names the violated infoset when the LP says the
instance is empty, and it drives the η recursion.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import InfeasibleInstanceError, SchemeError, SolverInvariantError
from qpsse.game import STRATEGIC_PLAYERS, GameTree, Player
from qpsse.lp import ExactLP, solve
from qpsse.numeric import format_rational
from qpsse.seqform import EMPTY, RealizationPlan, SeqFormMatrices, SequenceTable

from .scheme import PerturbationScheme, unperturbed_scheme


@dataclass(frozen=True, slots=True, eq=False)
class PerturbedInstance:
    """Γ(ε): matrices plus exact lower bounds. `eps is None` is the unperturbed game."""

    matrices: SeqFormMatrices
    scheme: PerturbationScheme
    eps: Fraction | None
    xi: Mapping[Player, tuple[Fraction, ...]]
    _floor: Mapping[Player, tuple[Fraction, ...]] = field(repr=False)

    @property
    def unperturbed(self) -> bool:
        return self.eps is None

    @property
    def game(self) -> GameTree:
        return self.matrices.game

    def table(self, player: Player) -> SequenceTable:
        return self.matrices.table(player)

    def floor(self, player: Player, seq: int) -> Fraction:
        return self._floor[player][seq]

    def floors(self, player: Player) -> tuple[Fraction, ...]:
        """Least probability any plan in R_i(ε) puts on each sequence."""
        return tuple(self._floor[player])

    def slack(self, player: Player, label: str) -> Fraction:
        """
        δ(I) = floor(σ(I)) - Σ_a floor(σ(I)a), the residual budget injected at I.

        Equal to ξ(σ(I)) - Σ_a ξ(σ(I)a) whenever that is non-negative everywhere;
        the floor closure describes the same R_i(ε) and never goes negative.
        """
        table = self.table(player)
        floor = self._floor[player]
        return floor[table.seq_of_infoset[label]] - sum(
            (floor[c] for c in table.children[label]), Fraction(0)
        )

    def eps_text(self) -> str:
        return "0" if self.eps is None else format_rational(self.eps)


@dataclass(frozen=True, slots=True)
class Residual:
    plan: RealizationPlan
    residual: tuple[Fraction, ...]


def residual_of(inst: PerturbedInstance, plan: RealizationPlan) -> Residual:
    xi = inst.xi[plan.table.player]
    return Residual(plan, tuple(v - x for v, x in zip(plan.values, xi, strict=True)))


def _floors(table: SequenceTable, xi: Sequence[Fraction]) -> tuple[Fraction, ...]:
    floor = list(xi)
    for seq in reversed(range(len(table))):
        for label in table.infosets_after.get(seq, ()):
            need = sum((floor[c] for c in table.children[label]), Fraction(0))
            if need > floor[seq]:
                floor[seq] = need
    return tuple(floor)


def _first_overdrawn(table: SequenceTable, floor: Sequence[Fraction]) -> str | None:
    """Shallowest infoset whose children need more than the parent can hold."""
    for label in table.infosets:
        parent = table.seq_of_infoset[label]
        have = Fraction(1) if parent == EMPTY else floor[parent]
        need = sum((floor[c] for c in table.children[label]), Fraction(0))
        if need > have:
            return label
    return None


def _feasibility_lp(
    table: SequenceTable, lower: Sequence[Fraction], rows: Sequence[dict[int, Fraction]]
) -> ExactLP:
    lp = ExactLP("min")
    for seq in range(len(table)):
        lp.add_variable(f"r[{table.name(seq)}]", lower=lower[seq])
    for i, row in enumerate(rows):
        lp.add_constraint(row, "==", 1 if i == 0 else 0, name=f"F{i}")
    return lp


def instantiate(
    scheme: PerturbationScheme,
    m: SeqFormMatrices,
    eps: Fraction,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> PerturbedInstance:
    """Evaluate `scheme` at `eps` and check that both players keep a feasible plan."""
    if scheme.unperturbed:
        return instantiate_unperturbed(m)
    if not 0 < eps <= 1:
        raise SchemeError("ε must lie in (0, 1]", context={"eps": str(eps)})
    xi: dict[Player, tuple[Fraction, ...]] = {}
    floors: dict[Player, tuple[Fraction, ...]] = {}
    for player in STRATEGIC_PLAYERS:
        table = m.table(player)
        values = scheme.evaluate(player, eps)
        xi[player] = values
        floors[player] = _floors(table, values)
        feasible = solve(_feasibility_lp(table, values, m.F[player]), settings=settings).is_optimal
        overdrawn = _first_overdrawn(table, floors[player])
        if feasible != (overdrawn is None):
            raise SolverInvariantError(
                "feasibility LP and floor closure disagree",
                context={"player": player.value, "eps": str(eps)},
            )
        if overdrawn is not None:
            raise InfeasibleInstanceError(
                f"ε is too large for this scheme: {player.value} infoset {overdrawn!r} is overdrawn",
                context={"player": player.value, "infoset": overdrawn, "eps": str(eps)},
                help_text=(
                    "Pick a smaller ε; for ε^|σ| bounds, ε ≤ 1/(b+1) with b the largest"
                    " branching factor is always feasible."
                ),
            )
    inst = PerturbedInstance(m, scheme, eps, xi, floors)
    if settings.check_eta:
        for sf in range(len(m.follower)):
            recursive = eta(inst, sf)
            oracle = eta_oracle(inst, sf, settings=settings)
            if recursive != oracle:
                raise SolverInvariantError(
                    "η recursion disagrees with the LP oracle",
                    context={
                        "sequence": m.follower.name(sf),
                        "recursion": str(recursive),
                        "lp": str(oracle),
                    },
                )
    return inst


def instantiate_unperturbed(m: SeqFormMatrices) -> PerturbedInstance:
    xi = {
        player: (Fraction(1),) + (Fraction(0),) * (len(m.table(player)) - 1)
        for player in STRATEGIC_PLAYERS
    }
    return PerturbedInstance(m, unperturbed_scheme(m), None, xi, xi)


def eta_table(inst: PerturbedInstance) -> tuple[Fraction, ...]:
    """η for every follower sequence by one forward pass."""
    table = inst.table(Player.FOLLOWER)
    floor = inst._floor[Player.FOLLOWER]
    values = [Fraction(0)] * len(table)
    values[EMPTY] = Fraction(1)
    for label in table.infosets:
        parent = values[table.seq_of_infoset[label]]
        kids = table.children[label]
        total_floor = sum((floor[c] for c in kids), Fraction(0))
        for child in kids:
            values[child] = parent - (total_floor - floor[child])
    return tuple(values)


def eta(inst: PerturbedInstance, sigma_f: int) -> Fraction:
    """Largest probability a feasible follower plan can put on `sigma_f`."""
    return eta_table(inst)[sigma_f]


def eta_oracle(
    inst: PerturbedInstance, sigma_f: int, *, settings: SolverSettings = DEFAULT_SETTINGS
) -> Fraction:
    """η by LP: max r(σ_f) over R_f(ε)."""
    table = inst.table(Player.FOLLOWER)
    lp = _feasibility_lp(table, inst.xi[Player.FOLLOWER], inst.matrices.F[Player.FOLLOWER])
    lp.objective = "max"
    lp.add_cost(sigma_f, 1)
    return solve(lp, settings=settings).require_optimal()
