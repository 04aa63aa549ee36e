"""
Residual-pure follower plans and the leader's commitment LP for one of them.

A choice map picks one action per follower infoset. Its residual-pure plan
routes the slack δ(I) of every infoset (measured against the floor closure),
plus whatever residual reaches I from above, onto the chosen action:

    r̃(σ(I)a) = [choice(I) = a] · (r̃(σ(I)) + δ(I)),    r_f = floor_f + r̃

Every vertex of R_f(ε) has this form, so some best response always does.
"""

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import PlanError
from qpsse.game import Player
from qpsse.lp import ExactLP, LpSolution, solve
from qpsse.perturbation import PerturbedInstance
from qpsse.seqform import RealizationPlan, SequenceTable

type Choice = Mapping[str, int]


def enumerate_choices(table: SequenceTable) -> Iterator[dict[str, int]]:
    """Every full choice map, in lexicographic order of action indices."""
    labels = table.infosets
    ranges = [range(len(table.children[label])) for label in labels]
    for picks in itertools.product(*ranges):
        yield dict(zip(labels, picks, strict=True))


def residual_pure_residual(inst: PerturbedInstance, choice: Choice) -> tuple[Fraction, ...]:
    table = inst.table(Player.FOLLOWER)
    residual = [Fraction(0)] * len(table)
    for label in table.infosets:
        picked = choice.get(label)
        kids = table.children[label]
        if picked is None or not 0 <= picked < len(kids):
            raise PlanError("choice map misses an infoset", context={"infoset": label})
        residual[kids[picked]] = residual[table.seq_of_infoset[label]] + inst.slack(
            Player.FOLLOWER, label
        )
    return tuple(residual)


def residual_pure_realization(inst: PerturbedInstance, choice: Choice) -> RealizationPlan:
    floor = inst.floors(Player.FOLLOWER)
    residual = residual_pure_residual(inst, choice)
    return RealizationPlan(
        inst.table(Player.FOLLOWER), tuple(x + r for x, r in zip(floor, residual, strict=True))
    )


@dataclass(frozen=True, slots=True)
class Commitment:
    value: Fraction
    leader: RealizationPlan
    follower: RealizationPlan
    solution: LpSolution


def build_commitment_lp(inst: PerturbedInstance, choice: Choice) -> ExactLP:
    """
    max r_ℓᵀ U_ℓ r_f over r_ℓ ∈ R_ℓ(ε) such that the residual-pure r_f of
    `choice` is a best response: dual feasibility of the follower's problem
    plus complementary slackness on every sequence carrying residual.
    """
    m = inst.matrices
    leader, follower = m.leader, m.follower
    residual = residual_pure_residual(inst, choice)
    r_f = residual_pure_realization(inst, choice)
    value_of = m.follower_column(Player.LEADER, r_f.values)

    lp = ExactLP("max")
    xi_l = inst.xi[Player.LEADER]
    for seq in range(len(leader)):
        lp.add_variable(f"r[{leader.name(seq)}]", lower=xi_l[seq], cost=value_of.get(seq, 0))
    for i, row in enumerate(m.F[Player.LEADER]):
        lp.add_constraint(row, "==", m.f[Player.LEADER][i], name=f"F[{i}]")
    v = {
        label: lp.add_variable(f"v[{label}]", lower=None) for label in follower.infosets
    }
    by_follower: dict[int, dict[int, Fraction]] = {}
    for (sl, sf), u in m.U[Player.FOLLOWER].items():
        by_follower.setdefault(sf, {})[sl] = u
    for label in follower.infosets:
        for child in follower.children[label]:
            row: dict[int, Fraction] = {v[label]: Fraction(1)}
            for nxt in follower.infosets_after.get(child, ()):
                row[v[nxt]] = row.get(v[nxt], Fraction(0)) - 1
            for sl, u in by_follower.get(child, {}).items():
                row[sl] = row.get(sl, Fraction(0)) - u
            sense = "==" if residual[child] > 0 else ">="
            lp.add_constraint(row, sense, 0, name=f"br[{follower.name(child)}]")
    return lp


def commitment_lp(
    inst: PerturbedInstance,
    choice: Choice,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Commitment | None:
    """Best leader commitment inducing `choice`; None when no leader plan does."""
    sol = solve(build_commitment_lp(inst, choice), settings=settings)
    if not sol.is_optimal:
        return None
    leader = inst.table(Player.LEADER)
    r_l = RealizationPlan(leader, sol.values[: len(leader)])
    return Commitment(
        sol.require_optimal(), r_l, residual_pure_realization(inst, choice), sol
    )
