"""
Follower best-response LPs in a perturbed game.

The follower's plan is written as r_f = ξ_f + r̃ with r̃ ≥ 0, which turns
R_f(ε) into a standard-form polytope:

    primal   max  r_ℓᵀ U_f r̃    s.t.  F_f r̃ = f_f - F_f ξ_f,  r̃ ≥ 0
    dual     min  (f_f - F_f ξ_f)ᵀ v   s.t.  F_fᵀ v ≥ U_fᵀ r_ℓ,  v free

Row 0 of F_f is the root row, so `v[-]` is the fictitious root value; every
other dual variable `v[I]` belongs to a follower infoset. The right-hand
side of row I is the slack δ(I).
"""

from collections.abc import Mapping
from fractions import Fraction

from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import PlanError
from qpsse.game import Player
from qpsse.lp import ExactLP, LpSolution, solve
from qpsse.perturbation import PerturbedInstance
from qpsse.seqform import RealizationPlan, SeqFormMatrices, check_realization_plan


def require_leader_plan(inst: PerturbedInstance, r_l: RealizationPlan) -> None:
    """Reject plans outside R_ℓ(ε), naming the violated row or bound."""
    table = inst.table(Player.LEADER)
    if r_l.table is not table:
        raise PlanError("leader plan belongs to a different sequence table")
    violation = check_realization_plan(r_l.values, table)
    if violation is not None:
        raise PlanError(
            "leader plan breaks a sequence-form row",
            context={"row": violation.row, "detail": violation.detail},
        )
    for seq, (value, bound) in enumerate(zip(r_l.values, inst.xi[Player.LEADER], strict=True)):
        if value < bound:
            raise PlanError(
                "leader plan is below its perturbation bound",
                context={"sequence": table.name(seq), "value": str(value), "bound": str(bound)},
                help_text="Plans must be feasible in Γ(ε); use the extracted plan of the same ε.",
            )


def follower_gain(m: SeqFormMatrices, r_l: RealizationPlan) -> dict[int, Fraction]:
    """U_fᵀ r_ℓ over follower sequences (sparse)."""
    return m.leader_row(Player.FOLLOWER, r_l.values)


def residual_rhs(inst: PerturbedInstance) -> tuple[Fraction, ...]:
    """f_f - F_f ξ_f, one entry per row of F_f."""
    xi = inst.xi[Player.FOLLOWER]
    out: list[Fraction] = []
    for row, f in zip(inst.matrices.F[Player.FOLLOWER], inst.matrices.f[Player.FOLLOWER], strict=True):
        out.append(f - sum((a * xi[j] for j, a in row.items()), Fraction(0)))
    return tuple(out)


def _row_name(inst: PerturbedInstance, i: int) -> str:
    return "-" if i == 0 else inst.table(Player.FOLLOWER).infosets[i - 1]


def build_primal(inst: PerturbedInstance, r_l: RealizationPlan) -> ExactLP:
    require_leader_plan(inst, r_l)
    table = inst.table(Player.FOLLOWER)
    gain = follower_gain(inst.matrices, r_l)
    lp = ExactLP("max")
    for seq in range(len(table)):
        lp.add_variable(f"rt[{table.name(seq)}]", cost=gain.get(seq, 0))
    for i, (row, rhs) in enumerate(zip(inst.matrices.F[Player.FOLLOWER], residual_rhs(inst), strict=True)):
        lp.add_constraint(row, "==", rhs, name=f"F[{_row_name(inst, i)}]")
    return lp


def build_dual(inst: PerturbedInstance, r_l: RealizationPlan) -> ExactLP:
    require_leader_plan(inst, r_l)
    table = inst.table(Player.FOLLOWER)
    gain = follower_gain(inst.matrices, r_l)
    lp = ExactLP("min")
    rhs = residual_rhs(inst)
    for i, b in enumerate(rhs):
        lp.add_variable(f"v[{_row_name(inst, i)}]", lower=None, cost=b)
    columns: dict[int, dict[int, Fraction]] = {}
    for i, row in enumerate(inst.matrices.F[Player.FOLLOWER]):
        for seq, a in row.items():
            columns.setdefault(seq, {})[i] = a
    for seq in range(len(table)):
        lp.add_constraint(columns.get(seq, {}), ">=", gain.get(seq, 0), name=f"dual[{table.name(seq)}]")
    return lp


def best_response(
    inst: PerturbedInstance,
    r_l: RealizationPlan,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> tuple[RealizationPlan, LpSolution]:
    """A best response in Γ(ε): ξ_f plus an optimal residual of the primal."""
    sol = solve(build_primal(inst, r_l), settings=settings)
    sol.require_optimal()
    xi = inst.xi[Player.FOLLOWER]
    plan = RealizationPlan(
        inst.table(Player.FOLLOWER),
        tuple(x + r for x, r in zip(xi, sol.values, strict=True)),
    )
    return plan, sol


def dual_values(inst: PerturbedInstance, sol: LpSolution) -> dict[str, Fraction]:
    """Infoset label to v[I], dropping the fictitious root entry."""
    return {label: sol.value(f"v[{label}]") for label in inst.table(Player.FOLLOWER).infosets}


def _subgame_lp(
    m: SeqFormMatrices, gain: Mapping[int, Fraction], label: str, action: int | None
) -> ExactLP:
    table = m.follower
    infos = table.subtree_infosets(label)
    seqs = (table.seq_of_infoset[label], *table.subtree_sequences(label))
    lp = ExactLP("max")
    var = {seq: lp.add_variable(f"r[{table.name(seq)}]") for seq in seqs}
    for seq in seqs[1:]:
        lp.add_cost(var[seq], gain.get(seq, 0))
    anchor = seqs[0] if action is None else table.children[label][action]
    lp.add_constraint({var[anchor]: 1}, "==", 1, name="anchor")
    for info in infos:
        row = {var[c]: Fraction(1) for c in table.children[info]}
        row[var[table.seq_of_infoset[info]]] = Fraction(-1)
        lp.add_constraint(row, "==", 0, name=f"F[{info}]")
    return lp


def subgame_value_for(
    m: SeqFormMatrices,
    gain: Mapping[int, Fraction],
    label: str,
    action: int | None = None,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Fraction:
    """max g_{f,I} over R_f(I), or over R_f(a) when `action` is given."""
    if action is not None and not 0 <= action < len(m.follower.children[label]):
        raise PlanError("action index out of range", context={"infoset": label, "action": action})
    return solve(_subgame_lp(m, gain, label, action), settings=settings).require_optimal()


def subgame_value(
    inst: PerturbedInstance,
    r_l: RealizationPlan,
    label: str,
    action: int | None = None,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Fraction:
    require_leader_plan(inst, r_l)
    gain = follower_gain(inst.matrices, r_l)
    return subgame_value_for(inst.matrices, gain, label, action, settings=settings)


def follower_value(inst: PerturbedInstance, r_l: RealizationPlan, r_f: RealizationPlan) -> Fraction:
    return inst.matrices.payoff(Player.FOLLOWER, r_l.values, r_f.values)


def leakage_value(inst: PerturbedInstance, r_l: RealizationPlan) -> Fraction:
    """r_ℓᵀ U_f ξ_f: the part of the follower's payoff the primal leaves out."""
    xi = inst.xi[Player.FOLLOWER]
    gain = follower_gain(inst.matrices, r_l)
    return sum((v * xi[seq] for seq, v in gain.items()), Fraction(0))
