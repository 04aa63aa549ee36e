"""Brute-force reference computations the solver is checked against.

Everything here is deliberately naive: enumerate, then solve small dense
systems. Only use it on games and LPs with a handful of variables.
"""

import itertools
from collections.abc import Sequence
from fractions import Fraction

from qpsse.benchmarks import SearchGameConfig
from qpsse.game import Player
from qpsse.lp import ExactLP, LpStatus, solve
from qpsse.lp.model import Sense
from qpsse.perturbation import PerturbedInstance


def pure_follower_plans(inst: PerturbedInstance) -> list[tuple[Fraction, ...]]:
    """
    Vertices of R_f(ε) written directly from the lower bounds.

    At every infoset the chosen action takes everything the parent sequence
    has beyond the siblings' bounds. Assumes ξ(σ(I)) ≥ Σ_a ξ(σ(I)a), which
    holds for ε^|σ| bounds once ε ≤ 1/(b+1).
    """
    table = inst.table(Player.FOLLOWER)
    xi = inst.xi[Player.FOLLOWER]
    plans: list[tuple[Fraction, ...]] = []
    ranges = [range(len(table.children[label])) for label in table.infosets]
    for picks in itertools.product(*ranges):
        plan = list(xi)
        plan[0] = Fraction(1)
        # table.infosets lists parents before children
        for label, pick in zip(table.infosets, picks, strict=True):
            kids = table.children[label]
            parent = plan[table.seq_of_infoset[label]]
            spare = parent - sum((xi[c] for c in kids), Fraction(0))
            for a, child in enumerate(kids):
                plan[child] = xi[child] + (spare if a == pick else 0)
        if tuple(plan) not in plans:
            plans.append(tuple(plan))
    return plans


def _utility(
    u: dict[tuple[int, int], Fraction], plan: Sequence[Fraction], n_leader: int
) -> list[Fraction]:
    out = [Fraction(0)] * n_leader
    for (sl, sf), value in u.items():
        out[sl] += value * plan[sf]
    return out


def brute_force_sse(inst: PerturbedInstance) -> Fraction:
    """
    max over vertices π of R_f(ε) of the best leader commitment that makes π
    at least as good for the follower as every other vertex.
    """
    m = inst.matrices
    n_leader = len(m.leader)
    plans = pure_follower_plans(inst)
    follower_gain = [_utility(dict(m.U[Player.FOLLOWER]), plan, n_leader) for plan in plans]
    best: Fraction | None = None
    for i, plan in enumerate(plans):
        lp = ExactLP("max")
        gain = _utility(dict(m.U[Player.LEADER]), plan, n_leader)
        for sl in range(n_leader):
            lp.add_variable(f"r{sl}", lower=inst.xi[Player.LEADER][sl], cost=gain[sl])
        for row, rhs in zip(m.F[Player.LEADER], m.f[Player.LEADER], strict=True):
            lp.add_constraint(row, "==", rhs)
        for j, other in enumerate(follower_gain):
            if j != i:
                diff = {sl: follower_gain[i][sl] - other[sl] for sl in range(n_leader)}
                lp.add_constraint(diff, ">=", 0)
        sol = solve(lp)
        if sol.is_optimal and (best is None or sol.require_optimal() > best):
            best = sol.require_optimal()
    assert best is not None
    return best


def _solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan on a square system; None when singular."""
    n = len(matrix)
    rows = [[*row, b] for row, b in zip(matrix, rhs, strict=True)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [x / lead for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col], strict=True)]
    return [row[n] for row in rows]


def vertex_enumeration_max(
    costs: Sequence[Fraction], a_ub: Sequence[Sequence[Fraction]], b_ub: Sequence[Fraction]
) -> Fraction | None:
    """max cᵀx s.t. Ax ≤ b, x ≥ 0 over a bounded region, by trying every basis."""
    n = len(costs)
    bounds = [list(row) for row in a_ub] + [
        [Fraction(-1) if j == i else Fraction(0) for j in range(n)] for i in range(n)
    ]
    rhs = list(b_ub) + [Fraction(0)] * n
    best: Fraction | None = None
    for tight in itertools.combinations(range(len(bounds)), n):
        x = _solve_square([bounds[i] for i in tight], [rhs[i] for i in tight])
        if x is None:
            continue
        feasible = all(
            sum((a * v for a, v in zip(row, x, strict=True)), Fraction(0)) <= b
            for row, b in zip(bounds, rhs, strict=True)
        )
        if feasible:
            value = sum((c * v for c, v in zip(costs, x, strict=True)), Fraction(0))
            if best is None or value > best:
                best = value
    return best


type LpRow = tuple[Sequence[Fraction], Sense, Fraction]


def _upper_form(rows: Sequence[LpRow]) -> tuple[list[list[Fraction]], list[Fraction]]:
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for coeffs, sense, rhs in rows:
        if sense in ("<=", "=="):
            a.append(list(coeffs))
            b.append(rhs)
        if sense in (">=", "=="):
            a.append([-c for c in coeffs])
            b.append(-rhs)
    return a, b


def vertex_enumeration_lp(
    costs: Sequence[Fraction], rows: Sequence[LpRow]
) -> tuple[LpStatus, Fraction | None]:
    """
    Status and optimum of max cᵀx over `rows` and x ≥ 0, for tiny LPs.

    A nonempty region with x ≥ 0 always has a vertex, so no feasible vertex
    means infeasible. The LP is unbounded iff some ray d ≥ 0 with Ad ≤ 0
    improves the objective; the cone cut by Σd ≤ 1 is a polytope, so the
    same enumeration decides it.
    """
    a, b = _upper_form(rows)
    best = vertex_enumeration_max(costs, a, b)
    if best is None:
        return LpStatus.INFEASIBLE, None
    n = len(costs)
    ray = vertex_enumeration_max(
        costs, [*a, [Fraction(1)] * n], [Fraction(0)] * len(a) + [Fraction(1)]
    )
    if ray is not None and ray > 0:
        return LpStatus.UNBOUNDED, None
    return LpStatus.OPTIMAL, best


def search_leaf_count(cfg: SearchGameConfig) -> int:
    """Terminal count of the search game by walking positions, not game nodes."""
    placements = cfg.patrol_moves()

    def count(at: str, step: int) -> int:
        total = 0
        for patrols in placements:
            for move in cfg.follower_moves(at):
                nxt = at if move == "wait" else move
                if nxt in patrols or nxt in cfg.goals or step + 1 == cfg.horizon:
                    total += 1
                else:
                    total += count(nxt, step + 1)
        return total

    return count(cfg.start, 0)
