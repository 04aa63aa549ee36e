"""
Two-phase primal simplex over `Fraction`.

The tableau keeps sparse rows (`dict[column, Fraction]`) and one artificial
column per row for the whole solve; the artificial columns hold B⁻¹, which is
where the duals are read from. Bland's rule (smallest entering column, ratio
ties broken by smallest basic column) is the default. The `hybrid` rule uses
Dantzig's largest reduced cost until a run of degenerate pivots, then Bland
for the rest of the solve.

Every optimal answer is re-checked in the original problem space by
`verify_certificate` before it is returned.
"""

from fractions import Fraction

from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import SolverInvariantError

from .model import ExactLP, LpSolution, LpStatus

_ZERO = Fraction(0)


class _Tableau:
    __slots__ = (
        "basis",
        "bland",
        "degenerate_run",
        "first_artificial",
        "limit",
        "obj",
        "pivots",
        "rhs",
        "rows",
        "value",
    )

    def __init__(
        self,
        rows: list[dict[int, Fraction]],
        rhs: list[Fraction],
        first_artificial: int,
        settings: SolverSettings,
    ) -> None:
        self.rows = rows
        self.rhs = rhs
        self.first_artificial = first_artificial
        self.basis = [first_artificial + i for i in range(len(rows))]
        self.obj: dict[int, Fraction] = {}
        self.value = _ZERO
        self.pivots = 0
        self.bland = settings.pivot_rule == "bland"
        self.limit = settings.hybrid_degenerate_limit
        self.degenerate_run = 0

    def pivot(self, r: int, e: int) -> None:
        piv = self.rows[r][e]
        row_r = {k: v / piv for k, v in self.rows[r].items()}
        rhs_r = self.rhs[r] / piv
        self.rows[r] = row_r
        self.rhs[r] = rhs_r
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(e)
            if not f:
                continue
            for k, v in row_r.items():
                updated = row.get(k, _ZERO) - f * v
                if updated:
                    row[k] = updated
                else:
                    del row[k]
            self.rhs[i] -= f * rhs_r
        f = self.obj.get(e)
        if f:
            for k, v in row_r.items():
                updated = self.obj.get(k, _ZERO) - f * v
                if updated:
                    self.obj[k] = updated
                else:
                    del self.obj[k]
            self.value += f * rhs_r
        self.basis[r] = e
        self.pivots += 1

    def _entering(self) -> int | None:
        candidates = [
            (k, d) for k, d in self.obj.items() if d > 0 and k < self.first_artificial
        ]
        if not candidates:
            return None
        if self.bland:
            return min(k for k, _ in candidates)
        return min(candidates, key=lambda kd: (-kd[1], kd[0]))[0]

    def _leaving(self, e: int) -> int | None:
        best: tuple[Fraction, int, int] | None = None
        for i, row in enumerate(self.rows):
            a = row.get(e)
            if a is None or a <= 0:
                continue
            key = (self.rhs[i] / a, self.basis[i], i)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]

    def run(self) -> LpStatus:
        while True:
            e = self._entering()
            if e is None:
                return LpStatus.OPTIMAL
            r = self._leaving(e)
            if r is None:
                return LpStatus.UNBOUNDED
            if not self.bland:
                if self.rhs[r] == 0:
                    self.degenerate_run += 1
                    if self.degenerate_run >= self.limit:
                        self.bland = True
                else:
                    self.degenerate_run = 0
            self.pivot(r, e)

    def set_objective(self, costs: dict[int, Fraction]) -> None:
        """Install reduced costs d = c - c_B B⁻¹A for the current basis."""
        obj = {k: c for k, c in costs.items() if c}
        value = _ZERO
        for i, row in enumerate(self.rows):
            cb = costs.get(self.basis[i], _ZERO)
            if not cb:
                continue
            value += cb * self.rhs[i]
            for k, v in row.items():
                updated = obj.get(k, _ZERO) - cb * v
                if updated:
                    obj[k] = updated
                else:
                    obj.pop(k, None)
        self.obj = obj
        self.value = value

    def drive_out_artificials(self) -> None:
        for r, basic in enumerate(self.basis):
            if basic < self.first_artificial:
                continue
            structural = [k for k in self.rows[r] if k < self.first_artificial]
            if structural:
                self.pivot(r, min(structural))
            # otherwise the row is redundant and its artificial stays basic at zero


def solve(lp: ExactLP, *, settings: SolverSettings = DEFAULT_SETTINGS) -> LpSolution:
    """Solve `lp` exactly; optimal answers carry verified duals and reduced costs."""
    sign = Fraction(1 if lp.objective == "max" else -1)
    columns: list[tuple[int, int | None]] = []
    costs: dict[int, Fraction] = {}
    ncol = 0
    for j, var in enumerate(lp.variables):
        c = sign * lp.cost(j)
        plus = ncol
        ncol += 1
        minus: int | None = None
        if var.lower is None:
            minus = ncol
            ncol += 1
        columns.append((plus, minus))
        if c:
            costs[plus] = c
            if minus is not None:
                costs[minus] = -c

    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    flips: list[Fraction] = []
    slack_of: list[int | None] = []
    for con in lp.constraints:
        row: dict[int, Fraction] = {}
        b = con.rhs
        for j, a in con.coeffs.items():
            plus, minus = columns[j]
            lower = lp.variables[j].lower
            if lower is not None:
                b -= a * lower
            row[plus] = a
            if minus is not None:
                row[minus] = -a
        slack: int | None = None
        if con.sense != "==":
            slack = ncol
            ncol += 1
            row[slack] = Fraction(1 if con.sense == "<=" else -1)
        flip = Fraction(1)
        if b < 0:
            flip = Fraction(-1)
            row = {k: -v for k, v in row.items()}
            b = -b
        rows.append(row)
        rhs.append(b)
        flips.append(flip)
        slack_of.append(slack)

    first_artificial = ncol
    for i, row in enumerate(rows):
        row[first_artificial + i] = Fraction(1)

    tableau = _Tableau(rows, rhs, first_artificial, settings)
    tableau.set_objective({first_artificial + i: Fraction(-1) for i in range(len(rows))})
    tableau.run()
    if tableau.value < 0:
        return LpSolution(LpStatus.INFEASIBLE, pivots=tableau.pivots, names=lp.names)
    tableau.drive_out_artificials()
    tableau.set_objective(costs)
    if tableau.run() is LpStatus.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, pivots=tableau.pivots, names=lp.names)

    col_value: dict[int, Fraction] = {
        basic: tableau.rhs[i] for i, basic in enumerate(tableau.basis) if tableau.rhs[i]
    }
    values: list[Fraction] = []
    for j, var in enumerate(lp.variables):
        plus, minus = columns[j]
        x = col_value.get(plus, _ZERO)
        if minus is not None:
            x -= col_value.get(minus, _ZERO)
        if var.lower is not None:
            x += var.lower
        values.append(x)
    duals = [
        sign * flips[i] * -tableau.obj.get(first_artificial + i, _ZERO)
        for i in range(len(rows))
    ]
    objective, reduced = verify_certificate(lp, values, duals)
    return LpSolution(
        LpStatus.OPTIMAL,
        objective=objective,
        values=tuple(values),
        duals=tuple(duals),
        reduced_costs=tuple(reduced),
        pivots=tableau.pivots,
        names=lp.names,
    )


def _violation(message: str, **context: object) -> SolverInvariantError:
    return SolverInvariantError(message, context=dict(context))


def verify_certificate(
    lp: ExactLP, values: list[Fraction], duals: list[Fraction]
) -> tuple[Fraction, list[Fraction]]:
    """
    Check an optimality certificate in the original problem space.

    Primal feasibility, dual sign conditions, reduced-cost signs,
    complementary slackness and equal objectives, all by exact equality.
    Returns the objective and the reduced costs d = c - Aᵀy.
    """
    sign = 1 if lp.objective == "max" else -1
    for j, var in enumerate(lp.variables):
        if var.lower is not None and values[j] < var.lower:
            raise _violation("primal value below its lower bound", variable=var.name)
    reduced = [lp.cost(j) for j in range(lp.num_variables)]
    for i, con in enumerate(lp.constraints):
        lhs = sum((a * values[j] for j, a in con.coeffs.items()), _ZERO)
        gap = con.rhs - lhs
        y = duals[i]
        if (con.sense == "<=" and gap < 0) or (con.sense == ">=" and gap > 0) or (
            con.sense == "==" and gap != 0
        ):
            raise _violation("primal row violated", constraint=con.name, gap=str(gap))
        if (con.sense == "<=" and sign * y < 0) or (con.sense == ">=" and sign * y > 0):
            raise _violation("dual value has the wrong sign", constraint=con.name, dual=str(y))
        if y and gap:
            raise _violation("complementary slackness fails on a row", constraint=con.name)
        if y:
            for j, a in con.coeffs.items():
                reduced[j] -= a * y
    primal = _ZERO
    dual = sum((con.rhs * duals[i] for i, con in enumerate(lp.constraints)), _ZERO)
    for j, var in enumerate(lp.variables):
        d = reduced[j]
        primal += lp.cost(j) * values[j]
        if var.lower is None:
            if d:
                raise _violation("free variable has a nonzero reduced cost", variable=var.name)
            continue
        if sign * d > 0:
            raise _violation("reduced cost has the wrong sign", variable=var.name, reduced=str(d))
        if d and values[j] != var.lower:
            raise _violation("complementary slackness fails on a bound", variable=var.name)
        dual += d * var.lower
    if primal != dual:
        raise _violation("duality gap", primal=str(primal), dual=str(dual))
    return primal, reduced
