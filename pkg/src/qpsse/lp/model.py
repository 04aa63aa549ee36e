"""Exact linear programs and their solutions.

Variables are added one at a time and addressed by integer index; names are
kept for dumps and `LpSolution.value`. Every coefficient is a `Fraction`.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from types import MappingProxyType
from typing import Literal

from qpsse.exceptions import QpsseError

type Sense = Literal["<=", ">=", "=="]
type Objective = Literal["max", "min"]

SENSES: tuple[Sense, ...] = ("<=", ">=", "==")


class LpStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, slots=True)
class Variable:
    name: str
    lower: Fraction | None
    cost: Fraction


@dataclass(frozen=True, slots=True)
class Constraint:
    coeffs: Mapping[int, Fraction]
    sense: Sense
    rhs: Fraction
    name: str


class ExactLP:
    """`max` or `min` cᵀx subject to sparse rows and per-variable lower bounds."""

    __slots__ = ("_costs", "_names", "constraints", "objective", "variables")

    def __init__(self, objective: Objective = "max") -> None:
        if objective not in ("max", "min"):
            raise QpsseError("objective must be 'max' or 'min'", context={"objective": objective})
        self.objective: Objective = objective
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self._names: dict[str, int] = {}
        self._costs: dict[int, Fraction] = {}

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def add_variable(
        self,
        name: str,
        *,
        lower: Fraction | int | None = 0,
        cost: Fraction | int = 0,
    ) -> int:
        """Add a variable; `lower=None` makes it free. Returns its index."""
        if name in self._names:
            raise QpsseError("duplicate LP variable name", context={"name": name})
        index = len(self.variables)
        self.variables.append(
            Variable(name, None if lower is None else Fraction(lower), Fraction(cost))
        )
        self._names[name] = index
        if cost:
            self._costs[index] = Fraction(cost)
        return index

    def add_cost(self, var: int, amount: Fraction | int) -> None:
        """Accumulate into a variable's objective coefficient."""
        if not amount:
            return
        total = self._costs.get(var, Fraction(0)) + amount
        if total:
            self._costs[var] = total
        else:
            self._costs.pop(var, None)

    def cost(self, var: int) -> Fraction:
        return self._costs.get(var, Fraction(0))

    def index(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise QpsseError("unknown LP variable", context={"name": name}) from None

    def add_constraint(
        self,
        coeffs: Mapping[int, Fraction | int],
        sense: Sense,
        rhs: Fraction | int,
        name: str = "",
    ) -> int:
        if sense not in SENSES:
            raise QpsseError("constraint sense must be <=, >= or ==", context={"sense": sense})
        row: dict[int, Fraction] = {}
        for var, coef in coeffs.items():
            if not 0 <= var < len(self.variables):
                raise QpsseError(
                    "constraint references an unknown variable",
                    context={"constraint": name, "variable": var},
                )
            value = row.get(var, Fraction(0)) + Fraction(coef)
            if value:
                row[var] = value
            else:
                row.pop(var, None)
        index = len(self.constraints)
        self.constraints.append(Constraint(row, sense, Fraction(rhs), name or f"c{index}"))
        return index

    def costs(self) -> dict[int, Fraction]:
        return dict(self._costs)

    @property
    def names(self) -> Mapping[str, int]:
        return MappingProxyType(self._names)


@dataclass(frozen=True, slots=True)
class LpSolution:
    """Outcome of `solve`. Values, duals and reduced costs are empty unless optimal."""

    status: LpStatus
    objective: Fraction | None = None
    values: tuple[Fraction, ...] = ()
    duals: tuple[Fraction, ...] = ()
    reduced_costs: tuple[Fraction, ...] = ()
    pivots: int = 0
    names: Mapping[str, int] = field(default_factory=dict, repr=False)

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL

    def value(self, name: str) -> Fraction:
        return self.values[self.names[name]]

    def require_optimal(self) -> Fraction:
        if self.objective is None:
            raise QpsseError(f"LP is {self.status.value}")
        return self.objective
