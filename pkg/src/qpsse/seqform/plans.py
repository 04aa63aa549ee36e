"""Realization plans and their conversion to and from behavioral strategies."""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from qpsse.exceptions import QpsseError
from qpsse.game import BehavioralStrategy

from .sequences import EMPTY, SequenceTable


@dataclass(frozen=True, slots=True)
class RealizationPlan:
    table: SequenceTable
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.table):
            raise QpsseError(
                "realization plan has the wrong length",
                context={"expected": len(self.table), "got": len(self.values)},
            )

    @classmethod
    def of(cls, table: SequenceTable, values: Sequence[Fraction | int]) -> RealizationPlan:
        return cls(table, tuple(Fraction(v) for v in values))

    def __getitem__(self, seq: int) -> Fraction:
        return self.values[seq]

    def __len__(self) -> int:
        return len(self.values)

    def as_named(self) -> dict[str, Fraction]:
        return {self.table.name(seq): v for seq, v in enumerate(self.values)}


@dataclass(frozen=True, slots=True)
class PlanViolation:
    """First failed row: `row` is `"root"`, an infoset label, or `"nonneg"`."""

    row: str
    detail: str


def check_realization_plan(
    values: Sequence[Fraction], table: SequenceTable
) -> PlanViolation | None:
    if len(values) != len(table):
        return PlanViolation("length", f"expected {len(table)} entries, got {len(values)}")
    if values[EMPTY] != 1:
        return PlanViolation("root", f"r(∅) = {values[EMPTY]}")
    for label in table.infosets:
        parent = values[table.seq_of_infoset[label]]
        total = sum((values[c] for c in table.children[label]), Fraction(0))
        if total != parent:
            return PlanViolation(label, f"children sum {total} != parent {parent}")
    for seq, v in enumerate(values):
        if v < 0:
            return PlanViolation("nonneg", f"{table.name(seq)} = {v}")
    return None


def behavioral_to_realization(
    strategy: BehavioralStrategy, table: SequenceTable
) -> RealizationPlan:
    """r(σ) = product of the behavioral probabilities along σ."""
    values = [Fraction(0)] * len(table)
    values[EMPTY] = Fraction(1)
    for seq in range(1, len(table)):
        parent = table.parent[seq]
        label = table.infoset_of[seq]
        action = table.action_of[seq]
        assert parent is not None and label is not None and action is not None
        values[seq] = values[parent] * strategy.prob(label, action)
    return RealizationPlan(table, tuple(values))


def realization_to_behavioral(plan: RealizationPlan) -> BehavioralStrategy:
    """π(a | I) = r(σ(I)a) / r(σ(I)); uniform where r(σ(I)) = 0."""
    table = plan.table
    probs: dict[str, tuple[Fraction, ...]] = {}
    for label in table.infosets:
        mass = plan[table.seq_of_infoset[label]]
        kids = table.children[label]
        if mass > 0:
            probs[label] = tuple(plan[c] / mass for c in kids)
        else:
            probs[label] = (Fraction(1, len(kids)),) * len(kids)
    return BehavioralStrategy(table.player, probs)
