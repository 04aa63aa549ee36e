"""
Structural checks on follower best responses.

Each checker returns `None` when the property holds and a small report
object otherwise; callers decide whether a report is fatal.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import QpsseError
from qpsse.game import BehavioralStrategy, Player
from qpsse.lp import LpSolution
from qpsse.perturbation import PerturbedInstance
from qpsse.seqform import RealizationPlan, SeqFormMatrices, behavioral_to_realization

from .problems import dual_values, follower_gain, require_leader_plan, subgame_value_for


class _SubgameValues:
    __slots__ = ("_cache", "gain", "m", "settings")

    def __init__(
        self, m: SeqFormMatrices, gain: Mapping[int, Fraction], settings: SolverSettings
    ) -> None:
        self.m = m
        self.gain = gain
        self.settings = settings
        self._cache: dict[tuple[str, int | None], Fraction] = {}

    def of(self, label: str, action: int | None = None) -> Fraction:
        key = (label, action)
        value = self._cache.get(key)
        if value is None:
            value = subgame_value_for(self.m, self.gain, label, action, settings=self.settings)
            self._cache[key] = value
        return value


@dataclass(frozen=True, slots=True)
class Theorem2Counterexample:
    """Excess mass on `action` at `infoset` although it is subgame-suboptimal."""

    infoset: str
    action: str
    action_value: Fraction
    infoset_value: Fraction

    def as_dict(self) -> dict[str, str]:
        return {
            "infoset": self.infoset,
            "action": self.action,
            "action_value": str(self.action_value),
            "infoset_value": str(self.infoset_value),
        }


def check_theorem2(
    inst: PerturbedInstance,
    r_l: RealizationPlan,
    r_f: RealizationPlan,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Theorem2Counterexample | None:
    """Every action above its floor must attain the infoset's subgame value."""
    require_leader_plan(inst, r_l)
    table = inst.table(Player.FOLLOWER)
    xi = inst.xi[Player.FOLLOWER]
    values = _SubgameValues(inst.matrices, follower_gain(inst.matrices, r_l), settings)
    for label in table.infosets:
        for a, child in enumerate(table.children[label]):
            if r_f[child] <= xi[child]:
                continue
            action_value = values.of(label, a)
            infoset_value = values.of(label)
            if action_value != infoset_value:
                return Theorem2Counterexample(
                    label, inst.game.infoset(label).actions[a], action_value, infoset_value
                )
    return None


@dataclass(frozen=True, slots=True)
class DualValueViolation:
    """`subgame` means v[I] differs from the subgame value at I; `tight` means a
    tight dual row points at an action whose subgame value is too low."""

    kind: Literal["subgame", "tight"]
    infoset: str
    action: str | None
    expected: Fraction
    got: Fraction


def check_dual_values(
    inst: PerturbedInstance,
    r_l: RealizationPlan,
    sol: LpSolution,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> DualValueViolation | None:
    """
    Check an optimal dual of `build_dual` against independent subgame LPs.

    Every v[I] must equal max g_{f,I} over R_f(I), and every tight row
    (I, a) must have the same subgame value over R_f(a). Only meaningful on
    perturbed instances, where every infoset has positive slack and the
    optimal dual is unique.
    """
    if inst.unperturbed:
        raise QpsseError(
            "dual values are not unique in the unperturbed game",
            help_text="Run the check on a perturbed instance.",
        )
    sol.require_optimal()
    table = inst.table(Player.FOLLOWER)
    gain = follower_gain(inst.matrices, r_l)
    values = _SubgameValues(inst.matrices, gain, settings)
    v = dual_values(inst, sol)
    for label in table.infosets:
        expected = values.of(label)
        if v[label] != expected:
            return DualValueViolation("subgame", label, None, expected, v[label])
    for label in table.infosets:
        actions = inst.game.infoset(label).actions
        for a, child in enumerate(table.children[label]):
            below = sum((v[k] for k in table.infosets_after.get(child, ())), Fraction(0))
            if v[label] != gain.get(child, Fraction(0)) + below:
                continue
            got = values.of(label, a)
            if got != values.of(label):
                return DualValueViolation("tight", label, actions[a], values.of(label), got)
    return None


@dataclass(frozen=True, slots=True)
class IBestResponseViolation:
    infoset: str
    action: str
    action_value: Fraction
    infoset_value: Fraction


def _leader_gain(
    m: SeqFormMatrices, pi_l: BehavioralStrategy
) -> dict[int, Fraction]:
    if not pi_l.is_completely_mixed():
        raise QpsseError(
            "I-best-response probes need a completely mixed leader strategy",
            help_text="Use the leader strategy extracted from a perturbed instance.",
        )
    r_l = behavioral_to_realization(pi_l, m.leader)
    return m.leader_row(Player.FOLLOWER, r_l.values)


def _check_infoset(
    values: _SubgameValues, m: SeqFormMatrices, pi_f: BehavioralStrategy, label: str
) -> IBestResponseViolation | None:
    actions = m.game.infoset(label).actions
    for a, p in enumerate(pi_f.probs[label]):
        if p == 0:
            continue
        action_value = values.of(label, a)
        infoset_value = values.of(label)
        if action_value != infoset_value:
            return IBestResponseViolation(label, actions[a], action_value, infoset_value)
    return None


def check_I_best_response(  # noqa: N802
    m: SeqFormMatrices,
    pi_l: BehavioralStrategy,
    pi_f: BehavioralStrategy,
    label: str,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> IBestResponseViolation | None:
    """
    Sufficient test that `pi_f` is an I-best response to `pi_l` at `label`.

    Passing means every action `pi_f` plays at I reaches the subgame value of
    I; failing does not prove `pi_f` is no I-best response.
    """
    values = _SubgameValues(m, _leader_gain(m, pi_l), settings)
    return _check_infoset(values, m, pi_f, label)


@dataclass(frozen=True, slots=True)
class ScheduleCheck:
    """`first_passing` is the first index from which every later probe passes."""

    first_passing: int | None
    failures: tuple[IBestResponseViolation | None, ...]


def lemma5_schedule_check(
    m: SeqFormMatrices,
    leader_strategies: Sequence[BehavioralStrategy],
    pi_f: BehavioralStrategy,
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> ScheduleCheck:
    """Probe `pi_f` at every follower infoset against each leader strategy of a schedule."""
    failures: list[IBestResponseViolation | None] = []
    for pi_l in leader_strategies:
        values = _SubgameValues(m, _leader_gain(m, pi_l), settings)
        failure: IBestResponseViolation | None = None
        for label in m.follower.infosets:
            failure = _check_infoset(values, m, pi_f, label)
            if failure is not None:
                break
        failures.append(failure)
    first: int | None = None
    for k in reversed(range(len(failures))):
        if failures[k] is not None:
            break
        first = k
    return ScheduleCheck(first, tuple(failures))
