"""
Anytime approximation of a quasi-perfect SSE.

Solve Γ(ε) for a strictly decreasing schedule of ε and report each SSE
against the unperturbed baseline. A failed or timed-out ε is recorded and
the schedule moves on; certificate failures still propagate. The baseline
solve gets the same time limit as each ε and raises `SolveTimeout` past it.
"""

import time
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from qpsse.bestresponse import ScheduleCheck, lemma5_schedule_check
from qpsse.config import DEFAULT_SETTINGS, SolverSettings
from qpsse.exceptions import InfeasibleInstanceError, QpsseError, SchemeError, SolveTimeout
from qpsse.perturbation import PerturbationScheme, instantiate
from qpsse.seqform import SeqFormMatrices, relevance
from qpsse.telemetry import NOOP_SPAN, Span

from .bnb import solve_sse, solve_unperturbed
from .extract import SseResult
from .stats import BnBStats


class RowStatus(StrEnum):
    OK = "ok"
    TIMEOUT = "timeout"
    FAILED = "failed"


@dataclass(frozen=True, slots=True)
class ScheduleRow:
    eps: Fraction
    status: RowStatus
    result: SseResult | None
    loss: Fraction | None
    seconds: float
    stats: BnBStats
    error: QpsseError | None = None


@dataclass(frozen=True, slots=True)
class AnytimeRun:
    baseline: SseResult
    rows: tuple[ScheduleRow, ...]
    limit_check: ScheduleCheck | None = None

    @property
    def final(self) -> ScheduleRow | None:
        done = [row for row in self.rows if row.status is RowStatus.OK]
        return done[-1] if done else None


def validate_schedule(schedule: Iterable[Fraction]) -> tuple[Fraction, ...]:
    values = tuple(Fraction(eps) for eps in schedule)
    if not values:
        raise SchemeError("ε schedule is empty")
    for eps in values:
        if not 0 < eps <= 1:
            raise SchemeError("ε must lie in (0, 1]", context={"eps": str(eps)})
    for prev, nxt in zip(values, values[1:]):
        if nxt >= prev:
            raise SchemeError(
                "ε schedule must be strictly decreasing",
                context={"at": str(nxt), "after": str(prev)},
                example="--eps-schedule 1/10,1/100,1/1000",
            )
    return values


def anytime_qpsse(
    m: SeqFormMatrices,
    scheme: PerturbationScheme,
    schedule: Iterable[Fraction],
    *,
    settings: SolverSettings = DEFAULT_SETTINGS,
    span: Span = NOOP_SPAN,
    timeout_seconds: float | None = None,
    baseline: SseResult | None = None,
    mode: str = "qpsse-anytime",
) -> AnytimeRun:
    values = validate_schedule(schedule)
    if baseline is None:
        deadline = None if timeout_seconds is None else time.monotonic() + timeout_seconds
        with span.step("solve", {"eps": "0", "mode": "sse-unperturbed"}) as child:
            try:
                baseline = solve_unperturbed(m, settings=settings, span=child, deadline=deadline)
            except SolveTimeout as exc:
                raise SolveTimeout(
                    "unperturbed baseline hit the time limit",
                    context={**exc.context, "timeout_seconds": timeout_seconds},
                    help_text="Raise --timeout-seconds; the baseline is needed for every loss.",
                ) from exc
    rel = relevance(m)
    rows: list[ScheduleRow] = []
    for eps in values:
        stats = BnBStats()
        started = time.monotonic()
        deadline = None if timeout_seconds is None else started + timeout_seconds
        with span.step("solve", {"eps": str(eps), "mode": mode}) as child:
            try:
                inst = instantiate(scheme, m, eps, settings=settings)
                result = solve_sse(
                    inst, settings=settings, span=child, rel=rel, stats=stats, deadline=deadline
                )
            except SolveTimeout as exc:
                partial: SseResult | None = exc.incumbent
                child.event("solve.timeout", {"nodes": stats.nodes})
                rows.append(
                    ScheduleRow(
                        eps,
                        RowStatus.TIMEOUT,
                        partial,
                        None if partial is None else baseline.leader_value - partial.leader_value,
                        time.monotonic() - started,
                        stats,
                        exc,
                    )
                )
                continue
            except InfeasibleInstanceError as exc:
                child.exception(exc)
                child.fail(exc.message)
                rows.append(
                    ScheduleRow(
                        eps, RowStatus.FAILED, None, None, time.monotonic() - started, stats, exc
                    )
                )
                continue
            loss = baseline.leader_value - result.leader_value
            child.attr("loss", str(loss))
            rows.append(
                ScheduleRow(eps, RowStatus.OK, result, loss, time.monotonic() - started, stats)
            )
    limit_check = None
    if settings.verify == "paranoid":
        limit_check = _limit_check(m, rows, settings)
        if limit_check is not None:
            span.event("verify.lemma5", {"first_passing": limit_check.first_passing})
    return AnytimeRun(baseline, tuple(rows), limit_check)


def _limit_check(
    m: SeqFormMatrices, rows: list[ScheduleRow], settings: SolverSettings
) -> ScheduleCheck | None:
    solved = [row.result for row in rows if row.status is RowStatus.OK and row.result is not None]
    if not solved:
        return None
    final = solved[-1].limit_follower_strategy()
    return lemma5_schedule_check(
        m, [r.leader_strategy() for r in solved], final, settings=settings
    )
