"""
Solution files and ε-sweep CSV files.

A solution file is line-oriented text: `key value` header lines, then a
`leader` and a `follower` section with one `<sequence> <probability>` line
per sequence. Probabilities and values are exact rationals. Wall time is the
only non-deterministic field; `timings=False` leaves it out so that equal
inputs give byte-identical files.

The CSV header is fixed. Float columns are display-only renderings of the
exact column to their left; a row whose ε did not finish leaves the exact
columns empty and writes its status (`timeout` or `failed`) in the float
columns.
"""

import csv
import io
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

from qpsse.exceptions import QpsseError
from qpsse.game import game_fingerprint
from qpsse.numeric import as_float_text, format_rational
from qpsse.perturbation import scheme_fingerprint
from qpsse.sefce import AnytimeRun, RowStatus, ScheduleRow, SseResult

CSV_HEADER: tuple[str, ...] = (
    "epsilon",
    "leader_value_exact",
    "leader_value",
    "loss_exact",
    "loss",
    "lp_solves",
    "bnb_nodes",
    "seconds",
)


def dumps_solution(
    result: SseResult,
    *,
    mode: str,
    loss: Fraction | None = None,
    seconds: float | None = None,
) -> str:
    inst = result.inst
    m = inst.matrices
    lines = [
        "# qpsse solution",
        f"mode {mode}",
        f"eps {'0' if inst.eps is None else format_rational(inst.eps)}",
        f"scheme {inst.scheme.name}",
        f"game_fingerprint {game_fingerprint(inst.game)}",
        f"scheme_fingerprint {scheme_fingerprint(inst.scheme, m)}",
        f"leader_value {format_rational(result.leader_value)}",
        f"follower_value {format_rational(result.follower_value)}",
    ]
    if loss is not None:
        lines.append(f"loss {format_rational(loss)}")
    lines.append(f"bnb_nodes {result.stats.nodes}")
    lines.append(f"lp_solves {result.stats.lp_solves}")
    if seconds is not None:
        lines.append(f"wall_time {seconds:.3f}")
    for section, plan in (("leader", result.leader), ("follower", result.follower)):
        lines.append(section)
        lines.extend(f"{name} {format_rational(value)}" for name, value in plan.as_named().items())
    return "\n".join(lines) + "\n"


def _csv_row(row: ScheduleRow, *, timings: bool) -> list[str]:
    seconds = f"{row.seconds:.3f}" if timings else ""
    counts = [str(row.stats.lp_solves), str(row.stats.nodes), seconds]
    if row.status is not RowStatus.OK or row.result is None or row.loss is None:
        status = row.status.value
        return [format_rational(row.eps), "", status, "", status, *counts]
    value = row.result.leader_value
    return [
        format_rational(row.eps),
        format_rational(value),
        as_float_text(value),
        format_rational(row.loss),
        as_float_text(row.loss),
        *counts,
    ]


def dumps_sweep_csv(rows: Iterable[ScheduleRow], *, timings: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_csv_row(row, timings=timings))
    return buffer.getvalue()


def _write(path: Path | str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise QpsseError(
            f"cannot write output file: {exc.strerror}", context={"path": str(path)}
        ) from exc


def write_solution(
    path: Path | str,
    result: SseResult,
    *,
    mode: str,
    loss: Fraction | None = None,
    seconds: float | None = None,
) -> None:
    _write(path, dumps_solution(result, mode=mode, loss=loss, seconds=seconds))


def write_sweep_csv(path: Path | str, run: AnytimeRun, *, timings: bool = True) -> None:
    _write(path, dumps_sweep_csv(run.rows, timings=timings))
