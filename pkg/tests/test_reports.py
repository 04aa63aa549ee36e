import csv
import io
from fractions import Fraction

import pytest

from qpsse.exceptions import QpsseError
from qpsse.perturbation import miltersen_scheme
from qpsse.reports import CSV_HEADER, dumps_solution, dumps_sweep_csv, write_solution, write_sweep_csv
from qpsse.sefce import anytime_qpsse, solve_sse, solve_unperturbed
from qpsse.seqform import build_matrices
from tests.helpers import commitment_game, perturbed

TENTH = Fraction(1, 10)


def _run(schedule, **kwargs):
    m = build_matrices(commitment_game())
    return anytime_qpsse(m, miltersen_scheme(m), schedule, **kwargs)


class TestSolutionFile:
    def test_layout(self):
        _, inst = perturbed(commitment_game())
        text = dumps_solution(solve_sse(inst), mode="sse-perturbed", loss=Fraction(1, 5))
        lines = text.splitlines()
        assert lines[0] == "# qpsse solution"
        assert "mode sse-perturbed" in lines
        assert "eps 1/10" in lines
        assert "scheme miltersen" in lines
        assert "leader_value 52/15" in lines
        assert "follower_value 2/3" in lines
        assert "loss 1/5" in lines
        assert not any(line.startswith("wall_time") for line in lines)
        leader = lines.index("leader")
        assert lines[leader + 1 : leader + 4] == ["- 1", "L:U 2/3", "L:D 1/3"]
        follower = lines.index("follower")
        assert lines[follower + 1 :] == ["- 1", "F:l 1/10", "F:r 9/10"]

    def test_identical_inputs_give_identical_files(self):
        _, inst = perturbed(commitment_game())
        first = dumps_solution(solve_sse(inst), mode="sse-perturbed")
        _, again = perturbed(commitment_game())
        assert dumps_solution(solve_sse(again), mode="sse-perturbed") == first

    def test_wall_time_is_optional(self):
        _, inst = perturbed(commitment_game())
        text = dumps_solution(solve_sse(inst), mode="sse-perturbed", seconds=1.25)
        assert "wall_time 1.250" in text.splitlines()

    def test_write_failure(self, tmp_path):
        _, inst = perturbed(commitment_game())
        with pytest.raises(QpsseError, match="cannot write output file"):
            write_solution(tmp_path / "missing" / "out.txt", solve_sse(inst), mode="sse-perturbed")


class TestSweepCsv:
    def test_rows(self):
        run = _run([Fraction(1), Fraction(1, 4), TENTH])
        rows = list(csv.reader(io.StringIO(dumps_sweep_csv(run.rows))))
        assert tuple(rows[0]) == CSV_HEADER
        assert rows[1][:5] == ["1", "", "failed", "", "failed"]
        assert rows[2][:5] == ["1/4", "19/6", "3.16666666667", "1/2", "0.5"]
        assert rows[3][:5] == ["1/10", "52/15", "3.46666666667", "1/5", "0.2"]
        assert rows[3][7] != ""

    def test_timeout_row(self):
        m = build_matrices(commitment_game())
        run = anytime_qpsse(
            m, miltersen_scheme(m), [TENTH], timeout_seconds=1e-9, baseline=solve_unperturbed(m)
        )
        rows = list(csv.reader(io.StringIO(dumps_sweep_csv(run.rows, timings=False))))
        assert rows[1] == ["1/10", "", "timeout", "", "timeout", "0", "0", ""]

    def test_no_timings_is_deterministic(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        write_sweep_csv(first, _run([Fraction(1, 4), TENTH]), timings=False)
        write_sweep_csv(second, _run([Fraction(1, 4), TENTH]), timings=False)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text(encoding="utf-8").splitlines()[1].endswith(",")
