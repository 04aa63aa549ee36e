import time
from fractions import Fraction
from types import SimpleNamespace

import pytest

from qpsse.benchmarks import bad_ratio_scheme, gen_observation1_game
from qpsse.config import SolverSettings
from qpsse.exceptions import QpsseError, SchemeError, SolverInvariantError, SolveTimeout, UnsupportedGameError
from qpsse.lp import solve
from qpsse.perturbation import instantiate, instantiate_unperturbed, miltersen_scheme
from qpsse.seqform import EMPTY, build_matrices, relevance
from qpsse.sefce import (
    RowStatus,
    anytime_qpsse,
    branch_select,
    brute_force_sse_value,
    build_sefce_lp,
    cross_check,
    extract_profile,
    is_residual_pure,
    recommended_mass,
    solve_sse,
    solve_unperturbed,
    validate_schedule,
)
from qpsse.testing import TestTracer
from tests.helpers import (
    COMMITMENT_SSE,
    F,
    chance_game,
    commitment_game,
    commitment_sse,
    observed_game,
    perturbed,
    random_game,
)
from tests.oracles import brute_force_sse

TENTH = Fraction(1, 10)
PARANOID = SolverSettings(verify="paranoid")


class TestSefceLP:
    def test_chance_is_rejected(self):
        m = build_matrices(chance_game())
        inst = instantiate(miltersen_scheme(m), m, TENTH)
        with pytest.raises(UnsupportedGameError, match="chance nodes unsupported"):
            build_sefce_lp(inst, relevance(m))

    @pytest.mark.parametrize(
        ("forced", "message"),
        [({"L": 0}, "not a follower infoset"), ({"F": 2}, "out of range")],
    )
    def test_bad_forcing(self, forced, message: str):
        m, inst = perturbed(commitment_game())
        with pytest.raises(QpsseError, match=message):
            build_sefce_lp(inst, relevance(m), forced)

    def test_one_channel_per_infoset_with_slack(self):
        m, inst = perturbed(observed_game())
        built = build_sefce_lp(inst, relevance(m))
        assert [c.root for c in built.channels] == ["F.U", "F.D"]
        assert all(c.slack == Fraction(4, 5) for c in built.channels)

    def test_unperturbed_keeps_root_channels_only(self):
        m = build_matrices(gen_observation1_game())
        built = build_sefce_lp(instantiate_unperturbed(m), relevance(m))
        assert [(c.root, c.slack) for c in built.channels] == [("F.1", 1)]


class TestExtraction:
    @pytest.mark.parametrize(("action", "value"), [(1, Fraction(52, 15)), (0, Fraction(21, 10))])
    def test_forced_commitment_game(self, action: int, value: Fraction):
        m, inst = perturbed(commitment_game())
        built = build_sefce_lp(inst, relevance(m), {"F": action})
        sol = solve(built.lp)
        assert is_residual_pure(built, sol)
        assert recommended_mass(built, sol, "F", 1 - action) == 0
        assert recommended_mass(built, sol, "F", action) > 0
        result = extract_profile(built, sol)
        assert result.leader_value == value == sol.objective
        assert dict(result.choice) == {"F": action}
        l_seq = m.follower.children["F"][0]
        assert result.follower.values[l_seq] == (TENTH if action else 1 - TENTH)


class TestBranchSelect:
    @staticmethod
    def _values(built, masses: dict[int, Fraction]) -> SimpleNamespace:
        values = [Fraction(0)] * built.lp.num_variables
        channel = built.channels[0]
        for seq, mass in masses.items():
            values[channel.p[(EMPTY, seq)]] = mass
        return SimpleNamespace(values=values)

    def test_split_mass_orders_actions(self):
        m, inst = perturbed(commitment_game())
        built = build_sefce_lp(inst, relevance(m))
        l_seq, r_seq = m.follower.children["F"]
        sol = self._values(built, {l_seq: Fraction(1, 4), r_seq: Fraction(3, 4)})
        assert branch_select(built, sol) == ("F", (1, 0))
        tied = self._values(built, {l_seq: Fraction(1, 2), r_seq: Fraction(1, 2)})
        assert branch_select(built, tied) == ("F", (0, 1))

    def test_pure_recommendation_has_no_split(self):
        m, inst = perturbed(commitment_game())
        built = build_sefce_lp(inst, relevance(m))
        r_seq = m.follower.children["F"][1]
        assert branch_select(built, self._values(built, {r_seq: Fraction(1)})) is None


class TestSolveSse:
    def test_unperturbed_commitment_game(self):
        result = solve_unperturbed(build_matrices(commitment_game()))
        assert result.leader_value == COMMITMENT_SSE
        assert result.eps is None
        assert result.leader.values == (1, Fraction(2, 3), Fraction(1, 3))

    @pytest.mark.parametrize("eps", [TENTH, Fraction(1, 4), Fraction(1, 3), Fraction(1, 100)])
    def test_perturbed_commitment_game(self, eps: Fraction):
        _, inst = perturbed(commitment_game(), eps)
        result = solve_sse(inst)
        assert result.leader_value == commitment_sse(eps)
        assert result.follower_value == Fraction(2, 3)
        assert result.choice == {"F": 1}
        pi_l = result.leader_strategy()
        assert pi_l.probs["L"] == (Fraction(2, 3), Fraction(1, 3))
        assert result.follower_strategy().probs["F"] == (eps, 1 - eps)

    @pytest.mark.parametrize("eps", [TENTH, Fraction(1, 50)])
    @pytest.mark.parametrize("seed", range(20))
    def test_random_games_match_vertex_oracle(self, seed: int, eps: Fraction):
        _, inst = perturbed(random_game(seed, depth=4), eps)
        result = solve_sse(inst, settings=PARANOID)
        assert result.leader_value == brute_force_sse(inst)
        assert result.leader_value == brute_force_sse_value(inst)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_games_unperturbed(self, seed: int):
        m = build_matrices(random_game(seed, depth=4, max_actions=3))
        result = solve_unperturbed(m)
        assert result.leader_value == brute_force_sse_value(result.inst)

    def test_cross_check_rejects_a_wrong_value(self):
        _, inst = perturbed(commitment_game())
        result = solve_sse(inst)
        tampered = type(result)(
            inst=result.inst,
            leader=result.leader,
            follower=result.follower,
            leader_value=result.leader_value + 1,
            follower_value=result.follower_value,
            choice=result.choice,
            certificate=result.certificate,
        )
        with pytest.raises(SolverInvariantError, match="brute-force oracle"):
            cross_check(tampered)

    def test_chance_game_is_unsupported(self):
        m = build_matrices(chance_game())
        with pytest.raises(UnsupportedGameError):
            solve_sse(instantiate(miltersen_scheme(m), m, TENTH))

    def test_node_cap(self):
        for seed in range(40):
            _, inst = perturbed(random_game(seed, depth=5, max_actions=3), Fraction(1, 5))
            nodes = solve_sse(inst).stats.nodes
            if nodes > 1:
                break
        else:
            pytest.fail("no random game needed branching")
        capped = SolverSettings(max_bnb_nodes=nodes - 1)
        with pytest.raises(SolverInvariantError, match="node cap"):
            solve_sse(inst, settings=capped)

    def test_deadline_in_the_past(self):
        _, inst = perturbed(commitment_game())
        with pytest.raises(SolveTimeout) as info:
            solve_sse(inst, deadline=time.monotonic() - 1)
        assert info.value.incumbent is None

    def test_pivot_rules_agree(self):
        _, inst = perturbed(random_game(3, depth=5, max_actions=3), Fraction(1, 5))
        bland = solve_sse(inst)
        hybrid = solve_sse(inst, settings=SolverSettings(pivot_rule="hybrid"))
        assert bland.leader_value == hybrid.leader_value


class TestTelemetry:
    def test_solve_span_carries_counters_and_checks(self):
        _, inst = perturbed(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("solve", {"eps": "1/10"}) as span:
            solve_sse(inst, span=span)
        solved = tracer.find_span("solve")
        assert solved is not None
        assert tracer.has_attribute(solved, "leader_value", "52/15")
        assert solved.attributes["bnb.nodes"] >= 1
        assert solved.attributes["lp.solves"] >= 1
        assert tracer.has_event(solved, "bnb.incumbent")
        (check,) = tracer.get_events(solved, name="verify.theorem2")
        assert check.attributes["ok"] is True
        assert not tracer.has_event(solved, "verify.oracle")

    def test_verify_off_skips_checks(self):
        _, inst = perturbed(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("solve") as span:
            solve_sse(inst, span=span, settings=SolverSettings(verify="off"))
        solved = tracer.find_span("solve")
        assert solved is not None
        assert not tracer.has_event(solved, "verify.theorem2")

    def test_paranoid_runs_the_oracle(self):
        _, inst = perturbed(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("solve") as span:
            solve_sse(inst, span=span, settings=PARANOID)
        solved = tracer.find_span("solve")
        assert solved is not None
        (oracle,) = tracer.get_events(solved, name="verify.oracle")
        assert oracle.attributes["ok"] is True
        assert oracle.attributes["oracle_value"] == "52/15"

    def test_paranoid_respects_size_limit(self):
        _, inst = perturbed(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("solve") as span:
            solve_sse(inst, span=span, settings=PARANOID.replace(paranoid_max_nodes=3))
        solved = tracer.find_span("solve")
        assert solved is not None
        assert not tracer.has_event(solved, "verify.oracle")


class TestSchedule:
    @pytest.mark.parametrize(
        ("schedule", "message"),
        [
            ([], "empty"),
            ([Fraction(0)], "must lie in"),
            ([Fraction(3, 2)], "must lie in"),
            ([TENTH, TENTH], "strictly decreasing"),
            ([TENTH, Fraction(1, 5)], "strictly decreasing"),
        ],
    )
    def test_validate_schedule_errors(self, schedule, message: str):
        with pytest.raises(SchemeError, match=message):
            validate_schedule(schedule)

    def test_validate_schedule_accepts_ints_and_fractions(self):
        assert validate_schedule([1, TENTH]) == (Fraction(1), TENTH)


class TestAnytime:
    def test_losses_shrink_with_eps(self):
        m = build_matrices(commitment_game())
        run = anytime_qpsse(m, miltersen_scheme(m), [Fraction(1, 4), TENTH, Fraction(1, 100)])
        assert run.baseline.leader_value == COMMITMENT_SSE
        assert [row.status for row in run.rows] == [RowStatus.OK] * 3
        assert [row.loss for row in run.rows] == [Fraction(1, 2), Fraction(1, 5), Fraction(1, 50)]
        assert run.final is not None and run.final.eps == Fraction(1, 100)
        assert run.limit_check is None

    def test_infeasible_eps_is_recorded_and_skipped(self):
        m = build_matrices(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("sweep") as sweep:
            run = anytime_qpsse(m, miltersen_scheme(m), [Fraction(1), TENTH], span=sweep)
        assert [row.status for row in run.rows] == [RowStatus.FAILED, RowStatus.OK]
        assert run.rows[0].error is not None and run.rows[0].result is None
        solves = tracer.spans("solve")
        assert [s.attributes["eps"] for s in solves] == ["0", "1", "1/10"]
        assert solves[1].status == "error"
        assert solves[2].attributes["loss"] == "1/5"
        assert solves[2].attributes["mode"] == "qpsse-anytime"

    def test_timeout_row_keeps_going(self):
        m = build_matrices(commitment_game())
        baseline = solve_unperturbed(m)
        tracer = TestTracer()
        with tracer, tracer.create("sweep") as sweep:
            run = anytime_qpsse(
                m,
                miltersen_scheme(m),
                [TENTH],
                span=sweep,
                timeout_seconds=1e-9,
                baseline=baseline,
            )
        (row,) = run.rows
        assert row.status is RowStatus.TIMEOUT
        assert row.loss is None
        assert run.final is None
        (solved,) = tracer.spans("solve")
        assert tracer.has_event(solved, "solve.timeout")

    def test_baseline_solve_respects_the_time_limit(self):
        m = build_matrices(observed_game())
        tracer = TestTracer()
        with tracer, tracer.create("sweep") as sweep:
            with pytest.raises(SolveTimeout, match="unperturbed baseline") as info:
                anytime_qpsse(m, miltersen_scheme(m), [TENTH], span=sweep, timeout_seconds=1e-9)
        assert info.value.context["eps"] == "0"
        assert info.value.exit_code == 4
        (baseline,) = tracer.spans("solve")
        assert baseline.attributes["mode"] == "sse-unperturbed"
        assert baseline.status == "error"

    def test_paranoid_runs_the_limit_probe(self):
        m = build_matrices(commitment_game())
        tracer = TestTracer()
        with tracer, tracer.create("sweep") as sweep:
            run = anytime_qpsse(
                m, miltersen_scheme(m), [TENTH, Fraction(1, 100)], settings=PARANOID, span=sweep
            )
        assert run.limit_check is not None
        assert run.limit_check.first_passing == 0
        swept = tracer.find_span("sweep")
        assert swept is not None
        assert tracer.has_event(swept, "verify.lemma5")

    def test_follower_keeps_a_floor_on_every_action(self):
        m = build_matrices(observed_game())
        run = anytime_qpsse(m, miltersen_scheme(m), [TENTH])
        final = run.final
        assert final is not None and final.result is not None
        pi_f = final.result.follower_strategy()
        assert all(p >= TENTH for probs in pi_f.probs.values() for p in probs)
        assert set(pi_f.probs) == set(m.table(F).infosets)


class TestObservation1:
    """a1 wins at the root; a4 is the better continuation at L.2."""

    @pytest.mark.parametrize("eps", [TENTH, Fraction(1, 100)])
    def test_fixed_ratio_scheme_pins_the_limit_strategy(self, eps: Fraction):
        m = build_matrices(gen_observation1_game())
        inst = instantiate(bad_ratio_scheme(m), m, eps)
        result = solve_sse(inst, settings=PARANOID)
        assert result.leader_strategy().probs["L.2"] == (Fraction(1, 3), Fraction(2, 3))
        assert result.leader_value == 3 * (1 - eps) ** 2 + Fraction(2, 3) * eps
        assert result.leader_value == brute_force_sse(inst)

    def test_vanishing_scheme_converges_to_a4(self):
        m = build_matrices(gen_observation1_game())
        schedule = [TENTH, Fraction(1, 100), Fraction(1, 1000)]
        run = anytime_qpsse(m, miltersen_scheme(m), schedule)
        assert [row.status for row in run.rows] == [RowStatus.OK] * 3
        a4 = [row.result.leader_strategy().probs["L.2"][1] for row in run.rows if row.result]
        assert a4 == [1 - eps for eps in schedule]
        assert run.baseline.leader_value == 3
        assert [row.loss for row in run.rows] == [
            3 - (3 * (1 - eps) ** 2 + eps - eps**2) for eps in schedule
        ]

    def test_limit_check_follows_the_pure_choice(self):
        m = build_matrices(gen_observation1_game())
        run = anytime_qpsse(m, miltersen_scheme(m), [TENTH, Fraction(1, 100)], settings=PARANOID)
        final = run.final
        assert final is not None and final.result is not None
        assert final.result.follower_strategy().probs["F.1"] == (Fraction(99, 100), Fraction(1, 100))
        assert final.result.limit_follower_strategy().probs["F.1"] == (1, 0)
        assert run.limit_check is not None
        assert run.limit_check.first_passing == 0
        assert run.limit_check.failures == (None, None)
