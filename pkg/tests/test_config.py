"""Tests for solver settings validation and env loading."""

from fractions import Fraction

import pytest

from qpsse.config import SolverSettings, solver_settings_from_env
from qpsse.exceptions import QpsseError


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in (
        "QPSSE_PIVOT_RULE",
        "QPSSE_HYBRID_DEGENERATE_LIMIT",
        "QPSSE_VERIFY",
        "QPSSE_PARANOID_MAX_NODES",
        "QPSSE_TIMEOUT_PAYOFF",
        "QPSSE_MAX_BNB_NODES",
        "QPSSE_CHECK_ETA",
    ):
        monkeypatch.delenv(name, raising=False)


class TestSolverSettings:
    def test_defaults(self) -> None:
        s = SolverSettings()
        assert s.pivot_rule == "bland"
        assert s.verify == "standard"
        assert s.timeout_payoff == Fraction(-1_000_000)
        assert s.max_bnb_nodes is None
        assert s.check_eta is False

    @pytest.mark.parametrize(
        ("kwargs", "fragment"),
        [
            ({"pivot_rule": "dantzig"}, "pivot_rule must be one of"),
            ({"verify": "loud"}, "verify must be one of"),
            ({"hybrid_degenerate_limit": 0}, "hybrid_degenerate_limit"),
            ({"paranoid_max_nodes": -1}, "paranoid_max_nodes"),
            ({"max_bnb_nodes": 0}, "max_bnb_nodes"),
            ({"timeout_payoff": Fraction(0)}, "timeout_payoff must be negative"),
        ],
    )
    def test_rejects_bad_values(self, kwargs: dict, fragment: str) -> None:
        with pytest.raises(QpsseError, match=fragment):
            SolverSettings(**kwargs)

    def test_replace_keeps_other_fields(self) -> None:
        s = SolverSettings(pivot_rule="hybrid", paranoid_max_nodes=7)
        t = s.replace(verify="paranoid")
        assert (t.pivot_rule, t.paranoid_max_nodes, t.verify) == ("hybrid", 7, "paranoid")
        assert s.verify == "standard"

    def test_replace_validates(self) -> None:
        with pytest.raises(QpsseError, match="verify"):
            SolverSettings().replace(verify="nope")


class TestSettingsFromEnv:
    def test_reads_overrides(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("QPSSE_PIVOT_RULE", "hybrid")
        monkeypatch.setenv("QPSSE_VERIFY", "paranoid")
        monkeypatch.setenv("QPSSE_TIMEOUT_PAYOFF", "-500")
        monkeypatch.setenv("QPSSE_MAX_BNB_NODES", "10")
        monkeypatch.setenv("QPSSE_CHECK_ETA", "1")
        s = solver_settings_from_env()
        assert s.pivot_rule == "hybrid"
        assert s.verify == "paranoid"
        assert s.timeout_payoff == -500
        assert s.max_bnb_nodes == 10
        assert s.check_eta is True

    @pytest.mark.parametrize(
        ("env_name", "value", "fragment"),
        [
            ("QPSSE_PIVOT_RULE", "steepest", "QPSSE_PIVOT_RULE"),
            ("QPSSE_VERIFY", "always", "QPSSE_VERIFY"),
            ("QPSSE_PARANOID_MAX_NODES", "many", "must be an integer"),
            ("QPSSE_TIMEOUT_PAYOFF", "5", "timeout_payoff must be negative"),
            ("QPSSE_CHECK_ETA", "maybe", "QPSSE_CHECK_ETA"),
        ],
    )
    def test_invalid_env_raises(
        self, monkeypatch: pytest.MonkeyPatch, env_name: str, value: str, fragment: str
    ) -> None:
        monkeypatch.setenv(env_name, value)
        with pytest.raises(QpsseError, match=fragment):
            solver_settings_from_env()
