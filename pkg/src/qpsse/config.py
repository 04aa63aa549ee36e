"""Process-level solver configuration (pivot rule, verification, limits).

CLI flags override these values; library callers build `SolverSettings`
directly or read the environment with `solver_settings_from_env`.
"""

from collections.abc import Callable
from fractions import Fraction
from typing import Literal

from qpsse._env import env_bool, env_choice, env_int, env_optional_int, env_rational
from qpsse.exceptions import QpsseError

type PivotRule = Literal["bland", "hybrid"]
type VerifyLevel = Literal["off", "standard", "paranoid"]

PIVOT_RULES: tuple[PivotRule, ...] = ("bland", "hybrid")
VERIFY_LEVELS: tuple[VerifyLevel, ...] = ("off", "standard", "paranoid")

DEFAULT_PIVOT_RULE: PivotRule = "bland"
DEFAULT_HYBRID_DEGENERATE_LIMIT = 50
DEFAULT_VERIFY: VerifyLevel = "standard"
DEFAULT_PARANOID_MAX_NODES = 200
DEFAULT_TIMEOUT_PAYOFF = Fraction(-1_000_000)


class SolverSettings:
    """Knobs shared by the LP solver, the branch-and-bound, and the checks.

    `verify` controls post-solve certificates: `off` skips the optional
    slackness check on extracted best responses, `standard` runs it on every ε, and
    `paranoid` also cross-checks against brute-force oracles on games with at
    most `paranoid_max_nodes` nodes. LP certificates (duality, slackness) are
    always checked.
    """

    __slots__ = (
        "check_eta",
        "hybrid_degenerate_limit",
        "max_bnb_nodes",
        "paranoid_max_nodes",
        "pivot_rule",
        "timeout_payoff",
        "verify",
    )

    def __init__(
        self,
        *,
        pivot_rule: PivotRule = DEFAULT_PIVOT_RULE,
        hybrid_degenerate_limit: int = DEFAULT_HYBRID_DEGENERATE_LIMIT,
        verify: VerifyLevel = DEFAULT_VERIFY,
        paranoid_max_nodes: int = DEFAULT_PARANOID_MAX_NODES,
        timeout_payoff: Fraction = DEFAULT_TIMEOUT_PAYOFF,
        max_bnb_nodes: int | None = None,
        check_eta: bool = False,
    ) -> None:
        if pivot_rule not in PIVOT_RULES:
            raise QpsseError(
                f"pivot_rule must be one of {', '.join(PIVOT_RULES)}",
                context={"pivot_rule": pivot_rule},
                help_text="Use 'bland' unless you are timing large instances.",
            )
        if verify not in VERIFY_LEVELS:
            raise QpsseError(
                f"verify must be one of {', '.join(VERIFY_LEVELS)}",
                context={"verify": verify},
            )
        if hybrid_degenerate_limit < 1:
            raise QpsseError(
                "hybrid_degenerate_limit must be at least 1",
                help_text="It counts consecutive degenerate pivots before Bland takes over.",
            )
        if paranoid_max_nodes < 0:
            raise QpsseError("paranoid_max_nodes must be non-negative")
        if max_bnb_nodes is not None and max_bnb_nodes < 1:
            raise QpsseError(
                "max_bnb_nodes must be at least 1",
                help_text="Leave it unset for an exhaustive search.",
            )
        if timeout_payoff >= 0:
            raise QpsseError(
                "timeout_payoff must be negative",
                context={"timeout_payoff": str(timeout_payoff)},
                help_text="It stands in for minus infinity; pick a value below every reachable payoff.",
            )
        self.pivot_rule: PivotRule = pivot_rule
        self.hybrid_degenerate_limit = hybrid_degenerate_limit
        self.verify: VerifyLevel = verify
        self.paranoid_max_nodes = paranoid_max_nodes
        self.timeout_payoff = timeout_payoff
        self.max_bnb_nodes = max_bnb_nodes
        self.check_eta = check_eta

    def replace(self, **changes: object) -> SolverSettings:
        values: dict[str, object] = {name: getattr(self, name) for name in self.__slots__}
        values.update(changes)
        return SolverSettings(**values)  # type: ignore[arg-type]


def _config_from_env[T](build: Callable[[], T]) -> T:
    try:
        return build()
    except ValueError as exc:
        raise QpsseError(str(exc)) from exc


def solver_settings_from_env() -> SolverSettings:
    """Read `QPSSE_*` solver settings; invalid values raise `QpsseError`."""
    return _config_from_env(
        lambda: SolverSettings(
            pivot_rule=env_choice("QPSSE_PIVOT_RULE", DEFAULT_PIVOT_RULE, PIVOT_RULES),  # type: ignore[arg-type]
            hybrid_degenerate_limit=env_int(
                "QPSSE_HYBRID_DEGENERATE_LIMIT", DEFAULT_HYBRID_DEGENERATE_LIMIT
            ),
            verify=env_choice("QPSSE_VERIFY", DEFAULT_VERIFY, VERIFY_LEVELS),  # type: ignore[arg-type]
            paranoid_max_nodes=env_int(
                "QPSSE_PARANOID_MAX_NODES", DEFAULT_PARANOID_MAX_NODES
            ),
            timeout_payoff=env_rational("QPSSE_TIMEOUT_PAYOFF", DEFAULT_TIMEOUT_PAYOFF),
            max_bnb_nodes=env_optional_int("QPSSE_MAX_BNB_NODES"),
            check_eta=env_bool("QPSSE_CHECK_ETA", False),
        )
    )


DEFAULT_SETTINGS = SolverSettings()
