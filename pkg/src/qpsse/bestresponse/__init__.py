from .checks import (
    DualValueViolation,
    IBestResponseViolation,
    ScheduleCheck,
    Theorem2Counterexample,
    check_dual_values,
    check_I_best_response,
    check_theorem2,
    lemma5_schedule_check,
)
from .commitment import (
    Choice,
    Commitment,
    build_commitment_lp,
    commitment_lp,
    enumerate_choices,
    residual_pure_realization,
    residual_pure_residual,
)
from .problems import (
    best_response,
    build_dual,
    build_primal,
    dual_values,
    follower_gain,
    follower_value,
    leakage_value,
    require_leader_plan,
    residual_rhs,
    subgame_value,
    subgame_value_for,
)

__all__ = [
    "Choice",
    "Commitment",
    "DualValueViolation",
    "IBestResponseViolation",
    "ScheduleCheck",
    "Theorem2Counterexample",
    "best_response",
    "build_commitment_lp",
    "build_dual",
    "build_primal",
    "check_I_best_response",
    "check_dual_values",
    "check_theorem2",
    "commitment_lp",
    "dual_values",
    "enumerate_choices",
    "follower_gain",
    "follower_value",
    "leakage_value",
    "lemma5_schedule_check",
    "require_leader_plan",
    "residual_pure_realization",
    "residual_pure_residual",
    "residual_rhs",
    "subgame_value",
    "subgame_value_for",
]
