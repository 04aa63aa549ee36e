from .anytime import AnytimeRun, RowStatus, ScheduleRow, anytime_qpsse, validate_schedule
from .bnb import BnBNode, branch_select, solve_sse, solve_unperturbed
from .extract import (
    SseResult,
    extract_profile,
    is_residual_pure,
    positive_actions,
    recommended_mass,
    try_extract,
)
from .lp import Channel, SefceLP, build_sefce_lp
from .stats import BnBStats
from .verify import brute_force_sse_value, cross_check

__all__ = [
    "AnytimeRun",
    "BnBNode",
    "BnBStats",
    "Channel",
    "RowStatus",
    "ScheduleRow",
    "SefceLP",
    "SseResult",
    "anytime_qpsse",
    "branch_select",
    "brute_force_sse_value",
    "build_sefce_lp",
    "cross_check",
    "extract_profile",
    "is_residual_pure",
    "positive_actions",
    "recommended_mass",
    "solve_sse",
    "solve_unperturbed",
    "try_extract",
    "validate_schedule",
]
