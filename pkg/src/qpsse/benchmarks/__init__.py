"""Benchmark and example game generators."""

from .goofspiel import GoofspielConfig, gen_goofspiel, gen_goofspiel3, round_winner, score
from .search import (
    GOALS,
    GRAPH_EDGES,
    PATROL_ZONES,
    WAIT,
    SearchGameConfig,
    default_graph,
    gen_search_game,
)
from .shapes import (
    BAD_CONSTANT_SCHEME,
    BAD_RATIO_SCHEME,
    FIG1A_LEAVES,
    FIG1A_PAYOFFS,
    OBSERVATION1_LEAVES,
    OBSERVATION1_PAYOFFS,
    bad_constant_scheme,
    bad_ratio_scheme,
    gen_fig1a_shape,
    gen_observation1_game,
)

GAME_NAMES: tuple[str, ...] = ("goofspiel3", "search", "observation1", "fig1a")

__all__ = [
    "BAD_CONSTANT_SCHEME",
    "BAD_RATIO_SCHEME",
    "FIG1A_LEAVES",
    "FIG1A_PAYOFFS",
    "GAME_NAMES",
    "GOALS",
    "GRAPH_EDGES",
    "OBSERVATION1_LEAVES",
    "OBSERVATION1_PAYOFFS",
    "PATROL_ZONES",
    "WAIT",
    "GoofspielConfig",
    "SearchGameConfig",
    "bad_constant_scheme",
    "bad_ratio_scheme",
    "default_graph",
    "gen_fig1a_shape",
    "gen_goofspiel",
    "gen_goofspiel3",
    "gen_observation1_game",
    "gen_search_game",
    "round_winner",
    "score",
]
