from .fileformat import dumps_game, game_fingerprint, load_game, parse_game, save_game
from .model import (
    STRATEGIC_PLAYERS,
    BehavioralStrategy,
    GameTree,
    Infoset,
    Node,
    NodeSpec,
    Player,
    build_game,
)
from .recall import RecallViolation, require_perfect_recall, validate_perfect_recall
from .walk import expected_utility, terminal_reach

__all__ = [
    "STRATEGIC_PLAYERS",
    "BehavioralStrategy",
    "GameTree",
    "Infoset",
    "Node",
    "NodeSpec",
    "Player",
    "RecallViolation",
    "build_game",
    "dumps_game",
    "expected_utility",
    "game_fingerprint",
    "load_game",
    "parse_game",
    "require_perfect_recall",
    "save_game",
    "terminal_reach",
    "validate_perfect_recall",
]
