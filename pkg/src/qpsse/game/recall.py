"""Perfect-recall check: every node of an infoset shares its owner's own history."""

from dataclasses import dataclass

from qpsse.exceptions import GameError

from .model import STRATEGIC_PLAYERS, GameTree

type History = tuple[tuple[str, str], ...]


@dataclass(frozen=True, slots=True)
class RecallViolation:
    infoset: str
    first_node: int
    second_node: int
    first_history: History
    second_history: History

    def describe(self) -> str:
        def fmt(history: History) -> str:
            return " ".join(f"{label}:{action}" for label, action in history) or "<empty>"

        return (
            f"infoset {self.infoset!r} merges node {self.first_node} "
            f"({fmt(self.first_history)}) with node {self.second_node} "
            f"({fmt(self.second_history)})"
        )


def validate_perfect_recall(game: GameTree) -> RecallViolation | None:
    """Return the first offending infoset, or None when the game has perfect recall."""
    for player in STRATEGIC_PLAYERS:
        for info in game.infosets_of(player):
            first, *rest = info.nodes
            expected = game.action_history(first, player)
            for other in rest:
                got = game.action_history(other, player)
                if got != expected:
                    return RecallViolation(info.label, first, other, expected, got)
    return None


def require_perfect_recall(game: GameTree) -> None:
    violation = validate_perfect_recall(game)
    if violation is not None:
        raise GameError(
            "game does not have perfect recall",
            context={"infoset": violation.infoset, "detail": violation.describe()},
            help_text="Split the infoset so each part shares the owner's own moves.",
        )
