"""
Goofspiel with a deterministic prize order.

Both players hold cards 1..n. Each round the smallest remaining prize is up
for auction; the leader and the follower bid a card simultaneously, the
higher card wins the prize and a tie discards it. Bids are revealed after
every round. There is no chance player, and ties make the game
non-constant-sum.
"""

from dataclasses import dataclass
from fractions import Fraction

from qpsse.exceptions import GameError
from qpsse.game import GameTree, Player

from ._tree import TreeWriter

type Bid = tuple[int, int]


@dataclass(frozen=True, slots=True)
class GoofspielConfig:
    cards: int = 3
    collapse_forced_moves: bool = True

    def __post_init__(self) -> None:
        if self.cards < 1:
            raise GameError("goofspiel needs at least one card", context={"cards": self.cards})


def _label(prefix: str, history: tuple[Bid, ...]) -> str:
    return prefix + "/" + "/".join(f"{mine}v{theirs}" for mine, theirs in history)


def round_winner(leader_card: int, follower_card: int) -> Player | None:
    if leader_card > follower_card:
        return Player.LEADER
    if follower_card > leader_card:
        return Player.FOLLOWER
    return None


def score(history: tuple[Bid, ...], prizes: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """(leader, follower) prize totals of a complete bid history."""
    leader = follower = Fraction(0)
    for (lc, fc), prize in zip(history, prizes, strict=True):
        match round_winner(lc, fc):
            case Player.LEADER:
                leader += prize
            case Player.FOLLOWER:
                follower += prize
            case _:
                pass
    return leader, follower


def gen_goofspiel(cfg: GoofspielConfig = GoofspielConfig()) -> GameTree:
    deck = tuple(range(1, cfg.cards + 1))
    prizes = deck
    out = TreeWriter()

    def play(history: tuple[Bid, ...]) -> int:
        if len(history) == len(prizes):
            return out.terminal(*score(history, prizes))
        leader_hand = tuple(c for c in deck if c not in {lc for lc, _ in history})
        follower_hand = tuple(c for c in deck if c not in {fc for _, fc in history})

        def follower_turn(leader_card: int) -> int:
            if cfg.collapse_forced_moves and len(follower_hand) == 1:
                return play((*history, (leader_card, follower_hand[0])))
            node = out.decision(
                Player.FOLLOWER, _label("F", history), tuple(f"c{c}" for c in follower_hand)
            )
            out.attach(node, [play((*history, (leader_card, fc))) for fc in follower_hand])
            return node

        if cfg.collapse_forced_moves and len(leader_hand) == 1:
            return follower_turn(leader_hand[0])
        node = out.decision(
            Player.LEADER, _label("L", history), tuple(f"c{c}" for c in leader_hand)
        )
        out.attach(node, [follower_turn(lc) for lc in leader_hand])
        return node

    play(())
    return out.build()


def gen_goofspiel3() -> GameTree:
    return gen_goofspiel(GoofspielConfig(cards=3))
