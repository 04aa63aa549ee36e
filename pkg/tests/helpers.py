"""Shared test helpers for the qpsse test suite.

Plain importable helpers (not fixtures) so test modules can compose them
freely: `from tests.helpers import commitment_game, random_game, ...`.
"""

import random
from fractions import Fraction

from qpsse.game import GameTree, NodeSpec, Player, build_game
from qpsse.perturbation import PerturbedInstance, instantiate, miltersen_scheme
from qpsse.seqform import SeqFormMatrices, build_matrices

L, F, C = Player.LEADER, Player.FOLLOWER, Player.CHANCE

# Leader picks U/D, the follower answers l/r without seeing it. The SSE has
# the leader play U with probability 2/3 and the follower r, value 11/3.
COMMITMENT_PAYOFFS = ((2, 1), (4, 0), (1, 0), (3, 2))
COMMITMENT_SSE = Fraction(11, 3)


def commitment_game() -> GameTree:
    (ul, ur, dl, dr) = COMMITMENT_PAYOFFS
    return build_game(
        [
            NodeSpec(L, "L", ("U", "D"), (1, 4)),
            NodeSpec(F, "F", ("l", "r"), (2, 3)),
            NodeSpec.terminal(*ul),
            NodeSpec.terminal(*ur),
            NodeSpec(F, "F", ("l", "r"), (5, 6)),
            NodeSpec.terminal(*dl),
            NodeSpec.terminal(*dr),
        ]
    )


def commitment_sse(eps: Fraction) -> Fraction:
    """SSE value of the ε^|σ|-perturbed commitment game, valid for ε ≤ 1/3."""
    return COMMITMENT_SSE - 2 * eps


def observed_game() -> GameTree:
    """Same payoffs as `commitment_game`, but the follower sees the leader's move."""
    (ul, ur, dl, dr) = COMMITMENT_PAYOFFS
    return build_game(
        [
            NodeSpec(L, "L", ("U", "D"), (1, 4)),
            NodeSpec(F, "F.U", ("l", "r"), (2, 3)),
            NodeSpec.terminal(*ul),
            NodeSpec.terminal(*ur),
            NodeSpec(F, "F.D", ("l", "r"), (5, 6)),
            NodeSpec.terminal(*dl),
            NodeSpec.terminal(*dr),
        ]
    )


def chance_game() -> GameTree:
    """A coin flip the leader observes before a follower move."""
    return build_game(
        [
            NodeSpec(C, "", ("h", "t"), (1, 4), probs=(Fraction(1, 2), Fraction(1, 2))),
            NodeSpec(L, "L.h", ("a", "b"), (2, 3)),
            NodeSpec.terminal(1, 0),
            NodeSpec.terminal(0, 1),
            NodeSpec(F, "F.t", ("c", "d"), (5, 6)),
            NodeSpec.terminal(2, 2),
            NodeSpec.terminal(-1, 3),
        ]
    )


def random_game(
    seed: int,
    *,
    depth: int = 4,
    max_actions: int = 2,
    observe: float = 0.5,
    payoff_range: int = 3,
) -> GameTree:
    """
    Seeded random two-player game with perfect recall and no chance.

    Players alternate, leader first. An infoset label is the mover's own
    (label, action) history, plus the opponent's history when the mover
    observes it, so equal labels always mean equal own histories.
    """
    rng = random.Random(seed)
    specs: list[NodeSpec] = []
    arity: dict[str, int] = {}

    def grow(level: int, own: dict[Player, str]) -> int:
        if level == depth or (level >= 2 and rng.random() < 0.2):
            specs.append(
                NodeSpec.terminal(
                    rng.randint(-payoff_range, payoff_range),
                    rng.randint(-payoff_range, payoff_range),
                )
            )
            return len(specs) - 1
        owner = L if level % 2 == 0 else F
        other = F if owner is L else L
        label = f"{owner.value[0].upper()}({own[owner]})"
        if rng.random() < observe:
            label += f"[{own[other]}]"
        n = arity.setdefault(label, rng.randint(2, max_actions))
        actions = tuple(f"x{i}" for i in range(n))
        node = len(specs)
        specs.append(NodeSpec(owner, label, actions))  # children patched below
        children = []
        for action in actions:
            step = {**own, owner: f"{own[owner]}{label}>{action};"}
            children.append(grow(level + 1, step))
        specs[node] = NodeSpec(owner, label, actions, tuple(children))
        return node

    grow(0, {L: "", F: ""})
    return build_game(specs)


def perturbed(
    game: GameTree, eps: Fraction | int | str = Fraction(1, 10)
) -> tuple[SeqFormMatrices, PerturbedInstance]:
    m = build_matrices(game)
    return m, instantiate(miltersen_scheme(m), m, Fraction(eps))
