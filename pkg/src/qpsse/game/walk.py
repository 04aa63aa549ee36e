"""Direct tree walks under behavioral profiles (the ground truth for sequence-form identities)."""

from fractions import Fraction

from .model import BehavioralStrategy, GameTree, Player


def terminal_reach(
    game: GameTree, leader: BehavioralStrategy, follower: BehavioralStrategy
) -> dict[int, Fraction]:
    """Probability of reaching each terminal, chance included."""
    strategies = {Player.LEADER: leader, Player.FOLLOWER: follower}
    reach: dict[int, Fraction] = {}
    stack: list[tuple[int, Fraction]] = [(game.root, Fraction(1))]
    while stack:
        node_id, prob = stack.pop()
        node = game.node(node_id)
        if node.is_terminal:
            reach[node_id] = prob
            continue
        for a, child in enumerate(node.children):
            if node.owner is Player.CHANCE:
                step = node.probs[a]
            else:
                assert node.owner is not None and node.infoset is not None
                step = strategies[node.owner].prob(node.infoset, a)
            stack.append((child, prob * step))
    return reach


def expected_utility(
    game: GameTree, leader: BehavioralStrategy, follower: BehavioralStrategy
) -> tuple[Fraction, Fraction]:
    total_l = Fraction(0)
    total_f = Fraction(0)
    for node_id, prob in terminal_reach(game, leader, follower).items():
        payoff = game.node(node_id).payoff
        assert payoff is not None
        total_l += prob * payoff[0]
        total_f += prob * payoff[1]
    return total_l, total_f
