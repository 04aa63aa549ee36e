"""
Small hand-shaped games used to exercise perturbation schemes.

`gen_observation1_game` has the leader choose a1 or a2 at the root and, after
a2, a3 or a4 at L.2; the follower only moves after a1. With the default
payoffs a1 is optimal at the root and a4 strictly optimal at L.2, so a
scheme that fixes the ratio between the bounds below a2 drags the limit
strategy at L.2 away from a4.

`gen_fig1a_shape` adds a follower infoset F.1 (actions f1, f2) that is
reached both after a1 and after a2 a3 and cannot tell the two apart.
"""

from collections.abc import Sequence
from fractions import Fraction

from qpsse.exceptions import GameError
from qpsse.game import GameTree, Player
from qpsse.perturbation import PerturbationScheme, parse_scheme
from qpsse.seqform import SeqFormMatrices

from ._tree import TreeWriter

type Payoffs = Sequence[tuple[Fraction | int, Fraction | int]]

OBSERVATION1_LEAVES = ("a1 f1", "a1 f2", "a2 a3", "a2 a4")
OBSERVATION1_PAYOFFS: tuple[tuple[int, int], ...] = ((3, 1), (0, 0), (0, 0), (1, 0))

FIG1A_LEAVES = ("a1 f1", "a1 f2", "a2 a3 f1", "a2 a3 f2", "a2 a4")
FIG1A_PAYOFFS: tuple[tuple[int, int], ...] = ((2, 1), (0, 1), (1, 0), (0, 2), (0, 0))


def _check_arity(payoffs: Payoffs, leaves: tuple[str, ...]) -> None:
    if len(payoffs) != len(leaves):
        raise GameError(
            "payoff arity mismatch",
            context={"expected": len(leaves), "got": len(payoffs), "leaves": list(leaves)},
        )


def gen_observation1_game(payoffs: Payoffs = OBSERVATION1_PAYOFFS) -> GameTree:
    """Terminal payoffs are given in `OBSERVATION1_LEAVES` order."""
    _check_arity(payoffs, OBSERVATION1_LEAVES)
    out = TreeWriter()
    root = out.decision(Player.LEADER, "L.1", ("a1", "a2"))
    follower = out.decision(Player.FOLLOWER, "F.1", ("f1", "f2"))
    out.attach(follower, [out.terminal(*payoffs[0]), out.terminal(*payoffs[1])])
    second = out.decision(Player.LEADER, "L.2", ("a3", "a4"))
    out.attach(second, [out.terminal(*payoffs[2]), out.terminal(*payoffs[3])])
    out.attach(root, [follower, second])
    return out.build()


def gen_fig1a_shape(payoffs: Payoffs = FIG1A_PAYOFFS) -> GameTree:
    """Terminal payoffs are given in `FIG1A_LEAVES` order."""
    _check_arity(payoffs, FIG1A_LEAVES)
    out = TreeWriter()
    root = out.decision(Player.LEADER, "L.1", ("a1", "a2"))
    early = out.decision(Player.FOLLOWER, "F.1", ("f1", "f2"))
    out.attach(early, [out.terminal(*payoffs[0]), out.terminal(*payoffs[1])])
    second = out.decision(Player.LEADER, "L.2", ("a3", "a4"))
    late = out.decision(Player.FOLLOWER, "F.1", ("f1", "f2"))
    out.attach(late, [out.terminal(*payoffs[2]), out.terminal(*payoffs[3])])
    out.attach(second, [late, out.terminal(*payoffs[4])])
    out.attach(root, [early, second])
    return out.build()


BAD_RATIO_SCHEME = """\
leader a1 e
leader a2 e
leader a2,a3 1/3*e
leader a2,a4 1/3*e
"""

BAD_CONSTANT_SCHEME = """\
leader a1 e
leader a2 1/3
leader a2,a3 e^2
leader a2,a4 e^2
"""


def bad_ratio_scheme(m: SeqFormMatrices) -> PerturbationScheme:
    """Bounds below a2 shrink only as fast as a2's own bound."""
    return parse_scheme(BAD_RATIO_SCHEME, m, name="bad-ratio")


def bad_constant_scheme(m: SeqFormMatrices) -> PerturbationScheme:
    """a2 keeps a constant 1/3 lower bound."""
    return parse_scheme(BAD_CONSTANT_SCHEME, m, name="bad-constant")
