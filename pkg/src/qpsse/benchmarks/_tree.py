from dataclasses import replace
from fractions import Fraction

from qpsse.game import GameTree, NodeSpec, Player, build_game


class TreeWriter:
    """Collects `NodeSpec`s in preorder so generated ids are deterministic."""

    __slots__ = ("_specs",)

    def __init__(self) -> None:
        self._specs: list[NodeSpec] = []

    def decision(self, owner: Player, infoset: str, actions: tuple[str, ...]) -> int:
        """Reserve a decision node; its children are attached with `attach`."""
        self._specs.append(NodeSpec(owner, infoset, actions))
        return len(self._specs) - 1

    def attach(self, node: int, children: list[int]) -> None:
        self._specs[node] = replace(self._specs[node], children=tuple(children))

    def terminal(self, leader: Fraction | int, follower: Fraction | int) -> int:
        self._specs.append(NodeSpec.terminal(leader, follower))
        return len(self._specs) - 1

    def build(self) -> GameTree:
        return build_game(self._specs)
