"""
Two-player extensive-form games with a chance player.

`build_game` turns a flat list of `NodeSpec` into a validated, immutable
`GameTree`. Node ids are the list positions. The tree is checked with
networkx (cycles, nodes with two parents, unreachable nodes) before any
game-theoretic validation runs, so later passes can assume a rooted tree.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from types import MappingProxyType

import networkx as nx

from qpsse.exceptions import GameError


class Player(StrEnum):
    LEADER = "leader"
    FOLLOWER = "follower"
    CHANCE = "chance"


STRATEGIC_PLAYERS: tuple[Player, Player] = (Player.LEADER, Player.FOLLOWER)


@dataclass(frozen=True, slots=True)
class NodeSpec:
    """One node of a game description; `owner=None` marks a terminal."""

    owner: Player | None
    infoset: str = ""
    actions: tuple[str, ...] = ()
    children: tuple[int, ...] = ()
    probs: tuple[Fraction, ...] = ()
    payoff: tuple[Fraction, Fraction] | None = None

    @classmethod
    def terminal(cls, leader: Fraction | int, follower: Fraction | int) -> NodeSpec:
        return cls(owner=None, payoff=(Fraction(leader), Fraction(follower)))


@dataclass(frozen=True, slots=True)
class Node:
    id: int
    owner: Player | None
    infoset: str | None
    actions: tuple[str, ...]
    children: tuple[int, ...]
    probs: tuple[Fraction, ...]
    payoff: tuple[Fraction, Fraction] | None
    parent: int | None
    parent_action: int | None
    depth: int
    chance_reach: Fraction

    @property
    def is_terminal(self) -> bool:
        return self.owner is None

    def child(self, action: str) -> int:
        return self.children[self.actions.index(action)]


@dataclass(frozen=True, slots=True)
class Infoset:
    label: str
    player: Player
    actions: tuple[str, ...]
    nodes: tuple[int, ...]


@dataclass(frozen=True, slots=True, eq=False)
class GameTree:
    """Validated game tree. Build it with `build_game`, never directly."""

    nodes: tuple[Node, ...]
    root: int
    infosets: Mapping[str, Infoset]
    _by_player: Mapping[Player, tuple[str, ...]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def infoset(self, label: str) -> Infoset:
        try:
            return self.infosets[label]
        except KeyError:
            raise GameError(f"unknown infoset {label!r}") from None

    def infosets_of(self, player: Player) -> tuple[Infoset, ...]:
        """Infosets of `player` in preorder of their first node."""
        return tuple(self.infosets[label] for label in self._by_player[player])

    def terminals(self) -> Iterator[Node]:
        return (n for n in self.preorder() if n.is_terminal)

    def has_chance(self) -> bool:
        return any(n.owner is Player.CHANCE for n in self.nodes)

    def preorder(self) -> Iterator[Node]:
        stack = [self.root]
        while stack:
            node = self.nodes[stack.pop()]
            yield node
            stack.extend(reversed(node.children))

    def path(self, node_id: int) -> list[tuple[Node, int]]:
        """(ancestor, action index) pairs from the root down to `node_id`."""
        steps: list[tuple[Node, int]] = []
        node = self.nodes[node_id]
        while node.parent is not None:
            assert node.parent_action is not None
            steps.append((self.nodes[node.parent], node.parent_action))
            node = self.nodes[node.parent]
        steps.reverse()
        return steps

    def action_history(self, node_id: int, player: Player) -> tuple[tuple[str, str], ...]:
        """Player's own (infoset, action) pairs on the root path of `node_id`."""
        return tuple(
            (anc.infoset, anc.actions[a])
            for anc, a in self.path(node_id)
            if anc.owner is player and anc.infoset is not None
        )


def _fail(message: str, **context: object) -> GameError:
    return GameError(message, context=dict(context))


def _check_node_shape(node_id: int, spec: NodeSpec, size: int) -> None:
    if spec.owner is None:
        if spec.payoff is None or len(spec.payoff) != 2:
            raise _fail("terminal node needs a (leader, follower) payoff pair", node=node_id)
        if spec.actions or spec.children:
            raise _fail("terminal node cannot have actions", node=node_id)
        return
    if not spec.actions:
        raise _fail("decision node has no actions", node=node_id)
    if len(spec.children) != len(spec.actions):
        raise _fail(
            "actions and children differ in length",
            node=node_id,
            actions=len(spec.actions),
            children=len(spec.children),
        )
    if len(set(spec.actions)) != len(spec.actions):
        raise _fail("duplicate action names", node=node_id, actions=spec.actions)
    for child in spec.children:
        if not 0 <= child < size:
            raise _fail("child references an undeclared node", node=node_id, child=child)
    if spec.payoff is not None:
        raise _fail("only terminal nodes carry payoffs", node=node_id)
    if spec.owner is Player.CHANCE:
        if len(spec.probs) != len(spec.actions):
            raise _fail("chance node needs one probability per action", node=node_id)
        if any(p < 0 or p > 1 for p in spec.probs):
            raise _fail("chance probabilities must lie in [0, 1]", node=node_id)
        if sum(spec.probs, Fraction(0)) != 1:
            raise _fail(
                "chance probabilities do not sum to 1",
                node=node_id,
                total=str(sum(spec.probs, Fraction(0))),
            )
    else:
        if spec.probs:
            raise _fail("only chance nodes carry probabilities", node=node_id)
        if not spec.infoset:
            raise _fail("decision node needs an infoset label", node=node_id)


def _find_root(specs: Sequence[NodeSpec]) -> int:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(specs)))
    for node_id, spec in enumerate(specs):
        graph.add_edges_from((node_id, child) for child in spec.children)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        pass
    else:
        raise _fail("cycle detected", edges=[f"{u}->{v}" for u, v, *_ in cycle])
    for node_id, degree in graph.in_degree():
        if degree > 1:
            raise _fail("node has more than one parent", node=node_id)
    roots = [n for n, degree in graph.in_degree() if degree == 0]
    root = min(roots)
    reachable = nx.descendants(graph, root) | {root}
    if len(reachable) != len(specs):
        missing = min(set(range(len(specs))) - reachable)
        raise _fail("unreachable node", node=missing, root=root)
    return root


def build_game(description: Iterable[NodeSpec]) -> GameTree:
    """Validate a node list and return the immutable tree it describes."""
    specs = list(description)
    if not specs:
        raise GameError("a game needs at least one node")
    for node_id, spec in enumerate(specs):
        _check_node_shape(node_id, spec, len(specs))
    root = _find_root(specs)

    parents: dict[int, tuple[int, int]] = {}
    for node_id, spec in enumerate(specs):
        for a, child in enumerate(spec.children):
            parents[child] = (node_id, a)

    nodes: list[Node | None] = [None] * len(specs)
    members: dict[str, list[int]] = {}
    owners: dict[str, Player] = {}
    actions: dict[str, tuple[str, ...]] = {}
    order: list[tuple[Player, str]] = []

    stack: list[tuple[int, int, Fraction]] = [(root, 0, Fraction(1))]
    while stack:
        node_id, depth, reach = stack.pop()
        spec = specs[node_id]
        parent, parent_action = parents.get(node_id, (None, None))
        label: str | None = None
        if spec.owner is Player.CHANCE:
            label = spec.infoset or f"chance.{node_id}"
        elif spec.owner is not None:
            label = spec.infoset
        if label is not None and spec.owner is not None:
            if label in owners:
                if owners[label] is not spec.owner:
                    raise _fail("infoset shared by different players", infoset=label)
                if actions[label] != spec.actions:
                    raise _fail(
                        "heterogeneous actions in infoset",
                        infoset=label,
                        expected=actions[label],
                        got=spec.actions,
                    )
                if spec.owner is Player.CHANCE:
                    raise _fail("chance infosets hold a single node", infoset=label)
            else:
                owners[label] = spec.owner
                actions[label] = spec.actions
                order.append((spec.owner, label))
            members.setdefault(label, []).append(node_id)
        nodes[node_id] = Node(
            id=node_id,
            owner=spec.owner,
            infoset=label,
            actions=spec.actions,
            children=spec.children,
            probs=spec.probs,
            payoff=spec.payoff,
            parent=parent,
            parent_action=parent_action,
            depth=depth,
            chance_reach=reach,
        )
        for a in reversed(range(len(spec.children))):
            step = spec.probs[a] if spec.owner is Player.CHANCE else Fraction(1)
            stack.append((spec.children[a], depth + 1, reach * step))

    infosets = {
        label: Infoset(label, owners[label], actions[label], tuple(members[label]))
        for _, label in order
    }
    by_player = {
        player: tuple(label for owner, label in order if owner is player)
        for player in Player
    }
    return GameTree(
        nodes=tuple(n for n in nodes if n is not None),
        root=root,
        infosets=MappingProxyType(infosets),
        _by_player=MappingProxyType(by_player),
    )


class BehavioralStrategy:
    """Per-infoset action distributions of one player, exact rationals."""

    __slots__ = ("player", "probs")

    def __init__(self, player: Player, probs: Mapping[str, Sequence[Fraction]]) -> None:
        self.player = player
        self.probs: dict[str, tuple[Fraction, ...]] = {
            label: tuple(Fraction(p) for p in dist) for label, dist in probs.items()
        }

    @classmethod
    def uniform(cls, game: GameTree, player: Player) -> BehavioralStrategy:
        return cls(
            player,
            {
                info.label: (Fraction(1, len(info.actions)),) * len(info.actions)
                for info in game.infosets_of(player)
            },
        )

    @classmethod
    def pure(
        cls, game: GameTree, player: Player, choice: Mapping[str, str]
    ) -> BehavioralStrategy:
        """Point mass on `choice[label]`; infosets missing from `choice` play the first action."""
        probs: dict[str, tuple[Fraction, ...]] = {}
        for info in game.infosets_of(player):
            picked = choice.get(info.label, info.actions[0])
            probs[info.label] = tuple(
                Fraction(1 if a == picked else 0) for a in info.actions
            )
        return cls(player, probs)

    def prob(self, label: str, action_index: int) -> Fraction:
        return self.probs[label][action_index]

    def is_completely_mixed(self) -> bool:
        return all(p > 0 for dist in self.probs.values() for p in dist)

    def validate(self, game: GameTree) -> None:
        for info in game.infosets_of(self.player):
            dist = self.probs.get(info.label)
            if dist is None:
                raise _fail("strategy misses an infoset", infoset=info.label)
            if len(dist) != len(info.actions):
                raise _fail("strategy has the wrong arity", infoset=info.label)
            if any(p < 0 for p in dist) or sum(dist, Fraction(0)) != 1:
                raise _fail(
                    "strategy entries must be non-negative and sum to 1",
                    infoset=info.label,
                )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BehavioralStrategy):
            return NotImplemented
        return self.player is other.player and self.probs == other.probs

    def __hash__(self) -> int:
        return hash((self.player, tuple(sorted(self.probs.items()))))

    def __repr__(self) -> str:
        return f"BehavioralStrategy({self.player.value}, {len(self.probs)} infosets)"
