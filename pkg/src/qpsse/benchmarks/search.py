"""
Patrol-and-evade search game on a small directed graph.

The follower starts at `S` and walks along graph edges toward one of two
goal nodes; the leader moves two patrols, each confined to its own zone.
One time step is a simultaneous move, modelled as a leader node followed by
a follower node that does not see the leader's choice. Outcomes:

* capture: the follower ends a step on a patrolled node, payoff (1, 0);
* goal: the follower reaches a goal node, payoff (leader_goal, goal value);
* timeout: `horizon` steps pass, payoff (0, timeout_payoff).

Leaving a node without waiting on it first leaves a trace there. The
leader observes its own patrol positions and, after every step, which
patrols stand on a traced node. The follower observes only its own moves.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType

import networkx as nx

from qpsse.config import DEFAULT_TIMEOUT_PAYOFF
from qpsse.exceptions import GameError
from qpsse.game import GameTree, Player

from ._tree import TreeWriter

WAIT = "wait"

GRAPH_EDGES: tuple[tuple[str, str], ...] = (
    ("S", "B"),
    ("S", "C"),
    ("B", "E"),
    ("C", "F"),
    ("E", "F"),
    ("E", "H"),
    ("F", "I"),
    ("H", "K"),
    ("I", "L"),
)
PATROL_ZONES: tuple[tuple[str, ...], ...] = (("B", "C"), ("H", "I"))
GOALS: Mapping[str, Fraction] = MappingProxyType({"K": Fraction(5), "L": Fraction(10)})


def default_graph() -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_edges_from(GRAPH_EDGES)
    return graph


@dataclass(frozen=True, slots=True)
class SearchGameConfig:
    horizon: int = 2
    graph: nx.DiGraph = field(default_factory=default_graph)
    start: str = "S"
    zones: tuple[tuple[str, ...], ...] = PATROL_ZONES
    goals: Mapping[str, Fraction] = field(default_factory=lambda: dict(GOALS))
    leader_goal: Fraction = Fraction(0)
    capture: tuple[Fraction, Fraction] = (Fraction(1), Fraction(0))
    timeout_payoff: Fraction = DEFAULT_TIMEOUT_PAYOFF

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise GameError("search game horizon must be at least 1", context={"horizon": self.horizon})
        if self.start not in self.graph:
            raise GameError("start node is not in the graph", context={"start": self.start})
        for goal in self.goals:
            if goal not in self.graph:
                raise GameError("goal node is not in the graph", context={"goal": goal})

    @property
    def patrolled(self) -> frozenset[str]:
        return frozenset(node for zone in self.zones for node in zone)

    def follower_moves(self, at: str) -> tuple[str, ...]:
        """Successors of `at` the follower may step to, then `wait`."""
        patrolled = self.patrolled
        moves = sorted(
            nxt
            for nxt in self.graph.successors(at)
            if not (at in patrolled and nxt in patrolled)
        )
        return (*moves, WAIT)

    def patrol_moves(self) -> tuple[tuple[str, ...], ...]:
        """Joint patrol placements: each patrol may stand on any node of its zone."""
        return tuple(product(*(sorted(zone) for zone in self.zones)))


@dataclass(frozen=True, slots=True)
class _State:
    step: int
    at: str
    cleaned: bool
    traces: frozenset[str]
    leader_history: tuple[str, ...]
    follower_history: tuple[str, ...]


def _observation(patrols: tuple[str, ...], traces: frozenset[str]) -> str:
    return "".join("t" if pos in traces else "-" for pos in patrols)


def gen_search_game(cfg: SearchGameConfig | None = None) -> GameTree:
    cfg = cfg if cfg is not None else SearchGameConfig()
    out = TreeWriter()
    leader_capture, follower_capture = cfg.capture

    def step(state: _State) -> int:
        placements = cfg.patrol_moves()
        node = out.decision(
            Player.LEADER,
            "P/" + "/".join(state.leader_history),
            tuple("+".join(p) for p in placements),
        )
        out.attach(node, [follower_turn(state, p) for p in placements])
        return node

    def follower_turn(state: _State, patrols: tuple[str, ...]) -> int:
        moves = cfg.follower_moves(state.at)
        node = out.decision(Player.FOLLOWER, "F/" + "/".join(state.follower_history), moves)
        out.attach(node, [resolve(state, patrols, move) for move in moves])
        return node

    def resolve(state: _State, patrols: tuple[str, ...], move: str) -> int:
        waited = move == WAIT
        at = state.at if waited else move
        traces = state.traces
        if not waited and not state.cleaned:
            traces = traces | {state.at}
        if at in patrols:
            return out.terminal(leader_capture, follower_capture)
        if at in cfg.goals:
            return out.terminal(cfg.leader_goal, cfg.goals[at])
        if state.step + 1 == cfg.horizon:
            return out.terminal(0, cfg.timeout_payoff)
        placed = "+".join(patrols)
        return step(
            _State(
                step=state.step + 1,
                at=at,
                cleaned=waited,
                traces=traces,
                leader_history=(*state.leader_history, f"{placed}.{_observation(patrols, traces)}"),
                follower_history=(*state.follower_history, move),
            )
        )

    step(_State(0, cfg.start, False, frozenset(), (), ()))
    return out.build()
