"""
Per-player sequence tables.

A sequence is the player's own (infoset, action) history. Ids are assigned
depth-first from σ_∅ = 0: for each sequence, the infosets it leads to (in
preorder of their first node) and then each action in order. Parents always
precede children, so a single forward pass can fill any parent-to-child
recursion.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType

from qpsse.game import GameTree, Player
from qpsse.game.recall import require_perfect_recall

type History = tuple[tuple[str, str], ...]

EMPTY = 0


@dataclass(frozen=True, slots=True, eq=False)
class SequenceTable:
    player: Player
    histories: tuple[History, ...]
    parent: tuple[int | None, ...]
    infoset_of: tuple[str | None, ...]
    action_of: tuple[int | None, ...]
    infosets: tuple[str, ...]
    seq_of_infoset: Mapping[str, int]
    children: Mapping[str, tuple[int, ...]]
    infosets_after: Mapping[int, tuple[str, ...]]
    node_seq: tuple[int, ...]
    _index: Mapping[History, int]

    def __len__(self) -> int:
        return len(self.histories)

    def depth(self, seq: int) -> int:
        return len(self.histories[seq])

    def index(self, history: History) -> int:
        return self._index[history]

    def lookup(self, history: History) -> int | None:
        return self._index.get(history)

    def is_prefix(self, a: int, b: int) -> bool:
        """True when sequence `a` ⊑ sequence `b`."""
        ha, hb = self.histories[a], self.histories[b]
        return hb[: len(ha)] == ha

    def infoset_depth(self, label: str) -> int:
        return self.depth(self.seq_of_infoset[label])

    def name(self, seq: int) -> str:
        history = self.histories[seq]
        if not history:
            return "-"
        return ",".join(f"{label}:{action}" for label, action in history)

    def ancestors(self, seq: int) -> list[int]:
        """Proper prefixes of `seq`, nearest first, ending with σ_∅."""
        out: list[int] = []
        parent = self.parent[seq]
        while parent is not None:
            out.append(parent)
            parent = self.parent[parent]
        return out

    def subtree_infosets(self, label: str) -> tuple[str, ...]:
        """`label` and every infoset of this player reachable after acting there."""
        out = [label]
        frontier = list(self.children[label])
        while frontier:
            seq = frontier.pop()
            for nxt in self.infosets_after.get(seq, ()):
                out.append(nxt)
                frontier.extend(self.children[nxt])
        order = {info: i for i, info in enumerate(self.infosets)}
        return tuple(sorted(out, key=order.__getitem__))

    def subtree_sequences(self, label: str) -> tuple[int, ...]:
        """Σ_i(I): the sequences σ_i(I)a and all their extensions."""
        infos = self.subtree_infosets(label)
        return tuple(sorted(seq for info in infos for seq in self.children[info]))


def enumerate_sequences(game: GameTree, player: Player) -> SequenceTable:
    """Build Σ_player for a perfect-recall game."""
    require_perfect_recall(game)
    infos = game.infosets_of(player)
    seq_history_of_infoset = {
        info.label: game.action_history(info.nodes[0], player) for info in infos
    }
    after: dict[History, list[str]] = {}
    for info in infos:
        after.setdefault(seq_history_of_infoset[info.label], []).append(info.label)

    histories: list[History] = [()]
    parent: list[int | None] = [None]
    infoset_of: list[str | None] = [None]
    action_of: list[int | None] = [None]
    index: dict[History, int] = {(): EMPTY}
    children: dict[str, tuple[int, ...]] = {}
    infosets_after: dict[int, tuple[str, ...]] = {}
    seq_of_infoset: dict[str, int] = {}
    order: list[str] = []

    def visit(seq: int) -> None:
        labels = after.get(histories[seq], [])
        if labels:
            infosets_after[seq] = tuple(labels)
        for label in labels:
            order.append(label)
            seq_of_infoset[label] = seq
            info = game.infoset(label)
            kids: list[int] = []
            for a, action in enumerate(info.actions):
                child = len(histories)
                history = (*histories[seq], (label, action))
                histories.append(history)
                parent.append(seq)
                infoset_of.append(label)
                action_of.append(a)
                index[history] = child
                kids.append(child)
            children[label] = tuple(kids)
            for child in kids:
                visit(child)

    visit(EMPTY)

    node_seq = tuple(
        index[game.action_history(node.id, player)] for node in game.nodes
    )
    return SequenceTable(
        player=player,
        histories=tuple(histories),
        parent=tuple(parent),
        infoset_of=tuple(infoset_of),
        action_of=tuple(action_of),
        infosets=tuple(order),
        seq_of_infoset=MappingProxyType(seq_of_infoset),
        children=MappingProxyType(children),
        infosets_after=MappingProxyType(infosets_after),
        node_seq=node_seq,
        _index=MappingProxyType(index),
    )
