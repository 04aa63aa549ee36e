"""
Relevant sequence pairs and follower precedence sets.

(σ_ℓ, σ_f) is relevant when either sequence is empty, or some node of the
infoset where one of them ends strictly precedes a node of the infoset where
the other ends. Relevance therefore only depends on the pair of infosets,
which is what `_related_infosets` computes in one tree walk.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType

from qpsse.game import GameTree, Player

from .matrices import SeqFormMatrices
from .sequences import SequenceTable


@dataclass(frozen=True, slots=True, eq=False)
class RelevanceMap:
    pairs: frozenset[tuple[int, int]]
    rel_of_follower_seq: tuple[tuple[int, ...], ...]
    rel_of_leader_seq: tuple[tuple[int, ...], ...]
    rel_follower_infoset: Mapping[str, tuple[int, ...]]
    rel_leader_infoset: Mapping[str, tuple[int, ...]]
    prec: Mapping[str, tuple[int, ...]]
    prec_chain: Mapping[str, tuple[int, ...]]

    def is_relevant(self, sl: int, sf: int) -> bool:
        return (sl, sf) in self.pairs


def _related_infosets(game: GameTree) -> set[tuple[str, str]]:
    related: set[tuple[str, str]] = set()
    stack: list[tuple[int, tuple[str, ...], tuple[str, ...]]] = [(game.root, (), ())]
    while stack:
        node_id, above_l, above_f = stack.pop()
        node = game.node(node_id)
        if node.is_terminal:
            continue
        if node.owner is Player.LEADER:
            assert node.infoset is not None
            related.update((node.infoset, k) for k in above_f)
            above_l = (*above_l, node.infoset)
        elif node.owner is Player.FOLLOWER:
            assert node.infoset is not None
            related.update((i, node.infoset) for i in above_l)
            above_f = (*above_f, node.infoset)
        for child in node.children:
            stack.append((child, above_l, above_f))
    return related


def _prec(table: SequenceTable, label: str) -> tuple[int, ...]:
    own = table.seq_of_infoset[label]
    out: list[int] = []
    for other in table.infosets:
        if table.is_prefix(table.seq_of_infoset[other], own):
            out.extend(table.children[other])
    return tuple(sorted(out))


def _prec_chain(table: SequenceTable, label: str) -> tuple[int, ...]:
    own = table.seq_of_infoset[label]
    chain = {label} | {info for info, _ in table.histories[own]}
    return tuple(sorted(seq for info in chain for seq in table.children[info]))


def relevance(m: SeqFormMatrices) -> RelevanceMap:
    leader, follower = m.leader, m.follower
    related = _related_infosets(m.game)
    rel_f: list[list[int]] = [[] for _ in range(len(follower))]
    rel_l: list[list[int]] = [[] for _ in range(len(leader))]
    pairs: set[tuple[int, int]] = set()
    for sl in range(len(leader)):
        il = leader.infoset_of[sl]
        for sf in range(len(follower)):
            jf = follower.infoset_of[sf]
            if il is None or jf is None or (il, jf) in related:
                pairs.add((sl, sf))
                rel_f[sf].append(sl)
                rel_l[sl].append(sf)
    rel_follower_infoset = {
        label: tuple(rel_f[follower.children[label][0]]) for label in follower.infosets
    }
    rel_leader_infoset = {
        label: tuple(rel_l[leader.children[label][0]]) for label in leader.infosets
    }
    return RelevanceMap(
        pairs=frozenset(pairs),
        rel_of_follower_seq=tuple(tuple(r) for r in rel_f),
        rel_of_leader_seq=tuple(tuple(r) for r in rel_l),
        rel_follower_infoset=MappingProxyType(rel_follower_infoset),
        rel_leader_infoset=MappingProxyType(rel_leader_infoset),
        prec=MappingProxyType({lab: _prec(follower, lab) for lab in follower.infosets}),
        prec_chain=MappingProxyType(
            {lab: _prec_chain(follower, lab) for lab in follower.infosets}
        ),
    )


