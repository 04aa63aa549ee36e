"""Sequence-form constraint and payoff matrices."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from qpsse.game import GameTree, Player
from qpsse.numeric import format_rational

from .sequences import EMPTY, SequenceTable, enumerate_sequences

type SparseRow = dict[int, Fraction]
type PayoffMatrix = Mapping[tuple[int, int], Fraction]


@dataclass(frozen=True, slots=True, eq=False)
class SeqFormMatrices:
    """Σ, F, f and U for both players. Row 0 of F is the root row I_∅."""

    game: GameTree
    leader: SequenceTable
    follower: SequenceTable
    F: Mapping[Player, tuple[SparseRow, ...]]
    f: Mapping[Player, tuple[Fraction, ...]]
    U: Mapping[Player, PayoffMatrix]

    def table(self, player: Player) -> SequenceTable:
        return self.leader if player is Player.LEADER else self.follower

    def payoff(self, player: Player, r_l: Sequence[Fraction], r_f: Sequence[Fraction]) -> Fraction:
        """r_ℓᵀ U_player r_f."""
        total = Fraction(0)
        for (sl, sf), u in self.U[player].items():
            total += r_l[sl] * u * r_f[sf]
        return total

    def leader_row(self, player: Player, r_l: Sequence[Fraction]) -> dict[int, Fraction]:
        """U_playerᵀ r_ℓ as a sparse vector over follower sequences."""
        out: dict[int, Fraction] = {}
        for (sl, sf), u in self.U[player].items():
            if r_l[sl]:
                out[sf] = out.get(sf, Fraction(0)) + r_l[sl] * u
        return out

    def follower_column(self, player: Player, r_f: Sequence[Fraction]) -> dict[int, Fraction]:
        """U_player r_f as a sparse vector over leader sequences."""
        out: dict[int, Fraction] = {}
        for (sl, sf), u in self.U[player].items():
            if r_f[sf]:
                out[sl] = out.get(sl, Fraction(0)) + u * r_f[sf]
        return out


def _constraint_rows(table: SequenceTable) -> tuple[SparseRow, ...]:
    rows: list[SparseRow] = [{EMPTY: Fraction(1)}]
    for label in table.infosets:
        row: SparseRow = {table.seq_of_infoset[label]: Fraction(-1)}
        for child in table.children[label]:
            row[child] = Fraction(1)
        rows.append(row)
    return tuple(rows)


def build_matrices(game: GameTree) -> SeqFormMatrices:
    """Compile `game`; chance probabilities are folded into U."""
    leader = enumerate_sequences(game, Player.LEADER)
    follower = enumerate_sequences(game, Player.FOLLOWER)
    payoffs: dict[Player, dict[tuple[int, int], Fraction]] = {
        Player.LEADER: {},
        Player.FOLLOWER: {},
    }
    for node in game.terminals():
        assert node.payoff is not None
        key = (leader.node_seq[node.id], follower.node_seq[node.id])
        for player, u in zip((Player.LEADER, Player.FOLLOWER), node.payoff, strict=True):
            weighted = u * node.chance_reach
            total = payoffs[player].get(key, Fraction(0)) + weighted
            if total:
                payoffs[player][key] = total
            else:
                payoffs[player].pop(key, None)
    tables = {Player.LEADER: leader, Player.FOLLOWER: follower}
    return SeqFormMatrices(
        game=game,
        leader=leader,
        follower=follower,
        F={p: _constraint_rows(t) for p, t in tables.items()},
        f={p: (Fraction(1),) + (Fraction(0),) * len(t.infosets) for p, t in tables.items()},
        U=payoffs,
    )


def dump_matrices(m: SeqFormMatrices) -> str:
    """Dense text dump of F, f and U with exact rationals (golden-file friendly)."""

    def fmt(value: Fraction) -> str:
        return format_rational(value)

    lines: list[str] = []
    for player in (Player.LEADER, Player.FOLLOWER):
        table = m.table(player)
        lines.append(f"# sequences {player.value}")
        lines.extend(f"{seq} {table.name(seq)}" for seq in range(len(table)))
        lines.append(f"# F {player.value} ({len(m.F[player])}x{len(table)})")
        for row in m.F[player]:
            lines.append(" ".join(fmt(row.get(j, Fraction(0))) for j in range(len(table))))
        lines.append(f"# f {player.value}")
        lines.append(" ".join(fmt(v) for v in m.f[player]))
    for player in (Player.LEADER, Player.FOLLOWER):
        lines.append(f"# U {player.value} ({len(m.leader)}x{len(m.follower)})")
        u = m.U[player]
        for sl in range(len(m.leader)):
            lines.append(
                " ".join(fmt(u.get((sl, sf), Fraction(0))) for sf in range(len(m.follower)))
            )
    return "\n".join(lines) + "\n"
