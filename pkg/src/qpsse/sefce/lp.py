"""
The perturbed SEFCE LP, one recommendation channel per follower infoset.

Every follower plan of Γ(ε) splits as r_f = floor_f + r̃, and the residual r̃
is the sum of the slacks δ(J) injected at the follower infosets J and routed
downwards. Channel J is a von Stengel-Forges correlation device for the
subgame below J: variables p_J(σ_ℓ, σ_f) for σ_f ∈ Σ_f(J) and relevant σ_ℓ,
follower and leader flow inside the subgame, and the incentive rows

    v_J(σ_f)     = Σ p_J(σ_ℓ, σ_f) u_f(σ_ℓ, σ_f) + Σ_{K: σ(K)=σ_f} Σ_b v_J(σ_f b)
    v_J(K, σ_f) ≥ Σ p_J(σ_ℓ, σ_f) u_f(σ_ℓ, σ(K)b) + Σ_{K': σ(K')=σ(K)b} v_J(K', σ_f)
    v_J(σ(K)b)   = v_J(K, σ(K)b)

where σ_f runs over the actions of K and of the infosets on σ(K)'s history
inside the channel. All channels share the leader marginal p(σ_ℓ, ∅), which
carries the lower bounds ξ_ℓ. The objective is

    Σ p(σ_ℓ, ∅) Σ_σ̂ floor_f(σ̂) u_ℓ(σ_ℓ, σ̂) + Σ_J δ(J) Σ p_J(σ_ℓ, σ_f) u_ℓ(σ_ℓ, σ_f)

With ξ ≡ 0 only the root infosets carry slack (δ = 1) and this is the
classic SEFCE LP.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from qpsse.exceptions import QpsseError, UnsupportedGameError
from qpsse.game import Player
from qpsse.lp import ExactLP
from qpsse.perturbation import PerturbedInstance
from qpsse.seqform import EMPTY, RelevanceMap

type Forcing = Mapping[str, int]


@dataclass(slots=True, eq=False)
class Channel:
    """Variables of the recommendation channel rooted at follower infoset `root`."""

    root: str
    slack: Fraction
    infosets: frozenset[str]
    sequences: tuple[int, ...]
    p: dict[tuple[int, int], int] = field(default_factory=dict)
    v_seq: dict[int, int] = field(default_factory=dict)
    v_dev: dict[tuple[str, int], int] = field(default_factory=dict)


@dataclass(slots=True, eq=False)
class SefceLP:
    """An SEFCE LP plus the index bookkeeping needed to read its solutions."""

    lp: ExactLP
    inst: PerturbedInstance
    rel: RelevanceMap
    forced: Forcing
    marginal: tuple[int, ...]
    channels: tuple[Channel, ...]
    channels_of: Mapping[str, tuple[Channel, ...]]

    def leader_marginal(self, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(values[var] for var in self.marginal)

    def recommended_mass(self, values: Sequence[Fraction], label: str, action: int) -> Fraction:
        """Slack-weighted recommendation mass on σ_f(I)a over all channels."""
        follower = self.inst.table(Player.FOLLOWER)
        seq = follower.children[label][action]
        total = Fraction(0)
        for channel in self.channels_of.get(label, ()):
            inner = sum(
                (values[channel.p[(sl, seq)]] for sl in self.rel.rel_of_follower_seq[seq]),
                Fraction(0),
            )
            total += channel.slack * inner
        return total

    def masses(self, values: Sequence[Fraction], label: str) -> tuple[Fraction, ...]:
        n = len(self.inst.table(Player.FOLLOWER).children[label])
        return tuple(self.recommended_mass(values, label, a) for a in range(n))


def _check_forcing(inst: PerturbedInstance, forced: Forcing) -> None:
    follower = inst.table(Player.FOLLOWER)
    for label, action in forced.items():
        if label not in follower.children:
            raise QpsseError("forced infoset is not a follower infoset", context={"infoset": label})
        if not 0 <= action < len(follower.children[label]):
            raise QpsseError("forced action out of range", context={"infoset": label, "action": action})


def build_sefce_lp(
    inst: PerturbedInstance, rel: RelevanceMap, forced: Forcing | None = None
) -> SefceLP:
    if inst.game.has_chance():
        raise UnsupportedGameError(
            "chance nodes unsupported by SEFCE LP",
            help_text="The correlated LP covers two-player games without chance; "
            "use `qpsse validate` or the best-response tools on this game.",
        )
    forced = dict(forced or {})
    _check_forcing(inst, forced)
    m = inst.matrices
    leader, follower = m.leader, m.follower
    u_l, u_f = m.U[Player.LEADER], m.U[Player.FOLLOWER]
    xi_l = inst.xi[Player.LEADER]
    floor_f = inst.floors(Player.FOLLOWER)

    leakage: dict[int, Fraction] = {}
    for (sl, sf), u in u_l.items():
        if floor_f[sf]:
            leakage[sl] = leakage.get(sl, Fraction(0)) + floor_f[sf] * u

    lp = ExactLP("max")
    marginal = tuple(
        lp.add_variable(f"p[{leader.name(sl)}|-]", lower=xi_l[sl], cost=leakage.get(sl, 0))
        for sl in range(len(leader))
    )
    lp.add_constraint({marginal[EMPTY]: 1}, "==", 1, name="root")
    for label in leader.infosets:
        row = {marginal[c]: Fraction(1) for c in leader.children[label]}
        row[marginal[leader.seq_of_infoset[label]]] = Fraction(-1)
        lp.add_constraint(row, "==", 0, name=f"lflow[{label}|-]")

    channels: list[Channel] = []
    for root in follower.infosets:
        slack = inst.slack(Player.FOLLOWER, root)
        if slack > 0:
            channels.append(_add_channel(lp, inst, rel, marginal, root, slack))

    for sl in range(1, len(leader)):
        if xi_l[sl] > 0:
            row: dict[int, Fraction] = {marginal[sl]: Fraction(1)}
            for channel in channels:
                for (csl, _), var in channel.p.items():
                    if csl == sl:
                        row[var] = Fraction(1)
            lp.add_constraint(row, ">=", xi_l[sl], name=f"xi[{leader.name(sl)}]")

    channels_of: dict[str, list[Channel]] = {}
    for channel in channels:
        for label in channel.infosets:
            channels_of.setdefault(label, []).append(channel)

    for label, keep in forced.items():
        for channel in channels_of.get(label, ()):
            for a, seq in enumerate(follower.children[label]):
                if a != keep:
                    # leader flow carries the zero to every relevant σ_ℓ
                    lp.add_constraint(
                        {channel.p[(EMPTY, seq)]: 1}, "==", 0, name=f"force@{channel.root}[{follower.name(seq)}]"
                    )

    return SefceLP(
        lp=lp,
        inst=inst,
        rel=rel,
        forced=forced,
        marginal=marginal,
        channels=tuple(channels),
        channels_of={k: tuple(v) for k, v in channels_of.items()},
    )


def _add_channel(
    lp: ExactLP,
    inst: PerturbedInstance,
    rel: RelevanceMap,
    marginal: tuple[int, ...],
    root: str,
    slack: Fraction,
) -> Channel:
    m = inst.matrices
    leader, follower = m.leader, m.follower
    u_l, u_f = m.U[Player.LEADER], m.U[Player.FOLLOWER]
    infosets = follower.subtree_infosets(root)
    channel = Channel(root, slack, frozenset(infosets), follower.subtree_sequences(root))
    inside = set(channel.sequences)
    tag = f"@{root}"

    for sf in channel.sequences:
        for sl in rel.rel_of_follower_seq[sf]:
            channel.p[(sl, sf)] = lp.add_variable(
                f"p{tag}[{leader.name(sl)}|{follower.name(sf)}]",
                cost=slack * u_l.get((sl, sf), Fraction(0)),
            )
    p = channel.p

    for sl in rel.rel_follower_infoset[root]:
        row = {p[(sl, c)]: Fraction(1) for c in follower.children[root]}
        row[marginal[sl]] = Fraction(-1)
        lp.add_constraint(row, "==", 0, name=f"fflow{tag}[{leader.name(sl)}|{root}]")
    for label in infosets:
        if label == root:
            continue
        parent = follower.seq_of_infoset[label]
        for sl in rel.rel_follower_infoset[label]:
            row = {p[(sl, c)]: Fraction(1) for c in follower.children[label]}
            row[p[(sl, parent)]] = Fraction(-1)
            lp.add_constraint(row, "==", 0, name=f"fflow{tag}[{leader.name(sl)}|{label}]")
    for label in leader.infosets:
        parent = leader.seq_of_infoset[label]
        for sf in rel.rel_leader_infoset[label]:
            if sf not in inside:
                continue
            row = {p[(c, sf)]: Fraction(1) for c in leader.children[label]}
            row[p[(parent, sf)]] = Fraction(-1)
            lp.add_constraint(row, "==", 0, name=f"lflow{tag}[{label}|{follower.name(sf)}]")

    for sf in channel.sequences:
        channel.v_seq[sf] = lp.add_variable(f"v{tag}[{follower.name(sf)}]", lower=None)
    for label in infosets:
        for sf in rel.prec_chain[label]:
            if sf in inside:
                channel.v_dev[(label, sf)] = lp.add_variable(
                    f"v{tag}[{label}|{follower.name(sf)}]", lower=None
                )
    v_seq, v_dev = channel.v_seq, channel.v_dev

    for sf in channel.sequences:
        row: dict[int, Fraction] = {v_seq[sf]: Fraction(1)}
        for sl in rel.rel_of_follower_seq[sf]:
            u = u_f.get((sl, sf))
            if u:
                row[p[(sl, sf)]] = -u
        for nxt in follower.infosets_after.get(sf, ()):
            for c in follower.children[nxt]:
                row[v_seq[c]] = Fraction(-1)
        lp.add_constraint(row, "==", 0, name=f"value{tag}[{follower.name(sf)}]")

    for label in infosets:
        for sf in rel.prec_chain[label]:
            if sf not in inside:
                continue
            for b in follower.children[label]:
                row = {v_dev[(label, sf)]: Fraction(1)}
                for sl in rel.rel_of_follower_seq[sf]:
                    u = u_f.get((sl, b))
                    if u:
                        row[p[(sl, sf)]] = row.get(p[(sl, sf)], Fraction(0)) - u
                for nxt in follower.infosets_after.get(b, ()):
                    row[v_dev[(nxt, sf)]] = Fraction(-1)
                lp.add_constraint(
                    row, ">=", 0, name=f"dev{tag}[{label}|{follower.name(sf)}->{follower.name(b)}]"
                )
        for b in follower.children[label]:
            lp.add_constraint(
                {v_seq[b]: 1, v_dev[(label, b)]: -1}, "==", 0, name=f"follow{tag}[{follower.name(b)}]"
            )
    return channel
