"""
ξ-perturbation schemes: one ε-polynomial lower bound per sequence.

A scheme is valid when

  (i)   every entry is a polynomial in ε and σ_∅ maps to the constant 1;
  (ii)  every non-empty sequence has zero constant term and is positive on
        (0, 1] (checked at the probe points and by the sign of the
        lowest-order coefficient);
  (iii) every child bound vanishes strictly faster than its parent's:
        ξ(σ(I)a) / ξ(σ(I)) → 0 as ε → 0⁺.

Scheme files hold lines `<player> <sequence> <polynomial>`. A sequence is
`-` for σ_∅ or a comma-separated action list whose items are `action` or
`infoset:action`; unlisted sequences default to ε^{|σ|}.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Literal

import xxhash

from qpsse.exceptions import FormatError, SchemeError
from qpsse.game import STRATEGIC_PLAYERS, Player
from qpsse.numeric import (
    POLY_ONE,
    POLY_ZERO,
    EpsPolynomial,
    parse_polynomial,
    poly_eval,
    ratio_limit_at_zero_is_zero,
)
from qpsse.seqform import EMPTY, SeqFormMatrices, SequenceTable

type Condition = Literal["i", "ii", "iii"]

DEFAULT_PROBES: tuple[Fraction, ...] = (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 1000))


@dataclass(frozen=True, slots=True, eq=False)
class PerturbationScheme:
    name: str
    polys: Mapping[Player, tuple[EpsPolynomial, ...]]
    unperturbed: bool = False

    def poly(self, player: Player, seq: int) -> EpsPolynomial:
        return self.polys[player][seq]

    def evaluate(self, player: Player, eps: Fraction) -> tuple[Fraction, ...]:
        return tuple(poly_eval(p, eps) for p in self.polys[player])


@dataclass(frozen=True, slots=True)
class SchemeViolation:
    player: Player
    sequence: str
    condition: Condition
    detail: str

    def describe(self) -> str:
        return f"condition ({self.condition}) fails for {self.player.value} {self.sequence}: {self.detail}"


def miltersen_scheme(m: SeqFormMatrices) -> PerturbationScheme:
    """ξ(σ) = ε^{|σ|}; σ_∅ gets the constant 1."""
    polys = {
        player: tuple(
            EpsPolynomial.monomial(1, m.table(player).depth(seq))
            for seq in range(len(m.table(player)))
        )
        for player in STRATEGIC_PLAYERS
    }
    return PerturbationScheme("miltersen", polys)


def unperturbed_scheme(m: SeqFormMatrices) -> PerturbationScheme:
    polys = {
        player: (POLY_ONE,) + (POLY_ZERO,) * (len(m.table(player)) - 1)
        for player in STRATEGIC_PLAYERS
    }
    return PerturbationScheme("unperturbed", polys, unperturbed=True)


def validate_scheme(
    scheme: PerturbationScheme,
    m: SeqFormMatrices,
    probe_eps: Iterable[Fraction] = DEFAULT_PROBES,
) -> SchemeViolation | None:
    """First violated condition, or None. Condition (ii) is checked on every sequence before (iii)."""
    probes = tuple(probe_eps)
    for eps in probes:
        if not 0 < eps <= 1:
            raise SchemeError("probe ε must lie in (0, 1]", context={"eps": str(eps)})
    for player in STRATEGIC_PLAYERS:
        table = m.table(player)
        polys = scheme.polys.get(player, ())
        if len(polys) != len(table):
            return SchemeViolation(
                player, "-", "i", f"expected {len(table)} entries, got {len(polys)}"
            )
        if polys[EMPTY] != POLY_ONE:
            return SchemeViolation(player, "-", "i", f"σ_∅ maps to {polys[EMPTY]}, not 1")
    for player in STRATEGIC_PLAYERS:
        table = m.table(player)
        polys = scheme.polys[player]
        for seq in range(1, len(table)):
            p = polys[seq]
            name = table.name(seq)
            if p.is_zero():
                return SchemeViolation(player, name, "ii", "bound is identically zero")
            if p.constant_term() != 0:
                return SchemeViolation(
                    player, name, "ii", f"nonzero constant term {p.constant_term()}"
                )
            if p.lowest_coefficient() <= 0:
                return SchemeViolation(player, name, "ii", f"{p} is negative near 0")
            for eps in probes:
                if poly_eval(p, eps) <= 0:
                    return SchemeViolation(player, name, "ii", f"{p} is not positive at ε={eps}")
    for player in STRATEGIC_PLAYERS:
        table = m.table(player)
        polys = scheme.polys[player]
        for label in table.infosets:
            parent = polys[table.seq_of_infoset[label]]
            for child in table.children[label]:
                if not ratio_limit_at_zero_is_zero(polys[child], parent):
                    return SchemeViolation(
                        player,
                        table.name(child),
                        "iii",
                        f"{polys[child]} does not vanish faster than parent bound {parent}",
                    )
    return None


def require_valid_scheme(
    scheme: PerturbationScheme, m: SeqFormMatrices, probe_eps: Iterable[Fraction] = DEFAULT_PROBES
) -> None:
    violation = validate_scheme(scheme, m, probe_eps)
    if violation is not None:
        raise SchemeError(
            "perturbation scheme is not valid",
            context={
                "player": violation.player.value,
                "sequence": violation.sequence,
                "condition": violation.condition,
                "detail": violation.detail,
            },
        )


def _resolve_sequence(table: SequenceTable, token: str, lineno: int) -> int:
    if token in ("-", "∅"):
        return EMPTY
    seq = EMPTY
    for item in token.split(","):
        label, sep, action = item.rpartition(":")
        matches = [
            child
            for info in table.infosets_after.get(seq, ())
            if not sep or info == label
            for child in table.children[info]
            if table.histories[child][-1][1] == action
        ]
        if not matches:
            raise FormatError(
                f"unknown sequence {token!r}",
                context={"line": lineno, "player": table.player.value, "at": item},
            )
        if len(matches) > 1:
            raise FormatError(
                f"ambiguous sequence {token!r}",
                context={"line": lineno, "at": item},
                help_text="Qualify the action with its infoset, as infoset:action.",
            )
        seq = matches[0]
    return seq


def parse_scheme(text: str, m: SeqFormMatrices, *, name: str | None = None) -> PerturbationScheme:
    base = miltersen_scheme(m)
    polys = {player: list(base.polys[player]) for player in STRATEGIC_PLAYERS}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split(maxsplit=2)
        if len(parts) != 3:
            raise FormatError(
                "scheme line is '<player> <sequence> <polynomial>'",
                context={"line": lineno, "text": body},
                example="follower F.root:a 1/3*e^2 + e^4",
            )
        try:
            player = Player(parts[0])
        except ValueError:
            raise FormatError(f"unknown player {parts[0]!r}", context={"line": lineno}) from None
        if player is Player.CHANCE:
            raise FormatError("chance has no perturbation scheme", context={"line": lineno})
        seq = _resolve_sequence(m.table(player), parts[1], lineno)
        try:
            polys[player][seq] = parse_polynomial(parts[2])
        except FormatError as exc:
            exc.context["line"] = lineno
            raise
    text_hash = xxhash.xxh64(text.encode("utf-8")).hexdigest()
    return PerturbationScheme(
        name or f"file:{text_hash}",
        {player: tuple(values) for player, values in polys.items()},
    )


def load_scheme(path: Path | str, m: SeqFormMatrices) -> PerturbationScheme:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(
            f"cannot read scheme file: {exc.strerror}", context={"path": str(path)}
        ) from exc
    except UnicodeDecodeError as exc:
        raise FormatError(
            f"scheme file is not UTF-8 text (byte {exc.start})", context={"path": str(path)}
        ) from exc
    return parse_scheme(text, m, name=f"file:{Path(path).name}")


def dumps_scheme(scheme: PerturbationScheme, m: SeqFormMatrices) -> str:
    lines: list[str] = []
    for player in STRATEGIC_PLAYERS:
        table = m.table(player)
        for seq, poly in enumerate(scheme.polys[player]):
            lines.append(f"{player.value} {table.name(seq)} {poly}")
    return "\n".join(lines) + "\n"


def scheme_fingerprint(scheme: PerturbationScheme, m: SeqFormMatrices) -> str:
    return xxhash.xxh64(dumps_scheme(scheme, m).encode("utf-8")).hexdigest()
