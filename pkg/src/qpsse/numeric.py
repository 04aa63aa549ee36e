"""Exact rationals and univariate ε-polynomials with rational coefficients.

`fractions.Fraction` is the rational type everywhere in the solver path; this
module adds the text syntax ("p/q", "p") and the sparse polynomials that
perturbation schemes are written in. No floating point is involved.
"""

import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from qpsse.exceptions import FormatError, QpsseError

type Rational = Fraction
type Number = Fraction | int

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse `"3/4"`, `"-1000000"` or a finite decimal such as `"0.25"` exactly."""
    raw = text.strip()
    if not raw:
        raise FormatError("empty rational literal")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(
            f"invalid rational literal {raw!r}",
            help_text="Write rationals as p/q or p, for example 3/4 or -1000000.",
        ) from exc


def format_rational(value: Fraction) -> str:
    """Inverse of `parse_rational`: `"p"` for integers, `"p/q"` otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_float_text(value: Fraction, digits: int = 12) -> str:
    """Display-only decimal rendering of an exact value."""
    return f"{float(value):.{digits}g}"


@dataclass(frozen=True, slots=True)
class EpsPolynomial:
    """Sparse polynomial in ε; `terms` is sorted by degree with no zero coefficients."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, Number]) -> EpsPolynomial:
        items: list[tuple[int, Fraction]] = []
        for degree, coef in sorted(coefficients.items()):
            if degree < 0:
                raise QpsseError(
                    "polynomial degrees must be non-negative",
                    context={"degree": degree},
                )
            value = Fraction(coef)
            if value != 0:
                items.append((degree, value))
        return cls(tuple(items))

    @classmethod
    def constant(cls, value: Number) -> EpsPolynomial:
        return cls.from_mapping({0: value})

    @classmethod
    def monomial(cls, coef: Number, degree: int) -> EpsPolynomial:
        return cls.from_mapping({degree: coef})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def lowest_degree(self) -> int:
        if not self.terms:
            raise QpsseError("the zero polynomial has no lowest-order term")
        return self.terms[0][0]

    def lowest_coefficient(self) -> Fraction:
        if not self.terms:
            raise QpsseError("the zero polynomial has no lowest-order term")
        return self.terms[0][1]

    def degree(self) -> int:
        if not self.terms:
            raise QpsseError("the zero polynomial has no degree")
        return self.terms[-1][0]

    def constant_term(self) -> Fraction:
        if self.terms and self.terms[0][0] == 0:
            return self.terms[0][1]
        return ZERO

    def __add__(self, other: EpsPolynomial | Number) -> EpsPolynomial:
        rhs = other if isinstance(other, EpsPolynomial) else EpsPolynomial.constant(other)
        merged = self.as_dict()
        for degree, coef in rhs.terms:
            merged[degree] = merged.get(degree, ZERO) + coef
        return EpsPolynomial.from_mapping(merged)

    __radd__ = __add__

    def __neg__(self) -> EpsPolynomial:
        return EpsPolynomial(tuple((d, -c) for d, c in self.terms))

    def __sub__(self, other: EpsPolynomial | Number) -> EpsPolynomial:
        rhs = other if isinstance(other, EpsPolynomial) else EpsPolynomial.constant(other)
        return self + (-rhs)

    def __rsub__(self, other: Number) -> EpsPolynomial:
        return EpsPolynomial.constant(other) - self

    def __mul__(self, other: EpsPolynomial | Number) -> EpsPolynomial:
        if not isinstance(other, EpsPolynomial):
            factor = Fraction(other)
            return EpsPolynomial.from_mapping({d: c * factor for d, c in self.terms})
        product: dict[int, Fraction] = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                product[d1 + d2] = product.get(d1 + d2, ZERO) + c1 * c2
        return EpsPolynomial.from_mapping(product)

    __rmul__ = __mul__

    def __call__(self, eps: Number) -> Fraction:
        return poly_eval(self, Fraction(eps))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for index, (degree, coef) in enumerate(self.terms):
            sign = "-" if coef < 0 else "+"
            magnitude = abs(coef)
            if degree == 0:
                body = format_rational(magnitude)
            else:
                var = "e" if degree == 1 else f"e^{degree}"
                body = var if magnitude == 1 else f"{format_rational(magnitude)}*{var}"
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)


POLY_ZERO = EpsPolynomial()
POLY_ONE = EpsPolynomial.constant(1)


def poly_eval(p: EpsPolynomial, eps: Fraction) -> Fraction:
    """Exact value of `p` at `eps` (Horner over the sparse terms)."""
    if not p.terms:
        return ZERO
    total = ZERO
    above = p.terms[-1][0]
    for degree, coef in reversed(p.terms):
        total = total * eps ** (above - degree) + coef
        above = degree
    return total * eps**above


def ratio_limit_at_zero_is_zero(num: EpsPolynomial, den: EpsPolynomial) -> bool:
    """True iff num(ε)/den(ε) → 0 as ε → 0⁺.

    Both polynomials must be nonzero with positive lowest-order coefficient,
    which is what makes the lowest-degree comparison decisive.
    """
    for label, poly in (("numerator", num), ("denominator", den)):
        if poly.is_zero():
            raise QpsseError(f"{label} polynomial is zero")
        if poly.lowest_coefficient() <= 0:
            raise QpsseError(
                f"{label} polynomial must have a positive lowest-order coefficient",
                context={label: str(poly)},
            )
    return num.lowest_degree() > den.lowest_degree()


_TERM = re.compile(
    r"""
    ^(?P<coef>\d+(?:/\d+)?|\d*\.\d+)?
    (?:\*?(?P<var>eps|e|ε)(?:\^(?P<deg>\d+))?)?$
    """,
    re.VERBOSE,
)
_SIGNED_TERM = re.compile(r"[+-]?[^+-]+")


def parse_polynomial(text: str) -> EpsPolynomial:
    """Parse `1/3*e^2 + e^4`, `2e + 3e^3`, `eps`, `ε^2`, or a plain rational."""
    compact = "".join(text.split())
    if not compact:
        raise FormatError("empty polynomial")
    consumed = 0
    total = POLY_ZERO
    for match in _SIGNED_TERM.finditer(compact):
        if match.start() != consumed:
            break
        consumed = match.end()
        chunk = match.group()
        sign = -1 if chunk.startswith("-") else 1
        body = chunk.lstrip("+-")
        term = _TERM.match(body)
        if term is None or not (term.group("coef") or term.group("var")):
            raise FormatError(
                f"invalid polynomial term {chunk!r}",
                context={"polynomial": text},
                example="1/3*e^2 + e^4",
            )
        try:
            coef = Fraction(term.group("coef")) if term.group("coef") else ONE
        except ZeroDivisionError:
            raise FormatError(
                f"zero denominator in polynomial term {chunk!r}",
                context={"polynomial": text},
                example="1/3*e^2 + e^4",
            ) from None
        degree = 0
        if term.group("var"):
            degree = int(term.group("deg")) if term.group("deg") else 1
        total = total + EpsPolynomial.monomial(sign * coef, degree)
    if consumed != len(compact):
        raise FormatError(
            f"invalid polynomial {text!r}",
            example="1/3*e^2 + e^4",
        )
    return total
