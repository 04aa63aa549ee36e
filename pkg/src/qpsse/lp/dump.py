"""Plain-text LP dump with exact rationals, close to the CPLEX LP layout."""

from fractions import Fraction

from qpsse.numeric import format_rational

from .model import ExactLP


def _terms(coeffs: dict[int, Fraction], lp: ExactLP) -> str:
    if not coeffs:
        return "0"
    parts: list[str] = []
    for j in sorted(coeffs):
        coef = coeffs[j]
        op = "-" if coef < 0 else "+"
        parts.append(f"{op} {format_rational(abs(coef))} {lp.variables[j].name}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def dumps_lp(lp: ExactLP) -> str:
    lines = ["maximize" if lp.objective == "max" else "minimize"]
    lines.append(f" obj: {_terms(lp.costs(), lp)}")
    lines.append("subject to")
    for con in lp.constraints:
        op = "=" if con.sense == "==" else con.sense
        lines.append(f" {con.name}: {_terms(dict(con.coeffs), lp)} {op} {format_rational(con.rhs)}")
    lines.append("bounds")
    for var in lp.variables:
        if var.lower is None:
            lines.append(f" {var.name} free")
        else:
            lines.append(f" {var.name} >= {format_rational(var.lower)}")
    lines.append("end")
    return "\n".join(lines) + "\n"
