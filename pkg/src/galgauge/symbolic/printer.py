"""Render expressions in the parser's grammar.

``print_canonical`` is deterministic: it prints the canonical form, so two
equal expressions always print to the same string.
"""

from __future__ import annotations

from fractions import Fraction

from .canonical import CanonicalForm, Monomial, normalize
from .expr import COORDS, Coord, Expr, Field, ImaginaryUnit, Param, Power, Product, Rational, Sum


def _prime(primed: bool) -> str:
    return "'" if primed else ""


def atom_str(a: Field | Coord) -> str:
    if isinstance(a, Coord):
        return a.name + _prime(a.primed)
    base = a.name + _prime(a.primed)
    if not a.order:
        return base
    ops = "".join(("d" + c + _prime(a.primed)) * k for c, k in zip(COORDS, a.deriv))
    return f"{ops}({base})"


def _pow_str(s: str, k: int) -> str:
    return s if k == 1 else f"{s}^{k}"


def monomial_str(m: Monomial, coeff: Fraction) -> str:
    """Monomial without its sign; ``coeff`` must be positive."""
    num: list[str] = []
    if coeff.numerator != 1:
        num.append(str(coeff.numerator))
    if m.i:
        num.append("i")
    num.extend(_pow_str(n, k) for n, k in m.params if k > 0)
    num.extend(_pow_str(atom_str(a), k) for a, k in m.atoms)
    text = "*".join(num) if num else "1"
    if coeff.denominator != 1:
        text += f"/{coeff.denominator}"
    for n, k in m.params:
        if k < 0:
            text += "/" + _pow_str(n, -k)
    return text


def print_canonical_form(cf: CanonicalForm) -> str:
    if not cf.terms:
        return "0"
    parts: list[str] = []
    for idx, (m, c) in enumerate(cf.terms):
        body = monomial_str(m, abs(c))
        if idx == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def print_canonical(e: Expr | CanonicalForm) -> str:
    return print_canonical_form(normalize(e))


def print_expr(e: Expr) -> str:
    """Structural (unnormalized) rendering; still valid parser input."""
    if isinstance(e, Rational):
        v = e.value
        return str(v) if v.denominator == 1 and v >= 0 else f"({v})"
    if isinstance(e, ImaginaryUnit):
        return "i"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, (Field, Coord)):
        return atom_str(e)
    if isinstance(e, Sum):
        return "(" + " + ".join(print_expr(t) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "*".join(print_expr(f) for f in e.factors)
    if isinstance(e, Power):
        if e.exponent < 0:
            return f"(1/{_pow_str(print_expr(e.base), -e.exponent)})"
        return f"({print_expr(e.base)})^{e.exponent}"
    raise TypeError(f"not an expression node: {e!r}")
