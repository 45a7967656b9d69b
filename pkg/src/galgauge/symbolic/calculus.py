"""Differentiation, substitution, i-splitting and cofactor comparison."""

from __future__ import annotations

from typing import Callable, Mapping

from .canonical import CanonicalForm, Monomial, is_monomial, normalize
from .expr import (
    COORDS,
    ONE,
    ZERO,
    Coord,
    Expr,
    Field,
    FrameError,
    ImaginaryUnit,
    Param,
    Power,
    Product,
    Rational,
    Sum,
    add,
    mul,
    power,
)


def diff(e: Expr, c: Coord) -> Expr:
    """Partial derivative of ``e`` with respect to coordinate ``c``.

    Parameters and constants are annihilated; field atoms get their
    multi-index bumped, so mixed partials commute automatically.
    """
    if isinstance(e, (Rational, ImaginaryUnit, Param)):
        return ZERO
    if isinstance(e, Coord):
        if e.primed != c.primed:
            mark = "'" if e.primed else ""
            raise FrameError(f"coordinate {e.name}{mark} differentiated in the wrong frame")
        return ONE if e == c else ZERO
    if isinstance(e, Field):
        return e.derived(c)
    if isinstance(e, Sum):
        return add(*(diff(t, c) for t in e.terms))
    if isinstance(e, Product):
        fs = e.factors
        terms = []
        for k, f in enumerate(fs):
            df = diff(f, c)
            if isinstance(df, Rational) and df.value == 0:
                continue
            terms.append(mul(*fs[:k], df, *fs[k + 1:]))
        return add(*terms)
    if isinstance(e, Power):
        if isinstance(e.base, Param) or e.exponent == 0:
            return ZERO
        db = diff(e.base, c)
        if isinstance(db, Rational) and db.value == 0:
            return ZERO
        return mul(Rational(e.exponent), power(e.base, e.exponent - 1), db)
    raise TypeError(f"not an expression node: {e!r}")


def diff_multi(e: Expr, deriv: tuple[int, int, int, int], primed: bool) -> Expr:
    """Apply the derivative multi-index ``deriv`` in the given frame."""
    for name, k in zip(COORDS, deriv):
        for _ in range(k):
            e = diff(e, Coord(name, primed))
    return e


def map_atoms(e: Expr, fn: Callable[[Expr], Expr | None]) -> Expr:
    """Rebuild ``e`` replacing each leaf for which ``fn`` returns an expression."""
    if isinstance(e, Sum):
        return add(*(map_atoms(t, fn) for t in e.terms))
    if isinstance(e, Product):
        return mul(*(map_atoms(f, fn) for f in e.factors))
    if isinstance(e, Power):
        if isinstance(e.base, Param):
            return e
        return power(map_atoms(e.base, fn), e.exponent)
    out = fn(e)
    return e if out is None else out


Pattern = Field


def substitute(e: Expr, target: Pattern | Mapping[Pattern, Expr], replacement: Expr | None = None) -> Expr:
    """Replace field atoms, simultaneously when given a mapping.

    An underived target (e.g. ``S``) matches every derivative of that field,
    and the replacement is differentiated accordingly. A derived target
    (e.g. ``dt(S)``) only matches that exact atom. The result is not
    normalized.
    """
    mapping = dict(target) if isinstance(target, Mapping) else {target: replacement}
    whole = {(p.name, p.primed): r for p, r in mapping.items() if not p.order}
    exact = {p: r for p, r in mapping.items() if p.order}

    def rewrite(node: Expr) -> Expr | None:
        if not isinstance(node, Field):
            return None
        if node in exact:
            return exact[node]
        repl = whole.get((node.name, node.primed))
        if repl is None:
            return None
        return diff_multi(repl, node.deriv, node.primed)

    return map_atoms(e, rewrite)


def relabel(e: Expr, primed: bool) -> Expr:
    """Move every atom of ``e`` into the primed (or unprimed) frame."""

    def swap(node: Expr) -> Expr | None:
        if isinstance(node, Field):
            return Field(node.name, primed, node.deriv)
        if isinstance(node, Coord):
            return Coord(node.name, primed)
        return None

    return map_atoms(e, swap)


def split_by_i(e: Expr | CanonicalForm) -> tuple[CanonicalForm, CanonicalForm]:
    """Real and imaginary parts, valid when every atom is a real field."""
    cf = normalize(e)
    for a in cf.atoms():
        if isinstance(a, Field) and not a.is_real:
            raise ValueError(f"cannot split: complex field {a.name} present")
    re: dict[Monomial, object] = {}
    im: dict[Monomial, object] = {}
    for m, c in cf.terms:
        if m.i:
            im[Monomial(0, m.params, m.atoms)] = c
        else:
            re[m] = c
    return CanonicalForm.from_dict(re), CanonicalForm.from_dict(im)


def equals_modulo_cofactor(a: Expr | CanonicalForm, b: Expr | CanonicalForm,
                           cofactor: Expr | CanonicalForm) -> bool:
    """True iff ``cofactor * a == b`` identically."""
    cof = normalize(cofactor)
    if cof.is_zero():
        raise ValueError("cofactor must be nonzero")
    if not is_monomial(cof):
        raise ValueError(f"cofactor must be a single monomial, got {cof}")
    return (cof * normalize(a) - normalize(b)).is_zero()
