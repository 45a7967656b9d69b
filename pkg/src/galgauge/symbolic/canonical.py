"""Canonical polynomial form over Q(i) in field/coordinate atoms.

Monomials are ordered lexicographically by their atoms (field name, primed
flag, derivative multi-index in t<x<y<z order), then by parameter powers,
then by the power of ``i``. The order is total, so two expressions are equal
exactly when their canonical forms compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .expr import (
    COORDS,
    Coord,
    Expr,
    Field,
    ImaginaryUnit,
    Param,
    Power,
    Product,
    Rational,
    Sum,
    I,
    mul,
    power,
    add,
    as_expr,
)

Atom = Field | Coord


def atom_key(a: Atom) -> tuple:
    if isinstance(a, Field):
        letters = "".join(c * k for c, k in zip(COORDS, a.deriv))
        return (0, a.name, a.primed, (len(letters), letters))
    return (1, a.name, a.primed, ())


@dataclass(frozen=True)
class Monomial:
    i: int = 0
    params: tuple[tuple[str, int], ...] = ()
    atoms: tuple[tuple[Atom, int], ...] = ()

    def __mul__(self, other: "Monomial") -> tuple["Monomial", int]:
        """Product and the sign produced by folding i^2 = -1."""
        i = self.i + other.i
        sign = -1 if i >= 2 else 1
        params = dict(self.params)
        for name, k in other.params:
            params[name] = params.get(name, 0) + k
        atoms = dict(self.atoms)
        for a, k in other.atoms:
            atoms[a] = atoms.get(a, 0) + k
        mono = Monomial(
            i % 2,
            tuple(sorted((n, k) for n, k in params.items() if k)),
            tuple(sorted(((a, k) for a, k in atoms.items() if k), key=lambda p: atom_key(p[0]))),
        )
        return mono, sign

    def sort_key(self) -> tuple:
        return (tuple((atom_key(a), k) for a, k in self.atoms), self.params, self.i)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.atoms)

    def atom_power(self, atom: Atom) -> int:
        for a, k in self.atoms:
            if a == atom:
                return k
        return 0

    def without(self, atom: Atom, times: int = 1) -> "Monomial":
        atoms = []
        for a, k in self.atoms:
            if a == atom:
                k -= times
                if k < 0:
                    raise ValueError("atom power would become negative")
            if k:
                atoms.append((a, k))
        return Monomial(self.i, self.params, tuple(atoms))

    def to_expr(self) -> Expr:
        factors: list[Expr] = []
        if self.i:
            factors.append(I)
        factors.extend(power(Param(n), k) for n, k in self.params)
        factors.extend(power(a, k) for a, k in self.atoms)
        return mul(*factors)


UNIT = Monomial()


@dataclass(frozen=True)
class CanonicalForm:
    """Sorted tuple of (monomial, nonzero coefficient) pairs."""

    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, poly: dict[Monomial, Fraction]) -> "CanonicalForm":
        items = [(m, c) for m, c in poly.items() if c != 0]
        items.sort(key=lambda mc: mc[0].sort_key())
        return cls(tuple(items))

    @classmethod
    def constant(cls, value) -> "CanonicalForm":
        return cls.from_dict({UNIT: Fraction(value)})

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "CanonicalForm") -> "CanonicalForm":
        return CanonicalForm.from_dict(_add(self.as_dict(), other.as_dict()))

    def __sub__(self, other: "CanonicalForm") -> "CanonicalForm":
        return self + other.scale(-1)

    def __mul__(self, other: "CanonicalForm") -> "CanonicalForm":
        return CanonicalForm.from_dict(_mul(self.as_dict(), other.as_dict()))

    def __neg__(self) -> "CanonicalForm":
        return self.scale(-1)

    def scale(self, c) -> "CanonicalForm":
        c = Fraction(c)
        return CanonicalForm.from_dict({m: k * c for m, k in self.terms})

    def atoms(self) -> set[Atom]:
        return {a for m, _ in self.terms for a, _ in m.atoms}

    def params(self) -> set[str]:
        return {n for m, _ in self.terms for n, _ in m.params}

    def monomial_forms(self) -> list["CanonicalForm"]:
        return [CanonicalForm(((m, c),)) for m, c in self.terms]

    def to_expr(self) -> Expr:
        return add(*(mul(Rational(c), m.to_expr()) for m, c in self.terms))

    def __str__(self) -> str:
        from .printer import print_canonical_form

        return print_canonical_form(self)


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c != 0}


def _mul(a: dict, b: dict) -> dict:
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m, sign = ma * mb
            out[m] = out.get(m, 0) + sign * ca * cb
    return {m: c for m, c in out.items() if c != 0}


def _pow(a: dict, n: int) -> dict:
    result = {UNIT: Fraction(1)}
    base = a
    while n:
        if n & 1:
            result = _mul(result, base)
        n >>= 1
        if n:
            base = _mul(base, base)
    return result


def _poly(e: Expr) -> dict[Monomial, Fraction]:
    if isinstance(e, Rational):
        return {UNIT: e.value} if e.value else {}
    if isinstance(e, ImaginaryUnit):
        return {Monomial(i=1): Fraction(1)}
    if isinstance(e, Param):
        return {Monomial(params=((e.name, 1),)): Fraction(1)}
    if isinstance(e, (Field, Coord)):
        return {Monomial(atoms=((e, 1),)): Fraction(1)}
    if isinstance(e, Sum):
        out: dict = {}
        for t in e.terms:
            out = _add(out, _poly(t))
        return out
    if isinstance(e, Product):
        out = {UNIT: Fraction(1)}
        for f in e.factors:
            out = _mul(out, _poly(f))
            if not out:
                break
        return out
    if isinstance(e, Power):
        if e.exponent < 0:
            return {Monomial(params=((e.base.name, e.exponent),)): Fraction(1)}
        return _pow(_poly(e.base), e.exponent)
    raise TypeError(f"not an expression node: {e!r}")


def normalize(e: Expr | CanonicalForm) -> CanonicalForm:
    """Expand ``e`` into its canonical sum of monomials."""
    if isinstance(e, CanonicalForm):
        return e
    return CanonicalForm.from_dict(_poly(as_expr(e)))


def simplify(e: Expr) -> Expr:
    """Round-trip through the canonical form to get a compact tree."""
    return normalize(e).to_expr()


def formal_partial(cf: CanonicalForm, atom: Atom) -> CanonicalForm:
    """Polynomial derivative of ``cf`` treating ``atom`` as an independent variable."""
    out: dict[Monomial, Fraction] = {}
    for m, c in cf.terms:
        k = m.atom_power(atom)
        if k:
            reduced = m.without(atom)
            out[reduced] = out.get(reduced, 0) + c * k
    return CanonicalForm.from_dict(out)


def is_monomial(cf: CanonicalForm) -> bool:
    return len(cf.terms) == 1
