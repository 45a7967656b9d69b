"""Immutable expression trees over exact rationals, fields, parameters and ``i``.

Nodes compare structurally and are hashable. Arithmetic operators build new
trees without simplifying beyond trivial constant folding; use
:func:`galgauge.symbolic.canonical.normalize` to decide equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

COORDS = ("t", "x", "y", "z")
SPATIAL = ("x", "y", "z")

FIELD_NAMES = ("R", "S", "V", "Phi", "Ax", "Ay", "Az", "Psi", "Psic", "chi")
COMPLEX_FIELDS = frozenset({"Psi", "Psic"})
REAL_FIELDS = frozenset(FIELD_NAMES) - COMPLEX_FIELDS

PARAM_NAMES = ("m", "e", "gamma", "vx", "vy", "vz", "g")

ZERO_DERIV = (0, 0, 0, 0)

Number = Union[int, Fraction]


class FrameError(ValueError):
    """Primed and unprimed objects were combined in one operation."""


class Expr:
    """Base class for expression nodes; supplies operator overloads."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return power(self, n)

    def __truediv__(self, other):
        return divide(self, as_expr(other))

    def __rtruediv__(self, other):
        return divide(as_expr(other), self)

    def __str__(self) -> str:
        from .printer import print_expr

        return print_expr(self)


@dataclass(frozen=True, eq=True)
class Rational(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=True)
class ImaginaryUnit(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Param(Expr):
    name: str

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise ValueError(f"unknown parameter {self.name!r}")


@dataclass(frozen=True, eq=True)
class Coord(Expr):
    name: str
    primed: bool = False

    def __post_init__(self):
        if self.name not in COORDS:
            raise ValueError(f"unknown coordinate {self.name!r}")

    @property
    def index(self) -> int:
        return COORDS.index(self.name)


@dataclass(frozen=True, eq=True)
class Field(Expr):
    """A field, possibly differentiated; ``deriv`` counts d/dt, d/dx, d/dy, d/dz."""

    name: str
    primed: bool = False
    deriv: tuple[int, int, int, int] = ZERO_DERIV

    def __post_init__(self):
        if self.name not in FIELD_NAMES:
            raise ValueError(f"unknown field {self.name!r}")
        deriv = tuple(int(k) for k in self.deriv)
        if len(deriv) != 4 or min(deriv) < 0:
            raise ValueError(f"bad derivative multi-index {self.deriv!r}")
        object.__setattr__(self, "deriv", deriv)

    @property
    def is_real(self) -> bool:
        return self.name in REAL_FIELDS

    @property
    def order(self) -> int:
        return sum(self.deriv)

    def base(self) -> "Field":
        return Field(self.name, self.primed)

    def derived(self, coord: Coord) -> "Field":
        if coord.primed != self.primed:
            raise FrameError(f"cannot differentiate {self.name}{_mark(self.primed)} "
                             f"by {coord.name}{_mark(coord.primed)}")
        d = list(self.deriv)
        d[coord.index] += 1
        return Field(self.name, self.primed, tuple(d))


@dataclass(frozen=True, eq=True)
class Sum(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Product(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True, eq=True)
class Power(Expr):
    """Integer power. Negative exponents are only allowed on parameters."""

    base: Expr
    exponent: int

    def __post_init__(self):
        if self.exponent < 0 and not isinstance(self.base, Param):
            raise ValueError("negative powers are restricted to parameters")


def _mark(primed: bool) -> str:
    return "'" if primed else ""


ZERO = Rational(Fraction(0))
ONE = Rational(Fraction(1))
I = ImaginaryUnit()


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Rational(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an expression (floats are not allowed)")


def is_zero(e: Expr) -> bool:
    return isinstance(e, Rational) and e.value == 0


def is_one(e: Expr) -> bool:
    return isinstance(e, Rational) and e.value == 1


def add(*terms: Expr) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif not is_zero(t):
            flat.append(t)
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def mul(*factors: Expr) -> Expr:
    flat: list[Expr] = []
    coeff = Fraction(1)
    for f in factors:
        parts = f.factors if isinstance(f, Product) else (f,)
        for p in parts:
            if isinstance(p, Rational):
                coeff *= p.value
            else:
                flat.append(p)
    if coeff == 0:
        return ZERO
    if coeff != 1 or not flat:
        flat.insert(0, Rational(coeff))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def neg(e: Expr) -> Expr:
    return mul(Rational(Fraction(-1)), e)


def power(base: Expr, n: int) -> Expr:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("exponents must be integers")
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Rational):
        if base.value == 0 and n < 0:
            raise ZeroDivisionError("zero to a negative power")
        return Rational(base.value ** n)
    return Power(base, n)


def divide(num: Expr, den: Expr) -> Expr:
    """Divide by a nonzero monomial in rationals and parameters."""
    return mul(num, reciprocal(den))


def reciprocal(den: Expr) -> Expr:
    from .canonical import normalize

    cf = normalize(den)
    if len(cf.terms) != 1:
        raise ValueError(f"can only divide by a single nonzero monomial, got {cf}")
    mono, coeff = cf.terms[0]
    if mono.i or mono.atoms:
        raise ValueError(f"can only divide by rationals and parameters, got {cf}")
    factors: list[Expr] = [Rational(1 / coeff)]
    factors.extend(power(Param(name), -k) for name, k in mono.params)
    return mul(*factors)


def sum_of(items: Iterable[Expr]) -> Expr:
    return add(*list(items))


def coord(name: str, primed: bool = False) -> Coord:
    return Coord(name, primed)


def spatial_coords(primed: bool = False) -> tuple[Coord, Coord, Coord]:
    return tuple(Coord(n, primed) for n in SPATIAL)  # type: ignore[return-value]


def field(name: str, primed: bool = False, **orders: int) -> Field:
    """``field("S", t=1, x=2)`` is the atom d/dt d^2/dx^2 S."""
    deriv = tuple(orders.pop(c, 0) for c in COORDS)
    if orders:
        raise ValueError(f"unknown coordinates {sorted(orders)}")
    return Field(name, primed, deriv)


def atoms(e: Expr) -> set[Expr]:
    """All Field and Coord leaves of ``e``."""
    out: set[Expr] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, (Field, Coord)):
            out.add(node)
        elif isinstance(node, Sum):
            stack.extend(node.terms)
        elif isinstance(node, Product):
            stack.extend(node.factors)
        elif isinstance(node, Power):
            stack.append(node.base)
    return out


def frame_of(e: Expr) -> bool | None:
    """True if every atom is primed, False if none is, None if ``e`` has no atoms.

    Raises FrameError on a mixed expression.
    """
    frames = {a.primed for a in atoms(e)}
    if len(frames) > 1:
        raise FrameError("expression mixes primed and unprimed atoms")
    return frames.pop() if frames else None


def params_of(e: Expr) -> set[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Param):
            out.add(node.name)
        elif isinstance(node, Sum):
            stack.extend(node.terms)
        elif isinstance(node, Product):
            stack.extend(node.factors)
        elif isinstance(node, Power):
            stack.append(node.base)
    return out
