"""Galilean boosts, the nonrelativistic potential law, U(1) gauge maps and
the pure-gauge identification of the potentials with the quantum phase.

Boost convention: ``t = t'``, ``x = x' + v t'``, with
``S = S' + m v.x' + (m/2) v^2 t'``, ``d/dt = d/dt' - v.grad'`` and
``grad = grad'``. Every other real field is a frame scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .symbolic import (
    Coord,
    Expr,
    Field,
    FrameError,
    Param,
    Rational,
    diff,
    print_canonical,
    relabel,
    simplify,
    substitute,
)
from .symbolic.calculus import map_atoms
from .symbolic.expr import SPATIAL, add, mul, atoms as atoms_of

POTENTIAL_COMPONENTS = ("Ax", "Ay", "Az")


def _default_velocity() -> tuple[Expr, Expr, Expr]:
    return (Param("vx"), Param("vy"), Param("vz"))


@dataclass(frozen=True)
class BoostSpec:
    """Frame velocity; components are parameter polynomials so residuals stay exact."""

    velocity: tuple[Expr, Expr, Expr] = dc_field(default_factory=_default_velocity)

    def __post_init__(self):
        vel = tuple(self.velocity)
        if len(vel) != 3:
            raise ValueError("velocity needs three components")
        for v in vel:
            if atoms_of(v):
                raise ValueError(f"velocity component {v} must not contain fields or coordinates")
        object.__setattr__(self, "velocity", vel)

    @classmethod
    def zero(cls) -> "BoostSpec":
        return cls((Rational(0), Rational(0), Rational(0)))

    def reversed(self) -> "BoostSpec":
        return BoostSpec(tuple(-v for v in self.velocity))

    def speed_squared(self) -> Expr:
        return add(*(v * v for v in self.velocity))

    def describe(self) -> list[str]:
        return [print_canonical(v) for v in self.velocity]


@dataclass(frozen=True)
class GaugeSpec:
    """U(1) gauge function; defaults to the real field ``chi``."""

    chi: Expr = dc_field(default_factory=lambda: Field("chi"))

    def __post_init__(self):
        for a in atoms_of(self.chi):
            if isinstance(a, Field) and not a.is_real:
                raise ValueError("gauge function must be real")

    @classmethod
    def constant(cls, value=1) -> "GaugeSpec":
        return cls(Rational(Fraction(value)))

    def describe(self) -> list[str]:
        return [print_canonical(self.chi)]


def _boosted_base(f: Field, b: BoostSpec) -> Expr:
    primed = Field(f.name, True)
    if f.name != "S":
        return primed
    m = Param("m")
    xs = [Coord(c, True) for c in SPATIAL]
    shift = mul(m, add(*(v * x for v, x in zip(b.velocity, xs))))
    drift = mul(Rational(Fraction(1, 2)), m, b.speed_squared(), Coord("t", True))
    return add(primed, shift, drift)


def _convective_dt(e: Expr, b: BoostSpec) -> Expr:
    """d/dt expressed in the primed frame: d/dt' - v.grad'."""
    terms = [diff(e, Coord("t", True))]
    for v, c in zip(b.velocity, SPATIAL):
        terms.append(-(v * diff(e, Coord(c, True))))
    return add(*terms)


def apply_boost(e: Expr, b: BoostSpec | None = None) -> Expr:
    """Rewrite an unprimed expression entirely in primed-frame atoms.

    The potentials are only relabelled here; :func:`transform_potentials`
    applies their mixing law. Complex ``Psi`` must be polar-split first.
    """
    b = b or BoostSpec()
    cache: dict[Expr, Expr] = {}

    def rewrite(node: Expr) -> Expr | None:
        if isinstance(node, Coord):
            if node.primed:
                raise FrameError("apply_boost expects unprimed input")
            if node.name == "t":
                return Coord("t", True)
            k = SPATIAL.index(node.name)
            return add(Coord(node.name, True), b.velocity[k] * Coord("t", True))
        if not isinstance(node, Field):
            return None
        if node.primed:
            raise FrameError("apply_boost expects unprimed input")
        if not node.is_real:
            raise ValueError(f"{node.name} must be polar-split before boosting")
        if node in cache:
            return cache[node]
        out = _boosted_base(node, b)
        nt, *spatial = node.deriv
        for c, k in zip(SPATIAL, spatial):
            for _ in range(k):
                out = diff(out, Coord(c, True))
        for _ in range(nt):
            out = simplify(_convective_dt(out, b))
        cache[node] = out = simplify(out)
        return out

    return simplify(map_atoms(e, rewrite))


def transform_potentials(phi: Expr, a: tuple[Expr, Expr, Expr],
                         b: BoostSpec | None = None) -> tuple[Expr, tuple[Expr, Expr, Expr]]:
    """Boost (Phi, A): ``Phi' = Phi - v.A``, ``A' = A``, in primed atoms."""
    b = b or BoostSpec()
    phi_b = apply_boost(phi, b)
    a_b = tuple(apply_boost(ai, b) for ai in a)
    phi_new = add(phi_b, *(-(v * ai) for v, ai in zip(b.velocity, a_b)))
    return simplify(phi_new), a_b  # type: ignore[return-value]


def gauge_mapping(g: GaugeSpec, primed: bool = False) -> dict[Field, Expr]:
    chi = relabel(g.chi, primed)
    e = Param("e")
    mapping: dict[Field, Expr] = {
        Field("Phi", primed): add(Field("Phi", primed), -diff(chi, Coord("t", primed))),
        Field("S", primed): add(Field("S", primed), mul(e, chi)),
    }
    for comp, c in zip(POTENTIAL_COMPONENTS, SPATIAL):
        mapping[Field(comp, primed)] = add(Field(comp, primed), diff(chi, Coord(c, primed)))
    return mapping


def apply_gauge(e: Expr, g: GaugeSpec | None = None) -> Expr:
    """Simultaneous ``A -> A + grad chi``, ``Phi -> Phi - d_t chi``, ``S -> S + e chi``."""
    g = g or GaugeSpec()
    found = atoms_of(e)
    for a in found:
        if isinstance(a, Field) and not a.is_real:
            raise ValueError(f"{a.name} must be polar-split before a gauge map")
    mapping: dict[Field, Expr] = {}
    for primed in {a.primed for a in found}:
        mapping.update(gauge_mapping(g, primed))
    return simplify(substitute(e, mapping))


def pure_gauge_mapping(primed: bool = False) -> dict[Field, Expr]:
    inv_e = Param("e") ** -1
    s = Field("S", primed)
    mapping = {Field("Phi", primed): inv_e * diff(s, Coord("t", primed))}
    for comp, c in zip(POTENTIAL_COMPONENTS, SPATIAL):
        mapping[Field(comp, primed)] = inv_e * diff(s, Coord(c, primed))
    return mapping


def pure_gauge_substitute(e: Expr) -> Expr:
    """Identify the potentials with the phase: ``Phi = (1/e) dS/dt``, ``A = (1/e) grad S``."""
    mapping: dict[Field, Expr] = {}
    for primed in (False, True):
        mapping.update(pure_gauge_mapping(primed))
    return simplify(substitute(e, mapping))


def potential_atoms(primed: bool = False) -> tuple[Field, tuple[Field, Field, Field]]:
    return Field("Phi", primed), tuple(Field(c, primed) for c in POTENTIAL_COMPONENTS)  # type: ignore[return-value]


__all__ = [
    "BoostSpec", "GaugeSpec", "apply_boost", "apply_gauge", "gauge_mapping",
    "potential_atoms", "pure_gauge_mapping", "pure_gauge_substitute", "transform_potentials",
]
