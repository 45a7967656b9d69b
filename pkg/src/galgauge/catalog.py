"""Equations and Lagrangians as residual expressions, plus the polar split
``Psi = R exp(iS)`` and Euler-Lagrange variation.

Every residual ``E`` stands for the equation ``E = 0``. Transcriptions keep
the printed signs; comparisons that need a rescaling go through the stored
monomial cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .symbolic import (
    COORDS,
    CanonicalForm,
    Coord,
    Expr,
    Field,
    I,
    ONE,
    Param,
    Rational,
    diff,
    formal_partial,
    normalize,
    parse,
    relabel,
    simplify,
    split_by_i,
)
from .symbolic.calculus import diff_multi
from .symbolic.canonical import Monomial
from .symbolic.expr import SPATIAL, add, atoms as atoms_of, frame_of, mul, power
from .transforms import pure_gauge_substitute

CATALOG_VERSION = "1.0"


class UnknownKeyError(KeyError):
    pass


class NonlinearityError(ValueError):
    """The residual is not of the form handled by the polar split."""


class UnsupportedDependencyError(ValueError):
    pass


@dataclass(frozen=True)
class EquationSpec:
    name: str
    residual: Expr
    primed: bool = False
    cofactor: Expr = ONE
    description: str = ""

    @property
    def fields(self) -> frozenset[str]:
        return frozenset(a.name for a in atoms_of(self.residual) if isinstance(a, Field))

    @property
    def canonical(self) -> CanonicalForm:
        return normalize(self.residual)

    def with_residual(self, residual: Expr, name: str | None = None) -> "EquationSpec":
        return replace(self, residual=residual, name=name or self.name)

    def in_primed_frame(self) -> "EquationSpec":
        return replace(self, residual=relabel(self.residual, True), primed=True)


@dataclass(frozen=True)
class LagrangianSpec:
    name: str
    density: Expr
    varied: tuple[str, ...] = ("R", "S")
    description: str = ""

    @property
    def canonical(self) -> CanonicalForm:
        return normalize(self.density)


def _covariant_laplacian_psi() -> Expr:
    """(grad - i e A)^2 Psi, written out componentwise."""
    psi = Field("Psi")
    e = Param("e")
    terms = []
    for comp, c in zip(("Ax", "Ay", "Az"), SPATIAL):
        x = Coord(c)
        a = Field(comp)
        dpsi = diff(psi, x)
        terms += [
            diff(dpsi, x),
            -(I * e * diff(a * psi, x)),
            -(I * e * a * dpsi),
            -(e * e * a * a * psi),
        ]
    return add(*terms)


_POLAR_LAGRANGIAN = "R^2*dt(S) + 1/(2*m)*(gradsq(R) + R^2*gradsq(S)) + R^2*V"

_SOURCES = {
    "se": ("i*dt(Psi) + 1/(2*m)*lap(Psi) - V*Psi",
           "linear Schrödinger equation i dPsi/dt = -(1/2m) lap Psi + V Psi"),
    "madelung_continuity": ("dt(R^2) + 1/m*divg(R^2, S)",
                            "continuity equation for rho = R^2 with current R^2 grad S / m"),
    "madelung_hj": ("1/m*lap(R) - 2*R*dt(S) - 2*R*V - 1/m*R*gradsq(S)",
                    "quantum Hamilton-Jacobi equation for the phase"),
    "pg_real": ("1/(2*m)*lap(R) - 2*R*dt(S) - R*V",
                "real part of the minimally coupled equation with pure-gauge potentials"),
    "pg_imag": ("dt(R^2)", "imaginary part with pure-gauge potentials: frozen density"),
    "cubic_nls": ("i*dt(Psi) + 1/(2*m)*lap(Psi) - V*Psi - g*Psic*Psi^2",
                  "Schrödinger equation with a cubic |Psi|^2 Psi term"),
    "lagrangian_se_complex": ("i/2*(Psic*dt(Psi) - dt(Psic)*Psi) - 1/(2*m)*gdot(Psic, Psi) + Psic*V*Psi",
                              "Schrödinger Lagrangian in Psi, Psi*"),
    "lagrangian_se_polar": (_POLAR_LAGRANGIAN, "Schrödinger Lagrangian in R, S"),
    "lagrangian_staruszkiewicz": (_POLAR_LAGRANGIAN + " + 2*gamma*lap(S)^2",
                                  "Schrödinger Lagrangian with the 2 gamma (lap S)^2 term"),
}

CATALOG_KEYS = (
    "se", "madelung_continuity", "madelung_hj", "lagrangian_se_complex",
    "lagrangian_se_polar", "lagrangian_staruszkiewicz", "minimal_coupling_se",
    "pg_real", "pg_imag", "cubic_nls",
)

# (real target, real cofactor), (imaginary target, imaginary cofactor):
# cofactor * polar part == target residual.
POLAR_TARGETS = {
    "se": (("madelung_hj", "2"), ("madelung_continuity", "2*R")),
    "minimal_coupling_se+pure_gauge": (("pg_real", "1"), ("pg_imag", "2*R")),
}


@lru_cache(maxsize=None)
def build(name: str) -> EquationSpec | LagrangianSpec:
    """Build the catalog entry ``name``."""
    if name == "minimal_coupling_se":
        psi = Field("Psi")
        residual = add(
            I * diff(psi, Coord("t")),
            mul(Param("m") ** -1, Rational(Fraction(1, 2))) * _covariant_laplacian_psi(),
            -(Param("e") * Field("Phi") * psi),
            -(Field("V") * psi),
        )
        return EquationSpec(name, residual, description="minimally coupled Schrödinger equation")
    if name not in _SOURCES:
        raise UnknownKeyError(name)
    text, description = _SOURCES[name]
    expr = parse(text)
    if name.startswith("lagrangian_"):
        return LagrangianSpec(name, expr, description=description)
    return EquationSpec(name, expr, description=description)


def equation(name: str) -> EquationSpec:
    eq = build(name)
    if not isinstance(eq, EquationSpec):
        raise TypeError(f"{name} is a Lagrangian")
    return eq


def lagrangian(name: str) -> LagrangianSpec:
    lag = build(name)
    if not isinstance(lag, LagrangianSpec):
        raise TypeError(f"{name} is an equation")
    return lag


def pure_gauge(eq: EquationSpec) -> EquationSpec:
    """The equation with potentials replaced by gradients of the phase."""
    return eq.with_residual(pure_gauge_substitute(eq.residual), eq.name + "+pure_gauge")


def _phase_reduced(f: Field) -> Expr:
    """``D^alpha(R e^{±iS}) / e^{±iS}`` for Psi or Psic atoms."""
    sign = 1 if f.name == "Psi" else -1
    out: Expr = Field("R", f.primed)
    s = Field("S", f.primed)
    for name, k in zip(COORDS, f.deriv):
        c = Coord(name, f.primed)
        for _ in range(k):
            out = simplify(add(diff(out, c), mul(Rational(sign), I, out, diff(s, c))))
    return out


def polar_substitute(e: Expr, phase: int) -> CanonicalForm:
    """Substitute ``Psi = R e^{iS}`` and strip the overall ``e^{i phase S}``.

    Each monomial must carry net phase ``phase`` (1 for equations linear
    in Psi, 0 for real densities built from Psi* Psi pairs).
    """
    cf = normalize(e)
    out = CanonicalForm()
    for mono, coeff in cf.terms:
        net = 0
        rest: list[tuple] = []
        factors: list[Expr] = []
        for a, k in mono.atoms:
            if isinstance(a, Field) and a.name in ("Psi", "Psic"):
                net += k if a.name == "Psi" else -k
                factors.append(power(_phase_reduced(a), k))
            else:
                rest.append((a, k))
        if net != phase:
            raise NonlinearityError(
                f"monomial with net phase {net} (expected {phase}); unsupported Psi structure")
        base = CanonicalForm(((Monomial(mono.i, mono.params, tuple(rest)), coeff),))
        out = out + base * normalize(mul(*factors))
    return out


@dataclass(frozen=True)
class PolarSplit:
    real: EquationSpec
    imag: EquationSpec
    cofactors: tuple[Expr, Expr]
    targets: tuple[str | None, str | None] = (None, None)


def polar_split(eq: EquationSpec) -> PolarSplit:
    """Real and imaginary parts of a complex equation in Madelung variables."""
    reduced = polar_substitute(eq.residual, phase=1)
    re, im = split_by_i(reduced)
    targets = POLAR_TARGETS.get(eq.name)
    if targets:
        (rt, rc), (it, ic) = targets
        cofactors = (parse(rc), parse(ic))
        names = (rt, it)
    else:
        cofactors = (ONE, ONE)
        names = (None, None)
    return PolarSplit(
        EquationSpec(eq.name + ".real", re.to_expr(), eq.primed),
        EquationSpec(eq.name + ".imag", im.to_expr(), eq.primed),
        cofactors,
        names,
    )


def polar_density(lag: LagrangianSpec) -> LagrangianSpec:
    """A complex-field density rewritten in R, S; it must come out real."""
    reduced = polar_substitute(lag.density, phase=0)
    re, im = split_by_i(reduced)
    if not im.is_zero():
        raise NonlinearityError(f"density is not real: imaginary part {im}")
    return LagrangianSpec(lag.name + ".polar", re.to_expr(), lag.varied, lag.description)


def euler_lagrange(lag: LagrangianSpec, f: str) -> EquationSpec:
    """Variational derivative: sum over alpha of (-1)^|alpha| D^alpha dL/d(D^alpha f)."""
    density = normalize(lag.density)
    primed = bool(frame_of(lag.density))
    terms: list[Expr] = []
    for a in sorted(density.atoms(), key=lambda a: (a.__class__.__name__, str(a))):
        if not (isinstance(a, Field) and a.name == f):
            continue
        if a.order > 2:
            raise UnsupportedDependencyError(
                f"density depends on a derivative of order {a.order} of {f}")
        partial = formal_partial(density, a)
        terms.append(mul(Rational((-1) ** a.order), diff_multi(partial.to_expr(), a.deriv, primed)))
    residual = simplify(add(*terms))
    return EquationSpec(f"EL[{lag.name}; {f}]", residual, primed)


def bilaplacian(f: str = "S", primed: bool = False) -> Expr:
    """sum_{i,j} d_i d_i d_j d_j f."""
    out = []
    for ci, cj in product(SPATIAL, repeat=2):
        d = [0, 0, 0, 0]
        d[COORDS.index(ci)] += 2
        d[COORDS.index(cj)] += 2
        out.append(Field(f, primed, tuple(d)))
    return add(*out)


__all__ = [
    "CATALOG_KEYS", "CATALOG_VERSION", "EquationSpec", "LagrangianSpec", "NonlinearityError",
    "POLAR_TARGETS", "PolarSplit", "UnknownKeyError", "UnsupportedDependencyError",
    "bilaplacian", "build", "equation", "euler_lagrange", "lagrangian", "polar_density",
    "polar_split", "polar_substitute", "pure_gauge",
]
