"""Covariance and invariance verdicts for catalog systems.

A boost check compares each boosted residual with the same residual written
in primed atoms; a gauge check compares each target with its gauge image.
Any nonvanishing difference is a witness of non-covariance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .catalog import (
    CATALOG_VERSION,
    EquationSpec,
    LagrangianSpec,
    equation,
    lagrangian,
    polar_split,
    pure_gauge,
)
from .symbolic import CanonicalForm, Expr, normalize, parse, print_canonical, relabel
from .transforms import (
    BoostSpec,
    GaugeSpec,
    apply_boost,
    apply_gauge,
    potential_atoms,
    pure_gauge_substitute,
    transform_potentials,
)


@dataclass(frozen=True)
class Channel:
    """One compared quantity: ``residual = transformed - cofactor * expected``."""

    name: str
    transformed: CanonicalForm
    expected: CanonicalForm
    residual: CanonicalForm

    @property
    def vanishes(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class Report:
    system: str
    kind: str
    params: tuple[str, ...]
    channels: tuple[Channel, ...] = ()
    catalog_version: str = CATALOG_VERSION

    @property
    def covariant(self) -> bool:
        return all(c.vanishes for c in self.channels)

    @property
    def verdict(self) -> str:
        good = self.covariant
        if self.kind == "gauge":
            return "invariant" if good else "non-invariant"
        return "covariant" if good else "non-covariant"

    @property
    def witnesses(self) -> list[str]:
        """Canonical residual of every channel that fails to vanish."""
        return [print_canonical(c.residual) for c in self.channels if not c.vanishes]

    @property
    def witness_terms(self) -> list[str]:
        return [print_canonical(m) for c in self.channels for m in c.residual.monomial_forms()]

    @property
    def residual(self) -> str:
        bad = [c for c in self.channels if not c.vanishes]
        if not bad:
            return "0"
        if len(self.channels) == 1:
            return print_canonical(bad[0].residual)
        return "; ".join(f"{c.name}: {print_canonical(c.residual)}" for c in bad)

    def channel(self, name: str) -> Channel:
        for c in self.channels:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "transform": {"kind": self.kind, "params": list(self.params)},
            "covariant": self.covariant,
            "verdict": self.verdict,
            "residual": self.residual,
            "witnesses": self.witnesses,
            "channels": [
                {
                    "name": c.name,
                    "transformed": print_canonical(c.transformed),
                    "expected": print_canonical(c.expected),
                    "residual": print_canonical(c.residual),
                }
                for c in self.channels
            ],
            "catalog_version": self.catalog_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


REPORT_SCHEMA = {
    "type": "object",
    "required": ["system", "transform", "covariant", "residual", "witnesses"],
    "properties": {
        "system": {"type": "string"},
        "transform": {
            "type": "object",
            "required": ["kind", "params"],
            "properties": {
                "kind": {"enum": ["boost", "gauge"]},
                "params": {"type": "array", "items": {"type": "string"}},
            },
        },
        "covariant": {"type": "boolean"},
        "residual": {"type": "string"},
        "witnesses": {"type": "array", "items": {"type": "string"}},
        "catalog_version": {"type": "string"},
    },
}


def _channel(name: str, transformed: Expr, expected: Expr, cofactor: Expr | int = 1) -> Channel:
    t = normalize(transformed)
    x = normalize(expected)
    return Channel(name, t, x, t - normalize(cofactor) * x)


@dataclass(frozen=True)
class Obstruction:
    """Pure-gauge potentials pushed through the potential boost law."""

    phi_transformed: Expr
    phi_expected: Expr
    a_transformed: tuple[Expr, Expr, Expr]
    a_expected: tuple[Expr, Expr, Expr]

    @property
    def phi_residual(self) -> CanonicalForm:
        return normalize(self.phi_transformed) - normalize(self.phi_expected)

    @property
    def a_residual(self) -> tuple[CanonicalForm, CanonicalForm, CanonicalForm]:
        return tuple(normalize(t) - normalize(x) for t, x in zip(self.a_transformed, self.a_expected))  # type: ignore[return-value]

    def channels(self) -> list[Channel]:
        out = [_channel("Phi", self.phi_transformed, self.phi_expected)]
        for comp, t, x in zip(("Ax", "Ay", "Az"), self.a_transformed, self.a_expected):
            out.append(_channel(comp, t, x))
        return out


def pure_gauge_obstruction(b: BoostSpec | None = None) -> Obstruction:
    """Boost ``Phi = (1/e) dS/dt``, ``A = (1/e) grad S`` and compare with the primed identification."""
    b = b or BoostSpec()
    phi, a = potential_atoms()
    phi_t, a_t = transform_potentials(pure_gauge_substitute(phi), tuple(pure_gauge_substitute(c) for c in a), b)
    phi_p, a_p = potential_atoms(primed=True)
    return Obstruction(
        phi_t,
        pure_gauge_substitute(phi_p),
        a_t,
        tuple(pure_gauge_substitute(c) for c in a_p),  # type: ignore[arg-type]
    )


def _madelung_system() -> list[EquationSpec]:
    return [equation("madelung_continuity"), equation("madelung_hj")]


def _polar_system(key: str) -> list[EquationSpec]:
    split = polar_split(equation(key))
    return [split.real, split.imag]


def _pure_gauge_system() -> list[EquationSpec]:
    return [equation("pg_real"), equation("pg_imag")]


SYSTEMS = {
    "se": lambda: _polar_system("se"),
    "madelung": _madelung_system,
    "cubic-nls": lambda: _polar_system("cubic_nls"),
    "pure-gauge": _pure_gauge_system,
}


def boost_channel(eq: EquationSpec, b: BoostSpec) -> Channel:
    return _channel(eq.name, apply_boost(eq.residual, b), relabel(eq.residual, True), eq.cofactor)


def check_boost_covariance(system: str | Sequence[EquationSpec], b: BoostSpec | None = None,
                           *, name: str | None = None, potentials: bool | None = None) -> Report:
    """Boost every equation of ``system`` and compare with its primed form.

    For the ``pure-gauge`` system the potential channels (Phi, Ax, Ay, Az)
    of the pure-gauge identification are checked as well.
    """
    b = b or BoostSpec()
    if isinstance(system, str):
        if system not in SYSTEMS:
            raise KeyError(f"unknown system {system!r}; choose from {sorted(SYSTEMS)}")
        label = system
        eqs = SYSTEMS[system]()
        if potentials is None:
            potentials = system == "pure-gauge"
    else:
        label = name or "+".join(e.name for e in system) or "empty"
        eqs = list(system)
    channels = [boost_channel(eq, b) for eq in eqs]
    if potentials:
        channels.extend(pure_gauge_obstruction(b).channels())
    return Report(label, "boost", tuple(b.describe()), tuple(channels))


def _expression_of(target) -> tuple[str, Expr]:
    if isinstance(target, EquationSpec):
        return target.name, target.residual
    if isinstance(target, LagrangianSpec):
        return target.name, target.density
    return print_canonical(target), target


def check_gauge_invariance(target, g: GaugeSpec | None = None, *, name: str | None = None) -> Report:
    """``apply_gauge(expr) - expr`` for one target or a sequence of targets."""
    g = g or GaugeSpec()
    targets = list(target) if isinstance(target, (list, tuple)) else [target]
    channels = []
    for t in targets:
        label, expr = _expression_of(t)
        channels.append(_channel(label, apply_gauge(expr, g), expr))
    label = name or "+".join(c.name for c in channels)
    return Report(label, "gauge", tuple(g.describe()), tuple(channels))


def staruszkiewicz_term() -> LagrangianSpec:
    return LagrangianSpec("staruszkiewicz_term", parse("2*gamma*lap(S)^2"), ("S",))


def minimal_coupling_polar() -> list[EquationSpec]:
    """The minimally coupled equation in R, S with explicit potentials."""
    split = polar_split(equation("minimal_coupling_se"))
    return [split.real, split.imag]


GAUGE_TARGETS = {
    "staruszkiewicz-term": (lambda: staruszkiewicz_term(), lambda: GaugeSpec()),
    "minimal-coupling": (minimal_coupling_polar, lambda: GaugeSpec()),
    "pure-gauge": (lambda: [pure_gauge(e) for e in minimal_coupling_polar()], lambda: GaugeSpec()),
    "lagrangian-se-polar": (lambda: lagrangian("lagrangian_se_polar"), lambda: GaugeSpec.constant(1)),
    "lagrangian-staruszkiewicz": (lambda: lagrangian("lagrangian_staruszkiewicz"), lambda: GaugeSpec()),
}


def check_named_gauge(target: str) -> Report:
    if target not in GAUGE_TARGETS:
        raise KeyError(f"unknown gauge target {target!r}; choose from {sorted(GAUGE_TARGETS)}")
    build_target, build_gauge = GAUGE_TARGETS[target]
    return check_gauge_invariance(build_target(), build_gauge(), name=target)


def expected_obstruction() -> CanonicalForm:
    """-(1/e)(2 v.grad' S' + (3/2) m v^2), transcribed by hand."""
    return normalize(parse(
        "-1/e*(2*(vx*dx'(S') + vy*dy'(S') + vz*dz'(S')) + 3/2*m*(vx^2 + vy^2 + vz^2))"))


__all__ = [
    "Channel", "GAUGE_TARGETS", "Obstruction", "REPORT_SCHEMA", "Report", "SYSTEMS",
    "boost_channel", "check_boost_covariance", "check_gauge_invariance", "check_named_gauge",
    "expected_obstruction", "minimal_coupling_polar", "pure_gauge_obstruction", "staruszkiewicz_term",
]
