import pytest

from galgauge.catalog import (
    CATALOG_KEYS,
    CATALOG_VERSION,
    EquationSpec,
    LagrangianSpec,
    NonlinearityError,
    UnknownKeyError,
    UnsupportedDependencyError,
    bilaplacian,
    build,
    equation,
    euler_lagrange,
    lagrangian,
    polar_density,
    polar_split,
    pure_gauge,
)
from galgauge.symbolic import CanonicalForm, equals_modulo_cofactor, normalize, parse, print_canonical
from galgauge.symbolic.expr import frame_of


def N(text):
    return normalize(parse(text))


def drop_param(cf: CanonicalForm, name: str) -> CanonicalForm:
    """Set a parameter to zero by discarding every monomial containing it."""
    return CanonicalForm.from_dict({m: c for m, c in cf.terms if name not in dict(m.params)})


GOLDEN = {
    "se": "-Psi*V + i*dt(Psi) + dxdx(Psi)/2/m + dydy(Psi)/2/m + dzdz(Psi)/2/m",
    "madelung_continuity": "2*R*dt(R) + 2*R*dx(R)*dx(S)/m + 2*R*dy(R)*dy(S)/m + 2*R*dz(R)*dz(S)/m"
                           " + R^2*dxdx(S)/m + R^2*dydy(S)/m + R^2*dzdz(S)/m",
    "madelung_hj": "-2*R*dt(S) - R*dx(S)^2/m - R*dy(S)^2/m - R*dz(S)^2/m - 2*R*V"
                   " + dxdx(R)/m + dydy(R)/m + dzdz(R)/m",
    "lagrangian_se_complex": "Psi*Psic*V - i*Psi*dt(Psic)/2 + i*dt(Psi)*Psic/2 - dx(Psi)*dx(Psic)/2/m"
                             " - dy(Psi)*dy(Psic)/2/m - dz(Psi)*dz(Psic)/2/m",
    "lagrangian_se_polar": "R^2*dt(S) + R^2*dx(S)^2/2/m + R^2*dy(S)^2/2/m + R^2*dz(S)^2/2/m + R^2*V"
                           " + dx(R)^2/2/m + dy(R)^2/2/m + dz(R)^2/2/m",
    "lagrangian_staruszkiewicz": "R^2*dt(S) + R^2*dx(S)^2/2/m + R^2*dy(S)^2/2/m + R^2*dz(S)^2/2/m + R^2*V"
                                 " + dx(R)^2/2/m + dy(R)^2/2/m + dz(R)^2/2/m + 4*gamma*dxdx(S)*dydy(S)"
                                 " + 4*gamma*dxdx(S)*dzdz(S) + 2*gamma*dxdx(S)^2 + 4*gamma*dydy(S)*dzdz(S)"
                                 " + 2*gamma*dydy(S)^2 + 2*gamma*dzdz(S)^2",
    "minimal_coupling_se": "-i*e*Ax*dx(Psi)/m - e^2*Ax^2*Psi/2/m - i*e*dx(Ax)*Psi/2/m - i*e*Ay*dy(Psi)/m"
                           " - e^2*Ay^2*Psi/2/m - i*e*dy(Ay)*Psi/2/m - i*e*Az*dz(Psi)/m - e^2*Az^2*Psi/2/m"
                           " - i*e*dz(Az)*Psi/2/m - e*Phi*Psi - Psi*V + i*dt(Psi) + dxdx(Psi)/2/m"
                           " + dydy(Psi)/2/m + dzdz(Psi)/2/m",
    "pg_real": "-2*R*dt(S) - R*V + dxdx(R)/2/m + dydy(R)/2/m + dzdz(R)/2/m",
    "pg_imag": "2*R*dt(R)",
    "cubic_nls": "-Psi*V - g*Psi^2*Psic + i*dt(Psi) + dxdx(Psi)/2/m + dydy(Psi)/2/m + dzdz(Psi)/2/m",
}


def _expr(item):
    return item.residual if isinstance(item, EquationSpec) else item.density


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_golden_canonical_strings(key):
    assert print_canonical(_expr(build(key))) == GOLDEN[key]


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_catalog_entries_are_unprimed_and_homogeneous(key):
    assert frame_of(_expr(build(key))) is False


def test_catalog_covers_every_key_once():
    assert sorted(GOLDEN) == sorted(CATALOG_KEYS)
    assert len(set(CATALOG_KEYS)) == len(CATALOG_KEYS)
    assert CATALOG_VERSION


def test_unknown_key():
    with pytest.raises(UnknownKeyError):
        build("dirac")
    with pytest.raises(TypeError):
        equation("lagrangian_se_polar")


# ---------------------------------------------------------------- builders


def test_continuity_expands_divergence():
    assert equation("madelung_continuity").canonical == N("dt(R^2) + 1/m*(2*R*gdot(R, S) + R^2*lap(S))")


def test_frozen_density():
    assert equation("pg_imag").canonical == N("2*R*dt(R)")


def test_extra_term_is_squared_laplacian():
    diff = lagrangian("lagrangian_staruszkiewicz").canonical - lagrangian("lagrangian_se_polar").canonical
    assert diff == N("2*gamma*lap(S)^2")


# ---------------------------------------------------------------- polar split


def test_polar_split_of_linear_equation():
    split = polar_split(equation("se"))
    assert split.targets == ("madelung_hj", "madelung_continuity")
    assert equals_modulo_cofactor(split.real.residual, equation("madelung_hj").residual, parse("2"))
    assert equals_modulo_cofactor(split.imag.residual, equation("madelung_continuity").residual, parse("2*R"))
    assert split.real.canonical == N("1/(2*m)*lap(R) - R*dt(S) - R*V - 1/(2*m)*R*gradsq(S)")


def test_polar_split_of_pure_gauge_minimal_coupling():
    split = polar_split(pure_gauge(equation("minimal_coupling_se")))
    assert split.real.canonical == equation("pg_real").canonical
    assert split.imag.canonical == N("dt(R)")
    assert equals_modulo_cofactor(split.imag.residual, equation("pg_imag").residual, parse("2*R"))


def test_polar_split_of_cubic_equation_adds_cubic_amplitude():
    lin = polar_split(equation("se"))
    cub = polar_split(equation("cubic_nls"))
    assert cub.real.canonical - lin.real.canonical == N("-g*R^3")
    assert cub.imag.canonical == lin.imag.canonical


def test_polar_split_rejects_mixed_phase():
    with pytest.raises(NonlinearityError):
        polar_split(EquationSpec("bad", parse("Psi^2 + Psi")))


def test_minimal_coupling_polar_form_with_potentials():
    split = polar_split(equation("minimal_coupling_se"))
    want_re = N("1/(2*m)*lap(R) - R*dt(S) - R*V - e*Phi*R"
                " - 1/(2*m)*R*((dx(S) - e*Ax)^2 + (dy(S) - e*Ay)^2 + (dz(S) - e*Az)^2)")
    assert split.real.canonical == want_re


# ---------------------------------------------------------------- Euler-Lagrange


def test_variation_in_phase_gives_minus_continuity():
    eq = euler_lagrange(lagrangian("lagrangian_se_polar"), "S")
    assert eq.canonical == equation("madelung_continuity").canonical.scale(-1)


def test_variation_in_amplitude_gives_minus_hamilton_jacobi():
    eq = euler_lagrange(lagrangian("lagrangian_se_polar"), "R")
    assert eq.canonical == N("2*R*dt(S) + 1/m*R*gradsq(S) + 2*R*V - 1/m*lap(R)")
    assert eq.canonical == equation("madelung_hj").canonical.scale(-1)


def test_variation_of_extended_density():
    eq = euler_lagrange(lagrangian("lagrangian_staruszkiewicz"), "S")
    want = equation("madelung_continuity").canonical.scale(-1) + normalize(parse("4*gamma") * bilaplacian())
    assert eq.canonical == want


def test_extra_variation_is_four_gamma_bilaplacian():
    a = euler_lagrange(lagrangian("lagrangian_staruszkiewicz"), "S").canonical
    b = euler_lagrange(lagrangian("lagrangian_se_polar"), "S").canonical
    assert a - b == N("4*gamma*lap(lap(S))")


@pytest.mark.parametrize("f", ["R", "S"])
def test_vanishing_coupling_recovers_standard_variation(f):
    a = euler_lagrange(lagrangian("lagrangian_staruszkiewicz"), f).canonical
    b = euler_lagrange(lagrangian("lagrangian_se_polar"), f).canonical
    assert drop_param(a, "gamma") == b


def test_consistency_between_polar_split_and_variation():
    split = polar_split(equation("se"))
    lag = lagrangian("lagrangian_se_polar")
    el_s = euler_lagrange(lag, "S").residual
    el_r = euler_lagrange(lag, "R").residual
    assert equals_modulo_cofactor(split.imag.residual, el_s, parse("-2*R"))
    assert equals_modulo_cofactor(split.real.residual, el_r, parse("-2"))


def test_variation_rejects_third_order_dependence():
    with pytest.raises(UnsupportedDependencyError):
        euler_lagrange(LagrangianSpec("bad", parse("dxdxdx(S)*R")), "S")


def test_variation_in_primed_frame():
    lag = LagrangianSpec("p", parse("R'^2*dt'(S') + gdot(S', S')"))
    eq = euler_lagrange(lag, "S")
    assert eq.primed
    assert eq.canonical == N("-2*R'*dt'(R') - 2*lap(S')")


# ---------------------------------------------------------------- complex density


def test_complex_density_differs_from_polar_density_in_potential_sign():
    polar = polar_density(lagrangian("lagrangian_se_complex")).canonical
    transcribed = lagrangian("lagrangian_se_polar").canonical
    assert polar + transcribed == N("2*R^2*V")
    assert polar.scale(-1) + N("2*R^2*V") == transcribed


def test_polar_density_must_be_real():
    with pytest.raises(NonlinearityError):
        polar_density(LagrangianSpec("bad", parse("Psic*dt(Psi)")))
