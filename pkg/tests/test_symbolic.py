from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galgauge.symbolic import (
    I,
    CanonicalForm,
    Field,
    FrameError,
    Param,
    ParseError,
    Rational,
    UnknownIdentifierError,
    coord,
    diff,
    equals_modulo_cofactor,
    field,
    normalize,
    parse,
    print_canonical,
    relabel,
    split_by_i,
    substitute,
)
from galgauge.symbolic.expr import Power, Product, Sum, frame_of

from strategies import expressions, real_expressions

COORD_LIST = [coord(c) for c in "txyz"]


def N(text):
    return normalize(parse(text))


# ---------------------------------------------------------------- parse


def test_parse_sum_with_laplacian_macro():
    e = parse("dt(S) + 1/(2*m)*lap(R)")
    assert isinstance(e, Sum)
    assert normalize(e) == N("dt(S) + 1/2/m*dxdx(R) + 1/2/m*dydy(R) + 1/2/m*dzdz(R)")


def test_parse_integer_power_times_derivative():
    e = parse("R^2*dt(S)")
    assert e == Product((Power(Field("R"), 2), field("S", t=1)))


def test_parse_error_reports_offset():
    with pytest.raises(ParseError) as info:
        parse("dt(")
    assert info.value.offset == 3


@pytest.mark.parametrize("text", ["R +", "R*(S", "2^R", "R^x", "dq(R)", "foo", "R ) S"])
def test_malformed_inputs_raise(text):
    with pytest.raises(ParseError):
        parse(text)


def test_unknown_identifier_is_a_parse_error():
    with pytest.raises(UnknownIdentifierError):
        parse("R + W")


def test_primed_atoms_and_chained_derivatives():
    assert parse("dt'dx'(S')") == field("S", True, t=1, x=1)
    assert N("dxdt(S)") == N("dtdx(S)")
    assert N("dx(dx(R))") == N("dxdx(R)")


def test_mixed_frames_rejected():
    assert frame_of(parse("R' + dx'(S')")) is True
    assert frame_of(parse("m + 1")) is None
    with pytest.raises(FrameError):
        frame_of(parse("R + R'"))


def test_float_literals_rejected():
    with pytest.raises(TypeError):
        Field("R") * 0.5


def test_division_only_by_parameter_monomials():
    assert N("R/(2*m)") == N("1/2*R/m")
    with pytest.raises((ParseError, ValueError)):
        parse("S/R")


def test_negative_power_only_on_parameters():
    assert N("m^-2*m^2") == N("1")
    with pytest.raises(ValueError):
        Power(Field("R"), -1)


# ---------------------------------------------------------------- normalize


def test_binomial_expansion():
    assert print_canonical(N("(R+S)^2")) == "2*R*S + R^2 + S^2"


def test_i_squared_is_minus_one():
    assert normalize(I * I * Field("R")) == N("-R")


def test_cancellation_gives_empty_form():
    cf = N("R - R")
    assert cf.is_zero() and len(cf) == 0
    assert print_canonical(cf) == "0"


def test_derivative_atoms_order_by_coordinate():
    assert print_canonical(N("dz(S) + dx(S) + dt(S)")) == "dt(S) + dx(S) + dz(S)"


# ---------------------------------------------------------------- diff


def test_diff_power():
    assert normalize(diff(parse("R^2"), coord("x"))) == N("2*R*dx(R)")


def test_diff_treats_parameters_as_constants():
    assert normalize(diff(parse("m*dt(S)"), coord("x"))) == N("m*dxdt(S)")


def test_diff_divergence_term_matches_hand_expansion():
    got = normalize(diff(parse("R^2*dx(S)"), coord("x")))
    assert got == N("2*R*dx(R)*dx(S) + R^2*dxdx(S)")


def test_diff_of_coordinates():
    assert normalize(diff(parse("x*t"), coord("x"))) == N("t")
    assert normalize(diff(parse("x'"), coord("x", True))) == N("1")


def test_diff_frame_mismatch():
    with pytest.raises(FrameError):
        diff(parse("R'"), coord("x"))


# ---------------------------------------------------------------- substitute


def test_substitute_potential_by_phase_derivative():
    out = substitute(parse("Phi"), Field("Phi"), parse("1/e*dt(S)"))
    assert normalize(out) == N("1/e*dt(S)")


def test_substitute_without_occurrence_is_identity():
    assert normalize(substitute(parse("R^2"), Field("S"), parse("V + 7"))) == N("R^2")


def test_substitute_chains_through_derivatives():
    out = substitute(parse("dx(Ax)"), Field("Ax"), parse("1/e*dx(S)"))
    assert normalize(out) == N("1/e*dxdx(S)")


def test_substitute_is_simultaneous():
    out = substitute(parse("R + S"), {Field("R"): Field("S"), Field("S"): Field("R")})
    assert normalize(out) == N("R + S")
    out = substitute(parse("R - 2*S"), {Field("R"): Field("S"), Field("S"): Field("R")})
    assert normalize(out) == N("S - 2*R")


def test_relabel_round_trip():
    e = parse("R^2*dt(S) + x*V")
    assert normalize(relabel(relabel(e, True), False)) == normalize(e)
    assert normalize(relabel(e, True)) == N("R'^2*dt'(S') + x'*V'")


# ---------------------------------------------------------------- split_by_i


def test_split_real_and_imaginary():
    re, im = split_by_i(parse("R + i*S"))
    assert re == N("R") and im == N("S")


def test_split_with_i_squared():
    re, im = split_by_i(parse("i*i*R + i*dt(S)"))
    assert re == N("-R") and im == N("dt(S)")


def test_split_rejects_complex_field():
    with pytest.raises(ValueError):
        split_by_i(parse("Psi"))


# ---------------------------------------------------------------- cofactors


def test_cofactor_reproduces_continuity():
    a = parse("dt(R) + 1/(2*m)*(2*gdot(R, S) + R*lap(S))")
    b = parse("dt(R^2) + 1/m*divg(R^2, S)")
    assert equals_modulo_cofactor(a, b, parse("2*R"))


def test_cofactor_scalar_multiple():
    assert equals_modulo_cofactor(parse("R"), parse("3*R"), parse("3"))


def test_cofactor_distinct_atoms():
    assert not equals_modulo_cofactor(parse("R"), parse("S"), parse("1"))


def test_cofactor_must_be_nonzero_monomial():
    with pytest.raises(ValueError):
        equals_modulo_cofactor(parse("R"), parse("R"), parse("0"))
    with pytest.raises(ValueError):
        equals_modulo_cofactor(parse("R"), parse("R"), parse("R + S"))


# ---------------------------------------------------------------- properties

prop = settings(max_examples=60, deadline=None)


@prop
@given(expressions)
def test_normalize_idempotent(e):
    cf = normalize(e)
    assert normalize(cf) == cf
    assert normalize(cf.to_expr()) == cf


@prop
@given(expressions, expressions, expressions)
def test_ring_laws(a, b, c):
    assert normalize(a + b) == normalize(b + a)
    assert normalize(a * b) == normalize(b * a)
    assert normalize((a + b) + c) == normalize(a + (b + c))
    assert normalize((a * b) * c) == normalize(a * (b * c))
    assert normalize(a * (b + c)) == normalize(a * b + a * c)


@prop
@given(real_expressions, real_expressions, st.sampled_from(COORD_LIST))
def test_leibniz_rule(a, b, c):
    lhs = diff(a * b, c) - diff(a, c) * b - a * diff(b, c)
    assert normalize(lhs).is_zero()


@prop
@given(real_expressions, st.sampled_from(COORD_LIST), st.sampled_from(COORD_LIST))
def test_mixed_partials_commute(e, c1, c2):
    assert normalize(diff(diff(e, c1), c2)) == normalize(diff(diff(e, c2), c1))


@prop
@given(expressions)
def test_printer_round_trip(e):
    cf = normalize(e)
    assert normalize(parse(print_canonical(cf))) == cf
    assert normalize(parse(str(e))) == cf


@prop
@given(expressions)
def test_split_recombines(e):
    re, im = split_by_i(e)
    assert (re + normalize(I) * im - normalize(e)).is_zero()


@prop
@given(st.fractions(min_value=-9, max_value=9, max_denominator=7))
def test_exact_rational_coefficients(q):
    cf = normalize(Rational(q) * Field("R"))
    assert (cf.as_dict() == {} if q == 0 else list(cf.as_dict().values()) == [Fraction(q)])


def test_canonical_form_is_hashable_and_ordered():
    a = N("S + R + m")
    b = N("m + R + S")
    assert a == b and hash(a) == hash(b)
    assert isinstance(a, CanonicalForm)
    assert print_canonical(a) == print_canonical(b)


def test_param_names_validated():
    with pytest.raises(ValueError):
        Param("q")
