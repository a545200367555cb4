import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wilson_daha.exactpoly import (
    Q,
    DimensionError,
    DivisibilityError,
    GridConfigurationError,
    LinearForm,
    SparsePoly,
    affine_substitute,
    as_rational,
    default_offsets,
    divide_linear,
    grid_interpolate,
    grid_verify_zero,
    poly_arith,
)
from wilson_daha.operators import reflection_forms

x1 = SparsePoly.variable(2, 1)
x2 = SparsePoly.variable(2, 2)
one = SparsePoly.constant(2, 1)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, nvars=2):
    exp = st.tuples(*[st.integers(0, 3)] * nvars)
    terms = draw(st.dictionaries(exp, rationals, max_size=5))
    return SparsePoly(nvars, terms)


@st.composite
def forms(draw):
    """Linear forms in the shapes used by the representation."""
    kind = draw(st.sampled_from(["one", "diff", "sum"]))
    c = draw(rationals)
    if kind == "one":
        a = draw(rationals.filter(bool))
        return LinearForm((a, 0), c)
    sign = 1 if kind == "sum" else -1
    return LinearForm((1, sign), c)


def test_as_rational():
    assert as_rational("7/10") == Q(7, 10)
    assert as_rational(Fraction(1, 3)) == Q(1, 3)
    assert as_rational(3) == 3
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rationals_reduced():
    q = as_rational("6/4")
    assert (q.numerator, q.denominator) == (3, 2)


def test_arith_examples():
    assert poly_arith(x1 + 1, x1 - 1, "mul") == x1 * x1 - 1
    p = x1 * x2 + 3
    assert poly_arith(p, SparsePoly.zero(2), "add") == p
    assert poly_arith(x1 * x2, x1 * x2, "mul") == SparsePoly.monomial((2, 2))
    assert poly_arith(p, p, "sub").is_zero()


def test_no_zero_terms():
    p = (x1 + x2) - x2
    assert p.terms == {(1, 0): 1}
    assert len(SparsePoly(2, {(1, 1): 0})) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        x1 + SparsePoly.variable(3, 1)


def test_degree_and_coefficients():
    p = x1 ** 3 * x2 - x2 + 5
    assert p.degree() == 4
    assert p.degree_in(1) == 3
    assert p.coefficient((0, 1)) == -1
    assert p.constant_term() == 5
    assert p((Q(1, 2), 2)) == Q(1, 4) - 2 + 5


def test_json_roundtrip():
    p = x1.scale(Q(-3, 7)) * x2 + Q(1, 2)
    data = p.to_json()
    assert data[0] == {"exp": [0, 0], "num": "1", "den": "2"}
    assert SparsePoly.from_json(2, json.loads(json.dumps(data))) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == SparsePoly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_degree_of_product(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree() == p.degree() + q.degree()


@settings(max_examples=60, deadline=None)
@given(polys(), st.tuples(rationals, rationals))
def test_evaluation_is_homomorphism(p, pt):
    q = p * p + x1
    assert q(pt) == p(pt) * p(pt) + pt[0]


def test_affine_substitute_examples():
    s0 = reflection_forms(0, 2)
    s1 = reflection_forms(1, 2)
    s2 = reflection_forms(2, 2)
    assert affine_substitute(x1 * x1, s0) == 1 - 2 * x1 + x1 * x1
    assert affine_substitute(x1 * x2, s1) == x1 * x2
    assert affine_substitute(x2 ** 3, s2) == -(x2 ** 3)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_reflections_are_involutions(p):
    for i in range(3):
        forms_i = reflection_forms(i, 2)
        assert affine_substitute(affine_substitute(p, forms_i), forms_i) == p


def test_affine_substitute_general_map():
    # x1 -> x1 + x2, x2 -> 2 x2 - 1 exercises the general path
    forms_ = [LinearForm((1, 1), 0), LinearForm((0, 2), -1)]
    p = x1 * x2
    assert affine_substitute(p, forms_) == (x1 + x2) * (2 * x2 - 1)


def test_divide_examples():
    assert divide_linear(x1 * x1 - x2 * x2, LinearForm((1, -1), 0)) == x1 + x2
    assert divide_linear(SparsePoly.zero(2), LinearForm((1, 0), 3)).is_zero()
    ell = LinearForm((-2, 0), 1)
    assert divide_linear((1 - 2 * x1) * (x2 + 3), ell) == x2 + 3


def test_divide_reports_remainder():
    with pytest.raises(DivisibilityError) as info:
        divide_linear(x1 * x1 + 1, LinearForm((1, 0), 0))
    assert not info.value.remainder.is_zero()


@settings(max_examples=80, deadline=None)
@given(polys(), forms())
def test_divide_inverts_multiplication(p, ell):
    assert divide_linear(p * ell.as_poly(), ell) == p


def test_default_offsets():
    assert default_offsets(3) == (Q(1, 3), Q(1, 5), Q(1, 7))


def test_grid_verify_examples():
    expr = lambda x: (x[0] - x[1]) * (x[0] + x[1]) - (x[0] ** 2 - x[1] ** 2)
    assert grid_verify_zero(expr, 3, 2)
    assert not grid_verify_zero(lambda x: x[0] - x[1], 2, 2)


def test_grid_pole_raises():
    with pytest.raises(GridConfigurationError):
        grid_verify_zero(lambda x: (x[0] - Q(1, 3)) / (x[0] - Q(4, 3)), 3, 2)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_grid_verify_sound(p):
    # a nonzero polynomial of per-variable degree <= 3 never passes with D = 4
    assert grid_verify_zero(p, 4, 2) == p.is_zero()


@settings(max_examples=30, deadline=None)
@given(polys())
def test_grid_interpolate_recovers(p):
    assert grid_interpolate(p, 2, 4) == p


def test_as_rational_rejects_malformed():
    for bad in ("0.5", "1/0", "a/b", "1//2", ""):
        with pytest.raises(ValueError):
            as_rational(bad)
    assert as_rational(" -3/6 ") == Q(-1, 2)
