import math

import mpmath
import numpy as np
import pytest
from scipy.special import loggamma

from wilson_daha import P_ALT, P_STAR, Params
from wilson_daha.exactpoly import LinearForm, SparsePoly, affine_substitute
from wilson_daha.numeric import (
    GammaPoleError,
    QuadratureSpec,
    complex_gamma,
    full_constant,
    gustafson_constant,
    log_gamma,
    numeric_selfadjointness,
    quad_gram,
    quad_inner,
    quad_with_error,
    weight_eval,
)
from wilson_daha.wilson import E_poly, relative_norm

P = P_STAR
one = SparsePoly.constant(2, 1)
x1 = SparsePoly.variable(2, 1)


# -- complex Gamma -------------------------------------------------------------
def test_gamma_special_values():
    assert abs(complex_gamma(1) - 1) < 1e-13
    assert abs(complex_gamma(0.5) - math.sqrt(math.pi)) < 1e-13
    assert abs(complex_gamma(5) - 24) < 1e-11


def test_gamma_functional_equation():
    rng = np.random.default_rng(0)
    z = rng.uniform(-6, 6, 100) + 1j * rng.uniform(-30, 30, 100)
    lhs = np.exp(log_gamma(z + 1))
    rhs = z * np.exp(log_gamma(z))
    assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) < 1e-12


def test_log_gamma_matches_reference():
    rng = np.random.default_rng(1)
    z = rng.uniform(-8, 8, 200) + 1j * rng.uniform(-60, 60, 200)
    ours = np.exp(log_gamma(z) - loggamma(z))
    assert np.max(np.abs(ours - 1)) < 1e-12


def test_log_gamma_large_imaginary_part():
    z = 0.3 + 150j
    ref = complex(mpmath.loggamma(z))
    assert abs(np.exp(log_gamma(z) - ref) - 1) < 1e-12


def test_gamma_pole():
    with pytest.raises(GammaPoleError):
        log_gamma(-2.0)
    with pytest.raises(GammaPoleError):
        log_gamma(np.array([1.5, 0.0]))


# -- weight ----------------------------------------------------------------------
def test_weight_symmetric_and_positive():
    rng = np.random.default_rng(2)
    for _ in range(20):
        y = rng.uniform(-6, 6, 2)
        base = weight_eval(1j * y, "plus", P)
        assert base.real > 0 and abs(base.imag) < 1e-12 * base.real
        for img in ([-y[0], y[1]], [y[1], y[0]], [y[0], -y[1]]):
            other = weight_eval(1j * np.array(img), "plus", P)
            assert abs(other - base) < 1e-10 * abs(base)


def test_weight_vanishes_on_walls():
    assert weight_eval(np.array([0j, 2j]), "plus", P) == 0
    assert weight_eval(np.array([1.5j, 1.5j]), "plus", P) == 0


def test_weight_decays():
    near = abs(weight_eval(np.array([0.7j, 1.9j]), "plus", P))
    far = abs(weight_eval(np.array([0.7j, 25j]), "plus", P))
    assert far < 1e-12 * near


def test_weight_requires_positive_parameters():
    bad = Params(P.t0, P.u0, 0, P.tn, P.un)
    with pytest.raises(ValueError):
        weight_eval(np.array([1j, 2j]), "plus", bad)
    with pytest.raises(ValueError):
        weight_eval(np.array([1j, 2j]), "other", P)


# -- quadrature ------------------------------------------------------------------
def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(truncation=10)
    with pytest.raises(ValueError):
        QuadratureSpec(panels=3)
    with pytest.raises(ValueError):
        QuadratureSpec(grading=0.5)
    s = QuadratureSpec()
    assert s.doubled().panels == 2 * s.panels
    assert s.to_json()["grading"] == 2.0


def test_axis_excludes_origin():
    y, w = QuadratureSpec().axis()
    assert np.all(y != 0)
    assert abs(w.sum() - 80.0) < 1e-10


@pytest.mark.parametrize("params", [P_STAR, P_ALT])
def test_constant_term(params):
    val, change = quad_with_error(one, one, "plus", params)
    ref = gustafson_constant(params)
    assert abs(val.real - ref) / ref < 1e-4
    assert change < 1e-6 * ref
    assert abs(val.imag) < 1e-8 * ref


def test_gram_matrix():
    lams = [(0, 0), (1, 0), (0, -1), (-1, 0)]
    E = [E_poly(l, P) for l in lams]
    G = quad_gram(E, "full", P)
    c = full_constant(P)
    for i, lam in enumerate(lams):
        pred = c / float(relative_norm(lam, P))
        assert abs(G[i, i].real - pred) / abs(pred) < 1e-3
        for j in range(i):
            assert abs(G[i, j]) < 1e-3 * math.sqrt(abs(G[i, i] * G[j, j]))


def test_quad_inner_bilinear():
    a = quad_inner(x1 + 2, one, "full", P)
    b = quad_inner(x1, one, "full", P) + 2 * quad_inner(one, one, "full", P)
    assert abs(a - b) < 1e-10 * abs(a)


@pytest.mark.parametrize("op", [0, 1, 2, "X1", "X2"])
def test_selfadjoint(op):
    f = E_poly((1, 0), P)
    g = E_poly((0, -1), P) + 1
    assert numeric_selfadjointness(op, f, g, P) < 1e-3


def test_selfadjoint_detects_failure():
    # a translation x1 -> x1 + 1 is not symmetric for this pairing
    shift = [LinearForm((1, 0), 1), LinearForm((0, 1), 0)]
    op = lambda p: affine_substitute(p, shift)
    assert numeric_selfadjointness(op, E_poly((1, 0), P), x1 + 1, P) > 1e-2
