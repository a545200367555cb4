import pytest

from wilson_daha import P_ALT, P_STAR, Params
from wilson_daha.exactpoly import Q, SparsePoly
from wilson_daha.operators import K_factor, apply_L_sym, apply_Y, c_alpha, c_plus, get_rep, is_W0_invariant, q_coeff
from wilson_daha.weyl import W0_elements, dot_apply, phi_map, simple_root, weights_up_to
from wilson_daha.wilson import (
    DegenerateParameterError,
    E_poly,
    L_eigenvalue,
    alg_inner,
    check_genericity,
    delta,
    duality_check,
    evaluation_value,
    expand_in_E,
    fourier_F,
    fourier_G,
    gamma0,
    gamma_point,
    intertwiner_scalar,
    ksum_check,
    neg,
    nonsymmetric_p,
    norm_along_path,
    relative_norm,
    relative_norm_plus,
    shortest_paths,
    spectral_pairing,
    stepwise_norm_ratio,
    symmetric_duality_check,
    symmetric_Eplus,
    symmetric_Eplus_routeA,
    symmetric_Eplus_routeB,
    x_point,
)

P = P_STAR
x1 = SparsePoly.variable(2, 1)
one = SparsePoly.constant(2, 1)
W2 = list(weights_up_to(2, 2))


def test_spectral_points():
    assert gamma0(2, P) == (Q(2), Q(3, 2))
    assert gamma_point((-1, 0), P) == (Q(-3), Q(3, 2))
    assert x_point((0, 0), P) == (Q(17, 10), Q(6, 5))


@pytest.mark.parametrize("lam", W2)
def test_E_is_Y_eigenfunction(lam):
    E = E_poly(lam, P)
    g = gamma_point(lam, P)
    for i in (1, 2):
        assert apply_Y(i, E, P) == E.scale(g[i - 1])


@pytest.mark.parametrize("lam", W2)
def test_E_normalised_at_minus_x0(lam):
    assert E_poly(lam, P)(neg(x_point((0, 0), P))) == 1


@pytest.mark.parametrize("lam", W2)
def test_leading_monomial(lam):
    rec = nonsymmetric_p(lam, P)
    top = phi_map(lam)
    assert rec.p.coefficient(top) != 0
    assert rec.p.degree() == sum(top)


def test_E_spans_filtration():
    e = expand_in_E(x1, P)
    assert set(e) == {(-1, 0), (0, 0)}
    assert sum((E_poly(lam, P).scale(c) for lam, c in e.items()), SparsePoly.zero(2)) == x1


def test_genericity_failure_is_reported():
    # t0 + tn = -1/2 with t = 0 puts gamma_0 on the s_0 image of itself
    bad = Params(0, P.u0, 0, Q(-1, 2), P.un)
    with pytest.raises(DegenerateParameterError):
        check_genericity(2, 2, bad)
    check_genericity(2, 3, P)


@pytest.mark.parametrize("params", [P_STAR, P_ALT])
@pytest.mark.parametrize("lam", W2)
def test_evaluation_formula(params, lam):
    rec = nonsymmetric_p(lam, params)
    assert rec.eval_at_minus_x0 == evaluation_value(lam, params)


def test_evaluation_example():
    a0 = simple_root(0, 2)
    assert evaluation_value((-1, 0), P) == K_factor(a0, neg(gamma0(2, P)), P)


@pytest.mark.parametrize("lam", W2)
def test_duality(lam):
    for mu in W2:
        assert duality_check(lam, mu, P)


def test_norm_example():
    a0 = simple_root(0, 2)
    g = neg(gamma_point((-1, 0), P))
    sig = P.sigma()
    assert relative_norm((-1, 0), P) == c_alpha(-a0, g, sig) / c_alpha(a0, g, sig)


@pytest.mark.parametrize("lam", W2)
def test_norm_path_independent(lam):
    nu = relative_norm(lam, P)
    for path in shortest_paths(lam):
        end, ratio = norm_along_path(path, P, 2)
        assert end == tuple(lam)
        assert ratio * nu == 1


@pytest.mark.parametrize("lam", W2)
def test_stepwise_ratio_identity(lam):
    g = gamma_point(lam, P)
    for i in range(3):
        b = intertwiner_scalar(lam, i, P)
        if b != 0 and dot_apply([i], lam) != tuple(lam):
            assert stepwise_norm_ratio(lam, i, P) == -b * b / q_coeff(i, g, P)


def test_alg_inner_orthogonal():
    E1, E2 = E_poly((1, 0), P), E_poly((0, -1), P)
    assert alg_inner(E1, E2, P) == 0
    assert alg_inner(E1, E1, P) == 1 / relative_norm((1, 0), P)
    assert alg_inner(one, one, P, c=3) == 3


def test_fourier_roundtrip_and_plancherel():
    f = x1 * x1 - 2 * x1 + Q(1, 3)
    assert fourier_G(fourier_F(f, P), P, 2) == f
    d = delta((1, -1))
    assert fourier_F(fourier_G(d, P, 2), P) == d
    g = x1 + 5
    assert spectral_pairing(fourier_F(f, P), fourier_F(g, P), P) == alg_inner(f, g, P)


# -- symmetric ----------------------------------------------------------------
@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (1, 1), (2, 0)])
def test_symmetric_routes_agree(lam):
    A = symmetric_Eplus_routeA(lam, P)
    assert A == symmetric_Eplus_routeB(lam, P)
    assert is_W0_invariant(A)
    assert A(x_point((0, 0), P)) == 1


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (2, 0)])
def test_symmetric_eigen_and_ksum(lam):
    E = symmetric_Eplus(lam, P)
    assert apply_L_sym(E, P) == E.scale(L_eigenvalue(lam, P))
    assert ksum_check(lam, P)


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (2, 0)])
def test_symmetric_E_coefficient(lam):
    # the top nonsymmetric component of E^+ is c_+(-gamma_lam) / c_+(-gamma_0)
    sig = P.sigma()
    e = expand_in_E(symmetric_Eplus(lam, P), P)
    assert e[tuple(lam)] == c_plus(neg(gamma_point(lam, P)), sig) / c_plus(neg(gamma0(2, P)), sig)


def test_symmetric_requires_dominant():
    with pytest.raises(ValueError):
        symmetric_Eplus((0, 1), P)
    with pytest.raises(ValueError):
        relative_norm_plus((-1, 0), P)


def test_relative_norm_plus_trivial():
    assert relative_norm_plus((0, 0), P) == 1


def test_symmetric_duality():
    for lam in [(0, 0), (1, 0), (1, 1)]:
        for mu in [(0, 0), (1, 0), (1, 1)]:
            assert symmetric_duality_check(lam, mu, P)
