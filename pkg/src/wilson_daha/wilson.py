"""Nonsymmetric and symmetric multivariable Wilson polynomials.

Polynomials are generated from 1 by intertwiners along the reduced word of
``u_lambda``.  Everything here is exact; the only free normalisation is the
constant ``<1,1>_t``, which is factored out (``c = 1`` in algebraic mode).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .exactpoly import Q, SparsePoly, as_rational
from .operators import (
    PoleError,
    apply_S,
    c_alpha,
    c_plus,
    d_coeff,
    get_rep,
    K_factor,
    q_coeff,
    simple_root_form,
    symmetrize_Cplus,
)
from .params import Params
from .weyl import (
    W0_orbit,
    dot_apply,
    dot_distance_table,
    dot_length,
    dot_reflect,
    inversion_set,
    is_dominant,
    phi_map,
    simple_root,
    tau_inversion_set,
    u_lambda_word,
    weights_up_to,
)


class DegenerateParameterError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


def gamma0(n: int, params: Params) -> tuple:
    return tuple(params.t0 + params.tn + (n - i) * params.t for i in range(1, n + 1))


def gamma_point(lam: Sequence[int], params: Params) -> tuple:
    """Spectral point ``gamma_lambda = u_lambda . gamma_0``."""
    lam = tuple(lam)
    return dot_apply(u_lambda_word(lam), gamma0(len(lam), params))


def x_point(lam: Sequence[int], params: Params) -> tuple:
    """Dual spectral point ``x_lambda = gamma_lambda(t^sigma)``."""
    return gamma_point(lam, params.sigma())


def neg(x) -> tuple:
    return tuple(-v for v in x)


def level(lam: Sequence[int]) -> int:
    return sum(abs(m) for m in lam)


@dataclass
class WilsonRecord:
    lam: tuple
    p: SparsePoly
    gamma: tuple
    eval_at_minus_x0: object
    E: SparsePoly
    rel_norm: object = None
    word: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "word": list(self.word),
            "gamma": [str(g) for g in self.gamma],
            "eval": str(self.eval_at_minus_x0),
            "rel_norm": str(self.rel_norm),
            "poly": self.p.to_json(),
            "E": self.E.to_json(),
        }


@lru_cache(maxsize=None)
def _p(lam: tuple, params: Params) -> SparsePoly:
    n = len(lam)
    word = u_lambda_word(lam)
    if not word:
        return SparsePoly.constant(n, 1)
    i = word[0]
    mu = dot_reflect(i, lam)
    return apply_S(i, _p(mu, params), params, gamma=gamma_point(mu, params))


def nonsymmetric_p(lam: Sequence[int], params: Params) -> WilsonRecord:
    """Build ``p_lambda = S_{u_lambda} 1`` and its normalisation ``E``."""
    lam = tuple(int(m) for m in lam)
    n = len(lam)
    p = _p(lam, params)
    val = p(neg(x_point((0,) * n, params)))
    if val == 0:
        raise DegenerateParameterError(f"p_{lam}(-x_0) = 0; choose other parameters")
    try:
        nu = relative_norm(lam, params)
    except PoleError:
        nu = None
    return WilsonRecord(lam, p, gamma_point(lam, params), val, p.scale(1 / val), nu, u_lambda_word(lam))


def E_poly(lam: Sequence[int], params: Params) -> SparsePoly:
    return nonsymmetric_p(lam, params).E


def check_genericity(n: int, size: int, params: Params) -> None:
    """Spectral points distinct and ``p_lambda(-x_0) != 0`` on the working range."""
    seen = {}
    for lam in weights_up_to(n, size):
        g = gamma_point(lam, params)
        if g in seen:
            raise DegenerateParameterError(
                f"gamma collision between {seen[g]} and {lam}; choose other parameters"
            )
        seen[g] = lam
    for lam in weights_up_to(n, size):
        nonsymmetric_p(lam, params)


# -- filtration and expansions -------------------------------------------------
def filtration_exponents(n: int, m: int) -> list:
    return sorted(phi_map(lam) for lam in dot_distance_table(n, m))


def level_of_exponent(e) -> int:
    return sum((k + 1) // 2 for k in e)


def poly_level(f: SparsePoly) -> int:
    return max((level_of_exponent(e) for e in f.terms), default=0)


def solve_exact(matrix: list, rhs: list) -> list:
    """Gauss-Jordan elimination over Q for a square system."""
    size = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise DegenerateParameterError("singular system in the E-basis expansion")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


@lru_cache(maxsize=None)
def _basis_level(n: int, m: int, params: Params):
    weights = sorted(dot_distance_table(n, m))
    exps = filtration_exponents(n, m)
    polys = [E_poly(lam, params) for lam in weights]
    for f in polys:
        if poly_level(f) > m:
            raise ConsistencyError("E polynomial outside its filtration level")
    return weights, exps, polys


def basis_matrix(n: int, m: int, params: Params):
    """Monomial coefficients of ``E_lambda`` (columns) at filtration level m."""
    weights, exps, polys = _basis_level(n, m, params)
    return [[f.coefficient(e) for f in polys] for e in exps], weights, exps


def expand_in_E(f: SparsePoly, params: Params) -> dict:
    """Coefficients ``fhat`` with ``f = sum fhat_mu E_mu``; zero entries dropped."""
    n = f.nvars
    m = poly_level(f)
    mat, weights, exps = basis_matrix(n, m, params)
    if any(e not in set(exps) for e in f.terms):  # pragma: no cover
        raise ConsistencyError("polynomial outside the filtration level")
    coeffs = solve_exact(mat, [f.coefficient(e) for e in exps])
    return {lam: c for lam, c in zip(weights, coeffs) if c}


def combine(coeffs: dict, params: Params, n: int) -> SparsePoly:
    out = SparsePoly.zero(n)
    for lam, c in sorted(coeffs.items()):
        out = out + E_poly(lam, params).scale(c)
    return out


# -- evaluation and norms ------------------------------------------------------
def evaluation_value(lam: Sequence[int], params: Params):
    """Product formula for ``p_lambda(-x_0)`` over the inversion set of ``u_lambda^{-1}``."""
    lam = tuple(lam)
    n = len(lam)
    word = tuple(reversed(u_lambda_word(lam)))
    g0 = neg(gamma0(n, params))
    out = Q(1)
    for root in inversion_set(word, n):
        try:
            out *= K_factor(root, g0, params)
        except ZeroDivisionError as exc:
            raise DegenerateParameterError(str(exc)) from exc
    return out


def _norm_factor(root, point, params: Params):
    sig = params.sigma()
    return c_alpha(-root, point, sig) / c_alpha(root, point, sig)


def relative_norm(lam: Sequence[int], params: Params):
    """``nu_lambda`` with ``<E_lambda, E_lambda>_t = <1,1>_t / nu_lambda``."""
    lam = tuple(lam)
    n = len(lam)
    point = neg(gamma_point(lam, params))
    out = Q(1)
    for root in inversion_set(u_lambda_word(lam), n):
        out *= _norm_factor(root, point, params)
    return out


def stepwise_norm_ratio(lam: Sequence[int], i: int, params: Params):
    """Predicted ``<E_lambda,E_lambda> / <E_{s_i.lam}, E_{s_i.lam}>``."""
    lam = tuple(lam)
    n = len(lam)
    point = neg(gamma_point(lam, params))
    root = simple_root(i, n)
    sig = params.sigma()
    return c_alpha(root, point, sig) / c_alpha(-root, point, sig)


def norm_along_path(path: Sequence[int], params: Params, n: int):
    """Telescope stepwise ratios along ``path`` (rightmost letter first).

    Returns ``(lam, r)`` with ``lam = path . 0`` and ``r`` the predicted
    ``<E_lam, E_lam> / <1, 1>``.
    """
    lam = (0,) * n
    ratio = Q(1)
    for i in reversed(tuple(path)):
        mu = dot_reflect(i, lam)
        ratio *= stepwise_norm_ratio(mu, i, params)
        lam = mu
    return lam, ratio


def shortest_paths(lam: Sequence[int]) -> list:
    """Every shortest word ``w`` with ``w . 0 = lam`` (all BFS geodesics)."""
    lam = tuple(lam)
    table = dot_distance_table(len(lam), level(lam) + 1)
    d = table[lam]
    if d == 0:
        return [()]
    out = []
    for i in range(len(lam) + 1):
        mu = dot_reflect(i, lam)
        if table.get(mu) == d - 1:
            out.extend((i,) + w for w in shortest_paths(mu))
    return sorted(out)


def intertwiner_scalar(lam: Sequence[int], i: int, params: Params):
    """``b`` with ``S_i E_lambda = b E_{s_i.lambda}``."""
    n = len(lam)
    g = gamma_point(lam, params)
    root = simple_root(i, n)
    return -2 * root(neg(g)) * c_alpha(root, neg(g), params.sigma())


def alg_inner(f: SparsePoly, g: SparsePoly, params: Params, c=1):
    """``<f, g>_t`` in units where ``<1,1>_t = c``."""
    c = as_rational(c)
    fh = expand_in_E(f, params)
    gh = expand_in_E(g, params)
    total = Q(0)
    for lam in sorted(set(fh) & set(gh)):
        total += fh[lam] * gh[lam] / relative_norm(lam, params)
    return total * c


# -- Fourier pair --------------------------------------------------------------
@dataclass(frozen=True)
class FiniteSpectralFunction:
    """Finitely supported function on ``{-gamma_lambda}``, keyed by ``lambda``."""

    values: tuple  # sorted ((lambda, value), ...) with nonzero values

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteSpectralFunction":
        return cls(tuple(sorted((tuple(k), as_rational(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.values)

    @property
    def support(self):
        return [k for k, _ in self.values]

    def __call__(self, lam):
        return self.as_dict().get(tuple(lam), Q(0))

    def __add__(self, other):
        d = self.as_dict()
        for k, v in other.values:
            d[k] = d.get(k, 0) + v
        return FiniteSpectralFunction.from_dict(d)

    def scale(self, c):
        return FiniteSpectralFunction.from_dict({k: v * c for k, v in self.values})


def delta(lam) -> FiniteSpectralFunction:
    return FiniteSpectralFunction.from_dict({tuple(lam): 1})


def fourier_F(f: SparsePoly, params: Params, c=1) -> FiniteSpectralFunction:
    c = as_rational(c)
    fh = expand_in_E(f, params)
    return FiniteSpectralFunction.from_dict(
        {lam: v * c / relative_norm(lam, params) for lam, v in fh.items()}
    )


def fourier_G(g: FiniteSpectralFunction, params: Params, n: int, c=1) -> SparsePoly:
    c = as_rational(c)
    out = SparsePoly.zero(n)
    for lam, v in g.values:
        out = out + E_poly(lam, params).scale(v * relative_norm(lam, params) / c)
    return out


def spectral_pairing(F1: FiniteSpectralFunction, F2: FiniteSpectralFunction, params: Params, c=1):
    """``[F1, F2] = sum F1(-gamma) F2(-gamma) nu_lambda / c``."""
    c = as_rational(c)
    d2 = F2.as_dict()
    total = Q(0)
    for lam, v in F1.values:
        if lam in d2:
            total += v * d2[lam] * relative_norm(lam, params)
    return total / c


# -- duality and spectral action ----------------------------------------------
def duality_check(lam, mu, params: Params) -> bool:
    lhs = E_poly(lam, params)(neg(x_point(mu, params)))
    rhs = E_poly(mu, params.sigma())(neg(gamma_point(lam, params)))
    return lhs == rhs


def verify_spectral_action(lam, i: int, params: Params) -> bool:
    """``T~_i E_lambda = c^sig_i(-g) E_{s_i.lam} - d^sig_i(-g) E_lambda`` with ``g = gamma_lambda``."""
    lam = tuple(lam)
    n = len(lam)
    rep = get_rep(n, params)
    E = E_poly(lam, params)
    g = neg(gamma_point(lam, params))
    sig = params.sigma()
    lhs = rep.Ttilde(i).apply(E)
    mu = dot_reflect(i, lam)
    cval = c_alpha(simple_root(i, n), g, sig)
    dval = d_coeff(i, g, sig)
    if mu == lam:
        return lhs == E.scale(cval - dval)
    return lhs == E_poly(mu, params).scale(cval) - E.scale(dval)


def verify_intertwiner_scalar(lam, i: int, params: Params) -> bool:
    lam = tuple(lam)
    mu = dot_reflect(i, lam)
    if mu == lam:
        return False
    lhs = apply_S(i, E_poly(lam, params), params, gamma=gamma_point(lam, params))
    return lhs == E_poly(mu, params).scale(intertwiner_scalar(lam, i, params))


# -- symmetric polynomials ---------------------------------------------------
def orbit_of(lam) -> list:
    return W0_orbit(tuple(lam))


def symmetric_Eplus_routeA(lam, params: Params) -> SparsePoly:
    lam = tuple(lam)
    n = len(lam)
    sig = params.sigma()
    out = SparsePoly.zero(n)
    for mu in orbit_of(lam):
        out = out + E_poly(mu, params).scale(c_plus(neg(gamma_point(mu, params)), sig))
    return out.scale(1 / c_plus(neg(gamma0(n, params)), sig))


def symmetric_Eplus_routeB(lam, params: Params, mu=None) -> SparsePoly:
    lam = tuple(lam)
    n = len(lam)
    mu = lam if mu is None else tuple(mu)
    from .weyl import W0_elements

    sym = symmetrize_Cplus(E_poly(mu, params), params)
    x0 = x_point((0,) * n, params)
    return sym.scale(len(W0_elements(n)) / c_plus(neg(x0), params))


def symmetric_Eplus(lam, params: Params) -> SparsePoly:
    """``E^+(., gamma_lambda)``; both constructions are computed and compared."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    a = symmetric_Eplus_routeA(lam, params)
    b = symmetric_Eplus_routeB(lam, params)
    if a != b:
        raise ConsistencyError(f"E^+ constructions disagree for {lam}")
    return a


def ksum_check(lam, params: Params) -> bool:
    n = len(lam)
    sig = params.sigma()
    total = sum((c_plus(neg(gamma_point(mu, params)), sig) for mu in orbit_of(lam)), Q(0))
    return total == c_plus(neg(gamma0(n, params)), sig)


def L_eigenvalue(lam, params: Params):
    a, b, c, d = params.wilson()
    n = len(lam)
    s = a + b + c + d - 1
    return sum((l * (l + s + 2 * (n - i) * params.t) for i, l in enumerate(lam, start=1)), Q(0))


def relative_norm_plus(lam, params: Params):
    """``<1,1>_+ / <E^+_lambda, E^+_lambda>_+`` as an exact rational.

    Equals ``nu_lambda / d_lambda`` where ``d_lambda = c_+^sigma(-gamma_lambda)
    / c_+^sigma(-gamma_0)`` is the coefficient of ``E_lambda`` in ``E^+_lambda``
    and ``nu_lambda`` is the product of ``c^sigma_{-a}/c^sigma_a`` at
    ``-gamma_lambda`` over the inversion set of the translation.
    """
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    n = len(lam)
    sig = params.sigma()
    point = neg(gamma_point(lam, params))
    out = c_plus(neg(gamma0(n, params)), sig) / c_plus(point, sig)
    for root in tau_inversion_set(lam):
        out *= _norm_factor(root, point, params)
    return out


def symmetric_duality_check(lam, mu, params: Params) -> bool:
    lhs = symmetric_Eplus(lam, params)(x_point(mu, params))
    rhs = symmetric_Eplus(mu, params.sigma())(gamma_point(lam, params))
    return lhs == rhs
