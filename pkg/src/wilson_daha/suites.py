"""Verification suites shared by the command line and the test-suite.

Every suite returns a plain dict with a ``pass`` flag, the number of
individual checks performed and a list of failures.  Values are rendered
with ``jsonable`` so that rationals travel as ``"p/q"`` strings and the
output is byte-for-byte reproducible.
"""
from __future__ import annotations

import math

from .exactpoly import Q, SparsePoly
from .operators import (
    c_plus,
    d_coeff,
    get_rep,
    is_W0_invariant,
    q_coeff,
    apply_L_sym,
    apply_S,
    apply_Y,
    gdaha_relations,
    relation_suite,
    run_relations,
)
from .params import Params
from .weyl import (
    dot_length,
    dot_reflect,
    is_dominant,
    phi_map,
    simple_root,
    weights_up_to,
)
from . import wilson as W

EXACT_SUITES = ("relations", "gdaha", "eigen", "duality", "evaluation", "norms", "fourier", "symmetric")
NUMERIC_SUITES = ("constant", "orthogonality", "norms", "selfadjoint")

# default numeric tolerances (relative)
NUMERIC_TOL = {
    "constant": 1e-4,
    "offdiag": 1e-3,
    "norm": 1e-3,
    "selfadjoint": 1e-3,
    "imag": 1e-8,
}


def jsonable(obj):
    """Recursively convert rationals to strings and tuples to lists."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    return str(obj)


def _report(suite: str, checked: int, failures: list, **extra) -> dict:
    out = {"suite": suite, "pass": not failures, "checked": checked, "failures": failures}
    out.update(extra)
    return out


def _lam_key(lam) -> str:
    return "(" + ",".join(str(m) for m in lam) + ")"


# -- exact suites ----------------------------------------------------------------
def suite_relations(n: int, degree: int, params: Params) -> dict:
    """Every algebra relation as an operator identity on monomials of degree <= D."""
    results = run_relations(relation_suite(get_rep(n, params)), degree)
    return _relation_report("relations", results, n, degree)


def suite_gdaha(n: int, degree: int, params: Params) -> dict:
    results = run_relations(gdaha_relations(get_rep(n, params)), degree)
    return _relation_report("gdaha", results, n, degree)


def _relation_report(name, results, n, degree):
    failures = [
        {"identity": key, "counterexample": list(res.counterexample)}
        for key, res in sorted(results.items())
        if not res.holds
    ]
    return _report(name, len(results), failures, n=n, degree=degree, relations=sorted(results))


def suite_eigen(n: int, size: int, params: Params) -> dict:
    """Y-eigenvalues, leading coefficients, basis levels and the S_i / T_i action."""
    W.check_genericity(n, size + 1, params)
    rep = get_rep(n, params)
    failures = []
    checked = 0
    for lam in weights_up_to(n, size):
        rec = W.nonsymmetric_p(lam, params)
        p = rec.p
        for i in range(1, n + 1):
            checked += 1
            if apply_Y(i, p, params) != p.scale(rec.gamma[i - 1]):
                failures.append({"identity": f"Y{i} p = gamma p", "lambda": lam})
        checked += 1
        if p.coefficient(phi_map(lam)) == 0:
            failures.append({"identity": "leading coefficient nonzero", "lambda": lam})
        failures += _action_failures(rep, lam, params)
        checked += 2 * (n + 1) - 1
    for m in range(size + 1):
        mat, weights, exps = W.basis_matrix(n, m, params)
        checked += 1
        if len(weights) != len(exps):
            failures.append({"identity": "basis level square", "level": m})
            continue
        try:
            W.solve_exact(mat, [Q(0)] * len(exps))
        except W.DegenerateParameterError:
            failures.append({"identity": "basis level invertible", "level": m})
    return _report("eigen", checked, failures, n=n, lambda_sum=size)


def _action_failures(rep, lam, params) -> list:
    """S_i p_lambda trichotomy (all i) and the two-term T_i p_lambda formula (i >= 1)."""
    n = len(lam)
    sig = params.sigma()
    p = W.nonsymmetric_p(lam, params).p
    g = W.gamma_point(lam, params)
    out = []
    for i in range(n + 1):
        mu = dot_reflect(i, lam)
        Sp = apply_S(i, p, params, gamma=g)
        if mu == lam:
            if Sp != SparsePoly.zero(n):
                out.append({"identity": f"S{i} p = 0", "lambda": lam})
            if i >= 1 and rep.T(i, p) != p.scale(params.chi(i, n)):
                out.append({"identity": f"T{i} p = chi p", "lambda": lam})
            continue
        pm = W.nonsymmetric_p(mu, params).p
        raising = dot_length(mu) > dot_length(lam)
        gfac = Q(1) if raising else q_coeff(i, W.gamma_point(mu, params), params)
        if Sp != pm.scale(gfac):
            out.append({"identity": f"S{i} p trichotomy", "lambda": lam})
        if i >= 1:
            A = d_coeff(i, g, sig)
            B = gfac / (2 * simple_root(i, n)(g))
            if rep.T(i, p) != p.scale(A) + pm.scale(B):
                out.append({"identity": f"T{i} p two-term", "lambda": lam})
    return out


def suite_evaluation(n: int, size: int, params: Params) -> dict:
    failures = []
    lams = weights_up_to(n, size)
    values = {}
    for lam in lams:
        direct = W.nonsymmetric_p(lam, params).eval_at_minus_x0
        product = W.evaluation_value(lam, params)
        values[_lam_key(lam)] = product
        if direct != product:
            failures.append({"identity": "evaluation product", "lambda": lam, "direct": direct, "product": product})
    return _report("evaluation", len(lams), failures, n=n, lambda_sum=size, values=values)


def symmetric_duality_weights(n: int) -> list:
    """Dominant weights with entries in {0, 1}."""
    return [tuple([1] * k + [0] * (n - k)) for k in range(n + 1)]


def suite_duality(n: int, size: int, params: Params) -> dict:
    """Duality, spectral action, intertwiner scalars, symmetric duality."""
    failures = []
    checked = 0
    lams = weights_up_to(n, size)
    for lam in lams:
        for mu in lams:
            checked += 1
            if not W.duality_check(lam, mu, params):
                failures.append({"identity": "duality", "lambda": lam, "mu": mu})
    for lam in lams:
        for i in range(n + 1):
            checked += 1
            if not W.verify_spectral_action(lam, i, params):
                failures.append({"identity": f"spectral action T~{i}", "lambda": lam})
            mu = dot_reflect(i, lam)
            if mu != lam:
                checked += 1
                if not W.verify_intertwiner_scalar(lam, i, params):
                    failures.append({"identity": f"S{i} E scalar", "lambda": lam})
    sym = symmetric_duality_weights(n)
    for lam in sym:
        for mu in sym:
            checked += 1
            if not W.symmetric_duality_check(lam, mu, params):
                failures.append({"identity": "symmetric duality", "lambda": lam, "mu": mu})
    return _report("duality", checked, failures, n=n, lambda_sum=size)


def suite_norms(n: int, size: int, params: Params) -> dict:
    """Stepwise norm ratios, path independence of their products, and nu_lambda.

    The stepwise ratio is compared with ``-b^2 / q_i(gamma_lambda)``, where
    ``S_i E_lambda = b E_{s_i.lambda}``; this follows from ``S_i^2 = q_i(Y)``
    and the skew-symmetry of ``S_i`` for the inner product.
    """
    failures = []
    checked = 0
    nus = {}
    for lam in weights_up_to(n, size):
        nu = W.relative_norm(lam, params)
        nus[_lam_key(lam)] = nu
        for path in W.shortest_paths(lam):
            checked += 1
            end, ratio = W.norm_along_path(path, params, n)
            if end != lam or ratio * nu != 1:
                failures.append({"identity": "path product", "lambda": lam, "path": path})
        for i in range(n + 1):
            mu = dot_reflect(i, lam)
            if mu == lam:
                continue
            checked += 1
            b = W.intertwiner_scalar(lam, i, params)
            oracle = -b * b / q_coeff(i, W.gamma_point(lam, params), params)
            if W.stepwise_norm_ratio(lam, i, params) != oracle:
                failures.append({"identity": f"stepwise ratio s{i}", "lambda": lam})
    return _report("norms", checked, failures, n=n, lambda_sum=size, nu=nus)


def suite_fourier(n: int, size: int, params: Params) -> dict:
    """G(F f) = f, F(G delta) = delta and Plancherel at c = 1 on a filtration level."""
    failures = []
    checked = 0
    monos = [SparsePoly.monomial(e) for e in W.filtration_exponents(n, size)]
    transforms = [W.fourier_F(f, params) for f in monos]
    for f, Ff in zip(monos, transforms):
        checked += 1
        if W.fourier_G(Ff, params, n) != f:
            failures.append({"identity": "G F = id", "monomial": list(f.sorted_terms()[0][0])})
    for lam in weights_up_to(n, size):
        checked += 1
        d = W.delta(lam)
        if W.fourier_F(W.fourier_G(d, params, n), params) != d:
            failures.append({"identity": "F G = id", "lambda": lam})
    # Plancherel on pairs of monomials and on two mixed polynomials
    one = SparsePoly.constant(n, 1)
    mixed = [monos[-1] + monos[1].scale(3) + one, monos[len(monos) // 2] - one.scale(Q(1, 2))]
    tests = list(zip(monos, transforms)) + [(f, W.fourier_F(f, params)) for f in mixed]
    for a in range(len(tests)):
        for b in range(a, len(tests)):
            checked += 1
            (f, Ff), (g, Fg) = tests[a], tests[b]
            if W.spectral_pairing(Ff, Fg, params) != W.alg_inner(f, g, params):
                failures.append({"identity": "Plancherel", "pair": [a, b]})
    return _report("fourier", checked, failures, n=n, lambda_sum=size)


def default_symmetric_weights(n: int) -> list:
    lams = [lam for lam in weights_up_to(n, 2) if is_dominant(lam)]
    return lams


def suite_symmetric(n: int, params: Params, lams=None) -> dict:
    """E^+ by two routes, K-sum, normalisation, expansion coefficient and L eigen-equation."""
    lams = [tuple(l) for l in (lams or default_symmetric_weights(n))]
    failures = []
    checked = 0
    x0 = W.x_point((0,) * n, params)
    sig = params.sigma()
    g0 = W.neg(W.gamma0(n, params))
    for lam in lams:
        a = W.symmetric_Eplus_routeA(lam, params)
        checked += 1
        if a != W.symmetric_Eplus_routeB(lam, params):
            failures.append({"identity": "E+ routes agree", "lambda": lam})
        checked += 3
        if not is_W0_invariant(a):
            failures.append({"identity": "E+ W0-invariant", "lambda": lam})
        if a(x0) != 1:
            failures.append({"identity": "E+(x0) = 1", "lambda": lam})
        if not W.ksum_check(lam, params):
            failures.append({"identity": "K-sum", "lambda": lam})
        checked += 1
        coeff = W.expand_in_E(a, params).get(lam, Q(0))
        if coeff != c_plus(W.neg(W.gamma_point(lam, params)), sig) / c_plus(g0, sig):
            failures.append({"identity": "E+ leading E-coefficient", "lambda": lam})
        checked += 1
        if apply_L_sym(a, params) != a.scale(W.L_eigenvalue(lam, params)):
            failures.append({"identity": "L E+ = eigenvalue E+", "lambda": lam})
    return _report("symmetric", checked, failures, n=n, weights=lams)


def run_exact_suite(name: str, n: int, params: Params, degree: int = 6, size: int = 3, lams=None) -> dict:
    if name == "relations":
        return suite_relations(n, degree, params)
    if name == "gdaha":
        return suite_gdaha(n, degree, params)
    if name == "eigen":
        return suite_eigen(n, size, params)
    if name == "evaluation":
        return suite_evaluation(n, size, params)
    if name == "duality":
        return suite_duality(n, size, params)
    if name == "norms":
        return suite_norms(n, size, params)
    if name == "fourier":
        return suite_fourier(n, size, params)
    if name == "symmetric":
        return suite_symmetric(n, params, lams)
    raise ValueError(f"unknown suite {name!r}")


# -- numeric suites ---------------------------------------------------------------
def _rel(a, b) -> float:
    return abs(a - b) / abs(b)


def numeric_constant(params: Params, spec=None, tol=None) -> dict:
    from .numeric import NumericReport, QuadratureSpec, full_constant, gustafson_constant, quad_with_error

    spec = spec or QuadratureSpec()
    tol = tol or NUMERIC_TOL["constant"]
    rep = NumericReport()
    one = SparsePoly.constant(2, 1)
    for kind, exact in (("plus", gustafson_constant(params)), ("full", full_constant(params))):
        v, err = quad_with_error(one, one, kind, params, spec)
        e = _rel(v.real, exact)
        imag_ok = abs(v.imag) <= NUMERIC_TOL["imag"] * (abs(v) + 1)
        rep.add(f"<1,1>_{kind}", v.real, exact, e, abs(v.imag), e <= tol and imag_ok)
        rep.entries[f"<1,1>_{kind}"]["doubling_change"] = float(f"{err:.3g}")
    return _numeric_out("constant", rep, spec)


def numeric_orthogonality(params: Params, size: int = 2, spec=None, tol=None) -> dict:
    from .numeric import NumericReport, QuadratureSpec, quad_gram

    spec = spec or QuadratureSpec()
    tol = tol or NUMERIC_TOL["offdiag"]
    lams = weights_up_to(2, size)
    G = quad_gram([W.E_poly(l, params) for l in lams], "full", params, spec)
    rep = NumericReport()
    worst, where = 0.0, None
    for i in range(len(lams)):
        for j in range(len(lams)):
            if i != j:
                r = abs(G[i, j]) / math.sqrt(abs(G[i, i] * G[j, j]))
                if r > worst:
                    worst, where = r, (lams[i], lams[j])
    rep.add("max offdiag ratio", worst, 0.0, worst, None, worst <= tol)
    rep.entries["max offdiag ratio"]["pair"] = [list(where[0]), list(where[1])] if where else None
    return _numeric_out("orthogonality", rep, spec)


def numeric_norms(params: Params, size: int = 2, spec=None, tol=None) -> dict:
    from .numeric import NumericReport, QuadratureSpec, full_constant, gustafson_constant, quad_gram, quad_inner

    spec = spec or QuadratureSpec()
    tol = tol or NUMERIC_TOL["norm"]
    rep = NumericReport()
    lams = weights_up_to(2, size)
    G = quad_gram([W.E_poly(l, params) for l in lams], "full", params, spec)
    c = full_constant(params)
    for k, lam in enumerate(lams):
        v = G[k, k]
        pred = c / float(W.relative_norm(lam, params))
        e = _rel(v.real, pred)
        ok = e <= tol and abs(v.imag) <= NUMERIC_TOL["imag"] * (abs(v) + 1)
        rep.add(f"<E,E>_t {_lam_key(lam)}", v.real, pred, e, abs(v.imag), ok)
    cplus = gustafson_constant(params)
    for lam in lams:
        if not is_dominant(lam):
            continue
        Ep = W.symmetric_Eplus(lam, params)
        v = quad_inner(Ep, Ep, "plus", params, spec)
        pred = cplus / float(W.relative_norm_plus(lam, params))
        e = _rel(v.real, pred)
        ok = e <= tol and abs(v.imag) <= NUMERIC_TOL["imag"] * (abs(v) + 1)
        rep.add(f"<E+,E+>_+ {_lam_key(lam)}", v.real, pred, e, abs(v.imag), ok)
    return _numeric_out("norms", rep, spec)


def numeric_selfadjoint(params: Params, spec=None, tol=None) -> dict:
    from .numeric import NumericReport, QuadratureSpec, numeric_selfadjointness

    spec = spec or QuadratureSpec()
    tol = tol or NUMERIC_TOL["selfadjoint"]
    rep = NumericReport()
    x1, x2 = SparsePoly.variable(2, 1), SparsePoly.variable(2, 2)
    one = SparsePoly.constant(2, 1)
    pairs = [(x1, x2), (x1 * x1 + x2, x1 * x2 + x1 + one)]
    for name in ("T0", "T1", "T2", "X1", "X2"):
        worst = 0.0
        for f, g in pairs:
            worst = max(worst, numeric_selfadjointness(name, f, g, params, spec))
        rep.add(f"selfadjoint {name}", worst, 0.0, worst, None, worst <= tol)
    return _numeric_out("selfadjoint", rep, spec)


def _numeric_out(name, rep, spec) -> dict:
    out = rep.to_json()
    out["suite"] = name
    out["quadrature"] = spec.to_json()
    return out


def run_numeric_suite(name: str, params: Params, size: int = 2, spec=None, tol=None) -> dict:
    params.require_positive()
    if name == "constant":
        return numeric_constant(params, spec, tol)
    if name == "orthogonality":
        return numeric_orthogonality(params, size, spec, tol)
    if name == "norms":
        return numeric_norms(params, size, spec, tol)
    if name == "selfadjoint":
        return numeric_selfadjoint(params, spec, tol)
    raise ValueError(f"unknown suite {name!r}")
