"""Floating-point companion: complex Gamma, Gamma weights, tensor quadrature.

Integrals over (iR)^n are taken with x = i y and measure (2 pi)^(-n) dy,
truncated to [-T, T] per axis and evaluated with panelled Gauss-Legendre
rules.  Only n = 2 is supported for integration.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exactpoly import SparsePoly
from .params import Params

__all__ = [
    "log_gamma",
    "complex_gamma",
    "QuadratureSpec",
    "weight_eval",
    "quad_inner",
    "gustafson_constant",
    "full_constant",
    "quad_gram",
    "quad_with_error",
    "GammaPoleError",
    "numeric_selfadjointness",
    "NumericReport",
]

_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)


class GammaPoleError(ZeroDivisionError):
    pass


def _log_gamma_right(z):
    """Lanczos log-Gamma for Re z >= 1/2 (works on numpy arrays)."""
    z = z - 1
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[k] / (z + k)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z):
    """log sin(pi z) without overflow for large |Im z| (numpy arrays)."""
    w = np.pi * z
    out = np.empty_like(w)
    big = np.abs(w.imag) > 1.0
    small = ~big
    out[small] = np.log(np.sin(w[small]))
    wb = w[big]
    flip = wb.imag < 0
    wb = np.where(flip, np.conj(wb), wb)
    val = -1j * wb + np.log1p(-np.exp(2j * wb)) + np.log(0.5j)
    out[big] = np.where(flip, np.conj(val), val)
    return out


def log_gamma(z):
    """Complex log-Gamma (some branch); exp() of it is Gamma(z).

    Accepts scalars or numpy arrays.  Uses the reflection formula for
    Re z < 1/2.  Raises GammaPoleError at non-positive integers.
    """
    scalar = np.isscalar(z)
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    pole = (arr.imag == 0) & (arr.real <= 0) & (arr.real == np.round(arr.real))
    if pole.any():
        raise GammaPoleError(f"Gamma has a pole at {arr[pole][0]}")
    out = np.empty_like(arr)
    right = arr.real >= 0.5
    out[right] = _log_gamma_right(arr[right])
    left = ~right
    if left.any():
        zl = arr[left]
        out[left] = _LOG_PI - _log_sin_pi(zl) - _log_gamma_right(1 - zl)
    return complex(out[0]) if scalar else out


def complex_gamma(z) -> complex:
    return cmath.exp(log_gamma(complex(z)))


def _log_recip_gamma_pm(u):
    """log of 1/(Gamma(u) Gamma(-u)) = log(-u sin(pi u)/pi)."""
    u = np.asarray(u, dtype=complex)
    with np.errstate(divide="ignore"):
        return np.log(-u) + _log_sin_pi(u) - _LOG_PI


# -- weights -----------------------------------------------------------------
def _log_delta_plus(x: np.ndarray, params: Params) -> np.ndarray:
    """log Delta_+ at points ``x`` of shape (N, n); -inf where it vanishes."""
    a, b, c, d = (float(v) for v in params.wilson())
    t = float(params.t)
    N, n = x.shape
    total = np.zeros(N, dtype=complex)
    for j in range(n):
        xj = x[:, j]
        for v in (a, b, c, d):
            total += log_gamma(v + xj) + log_gamma(v - xj)
        total += _log_recip_gamma_pm(2 * xj)
        for k in range(j + 1, n):
            xk = x[:, k]
            for u in (xj + xk, xj - xk):
                total += log_gamma(t + u) + log_gamma(t - u)
                total += _log_recip_gamma_pm(u)
    return total


def _c_plus_float(x: np.ndarray, params: Params) -> np.ndarray:
    """c_+ as the product over negative finite roots (float version)."""
    a, b, _, _ = (float(v) for v in params.wilson())
    t = float(params.t)
    N, n = x.shape
    out = np.ones(N, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(n):
            xj = x[:, j]
            out *= (a - xj) * (b - xj) / (-2 * xj)
            for k in range(j + 1, n):
                xk = x[:, k]
                for u in (-xj + xk, -xj - xk):
                    out *= (t + u) / u
    return out


def weight_eval(x, kind: str, params: Params):
    """Delta_+ (``kind='plus'``) or Delta = c_+ Delta_+ (``kind='full'``).

    ``x`` is one point (length n) or an array of shape (N, n).  On the
    hyperplanes x_j = 0 and x_j = +-x_k the weight vanishes; it is set to 0
    there instead of evaluating 0 * infinity.
    """
    params.require_positive()
    pts = np.asarray(x, dtype=complex)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        w = np.exp(_log_delta_plus(pts, params))
        if kind == "full":
            w = w * _c_plus_float(pts, params)
        elif kind != "plus":
            raise ValueError(f"unknown weight kind {kind!r}")
    n = pts.shape[1]
    degenerate = np.zeros(len(pts), dtype=bool)
    for j in range(n):
        degenerate |= pts[:, j] == 0
        for k in range(j + 1, n):
            degenerate |= (pts[:, j] == pts[:, k]) | (pts[:, j] == -pts[:, k])
    w[degenerate] = 0
    return complex(w[0]) if single else w


# -- quadrature ----------------------------------------------------------------
@dataclass(frozen=True)
class QuadratureSpec:
    """Panelled Gauss-Legendre rule on [-T, T].

    Panel edges sit at ``+-T (k / (panels/2)) ** grading``; ``grading = 1``
    gives uniform panels, the default 2 concentrates nodes near the origin
    where the weight has its bulk.  0 is always a panel edge, so no node
    lands on the hyperplanes x_j = 0.
    """

    truncation: float = 40.0
    panels: int = 8
    nodes_per_panel: int = 32
    grading: float = 2.0

    def __post_init__(self):
        if self.truncation < 20:
            raise ValueError("truncation must be at least 20")
        if self.panels < 2 or self.panels % 2 or self.nodes_per_panel < 2:
            raise ValueError("need an even number of panels and two nodes per panel")
        if self.grading < 1:
            raise ValueError("grading must be >= 1")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(self.truncation, 2 * self.panels, self.nodes_per_panel, self.grading)

    def axis(self):
        """Nodes and weights on [-T, T]."""
        return _axis(self.truncation, self.panels, self.nodes_per_panel, self.grading)

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "panels": self.panels,
            "nodes_per_panel": self.nodes_per_panel,
            "grading": self.grading,
        }


@lru_cache(maxsize=None)
def _axis(T: float, panels: int, m: int, grading: float):
    g, w = np.polynomial.legendre.leggauss(m)
    half = panels // 2
    pos = T * (np.arange(half + 1) / half) ** grading
    edges = np.concatenate([-pos[::-1], pos[1:]])
    ys, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        hw = 0.5 * (hi - lo)
        ys.append(0.5 * (hi + lo) + hw * g)
        ws.append(hw * w)
    return np.concatenate(ys), np.concatenate(ws)


@lru_cache(maxsize=16)
def _grid(spec: QuadratureSpec, n: int, kind: str, params: Params):
    """Points x = iy and combined weights w_k * Delta(x_k) / (2 pi)^n."""
    if n != 2:
        raise ValueError("numeric integration is implemented for n = 2 only")
    y, w = spec.axis()
    Y1, Y2 = np.meshgrid(y, y, indexing="ij")
    W = np.outer(w, w).ravel()
    pts = 1j * np.stack([Y1.ravel(), Y2.ravel()], axis=1)
    dens = weight_eval(pts, kind, params)
    return pts, W * dens / (2 * np.pi) ** n


def poly_values(p: SparsePoly, pts: np.ndarray) -> np.ndarray:
    """Evaluate ``p`` at an (N, n) complex array (float coefficients)."""
    out = np.zeros(len(pts), dtype=complex)
    for e, c in p.sorted_terms():
        term = np.full(len(pts), float(c), dtype=complex)
        for j, k in enumerate(e):
            if k:
                term = term * pts[:, j] ** k
        out += term
    return out


def quad_inner(f: SparsePoly, g: SparsePoly, kind: str, params: Params, spec: QuadratureSpec | None = None) -> complex:
    """Numerical ``<f, g>`` for the weight ``kind`` ('plus' or 'full')."""
    spec = spec or QuadratureSpec()
    pts, wts = _grid(spec, f.nvars, kind, params)
    return complex(np.sum(wts * poly_values(f, pts) * poly_values(g, pts)))


def quad_gram(polys, kind: str, params: Params, spec: QuadratureSpec | None = None) -> np.ndarray:
    spec = spec or QuadratureSpec()
    pts, wts = _grid(spec, polys[0].nvars, kind, params)
    V = np.stack([poly_values(p, pts) for p in polys], axis=1)
    return (V * wts[:, None]).T @ V


def quad_with_error(f, g, kind, params, spec: QuadratureSpec | None = None):
    """Value at ``spec`` and the change under doubling the panel count."""
    spec = spec or QuadratureSpec()
    v1 = quad_inner(f, g, kind, params, spec)
    v2 = quad_inner(f, g, kind, params, spec.doubled())
    return v2, abs(v2 - v1)


# -- closed-form constant term -------------------------------------------------
def _lgamma_real(x: float) -> float:
    if x <= 0 and x == int(x):
        raise GammaPoleError(f"Gamma pole at {x}")
    return log_gamma(complex(x)).real


def gustafson_constant(params: Params, n: int = 2) -> float:
    """Closed form of ``<1, 1>_+``."""
    params.require_positive()
    v = [float(q) for q in params.wilson()]
    t = float(params.t)
    logval = n * math.log(2) + math.lgamma(n + 1)
    for j in range(1, n + 1):
        logval += _lgamma_real(t * j) - _lgamma_real(t)
        for k in range(4):
            for l in range(k + 1, 4):
                logval += _lgamma_real(v[k] + v[l] + (j - 1) * t)
        logval -= _lgamma_real(sum(v) + (n + j - 2) * t)
    return math.exp(logval)


def full_constant(params: Params, n: int = 2) -> float:
    """``<1,1>_t = c_+(-x_0)/|W_0| * <1,1>_+``."""
    from .operators import c_plus
    from .wilson import neg, x_point

    x0 = x_point((0,) * n, params)
    order = math.factorial(n) * 2 ** n
    return float(c_plus(neg(x0), params)) / order * gustafson_constant(params, n)


# -- self-adjointness ------------------------------------------------------------
def numeric_selfadjointness(op, f: SparsePoly, g: SparsePoly, params: Params, spec: QuadratureSpec | None = None) -> float:
    """Relative residual ``|<Zf,g> - <f,Zg>| / (|<Zf,g>| + |<f,Zg>|)`` for the full weight.

    ``op`` is an index ``i`` (meaning ``T_i``), a name such as ``"T0"`` or
    ``"X2"``, or any callable on polynomials.
    """
    if not callable(op):
        from .operators import get_rep

        rep = get_rep(f.nvars, params)
        kind, idx = ("T", int(op)) if isinstance(op, int) else (op[0], int(op[1:]))
        op = lambda p, kind=kind, idx=idx: rep.apply_generator(kind, idx, p)
    a = quad_inner(op(f), g, "full", params, spec)
    b = quad_inner(f, op(g), "full", params, spec)
    scale = abs(a) + abs(b)
    return abs(a - b) / scale if scale else 0.0


@dataclass
class NumericReport:
    entries: dict = field(default_factory=dict)

    def add(self, name: str, value, predicted=None, rel_error=None, imag=None, passed=None):
        self.entries[name] = {
            "value": _fmt(value),
            "predicted": _fmt(predicted),
            "rel_error": _fmt(rel_error),
            "imag_residual": _fmt(imag),
            "pass": None if passed is None else bool(passed),
        }

    @property
    def ok(self) -> bool:
        return all(e["pass"] is not False for e in self.entries.values())

    def to_json(self) -> dict:
        return {"pass": self.ok, "checks": dict(sorted(self.entries.items()))}


def _fmt(v):
    if v is None:
        return None
    if isinstance(v, complex):
        return [float(f"{v.real:.12e}"), float(f"{v.imag:.12e}")]
    return float(f"{float(v):.12e}")
