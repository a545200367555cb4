"""The polynomial representation: difference-reflection operators on Q[x_1..x_n].

``PolynomialRep`` realises the generators ``T_i`` (``i in [0, n]``), the
dual generators ``T_0^vee, T_n^vee`` and multiplication operators ``X_i``.
``Operator`` values are immutable expression trees built from those atoms;
they compose with ``*``, add with ``+`` and scale by rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .exactpoly import (
    Q,
    DivisibilityError,
    LinearForm,
    SparsePoly,
    affine_substitute,
    as_rational,
    default_offsets,
    divide_linear,
    grid_interpolate,
    grid_verify_zero,
)
from .params import Params
from .weyl import (
    O_A0,
    O_AN,
    AffineRoot,
    W0_elements,
    classify_orbit,
    finite_negative_roots,
    phi_inv,
    phi_map,
    simple_root,
)

HALF = Q(1, 2)


class PoleError(ZeroDivisionError):
    pass


class InternalLogicError(RuntimeError):
    pass


# -- reflections on polynomials ---------------------------------------------
def reflection_forms(i: int, n: int) -> list:
    """Substitution map of the simple reflection ``s_i`` acting on polynomials."""
    forms = [LinearForm.var(n, k) for k in range(1, n + 1)]
    if i == 0:
        forms[0] = LinearForm.var(n, 1, scale=-1, shift=1)
    elif i == n:
        forms[n - 1] = LinearForm.var(n, n, scale=-1)
    else:
        forms[i - 1], forms[i] = forms[i], forms[i - 1]
    return forms


def reflect_poly(i: int, p: SparsePoly) -> SparsePoly:
    return affine_substitute(p, reflection_forms(i, p.nvars))


def shift_forms(n: int, i: int, step) -> list:
    forms = [LinearForm.var(n, k) for k in range(1, n + 1)]
    forms[i - 1] = LinearForm.var(n, i, shift=step)
    return forms


def simple_root_form(i: int, n: int) -> LinearForm:
    r = simple_root(i, n)
    return LinearForm(r.v, r.c)


# -- coefficient functions ---------------------------------------------------
def _orbit_values(root: AffineRoot, params: Params):
    orbit = classify_orbit(root)
    if orbit == O_A0:
        return params.t0, params.u0
    if orbit == O_AN:
        return params.tn, params.un
    return params.t, None


def c_alpha(root: AffineRoot, x, params: Params):
    """The c-function ``c_alpha(x; t)`` for an affine root ``alpha``."""
    val = root(x)
    if val == 0:
        raise PoleError(f"c-function pole: {root} vanishes at {tuple(map(str, x))}")
    ta, ua = _orbit_values(root, params)
    if root.is_long():
        half = val / 2
        return (ta + ua + half) * (ta - ua + half) / val
    return (ta + val) / val


def d_coeff(i: int, x, params: Params):
    n = len(x)
    return c_alpha(simple_root(i, n), x, params) - params.chi(i, n)


def q_coeff(i: int, x, params: Params):
    """The scalar ``q_i(x)`` of the quadratic relation ``S_i^2 = q_i(Y)``."""
    n = len(x)
    if i == 0:
        s = HALF + x[0]
        return 4 * ((params.un + params.u0) ** 2 - s * s) * ((params.un - params.u0) ** 2 - s * s)
    if i == n:
        s = x[-1]
        return 4 * ((params.tn + params.t0) ** 2 - s * s) * ((params.tn - params.t0) ** 2 - s * s)
    a = x[i - 1] - x[i]
    return 4 * (params.t ** 2 - a * a)


def K_factor(root: AffineRoot, x, params: Params):
    """Evaluation factor ``K_alpha(x) = -2 alpha(x) c^sigma_alpha(x)``."""
    return -2 * root(x) * c_alpha(root, x, params.sigma())


def c_plus(x, params: Params):
    """``c_+(x) = prod over negative finite roots of c_alpha(x)``."""
    out = Q(1)
    for root in finite_negative_roots(len(x)):
        out *= c_alpha(root, x, params)
    return out


def m_value(x):
    out = Q(1)
    for root in finite_negative_roots(len(x)):
        out *= root(x)
    return out


@dataclass(frozen=True)
class CoeffFn:
    """Descriptor of a scalar coefficient function.

    ``kind`` is one of ``c``, ``c_sigma``, ``d``, ``q``, ``K``, ``c_plus``, ``m``.
    ``root`` is used by ``c``, ``c_sigma`` and ``K``; ``index`` by ``d`` and ``q``.
    """

    kind: str
    params: Params
    root: AffineRoot | None = None
    index: int | None = None

    def __call__(self, x):
        x = tuple(as_rational(v) if not isinstance(v, complex) else v for v in x)
        k = self.kind
        if k == "c":
            return c_alpha(self.root, x, self.params)
        if k == "c_sigma":
            return c_alpha(self.root, x, self.params.sigma())
        if k == "d":
            return d_coeff(self.index, x, self.params)
        if k == "q":
            return q_coeff(self.index, x, self.params)
        if k == "K":
            return K_factor(self.root, x, self.params)
        if k == "c_plus":
            return c_plus(x, self.params)
        if k == "m":
            return m_value(x)
        raise ValueError(f"unknown coefficient kind {k!r}")


def coefficient_eval(fn: CoeffFn, x):
    try:
        return fn(x)
    except ZeroDivisionError as exc:
        raise PoleError(str(exc)) from exc


# -- the representation ------------------------------------------------------
class PolynomialRep:
    """Generator actions for fixed ``n`` and parameters, cached per monomial."""

    def __init__(self, n: int, params: Params):
        if n < 2:
            raise ValueError("rank n must be at least 2")
        self.n = n
        self.params = params
        self._forms = {i: reflection_forms(i, n) for i in range(n + 1)}
        self._div = {i: simple_root_form(i, n) for i in range(n + 1)}
        self._num = {}
        x1 = SparsePoly.variable(n, 1)
        xn = SparsePoly.variable(n, n)
        p = params
        # d_i = num_i / a_i
        self._num[0] = (HALF - x1) ** 2 + (p.t0 ** 2 - p.u0 ** 2)
        self._num[n] = xn * xn + (p.tn ** 2 - p.un ** 2)
        for i in range(1, n):
            self._num[i] = SparsePoly.constant(n, p.t)
        self._cache: dict = {}
        self._ops: dict = {}

    def one(self) -> SparsePoly:
        return SparsePoly.constant(self.n, 1)

    def var(self, i: int) -> SparsePoly:
        return SparsePoly.variable(self.n, i)

    def reflect(self, i: int, p: SparsePoly) -> SparsePoly:
        return affine_substitute(p, self._forms[i])

    def _T_mono(self, i: int, e: tuple) -> SparsePoly:
        key = (i, e)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        mono = SparsePoly._raw(self.n, {e: Q(1)})
        s = self.reflect(i, mono)
        diff = s - mono
        try:
            quot = divide_linear(diff, self._div[i])
        except DivisibilityError as exc:  # pragma: no cover - impossible by construction
            raise InternalLogicError(f"T_{i} divisibility failed on x^{e}") from exc
        out = s.scale(self.params.chi(i, self.n)) + self._num[i] * quot
        self._cache[key] = out
        return out

    def T(self, i: int, p: SparsePoly) -> SparsePoly:
        if not 0 <= i <= self.n:
            raise IndexError(f"T_{i} out of range")
        acc: dict = {}
        for e, c in p.terms.items():
            for e2, c2 in self._T_mono(i, e).terms.items():
                acc[e2] = acc.get(e2, 0) + c * c2
        return SparsePoly._raw(self.n, {e: c for e, c in acc.items() if c})

    def X(self, i: int, p: SparsePoly) -> SparsePoly:
        out = {}
        for e, c in p.terms.items():
            e2 = list(e)
            e2[i - 1] += 1
            out[tuple(e2)] = c
        return SparsePoly._raw(self.n, out)

    def Tvee(self, i: int, p: SparsePoly) -> SparsePoly:
        if i == 0:
            return self.X(1, p) - p.scale(HALF) - self.T(0, p)
        if i == self.n:
            return -self.X(self.n, p) - self.T(self.n, p)
        return self.T(i, p)

    def apply_generator(self, kind: str, i: int, p: SparsePoly) -> SparsePoly:
        if kind == "T":
            return self.T(i, p)
        if kind == "Tvee":
            return self.Tvee(i, p)
        if kind == "X":
            return self.X(i, p)
        if kind == "s":
            return self.reflect(i, p)
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- convenience operator builders ----------------------------------
    def gen(self, kind: str, i: int) -> "Operator":
        return Operator(self, ("gen", kind, i))

    def identity(self) -> "Operator":
        return Operator(self, ("id",))

    def scalar(self, c) -> "Operator":
        return self.identity().scale(c)

    def mul_poly(self, f: SparsePoly) -> "Operator":
        return Operator(self, ("mulpoly", f))

    def word(self, letters: Sequence[int], dual_at: dict | None = None) -> "Operator":
        """Product ``T_{l1} ... T_{lr}``; ``dual_at`` maps positions to T^vee."""
        ops = []
        for pos, i in enumerate(letters):
            kind = "Tvee" if dual_at and pos in dual_at else "T"
            ops.append(self.gen(kind, i))
        return compose(ops) if ops else self.identity()

    def T_ij(self, i: int, j: int) -> "Operator":
        letters = list(range(i, j - 1)) + [j - 1] + list(range(j - 2, i - 1, -1))
        return self.word(letters)

    def Xi_in(self, i: int, dual: bool = False) -> "Operator":
        n = self.n
        letters = list(range(i, n)) + [n] + list(range(n - 1, i - 1, -1))
        pos = letters.index(n)
        return self.word(letters, {pos: True} if dual else None)

    def Xi_0i(self, i: int, dual: bool = False) -> "Operator":
        letters = list(range(i - 1, 0, -1)) + [0] + list(range(1, i))
        pos = letters.index(0)
        return self.word(letters, {pos: True} if dual else None)

    def Y(self, i: int) -> "Operator":
        key = ("Y", i)
        if key not in self._ops:
            parts = [(Q(1), self.Xi_in(i)), (Q(1), self.Xi_0i(i))]
            for j in range(i + 1, self.n + 1):
                parts.append((self.params.t, self.T_ij(i, j)))
            self._ops[key] = linear_combination(parts)
        return self._ops[key]

    def Un(self) -> "Operator":
        return self.Xi_in(1, dual=True)

    def Ttilde(self, i: int) -> "Operator":
        return self.Un() if i == 0 else self.gen("T", i)

    def poly_in_Y(self, f: SparsePoly) -> "Operator":
        """The operator ``f(Y_1, ..., Y_n)``; the ``Y_i`` commute."""
        return poly_in(f, [self.Y(i) for i in range(1, self.n + 1)])

    def a_of_Y(self, i: int) -> "Operator":
        return self.poly_in_Y(simple_root_form(i, self.n).as_poly())

    def S(self, i: int) -> "Operator":
        """Intertwiner ``[T~_i, a_i(Y)]`` as a full commutator."""
        key = ("S", i)
        if key not in self._ops:
            A, a = self.Ttilde(i), self.a_of_Y(i)
            self._ops[key] = A * a - a * A
        return self._ops[key]

    def q_poly(self, i: int) -> SparsePoly:
        n, p = self.n, self.params
        if i == 0:
            s = SparsePoly.variable(n, 1) + HALF
            return ((s * s - (p.un + p.u0) ** 2) * (s * s - (p.un - p.u0) ** 2)).scale(4)
        if i == n:
            s = SparsePoly.variable(n, n)
            return ((s * s - (p.tn + p.t0) ** 2) * (s * s - (p.tn - p.t0) ** 2)).scale(4)
        a = simple_root_form(i, n).as_poly()
        return (a * a - p.t ** 2).scale(-4)


class Operator:
    """Immutable linear operator on polynomials, memoised per monomial."""

    __slots__ = ("rep", "node", "_memo")

    def __init__(self, rep: PolynomialRep, node: tuple):
        self.rep = rep
        self.node = node
        self._memo: dict = {}

    # algebra
    def __mul__(self, other):
        if isinstance(other, Operator):
            return compose([self, other])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __add__(self, other):
        if not isinstance(other, Operator):
            other = self.rep.scalar(other)
        return linear_combination([(Q(1), self), (Q(1), other)])

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            other = self.rep.scalar(other)
        return linear_combination([(Q(1), self), (Q(-1), other)])

    def __rsub__(self, other):
        return self.rep.scalar(other) - self

    def __pow__(self, k: int):
        return compose([self] * k) if k else self.rep.identity()

    def scale(self, c) -> "Operator":
        return linear_combination([(as_rational(c), self)])

    # application
    def __call__(self, p: SparsePoly) -> SparsePoly:
        return self.apply(p)

    def apply(self, p: SparsePoly) -> SparsePoly:
        acc: dict = {}
        for e, c in p.terms.items():
            for e2, c2 in self._mono(e).terms.items():
                acc[e2] = acc.get(e2, 0) + c * c2
        return SparsePoly._raw(p.nvars, {e: c for e, c in acc.items() if c})

    def _mono(self, e: tuple) -> SparsePoly:
        hit = self._memo.get(e)
        if hit is not None:
            return hit
        rep = self.rep
        mono = SparsePoly._raw(rep.n, {e: Q(1)})
        kind = self.node[0]
        if kind == "id":
            out = mono
        elif kind == "gen":
            out = rep.apply_generator(self.node[1], self.node[2], mono)
        elif kind == "mulpoly":
            out = self.node[1] * mono
        elif kind == "prod":
            out = mono
            for op in reversed(self.node[1]):
                out = op.apply(out)
        elif kind == "sum":
            out = SparsePoly.zero(rep.n)
            for c, op in self.node[1]:
                out = out + op._mono(e).scale(c)
        else:  # pragma: no cover
            raise ValueError(kind)
        self._memo[e] = out
        return out


def compose(ops: Sequence[Operator]) -> Operator:
    """``compose([A, B])(p) = A(B(p))``."""
    flat = []
    for op in ops:
        if op.node[0] == "prod":
            flat.extend(op.node[1])
        elif op.node[0] != "id":
            flat.append(op)
    if not flat:
        return ops[0].rep.identity()
    if len(flat) == 1:
        return flat[0]
    return Operator(flat[0].rep, ("prod", tuple(flat)))


def linear_combination(pairs) -> Operator:
    pairs = [(as_rational(c), op) for c, op in pairs]
    return Operator(pairs[0][1].rep, ("sum", tuple(pairs)))


def poly_in(f: SparsePoly, ops: Sequence[Operator]) -> Operator:
    """Evaluate a polynomial at pairwise commuting operators."""
    rep = ops[0].rep
    terms = []
    for e, c in f.sorted_terms():
        factors = []
        for op, k in zip(ops, e):
            factors.extend([op] * k)
        terms.append((c, compose(factors) if factors else rep.identity()))
    if not terms:
        return rep.identity().scale(0)
    return linear_combination(terms)


# -- wrappers matching the functional interface ------------------------------
_REPS: dict = {}


def get_rep(n: int, params: Params) -> PolynomialRep:
    key = (n, params)
    rep = _REPS.get(key)
    if rep is None:
        rep = _REPS[key] = PolynomialRep(n, params)
    return rep


def apply_generator(kind: str, i: int, p: SparsePoly, params: Params) -> SparsePoly:
    return get_rep(p.nvars, params).apply_generator(kind, i, p)


def apply_Y(i: int, p: SparsePoly, params: Params) -> SparsePoly:
    return get_rep(p.nvars, params).Y(i).apply(p)


def apply_Un(p: SparsePoly, params: Params) -> SparsePoly:
    return get_rep(p.nvars, params).Un().apply(p)


def apply_S(i: int, p: SparsePoly, params: Params, gamma=None) -> SparsePoly:
    """Intertwiner ``S_i``; uses the eigenvalue shortcut when ``gamma`` is given."""
    rep = get_rep(p.nvars, params)
    if gamma is None:
        return rep.S(i).apply(p)
    At = rep.Ttilde(i)
    a = simple_root_form(i, rep.n)
    u = At.apply(p)
    return u.scale(a(gamma)) - rep.a_of_Y(i).apply(u)


# -- symmetrizer and the second order difference operator -------------------
def _alpha_numerator(root: AffineRoot, params: Params) -> SparsePoly:
    n = root.n
    lin = LinearForm(root.v, root.c).as_poly()
    ta, ua = _orbit_values(root, params)
    if root.is_long():
        half = lin.scale(HALF)
        return (half + (ta + ua)) * (half + (ta - ua))
    return lin + ta


def cplus_numerator(n: int, params: Params) -> SparsePoly:
    """``N = c_+ * m`` as a polynomial."""
    out = SparsePoly.constant(n, 1)
    for root in finite_negative_roots(n):
        out = out * _alpha_numerator(root, params)
    return out


def m_poly(n: int) -> SparsePoly:
    out = SparsePoly.constant(n, 1)
    for root in finite_negative_roots(n):
        out = out * LinearForm(root.v, root.c).as_poly()
    return out


def w0_act(perm, signs, p: SparsePoly) -> SparsePoly:
    n = p.nvars
    forms = []
    for k in range(n):
        coeffs = [0] * n
        coeffs[perm[k]] = signs[k]
        forms.append(LinearForm(tuple(coeffs)))
    return affine_substitute(p, forms)


def antisymmetrize(p: SparsePoly) -> SparsePoly:
    acc = SparsePoly.zero(p.nvars)
    for perm, signs, det in W0_elements(p.nvars):
        term = w0_act(perm, signs, p)
        acc = acc + (term if det > 0 else -term)
    return acc


def divide_by_m(p: SparsePoly) -> SparsePoly:
    for root in finite_negative_roots(p.nvars):
        p = divide_linear(p, LinearForm(root.v, root.c))
    return p


def symmetrize_Cplus(p: SparsePoly, params: Params) -> SparsePoly:
    """``C^+ p``: average over W0 of ``w(c_+ p)``, computed without poles."""
    n = p.nvars
    anti = antisymmetrize(cplus_numerator(n, params) * p)
    try:
        quot = divide_by_m(anti)
    except DivisibilityError as exc:  # pragma: no cover
        raise InternalLogicError("antisymmetric numerator not divisible by m") from exc
    return quot.scale(Q(1, len(W0_elements(n))))


def is_W0_invariant(p: SparsePoly) -> bool:
    return all(w0_act(perm, signs, p) == p for perm, signs, _ in W0_elements(p.nvars))


def A_coeff(i: int, x, params: Params):
    """Coefficient ``A_i(x)`` of the shift ``x -> x + e_i`` in ``L``."""
    a, b, c, d = params.wilson()
    xi = x[i - 1]
    val = (a + xi) * (b + xi) * (c + xi) * (d + xi) / (2 * xi * (2 * xi + 1))
    for j, xj in enumerate(x, start=1):
        if j != i:
            val *= (params.t + xi + xj) * (params.t + xi - xj) / ((xi + xj) * (xi - xj))
    return val


def L_value(p: SparsePoly, x, params: Params):
    """``(L p)(x)`` at a rational point away from the poles."""
    x = tuple(x)
    base = p(x)
    total = Q(0)
    for i in range(1, len(x) + 1):
        up = list(x)
        up[i - 1] += 1
        down = list(x)
        down[i - 1] -= 1
        minus = tuple(-v for v in x)
        total += A_coeff(i, x, params) * (p(up) - base)
        total += A_coeff(i, minus, params) * (p(down) - base)
    return total


def _L_denominator(x):
    out = Q(1)
    for i, xi in enumerate(x):
        out *= xi * (4 * xi * xi - 1)
        for xj in x[i + 1:]:
            out *= xi * xi - xj * xj
    return out


def apply_L_sym(p: SparsePoly, params: Params, check_invariance: bool = True) -> SparsePoly:
    """``L p`` for a W0-invariant polynomial, recovered by exact interpolation.

    The result is certified: after multiplying by the common denominator of
    the ``A_i`` the residual ``L p - result`` is a polynomial whose
    per-variable degree is below the certification bound, and it vanishes on
    a full tensor grid of that size.
    """
    n = p.nvars
    if check_invariance and not is_W0_invariant(p):
        raise ValueError("L is only defined here on W0-invariant polynomials")
    if p.is_zero():
        return p
    deg = max(p.degree(), 0)
    q = grid_interpolate(lambda x: L_value(p, x, params), n, deg + 1)
    cert_bound = deg + 2 * n + 6
    ok = grid_verify_zero(
        lambda x: _L_denominator(x) * (L_value(p, x, params) - q(x)), cert_bound, n
    )
    if not ok:  # pragma: no cover
        raise InternalLogicError("L p is not a polynomial of the expected degree")
    return q


# -- identity verification ---------------------------------------------------
def filtration_monomials(n: int, degree: int) -> list:
    """Monomials of total degree at most ``degree``, sorted."""
    out = [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) <= degree]
    return sorted(out)


@dataclass
class IdentityResult:
    holds: bool
    counterexample: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.holds


def verify_operator_identity(lhs: Operator, rhs: Operator, degree: int) -> IdentityResult:
    """Compare both sides on every monomial of total degree ``<= degree``."""
    n = lhs.rep.n
    count = 0
    for e in filtration_monomials(n, degree):
        mono = SparsePoly._raw(n, {e: Q(1)})
        count += 1
        if lhs.apply(mono) != rhs.apply(mono):
            return IdentityResult(False, e, count)
    return IdentityResult(True, None, count)


def _x_side_cross_rhs(rep: PolynomialRep, i: int, f: SparsePoly) -> SparsePoly:
    """``d_i(x) [(s_i f)(x) - f(x)]`` as an exact polynomial."""
    diff = rep.reflect(i, f) - f
    return rep._num[i] * divide_linear(diff, rep._div[i])


def _y_side_cross_rhs(rep: PolynomialRep, i: int, f: SparsePoly) -> SparsePoly:
    """``d_i(y; t^sigma) [f(y) - (s_i f)(y)]`` as an exact polynomial in y."""
    sig = get_rep(rep.n, rep.params.sigma())
    diff = f - sig.reflect(i, f)
    return sig._num[i] * divide_linear(diff, sig._div[i])


def relation_suite(rep: PolynomialRep) -> dict:
    """All algebraic relations as ``name -> (lhs, rhs)`` operator pairs."""
    n, p = rep.n, rep.params
    T = {i: rep.gen("T", i) for i in range(n + 1)}
    Tv = {i: rep.gen("Tvee", i) for i in range(n + 1)}
    X = {i: rep.gen("X", i) for i in range(1, n + 1)}
    Y = {i: rep.Y(i) for i in range(1, n + 1)}
    one = rep.identity()
    t = p.t
    rel = {}

    # quadratic relations
    rel["quad T0"] = (T[0] * T[0], one.scale(p.t0 ** 2))
    rel["quad Tn"] = (T[n] * T[n], one.scale(p.tn ** 2))
    for i in range(1, n):
        rel[f"quad T{i}"] = (T[i] * T[i], one)
    rel["quad T0vee"] = (Tv[0] * Tv[0], one.scale(p.u0 ** 2))
    rel["quad Tnvee"] = (Tv[n] * Tv[n], one.scale(p.un ** 2))

    # braid relations for both families
    for name, G in (("T", T), ("Tvee", Tv)):
        for i in (0, n - 1):
            a, b = G[i], G[i + 1]
            rel[f"braid4 {name}{i}{name}{i + 1}"] = (
                a * b * a * b + (a * b).scale(t),
                b * a * b * a + (b * a).scale(t),
            )
        for i in range(1, n - 1):
            rel[f"braid3 {name}{i}"] = (G[i] * G[i + 1] * G[i], G[i + 1] * G[i] * G[i + 1])
        for i in range(n + 1):
            for j in range(i + 2, n + 1):
                rel[f"commute {name}{i}{name}{j}"] = (G[i] * G[j], G[j] * G[i])

    # cross relations with p(X) = X_j
    for i in range(n + 1):
        for j in range(1, n + 1):
            xj = rep.var(j)
            sx = rep.reflect(i, xj)
            lhs = T[i] * X[j] - rep.mul_poly(sx) * T[i]
            rel[f"cross T{i} X{j}"] = (lhs, rep.mul_poly(_x_side_cross_rhs(rep, i, xj)))
    rel["lemma (X1-1/2-T0)^2"] = ((X[1] - HALF - T[0]) ** 2, one.scale(p.u0 ** 2))
    rel["lemma (Xn+Tn)^2"] = ((X[n] + T[n]) ** 2, one.scale(p.un ** 2))
    for i in range(1, n):
        rel[f"lemma T{i}X{i}T{i}"] = (T[i] * X[i] * T[i], X[i + 1] - T[i].scale(t))
        rel[f"lemma X{i}T{i + 1}"] = (X[i] * T[i + 1], T[i + 1] * X[i])
    for i in range(1, n + 1):
        for j in range(n + 1):
            if abs(i - j) >= 2:
                rel[f"lemma X{i}T{j}"] = (X[i] * T[j], T[j] * X[i])

    # mixed relations
    rel["mixed T0 T1 T0v T1"] = (T[0] * T[1] * Tv[0] * T[1], T[1] * Tv[0] * T[1] * T[0])
    rel["mixed Tn Tn-1 Tnv Tn-1"] = (
        T[n] * T[n - 1] * Tv[n] * T[n - 1],
        T[n - 1] * Tv[n] * T[n - 1] * T[n],
    )
    for i in range(2, n + 1):
        rel[f"mixed T0v X{i}"] = (Tv[0] * X[i], X[i] * Tv[0])
    for i in range(1, n):
        rel[f"mixed Tnv X{i}"] = (Tv[n] * X[i], X[i] * Tv[n])
    rel["mixed [T0,Tnv]"] = (T[0] * Tv[n], Tv[n] * T[0])
    rel["mixed [T0v,Tn]"] = (Tv[0] * T[n], T[n] * Tv[0])
    rel["mixed [T0v,Tnv]"] = (Tv[0] * Tv[n], Tv[n] * Tv[0])
    total = linear_combination(
        [(HALF, one), (Q(1), T[0]), (Q(1), Tv[0]), (Q(1), rep.Xi_in(1)), (Q(1), rep.Xi_in(1, True))]
        + [(t, rep.T_ij(1, j)) for j in range(2, n + 1)]
    )
    rel["compatibility sum"] = (total, one.scale(0))
    rel["Un^2"] = (rep.Un() * rep.Un(), one.scale(p.un ** 2))

    # Y operators
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rel[f"commute Y{i}Y{j}"] = (Y[i] * Y[j], Y[j] * Y[i])
    for i in range(1, n):
        rel[f"Y recursion {i + 1}"] = (Y[i + 1], T[i] * Y[i] * T[i] - T[i].scale(t))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            yj = rep.var(j)
            sy = rep.reflect(i, yj)
            lhs = T[i] * Y[j] - rep.poly_in_Y(sy) * T[i]
            rel[f"Y-cross T{i} Y{j}"] = (lhs, rep.poly_in_Y(_y_side_cross_rhs(rep, i, yj)))

    # centre: elementary symmetric functions of Y_i^2
    ysq = [rep.var(k) * rep.var(k) for k in range(1, n + 1)]
    for k in range(1, n + 1):
        ek = SparsePoly.zero(n)
        for combo in itertools.combinations(ysq, k):
            term = SparsePoly.constant(n, 1)
            for f in combo:
                term = term * f
            ek = ek + term
        Z = rep.poly_in_Y(ek)
        for i in range(n + 1):
            rel[f"centre e{k}(Y^2) T{i}"] = (Z * T[i], T[i] * Z)

    # intertwiners
    S = {i: rep.S(i) for i in range(n + 1)}
    for i in range(n + 1):
        rel[f"S{i}^2 = q{i}(Y)"] = (S[i] * S[i], rep.poly_in_Y(rep.q_poly(i)))
    for i in (0, n - 1):
        a, b = S[i], S[i + 1]
        rel[f"S braid4 {i}{i + 1}"] = (a * b * a * b, b * a * b * a)
    for i in range(1, n - 1):
        rel[f"S braid3 {i}"] = (S[i] * S[i + 1] * S[i], S[i + 1] * S[i] * S[i + 1])
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            rel[f"S commute {i}{j}"] = (S[i] * S[j], S[j] * S[i])
    return rel


def gdaha_relations(rep: PolynomialRep) -> dict:
    """The reduced GDAHA presentation transported into the representation."""
    n, p = rep.n, rep.params
    mu0 = HALF - p.t0 - p.u0 - p.tn - p.un
    mus = (2 * p.t0, 2 * p.u0, 2 * p.tn, 2 * p.un)
    gam = (mu0 / 4,) * 4
    nu = -p.t
    one = rep.identity()
    T = {i: rep.gen("T", i) for i in range(n + 1)}
    V = [
        T[0] + (gam[0] + p.t0),
        rep.gen("Tvee", 0) + (gam[1] + p.u0),
        rep.Xi_in(1) + (gam[2] + p.tn),
        rep.Xi_in(1, True) + (gam[3] + p.un),
    ]
    s = {i: T[i] for i in range(1, n)}
    s1 = {j: rep.T_ij(1, j) for j in range(2, n + 1)}
    rel = {}
    for i in range(1, n):
        rel[f"s{i}^2"] = (s[i] * s[i], one)
    for i in range(1, n - 1):
        rel[f"braid s{i}"] = (s[i] * s[i + 1] * s[i], s[i + 1] * s[i] * s[i + 1])
    for l in range(4):
        for i in range(2, n):
            rel[f"s{i} V{l + 1}"] = (s[i] * V[l], V[l] * s[i])
        rel[f"quadratic V{l + 1}"] = (
            (V[l] - gam[l]) * (V[l] - (gam[l] + mus[l])),
            one.scale(0),
        )
    total = linear_combination([(Q(1), v) for v in V])
    rel["sum relation"] = (total, linear_combination([(nu, s1[j]) for j in range(2, n + 1)]))
    for l in range(4):
        for j in range(2, n + 1):
            conj = s1[j] * V[l] * s1[j]
            rel[f"[V{l + 1}, s1{j}V{l + 1}s1{j}]"] = (
                V[l] * conj - conj * V[l],
                (V[l] * s1[j] - s1[j] * V[l]).scale(nu),
            )
            for m in range(4):
                if m != l:
                    cm = s1[j] * V[m] * s1[j]
                    rel[f"[V{l + 1}, s1{j}V{m + 1}s1{j}]"] = (V[l] * cm - cm * V[l], one.scale(0))
    return rel


def run_relations(rel: dict, degree: int) -> dict:
    return {name: verify_operator_identity(lhs, rhs, degree) for name, (lhs, rhs) in rel.items()}


def verify_gdaha_relations(degree: int, params: Params, n: int = 2) -> dict:
    return run_relations(gdaha_relations(get_rep(n, params)), degree)


# -- triangularity of T_i on monomials --------------------------------------
def triangularity_violations(rep: PolynomialRep, size: int) -> list:
    """Check the leading-term description of ``T_i x^nu``; return failures."""
    n, p = rep.n, rep.params
    bad = []
    from .weyl import weights_up_to

    for lam in weights_up_to(n, size):
        nu = phi_map(lam)
        mono = SparsePoly._raw(n, {nu: Q(1)})
        deg = sum(nu)
        for i in range(n + 1):
            img = rep.T(i, mono)
            expect = {}
            if i == 0:
                if lam[0] >= 0:
                    expect[nu] = p.t0 + lam[0]
                else:
                    flip = (-lam[0],) + tuple(lam[1:])
                    expect[phi_map(flip)] = Q(1)
                    expect[nu] = -(p.t0 - lam[0])
            elif i == n:
                if lam[-1] >= 0:
                    if img != mono.scale(p.tn):
                        bad.append((lam, i))
                    continue
                flip = tuple(lam[:-1]) + (-lam[-1],)
                expect[phi_map(flip)] = Q(-1)
                expect[nu] = -p.tn
            else:
                sw = list(lam)
                sw[i - 1], sw[i] = sw[i], sw[i - 1]
                expect[phi_map(sw)] = Q(1)
            for e, c in img.terms.items():
                if e in expect:
                    if c != expect[e]:
                        bad.append((lam, i))
                elif sum(e) >= deg:
                    bad.append((lam, i))
            for e, c in expect.items():
                if img.coefficient(e) != c:
                    bad.append((lam, i))
    return sorted(set(bad))
