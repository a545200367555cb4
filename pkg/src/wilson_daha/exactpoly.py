"""Exact rationals and sparse multivariate polynomials over Q.

Coefficients are ``gmpy2.mpq`` values.  Polynomials are immutable: every
operation returns a fresh :class:`SparsePoly` and never mutates its inputs.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Q = mpq
Exp = tuple  # exponent vector, tuple of non-negative ints

__all__ = [
    "Q",
    "as_rational",
    "SparsePoly",
    "LinearForm",
    "DimensionError",
    "DivisibilityError",
    "GridConfigurationError",
    "poly_arith",
    "affine_substitute",
    "divide_linear",
    "grid_verify_zero",
    "grid_interpolate",
    "default_offsets",
    "monomials_up_to",
]


class DimensionError(ValueError):
    pass


class DivisibilityError(ArithmeticError):
    """Raised by :func:`divide_linear` when the division leaves a remainder."""

    def __init__(self, message, remainder):
        super().__init__(message)
        self.remainder = remainder


class GridConfigurationError(ArithmeticError):
    pass


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def as_rational(value) -> mpq:
    """Convert ints, Fractions, mpq or ``"p/q"`` strings to an exact rational.

    Floats are rejected: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a string like '7/10'")
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.fullmatch(text):
            raise ValueError(f"malformed rational {value!r}; expected 'p/q' or an integer")
        if text.endswith("/0"):
            raise ValueError(f"zero denominator in {value!r}")
        return mpq(text)
    return mpq(value)


def _clean(terms: Mapping) -> dict:
    return {e: c for e, c in terms.items() if c}


class SparsePoly:
    """Polynomial in ``nvars`` variables stored as ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        if nvars < 1:
            raise DimensionError("nvars must be positive")
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise DimensionError(f"bad exponent {e} for {nvars} variables")
            c = as_rational(c)
            if c:
                clean[e] = clean.get(e, Q(0)) + c
        self.terms = _clean(clean)
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "SparsePoly":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "SparsePoly":
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "SparsePoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePoly":
        """The coordinate ``x_i`` (1-based index)."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls._raw(nvars, {tuple(e): Q(1)})

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] for e in self.terms), default=-1)

    def coefficient(self, exp: Sequence[int]) -> mpq:
        return self.terms.get(tuple(exp), Q(0))

    def constant_term(self) -> mpq:
        return self.coefficient((0,) * self.nvars)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = as_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        return SparsePoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "SparsePoly":
        c = as_rational(c)
        if not c:
            return SparsePoly.zero(self.nvars)
        return SparsePoly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return SparsePoly._raw(self.nvars, _clean(out))

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, SparsePoly):
            return NotImplemented
        return self.scale(1 / as_rational(c))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation ----------------------------------------------------
    def __call__(self, point: Sequence) -> object:
        """Evaluate at ``point``; exact when the point is rational."""
        if len(point) != self.nvars:
            raise DimensionError("point has wrong length")
        powers = []
        for i, v in enumerate(point):
            top = max((e[i] for e in self.terms), default=0)
            row = [1]
            for _ in range(top):
                row.append(row[-1] * v)
            powers.append(row)
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * powers[i][k]
            total = total + term
        return total

    def evaluate(self, point: Sequence) -> object:
        return self(point)

    def map_exponents(self, fn: Callable[[Exp], tuple[Exp, int]]) -> "SparsePoly":
        """Apply ``fn(e) -> (e', sign)`` to every term (signed permutations)."""
        out = {}
        for e, c in self.terms.items():
            e2, sgn = fn(e)
            out[e2] = c if sgn > 0 else -c
        return SparsePoly._raw(self.nvars, out)

    # -- display / serialization --------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self) -> list:
        return [
            {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> "SparsePoly":
        return cls(nvars, {tuple(d["exp"]): Q(int(d["num"]), int(d["den"])) for d in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_arith(p: SparsePoly, q: SparsePoly, op: str) -> SparsePoly:
    if p.nvars != q.nvars:
        raise DimensionError(f"nvars mismatch: {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class LinearForm:
    """Affine-linear form ``sum(coeffs[i] * x_{i+1}) + constant``."""

    coeffs: tuple
    constant: mpq = Q(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))
        object.__setattr__(self, "constant", as_rational(self.constant))
        if not any(self.coeffs) and not self.constant:
            raise ValueError("linear form is identically zero")

    @classmethod
    def var(cls, nvars: int, i: int, scale=1, shift=0) -> "LinearForm":
        c = [0] * nvars
        c[i - 1] = scale
        return cls(tuple(c), shift)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def __call__(self, point):
        return sum((c * v for c, v in zip(self.coeffs, point) if c), self.constant)

    def as_poly(self) -> SparsePoly:
        n = self.nvars
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        if self.constant:
            terms[(0,) * n] = self.constant
        return SparsePoly._raw(n, terms)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]


def _signed_permutation(forms: Sequence[LinearForm]):
    """Return ``[(source index, sign)]`` if every form is ``±x_j`` without repeats."""
    out = []
    seen = set()
    for f in forms:
        if f.constant:
            return None
        sup = f.support()
        if len(sup) != 1 or abs(f.coeffs[sup[0]]) != 1 or sup[0] in seen:
            return None
        seen.add(sup[0])
        out.append((sup[0], 1 if f.coeffs[sup[0]] > 0 else -1))
    return out


def affine_substitute(p: SparsePoly, forms: Sequence[LinearForm]) -> SparsePoly:
    """Return ``p(l_1(x), ..., l_n(x))``."""
    n = p.nvars
    if len(forms) != n or any(f.nvars != n for f in forms):
        raise DimensionError("substitution map must have one n-variable form per variable")
    perm = _signed_permutation(forms)
    if perm is not None:
        def move(e):
            new = [0] * n
            sgn = 1
            for i, (j, s) in enumerate(perm):
                new[j] = e[i]
                if s < 0 and e[i] & 1:
                    sgn = -sgn
            return tuple(new), sgn

        return p.map_exponents(move)

    power_cache: list[list[SparsePoly]] = [[SparsePoly.constant(n, 1)] for _ in range(n)]
    polys = [f.as_poly() for f in forms]

    def power(i, k):
        row = power_cache[i]
        while len(row) <= k:
            row.append(row[-1] * polys[i])
        return row[k]

    acc: dict = {}
    for e, c in p.terms.items():
        term = SparsePoly.constant(n, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for e2, c2 in term.terms.items():
            acc[e2] = acc.get(e2, 0) + c2
    return SparsePoly._raw(n, _clean(acc))


def divide_linear(p: SparsePoly, form: LinearForm) -> SparsePoly:
    """Exact quotient ``p / form`` by synthetic division.

    The form's first variable with nonzero coefficient is the division
    variable; the remaining variables ride along in the coefficients.
    Raises :class:`DivisibilityError` carrying the remainder if ``form``
    does not divide ``p``.
    """
    n = p.nvars
    if form.nvars != n:
        raise DimensionError("form and polynomial dimensions differ")
    if p.is_zero():
        return p
    sup = form.support()
    if not sup:
        return p.scale(1 / form.constant)
    k = sup[0]
    lead = form.coeffs[k]
    # root rho = -(form - lead*x_k)/lead, a polynomial free of x_k
    rho_terms = {}
    for j, c in enumerate(form.coeffs):
        if c and j != k:
            e = [0] * n
            e[j] = 1
            rho_terms[tuple(e)] = -c / lead
    if form.constant:
        rho_terms[(0,) * n] = -form.constant / lead
    rho = SparsePoly._raw(n, rho_terms)

    slices: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[k]
        rest = e[:k] + (0,) + e[k + 1:]
        slices.setdefault(d, {})[rest] = c
    top = max(slices)
    quotient: dict = {}
    b = SparsePoly._raw(n, slices[top])
    for d in range(top - 1, -1, -1):
        for e, c in b.terms.items():
            quotient[e[:k] + (d,) + e[k + 1:]] = c / lead
        b = SparsePoly._raw(n, slices.get(d, {})) + rho * b
    if not b.is_zero():
        raise DivisibilityError(f"{form} does not divide polynomial; remainder {b}", b)
    return SparsePoly._raw(n, quotient)


_ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def default_offsets(nvars: int) -> tuple:
    """Offsets ``1/3, 1/5, 1/7, ...``: no coordinate collisions, no half-integers."""
    if nvars > len(_ODD_PRIMES):
        raise ValueError("too many variables for the default offset table")
    return tuple(Q(1, p) for p in _ODD_PRIMES[:nvars])


def _grid_points(nvars: int, bounds: Sequence[int], offsets: Sequence):
    axes = [[Q(k) + offsets[i] for k in range(bounds[i])] for i in range(nvars)]
    return itertools.product(*axes)


def _bounds(nvars, degree_bound):
    if isinstance(degree_bound, int):
        return [degree_bound] * nvars
    if len(degree_bound) != nvars:
        raise DimensionError("need one degree bound per variable")
    return list(degree_bound)


def grid_verify_zero(expr: Callable, degree_bound, nvars: int, offsets=None) -> bool:
    """Check that ``expr`` vanishes on the tensor grid ``{k + offset_i}``.

    If the cleared-denominator form of ``expr`` is a polynomial with degree
    below ``degree_bound`` in every variable, a True result proves it is
    identically zero.  A pole on the grid raises GridConfigurationError.
    """
    offsets = default_offsets(nvars) if offsets is None else tuple(as_rational(o) for o in offsets)
    for pt in _grid_points(nvars, _bounds(nvars, degree_bound), offsets):
        try:
            value = expr(pt)
        except ZeroDivisionError as exc:
            raise GridConfigurationError(f"pole at grid point {tuple(map(str, pt))}") from exc
        if value != 0:
            return False
    return True


def _univariate_coeffs(nodes: Sequence, values: Sequence) -> list:
    """Monomial coefficients of the interpolating polynomial (Newton form)."""
    m = len(nodes)
    dd = list(values)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j])
    coeffs = [Q(0)] * m
    # Horner on the Newton basis, from the innermost node outwards
    for i in range(m - 1, -1, -1):
        shifted = [Q(0)] + coeffs[:-1]
        coeffs = [s - nodes[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    return coeffs


def grid_interpolate(fn: Callable, nvars: int, degree_bound, offsets=None) -> SparsePoly:
    """Exact tensor-product interpolation of ``fn`` on the offset grid.

    Returns the unique polynomial with per-variable degree below
    ``degree_bound`` agreeing with ``fn`` on the grid.
    """
    offsets = default_offsets(nvars) if offsets is None else tuple(as_rational(o) for o in offsets)
    bounds = _bounds(nvars, degree_bound)
    axes = [[Q(k) + offsets[i] for k in range(bounds[i])] for i in range(nvars)]
    table = {}
    for idx in itertools.product(*(range(b) for b in bounds)):
        pt = tuple(axes[i][k] for i, k in enumerate(idx))
        try:
            table[idx] = as_rational(fn(pt))
        except ZeroDivisionError as exc:
            raise GridConfigurationError(f"pole at grid point {tuple(map(str, pt))}") from exc
    # one axis at a time: replace node index by monomial exponent
    for axis in range(nvars):
        new = {}
        others = [range(b) for b in bounds]
        others[axis] = range(1)
        for base in itertools.product(*others):
            vals = []
            for k in range(bounds[axis]):
                key = base[:axis] + (k,) + base[axis + 1:]
                vals.append(table[key])
            for k, c in enumerate(_univariate_coeffs(axes[axis], vals)):
                new[base[:axis] + (k,) + base[axis + 1:]] = c
        table = new
    return SparsePoly(nvars, table)


def monomials_up_to(nvars: int, degree: int):
    """All exponent vectors with total degree <= ``degree``, sorted."""
    out = [
        e
        for e in itertools.product(range(degree + 1), repeat=nvars)
        if sum(e) <= degree
    ]
    return sorted(out)
