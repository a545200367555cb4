"""Affine Weyl group of type C~n: dot action, reduced words, affine roots.

Words are tuples of letters in ``[0, n]``.  A word ``(i1, ..., ir)`` stands
for ``s_{i1} ... s_{ir}``, so the rightmost letter acts first.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

__all__ = [
    "phi_map",
    "phi_inv",
    "dot_reflect",
    "dot_apply",
    "dot_distance_table",
    "dot_length",
    "u_lambda_word",
    "is_dominant",
    "dominant_rep",
    "weights_up_to",
    "AffineRoot",
    "ReducednessError",
    "ShapeError",
    "simple_root",
    "inversion_set",
    "tau_inversion_set",
    "classify_orbit",
    "finite_negative_roots",
    "W0_elements",
]

O_A0, O_MID, O_AN = "O_a0", "O_mid", "O_an"


class ReducednessError(ValueError):
    pass


class ShapeError(ValueError):
    pass


# -- phi labelling ----------------------------------------------------------
def _phi(m: int) -> int:
    return 2 * m if m >= 0 else -2 * m - 1


def _phi_inv(k: int) -> int:
    if k < 0:
        raise ValueError("exponents are non-negative")
    return k // 2 if k % 2 == 0 else -(k + 1) // 2


def phi_map(lam: Sequence[int]) -> tuple:
    return tuple(_phi(m) for m in lam)


def phi_inv(exp: Sequence[int]) -> tuple:
    return tuple(_phi_inv(k) for k in exp)


# -- dot action -----------------------------------------------------------
def dot_reflect(i: int, x: Sequence) -> tuple:
    """Apply the single dot reflection ``s_i .`` to ``x``."""
    n = len(x)
    x = list(x)
    if i == 0:
        x[0] = -x[0] - 1
    elif i == n:
        x[-1] = -x[-1]
    elif 0 < i < n:
        x[i - 1], x[i] = x[i], x[i - 1]
    else:
        raise IndexError(f"letter {i} out of range for n={n}")
    return tuple(x)


def dot_apply(word: Sequence[int], x: Sequence) -> tuple:
    x = tuple(x)
    for i in reversed(tuple(word)):
        x = dot_reflect(i, x)
    return x


@lru_cache(maxsize=None)
def dot_distance_table(n: int, radius: int) -> dict:
    """BFS distances from 0 under the dot action on Z^n.

    Each ``s_0`` step changes ``sum |lambda_i|`` by exactly one, so every
    weight with ``sum |lambda_i| <= radius`` is reached through weights of
    size at most ``radius + 1``; the search is confined to that box.
    """
    bound = radius + 1
    start = (0,) * n
    dist = {start: 0}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        for i in range(n + 1):
            mu = dot_reflect(i, lam)
            if mu not in dist and sum(abs(m) for m in mu) <= bound:
                dist[mu] = dist[lam] + 1
                queue.append(mu)
    return {k: v for k, v in dist.items() if sum(abs(m) for m in k) <= radius}


def dot_length(lam: Sequence[int]) -> int:
    lam = tuple(int(m) for m in lam)
    return dot_distance_table(len(lam), sum(abs(m) for m in lam) + 1)[lam]


@lru_cache(maxsize=None)
def _u_word(lam: tuple) -> tuple:
    if not any(lam):
        return ()
    n = len(lam)
    table = dot_distance_table(n, sum(abs(m) for m in lam) + 1)
    d = table[lam]
    for i in range(n + 1):
        mu = dot_reflect(i, lam)
        if table.get(mu) == d - 1:
            return (i,) + _u_word(mu)
    raise AssertionError(f"no descent found for {lam}")  # pragma: no cover


def u_lambda_word(lam: Sequence[int]) -> tuple:
    """Shortest word ``w`` with ``w . 0 = lam``; smallest-index descent first."""
    return _u_word(tuple(int(m) for m in lam))


def is_dominant(lam: Sequence[int]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)) and lam[-1] >= 0


def dominant_rep(lam: Sequence[int]) -> tuple:
    return tuple(sorted((abs(m) for m in lam), reverse=True))


def weights_up_to(n: int, size: int) -> list:
    """All weights with ``sum |lambda_i| <= size``, ordered by (size, BFS length, entries)."""
    table = dot_distance_table(n, size)
    return sorted(table, key=lambda l: (sum(abs(m) for m in l), table[l], l))


def W0_orbit(lam: Sequence[int]) -> list:
    """The orbit of ``lam`` under signed permutations, sorted."""
    n = len(lam)
    seen = {tuple(lam)}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(1, n + 1):
                nu = dot_reflect(i, mu)
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen)


def W0_elements(n: int) -> list:
    """All signed permutations as ``(perm, signs, det)``.

    The element sends ``x`` to ``y`` with ``y[k] = signs[k] * x[perm[k]]``;
    ``det`` equals ``(-1)**length``.
    """
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        for signs in itertools.product((1, -1), repeat=n):
            det = (-1) ** inversions * math.prod(signs)
            out.append((perm, signs, det))
    return out


# -- affine roots -----------------------------------------------------------
@dataclass(frozen=True, order=True)
class AffineRoot:
    """The affine function ``x -> <v, x> + c``, written ``v + c delta``."""

    v: tuple
    c: int

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(k) for k in self.v))
        object.__setattr__(self, "c", int(self.c))

    @property
    def n(self) -> int:
        return len(self.v)

    def is_long(self) -> bool:
        nz = [k for k in self.v if k]
        if len(nz) == 1 and abs(nz[0]) == 2:
            return True
        if len(nz) == 2 and all(abs(k) == 1 for k in nz):
            return False
        raise ShapeError(f"{self.v} is not a root of type C")

    def __call__(self, x):
        return sum((k * xi for k, xi in zip(self.v, x) if k), 0) + self.c

    def coroot_eval(self, x):
        """``alpha_vee(x)``: half of ``alpha(x)`` for long roots, ``alpha(x)`` otherwise."""
        val = self(x)
        return val / 2 if self.is_long() else val

    def __neg__(self):
        return AffineRoot(tuple(-k for k in self.v), -self.c)

    def is_positive(self) -> bool:
        if self.c:
            return self.c > 0
        first = next(k for k in self.v if k)
        return first > 0

    def reflect(self, i: int) -> "AffineRoot":
        """Image under the simple reflection ``s_i``."""
        v = list(self.v)
        n = len(v)
        if i == 0:
            v1 = v[0]
            v[0] = -v1
            return AffineRoot(tuple(v), self.c + v1)
        if i == n:
            v[-1] = -v[-1]
        else:
            v[i - 1], v[i] = v[i], v[i - 1]
        return AffineRoot(tuple(v), self.c)

    def apply_word(self, word: Sequence[int]) -> "AffineRoot":
        r = self
        for i in reversed(tuple(word)):
            r = r.reflect(i)
        return r

    def translate(self, lam: Sequence[int]) -> "AffineRoot":
        """``tau(lam)`` applied: ``f -> f + <lam, f> delta``."""
        return AffineRoot(self.v, self.c + sum(a * b for a, b in zip(lam, self.v)))

    def __repr__(self):
        return f"AffineRoot({self.v}, {self.c})"


def simple_root(i: int, n: int) -> AffineRoot:
    v = [0] * n
    if i == 0:
        v[0] = -2
        return AffineRoot(tuple(v), 1)
    if i == n:
        v[-1] = 2
    else:
        v[i - 1], v[i] = 1, -1
    return AffineRoot(tuple(v), 0)


def inversion_set(word: Sequence[int], n: int) -> list:
    """Roots ``a_{i1}, s_{i1} a_{i2}, ..., s_{i1}...s_{i(r-1)} a_{ir}``."""
    word = tuple(word)
    out = []
    seen = set()
    for k, i in enumerate(word):
        root = simple_root(i, n).apply_word(word[:k])
        if not root.is_positive() or root in seen:
            raise ReducednessError(f"word {word} is not reduced (letter {k})")
        seen.add(root)
        out.append(root)
    return out


def _finite_roots(n: int) -> list:
    roots = []
    for i in range(n):
        for s in (2, -2):
            v = [0] * n
            v[i] = s
            roots.append(tuple(v))
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    return sorted(roots)


def finite_negative_roots(n: int) -> list:
    return [AffineRoot(v, 0) for v in _finite_roots(n) if not AffineRoot(v, 0).is_positive()]


def tau_inversion_set(lam: Sequence[int]) -> list:
    """Positive affine roots sent to negative roots by ``tau(lam)^{-1}``."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    n = len(lam)
    out = []
    for v in _finite_roots(n):
        bound = abs(sum(a * b for a, b in zip(lam, v)))
        for c in range(-bound, bound + 1):
            root = AffineRoot(v, c)
            if root.is_positive() and not root.translate(tuple(-m for m in lam)).is_positive():
                out.append(root)
    return sorted(out)


def classify_orbit(root: AffineRoot) -> str:
    if root.is_long():
        return O_A0 if root.c % 2 else O_AN
    return O_MID
