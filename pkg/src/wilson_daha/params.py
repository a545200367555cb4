"""Multiplicity parameters (t0, u0, t, tn, un) and derived data."""
from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import Q, as_rational

NAMES = ("t0", "u0", "t", "tn", "un")


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    t0: object
    u0: object
    t: object
    tn: object
    un: object

    def __post_init__(self):
        for name in NAMES:
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_strings(cls, values) -> "Params":
        """Build from a mapping or 5-sequence of ``"p/q"`` strings."""
        if isinstance(values, dict):
            missing = [k for k in NAMES if k not in values]
            if missing:
                raise ParameterError(f"missing parameter {missing[0]!r}")
            values = [values[k] for k in NAMES]
        if len(values) != 5:
            raise ParameterError("need exactly five parameters")
        out = []
        for name, v in zip(NAMES, values):
            try:
                out.append(as_rational(v))
            except (TypeError, ValueError) as exc:
                raise ParameterError(f"malformed rational for {name!r}: {v!r}") from exc
        return cls(*out)

    def as_tuple(self):
        return (self.t0, self.u0, self.t, self.tn, self.un)

    def as_strings(self) -> dict:
        return {k: str(v) for k, v in zip(NAMES, self.as_tuple())}

    def sigma(self) -> "Params":
        """The swapped parameters (un, u0, t, tn, t0)."""
        return Params(self.un, self.u0, self.t, self.tn, self.t0)

    @property
    def k(self):
        return (2 * self.t0 + 2 * self.u0, self.t, 2 * self.tn + 2 * self.un)

    def wilson(self):
        """Wilson parameters (a, b, c, d)."""
        half = Q(1, 2)
        return (
            self.tn + self.un,
            self.tn - self.un,
            self.t0 + self.u0 + half,
            self.t0 - self.u0 + half,
        )

    def chi(self, i: int, n: int):
        if i == 0:
            return self.t0
        if i == n:
            return self.tn
        return Q(1)

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.wilson()) and self.t > 0

    def require_positive(self):
        if not self.is_positive():
            raise ParameterError("numeric weights need a, b, c, d, t > 0")


# desk parameter set and an independent second set for cross-validation
P_STAR = Params(Q(7, 10), Q(3, 10), Q(1, 2), Q(4, 5), Q(2, 5))
P_ALT = Params(Q(3, 7), Q(2, 11), Q(5, 13), Q(9, 17), Q(1, 19))
