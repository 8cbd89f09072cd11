"""Certified canonical-height intervals and the stability classifier.

With C the proven defect constant, telescoping |h(f(y)) - d h(y)| <= C gives

    |hhat(x) - h(f^n x) / d^n| <= C / (d^n (d - 1)),

so each iterate yields an exact rational interval, and the intervals nest.
Intervals only need the heights h(f^n x), which come from the local engine
in :mod:`heightseq`; the classifier walks actual points because it has to
compare them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arith import fmt_rational
from .endomorphism import Endomorphism, evaluate
from .errors import DimensionMismatch
from .heightseq import orbit_heights
from .projective import ProjectivePoint, integer_height


def decimal_string(q: Fraction, digits: int) -> str:
    """Truncated decimal rendering with ``digits`` places (presentation only)."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    if digits <= 0:
        return f"{sign}{whole}"
    frac = rem * 10**digits // q.denominator
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class HeightInterval:
    lo: Fraction
    hi: Fraction
    n_used: int
    defect_used: int

    def contains(self, q) -> bool:
        return self.lo <= q <= self.hi

    def intersects(self, other: "HeightInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def within(self, other: "HeightInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def scaled(self, c) -> "HeightInterval":
        c = Fraction(c)
        return HeightInterval(self.lo * c, self.hi * c, self.n_used, self.defect_used)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self, decimal: Optional[int] = None) -> dict:
        out = {
            "lo": fmt_rational(self.lo),
            "hi": fmt_rational(self.hi),
            "n": self.n_used,
            "defect": self.defect_used,
        }
        if decimal is not None:
            out["approx"] = {"lo": "~" + decimal_string(self.lo, decimal), "hi": "~" + decimal_string(self.hi, decimal)}
        return out

    def __str__(self) -> str:
        return f"[{fmt_rational(self.lo)}, {fmt_rational(self.hi)}]"


def interval_from_height(h: int, n: int, d: int, c: int) -> HeightInterval:
    scale = Fraction(1, d**n)
    center = h * scale
    radius = Fraction(c, d - 1) * scale
    return HeightInterval(max(Fraction(0), center - radius), center + radius, n, c)


class Orbit:
    """Memoized forward orbit of one point, extended on demand.

    For a constant map and a constant point every iterate is constant, so
    heights are 0 without computing the (possibly enormous) iterates.
    """

    def __init__(self, f: Endomorphism, x: ProjectivePoint):
        if x.k != f.k:
            raise DimensionMismatch(f"map on P^{f.k} applied to a point of P^{x.k}")
        self.f = f
        self.points = [x]
        self.trivial_heights = f.coeff_height == 0 and x.is_constant()

    def point(self, n: int) -> ProjectivePoint:
        while len(self.points) <= n:
            self.points.append(evaluate(self.f, self.points[-1]))
        return self.points[n]

    def height(self, n: int) -> int:
        if self.trivial_heights:
            return 0
        return self.point(n).height


def hhat_interval(f: Endomorphism, x: ProjectivePoint, n: int) -> HeightInterval:
    """Exact interval containing hhat_f(x), from the n-th iterate."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return interval_from_height(orbit_heights(f, x, n)[n], n, f.d, f.defect_bound)


def hhat_intervals(f: Endomorphism, x: ProjectivePoint, n: int) -> list[HeightInterval]:
    """The intervals for 0, 1, ..., n from one pass over the orbit."""
    hs = orbit_heights(f, x, n)
    return [interval_from_height(h, i, f.d, f.defect_bound) for i, h in enumerate(hs)]


def functional_gap_data(f: Endomorphism, x: ProjectivePoint, n: int) -> tuple[HeightInterval, HeightInterval]:
    """(I(x), I(f(x))) at the same n, sharing one orbit computation."""
    hs = orbit_heights(f, x, n + 1)
    return (
        interval_from_height(hs[n], n, f.d, f.defect_bound),
        interval_from_height(hs[n + 1], n, f.d, f.defect_bound),
    )


@dataclass(frozen=True)
class Preperiodic:
    tail: int
    period: int
    kind: str = field(default="Preperiodic", init=False)

    def to_json(self, decimal: Optional[int] = None) -> dict:
        return {"verdict": self.kind, "tail": self.tail, "period": self.period}


@dataclass(frozen=True)
class PositiveCertified:
    lower: Fraction
    witness_n: int
    kind: str = field(default="PositiveCertified", init=False)

    def to_json(self, decimal: Optional[int] = None) -> dict:
        out = {"verdict": self.kind, "lower": fmt_rational(self.lower), "witness_n": self.witness_n}
        if decimal is not None:
            out["lower_approx"] = "~" + decimal_string(self.lower, decimal)
        return out


@dataclass(frozen=True)
class Undecided:
    """No cycle and no positivity certificate within the budget.

    ``not_preperiodic`` is set when the orbit was proven infinite anyway
    (arithmetic height growth for constant maps), so hhat = 0 without
    preperiodicity.
    """

    n_max: int
    interval: HeightInterval
    not_preperiodic: bool = False
    kind: str = field(default="Undecided", init=False)

    def to_json(self, decimal: Optional[int] = None) -> dict:
        return {
            "verdict": self.kind,
            "n_max": self.n_max,
            "interval": self.interval.to_json(decimal),
            "not_preperiodic": self.not_preperiodic,
        }


Verdict = Union[Preperiodic, PositiveCertified, Undecided]


def classify(f: Endomorphism, x: ProjectivePoint, budget: int) -> Verdict:
    if budget < 1:
        raise ValueError("budget must be positive")
    orbit = Orbit(f, x)
    d, c = f.d, f.defect_bound
    seen: dict[ProjectivePoint, int] = {}
    growth = f.arithmetic_bound if orbit.trivial_heights else None
    for n in range(budget + 1):
        p = orbit.point(n)
        if p in seen:
            return Preperiodic(seen[p], n - seen[p])
        seen[p] = n
        if growth is not None and integer_height(p) ** (d - 1) > growth:
            # H(f(y)) >= H(y)^d / B > H(y) from here on, so the orbit is infinite
            # and (being infinite) has pairwise distinct points.
            return Undecided(budget, interval_from_height(0, budget, d, c), not_preperiodic=True)
        h = orbit.height(n)
        if (d - 1) * h > c:
            return PositiveCertified(Fraction((d - 1) * h - c, (d - 1) * d**n), n)
    return Undecided(budget, interval_from_height(orbit.height(budget), budget, d, c))
