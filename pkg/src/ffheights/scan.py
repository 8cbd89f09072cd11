"""Enumerate small K-points and classify them in bulk."""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from gmpy2 import mpz

from .arith import fmt_rational
from .endomorphism import Endomorphism
from .errors import DimensionMismatch, NotAPoint
from .height import PositiveCertified, Preperiodic, Undecided, Verdict, classify
from .projective import ProjectivePoint


@dataclass(frozen=True)
class PointEnumSpec:
    k: int
    max_deg: int
    coeff_bound: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.max_deg < 0 or self.coeff_bound < 0:
            raise ValueError("max_deg and coeff_bound must be nonnegative")


def enumerate_points(spec: PointEnumSpec) -> Iterator[ProjectivePoint]:
    """Every point with a representative in the coefficient box, once each.

    Order is the first appearance in lexicographic order of raw coefficient
    tuples, so the stream is deterministic.
    """
    n = spec.coeff_bound
    per = spec.max_deg + 1
    values = [mpz(v) for v in range(-n, n + 1)]
    seen = set()
    for raw in itertools.product(values, repeat=per * (spec.k + 1)):
        coords = [raw[i * per : (i + 1) * per] for i in range(spec.k + 1)]
        try:
            p = ProjectivePoint._canonical(coords)
        except NotAPoint:
            continue
        if p not in seen:
            seen.add(p)
            yield p


@dataclass
class ScanReport:
    budget: int
    results: list[tuple[ProjectivePoint, Verdict]]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def total(self) -> int:
        return len(self.results)

    def _count(self, cls) -> int:
        return sum(1 for _, v in self.results if isinstance(v, cls))

    @property
    def preperiodic(self) -> int:
        return self._count(Preperiodic)

    @property
    def positive_certified(self) -> int:
        return self._count(PositiveCertified)

    @property
    def undecided(self) -> int:
        return self._count(Undecided)

    @property
    def min_positive_lower(self) -> Optional[Fraction]:
        lows = [v.lower for _, v in self.results if isinstance(v, PositiveCertified)]
        return min(lows) if lows else None

    @property
    def undecided_points(self) -> list[tuple[ProjectivePoint, Undecided]]:
        return [(p, v) for p, v in self.results if isinstance(v, Undecided)]

    def to_json(self, decimal: Optional[int] = None, verdicts: bool = False) -> dict:
        low = self.min_positive_lower
        out = {
            "budget": self.budget,
            "total": self.total,
            "preperiodic": self.preperiodic,
            "positive_certified": self.positive_certified,
            "undecided": self.undecided,
            "min_positive_lower": None if low is None else fmt_rational(low),
            "undecided_points": [
                {"point": p.to_strings(), **v.to_json(decimal)} for p, v in self.undecided_points
            ],
        }
        if verdicts:
            out["verdicts"] = [{"point": p.to_strings(), **v.to_json(decimal)} for p, v in self.results]
        return out


_worker_map: Optional[Endomorphism] = None
_worker_budget = 0


def _init_worker(f: Endomorphism, budget: int) -> None:
    global _worker_map, _worker_budget
    _worker_map = f
    _worker_budget = budget


def _classify_in_worker(p: ProjectivePoint) -> Verdict:
    return classify(_worker_map, p, _worker_budget)


def scan(f: Endomorphism, spec: PointEnumSpec, budget: int, workers: int = 1) -> ScanReport:
    """Classify every enumerated point; output does not depend on ``workers``."""
    if spec.k != f.k:
        raise DimensionMismatch(f"map on P^{f.k} but enumeration in P^{spec.k}")
    if budget < 1:
        raise ValueError("budget must be positive")
    start = time.perf_counter()
    points = list(enumerate_points(spec))
    if workers <= 1 or len(points) < 2:
        verdicts = [classify(f, p, budget) for p in points]
    else:
        chunk = max(1, len(points) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(f, budget)) as pool:
            verdicts = list(pool.map(_classify_in_worker, points, chunksize=chunk))
    # merge keyed on the canonical serialization: enumeration order is already
    # canonical, and map() preserves it, so the merge is a zip
    results = list(zip(points, verdicts))
    return ScanReport(budget, results, time.perf_counter() - start)
