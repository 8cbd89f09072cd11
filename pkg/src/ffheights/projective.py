"""K-rational points of P^k over K = Q(t) and their naive heights.

A point is stored in one canonical integer form: coordinates in Z[t] with
no common factor over Q[t], integer content 1, and a positive leading
coefficient on the first nonzero coordinate.  The public ``coords`` (first
nonzero coordinate monic) are derived from it on demand; both forms are
unique, so equality is plain tuple comparison either way.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import gmpy2
from gmpy2 import mpz

from . import _zpoly as zp
from .arith import RationalFunc, UniPoly, as_rational_func, poly_gcd, to_rational
from .errors import DimensionMismatch, NotAPoint


class ProjectivePoint:
    """Canonical point of P^k(Q(t)); build with :func:`pp_normalize`."""

    __slots__ = ("k", "_z", "_coords", "_hash")

    def __init__(self, *args, **kwargs):
        raise TypeError("use pp_normalize() or ProjectivePoint.parse()")

    @classmethod
    def _canonical(cls, zcoords: Sequence[Sequence], gcd_hint: Optional[Sequence] = None) -> "ProjectivePoint":
        """Normalize integer polynomial coordinates (lists of mpz).

        ``gcd_hint``, when given, is a polynomial known to be divisible by the
        gcd of the coordinates; the gcd is then taken against it first.
        """
        polys = [zp.trim([mpz(c) for c in z]) for z in zcoords]
        nonzero = [p for p in polys if p]
        if not nonzero:
            raise NotAPoint("all coordinates are zero")
        if gcd_hint is not None:
            g = list(gcd_hint)
            for p in nonzero:
                if len(g) <= 1:
                    break
                g = zp.gcd(g, p)
        elif len(nonzero) == 1:
            g = zp.primitive(nonzero[0])[1]
        else:
            g = nonzero[0]
            for p in nonzero[1:]:
                g = zp.gcd(g, p)
                if len(g) <= 1:
                    break
        if len(g) > 1:
            polys = [zp.divexact(p, g) if p else [] for p in polys]
        cont = mpz(0)
        for p in polys:
            for c in p:
                cont = gmpy2.gcd(cont, c)
                if cont == 1:
                    break
            if cont == 1:
                break
        first = next(p for p in polys if p)
        if first[-1] < 0:
            cont = -cont
        if cont != 1:
            polys = [[gmpy2.divexact(c, cont) for c in p] for p in polys]
        pt = object.__new__(cls)
        pt.k = len(polys) - 1
        pt._z = tuple(tuple(p) for p in polys)
        pt._coords = None
        pt._hash = None
        return pt

    @classmethod
    def parse(cls, literals: Sequence[str]) -> "ProjectivePoint":
        return pp_normalize([as_rational_func(s) for s in literals])

    @property
    def coords(self) -> tuple[UniPoly, ...]:
        """Canonical coordinates: the first nonzero one has leading coefficient 1."""
        if self._coords is None:
            lc = next(p for p in self._z if p)[-1]
            self._coords = tuple(UniPoly._make(list(p), lc) for p in self._z)
        return self._coords

    @property
    def integer_coords(self) -> tuple[tuple[mpz, ...], ...]:
        """Primitive Z[t] representative (coefficient lists, lowest degree first)."""
        return self._z

    @property
    def height(self) -> int:
        return max(len(p) - 1 for p in self._z if p)

    def is_constant(self) -> bool:
        return all(len(p) <= 1 for p in self._z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self._z == other._z

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._z)
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self._z,))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + ", ".join(self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"ProjectivePoint({self.to_strings()!r})"


def _rebuild(z):
    pt = object.__new__(ProjectivePoint)
    pt.k = len(z) - 1
    pt._z = z
    pt._coords = None
    pt._hash = None
    return pt


def pp_normalize(raw: Iterable) -> ProjectivePoint:
    """Canonical point from k+1 elements of Q(t) (not all zero)."""
    rfs = [as_rational_func(r) for r in raw]
    if len(rfs) < 2:
        raise NotAPoint("a point of P^k needs at least two coordinates")
    if all(not r for r in rfs):
        raise NotAPoint("all coordinates are zero")
    # clear denominators: multiply through by the lcm of the denominators
    lcm = UniPoly([1])
    for r in rfs:
        if not r.den.is_constant():
            lcm = lcm * r.den.exact_div(poly_gcd(lcm, r.den))
    zcoords = []
    for r in rfs:
        p = r.num * lcm.exact_div(r.den) if r else UniPoly()
        zcoords.append(p.integer_parts())
    common = mpz(1)
    for _, den in zcoords:
        common = gmpy2.lcm(common, den)
    polys = [zp.scale(ints, common // den) for ints, den in zcoords]
    return ProjectivePoint._canonical(polys)


def pp_equals(x: ProjectivePoint, y: ProjectivePoint) -> bool:
    if x.k != y.k:
        raise DimensionMismatch(f"points live in P^{x.k} and P^{y.k}")
    return x._z == y._z


def naive_height(x: ProjectivePoint) -> int:
    """Maximum coordinate degree of the canonical representative."""
    return x.height


def pp_specialize(x: ProjectivePoint, t0) -> tuple[Fraction, ...]:
    """Coordinates of the fiber point at t = t0 (never all zero)."""
    t0 = to_rational(t0)
    return tuple(c.eval(t0) for c in x.coords)


def projective_image(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero rational tuple so the first nonzero entry is 1."""
    lead = next(v for v in values if v)
    return tuple(Fraction(v) / lead for v in values)


def integer_height(x: ProjectivePoint) -> mpz:
    """Multiplicative height max|a_i| of a constant point in coprime integer form."""
    if not x.is_constant():
        raise ValueError("integer height is defined for constant points only")
    return max(abs(p[0]) if p else mpz(0) for p in x._z)


def apply_linear(matrix: Sequence[Sequence], x: ProjectivePoint) -> ProjectivePoint:
    """Image of x under the linear map with (k+1)x(k+1) entries in Q(t)."""
    if len(matrix) != x.k + 1:
        raise DimensionMismatch("matrix size does not match the point")
    rows = [[as_rational_func(e) for e in row] for row in matrix]
    coords = [RationalFunc(c) for c in x.coords]
    out = []
    for row in rows:
        acc = RationalFunc()
        for e, c in zip(row, coords):
            if e and c:
                acc = acc + e * c
        out.append(acc)
    return pp_normalize(out)
