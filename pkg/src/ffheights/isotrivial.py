"""Fixed-point multiplier invariants for endomorphisms of P^1 over Q(t).

In the affine chart z = X0/X1 write f(z) = P(z)/Q(z).  Finite fixed points
are the roots of Phi = P - z*Q, and at such a root f'(z) = (P' - z*Q')/Q.
The multipliers, with multiplicity, are the eigenvalues of multiplication
by that element in the algebra Q(t)[z]/(Phi), so their symmetric functions
come out of traces without ever finding a root.  When [1:0] is fixed it is
handled in the chart w = X1/X0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import linalg
from .arith import RationalFunc, UniPoly, content_and_primitive
from .endomorphism import Endomorphism
from .errors import UnsupportedShape


def _dehomogenize(form, d: int) -> list[UniPoly]:
    """F(z, 1) as coefficients, lowest first."""
    out = [UniPoly() for _ in range(d + 1)]
    for (a, _), c in form.items():
        out[a] = out[a] + c
    return _trim(out)


def _trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _zsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = UniPoly()
    return _trim([(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)])


def _zderiv(a: list) -> list:
    return _trim([a[i] * i for i in range(1, len(a))])


def _times_z(a: list) -> list:
    return [UniPoly()] + list(a) if a else []


def format_zpoly(coeffs: list, var: str = "z") -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        text = str(c)
        multi = sum(1 for q in c.coeffs if q) > 1
        if not mono:
            body = text
        elif multi:
            body = f"({text})*{mono}"
        elif text == "1":
            body = mono
        elif text == "-1":
            body = f"-{mono}"
        else:
            body = f"{text}*{mono}"
        if parts and body.startswith("-"):
            parts.append(f"- {body[1:]}")
        elif parts:
            parts.append(f"+ {body}")
        else:
            parts.append(body)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FixedPointData:
    phi: tuple[UniPoly, ...]
    infinity_fixed: bool
    infinity_multiplicity: int
    multiplier_num: tuple[UniPoly, ...]
    multiplier_den: tuple[UniPoly, ...]
    infinity_multiplier: Optional[RationalFunc]

    @property
    def phi_degree(self) -> int:
        return len(self.phi) - 1

    def phi_string(self) -> str:
        return format_zpoly(list(self.phi))

    def multiplier_string(self) -> str:
        return f"({format_zpoly(list(self.multiplier_num))})/({format_zpoly(list(self.multiplier_den))})"


def _require_p1(f: Endomorphism) -> None:
    if f.k != 1:
        raise UnsupportedShape(f"multiplier invariants need a map of P^1, got P^{f.k}")


def fixed_point_data(f: Endomorphism) -> FixedPointData:
    _require_p1(f)
    d = f.d
    p = _dehomogenize(f.forms[0], d)
    q = _dehomogenize(f.forms[1], d)
    phi = _zsub(p, _times_z(q))
    _, phi = content_and_primitive(phi)
    phi = _trim(phi)
    if phi[-1].leading < 0:
        phi = [-c for c in phi]
    num = _zsub(_zderiv(p), _times_z(_zderiv(q)))
    inf_fixed = (d, 0) not in f.forms[1].terms
    mult = d + 1 - (len(phi) - 1)
    lam_inf = None
    if inf_fixed:
        a = f.forms[0].terms.get((d, 0))
        b = f.forms[1].terms.get((d - 1, 1), UniPoly())
        lam_inf = RationalFunc(b, a)
    return FixedPointData(tuple(phi), inf_fixed, mult if inf_fixed else 0, tuple(num), tuple(q), lam_inf)


def _reduce(a: list, phi: list) -> list:
    """a mod phi, coefficients in Q(t)."""
    a = [RationalFunc._coerce(c) for c in a]
    m = len(phi) - 1
    lead = RationalFunc._coerce(phi[-1])
    tail = [RationalFunc._coerce(c) / lead for c in phi[:-1]]
    while len(a) > m:
        c = a.pop()
        if c:
            base = len(a) - m
            for i, s in enumerate(tail):
                a[base + i] = a[base + i] - c * s
    return a + [RationalFunc()] * (m - len(a))


def _mult_matrix(a: list, phi: list) -> list[list[RationalFunc]]:
    """Matrix of multiplication by a on the basis 1, z, ..., z^(m-1); columns are images."""
    m = len(phi) - 1
    cols = []
    cur = _reduce(a, phi)
    for _ in range(m):
        cols.append(cur)
        cur = _reduce([RationalFunc()] + cur, phi)
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), RationalFunc()) for j in range(n)] for i in range(n)]


def _elementary_from_power_sums(p: list) -> list:
    """e_1..e_n from power sums p_1..p_n via Newton's identities."""
    e = [RationalFunc(1)]
    for k in range(1, len(p) + 1):
        acc = RationalFunc()
        for i in range(1, k + 1):
            term = e[k - i] * p[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc * RationalFunc(UniPoly([Fraction(1, k)])))
    return e[1:]


def finite_multiplier_power_sums(data: FixedPointData, count: int) -> list[RationalFunc]:
    phi = list(data.phi)
    m = len(phi) - 1
    if m <= 0:
        return [RationalFunc() for _ in range(count)]
    num = _mult_matrix(list(data.multiplier_num), phi)
    den = _mult_matrix(list(data.multiplier_den), phi)
    # lambda = num/den in the algebra; den is a unit there since f is a morphism
    cols = linalg.solve(den, [[num[i][j] for i in range(m)] for j in range(m)])
    if any(c is None for c in cols):
        raise ArithmeticError("denominator of the multiplier is not a unit modulo Phi")
    lam = [[RationalFunc._coerce(cols[j][i]) for j in range(m)] for i in range(m)]
    sums = []
    power = lam
    for _ in range(count):
        sums.append(sum((power[i][i] for i in range(m)), RationalFunc()))
        power = _matmul(power, lam)
    return sums


@dataclass(frozen=True)
class MultiplierInvariants:
    """Elementary symmetric functions of all d+1 fixed-point multipliers."""

    sigmas: tuple[RationalFunc, ...]

    @property
    def sigma1(self) -> RationalFunc:
        return self.sigmas[0]

    @property
    def sigma2(self) -> RationalFunc:
        return self.sigmas[1]

    @property
    def sigma3(self) -> RationalFunc:
        return self.sigmas[2]

    def index_relation_holds(self) -> bool:
        """sigma3 = sigma1 - 2 (degree 2 only)."""
        return len(self.sigmas) == 3 and self.sigma3 == self.sigma1 - 2

    def to_json(self) -> dict:
        return {f"sigma{i + 1}": str(s) for i, s in enumerate(self.sigmas)}


def multiplier_invariants(f: Endomorphism) -> MultiplierInvariants:
    data = fixed_point_data(f)
    n = f.d + 1
    sums = finite_multiplier_power_sums(data, n)
    if data.infinity_fixed:
        lam = data.infinity_multiplier
        sums = [s + lam ** (i + 1) * data.infinity_multiplicity for i, s in enumerate(sums)]
    return MultiplierInvariants(tuple(_elementary_from_power_sums(sums)))


@dataclass(frozen=True)
class Isotrivial:
    kind: str = "Isotrivial"

    def to_json(self) -> dict:
        return {"verdict": self.kind}


@dataclass(frozen=True)
class NonIsotrivial:
    witness: str
    value: RationalFunc
    kind: str = "NonIsotrivial"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "witness": self.witness, "value": str(self.value)}


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind: str = "Inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.kind, "reason": self.reason}


IsotrivialityVerdict = Union[Isotrivial, NonIsotrivial, Inconclusive]


def isotriviality_verdict(f: Endomorphism, invariants: Optional[MultiplierInvariants] = None) -> IsotrivialityVerdict:
    """For d = 2, (sigma1, sigma2) are coordinates on the moduli space, so
    constancy decides isotriviality.  For larger d constant multipliers are
    only necessary."""
    inv = invariants or multiplier_invariants(f)
    considered = inv.sigmas[:2] if f.d == 2 else inv.sigmas
    for i, s in enumerate(considered):
        if not s.is_constant():
            return NonIsotrivial(f"sigma{i + 1}", s)
    if f.d == 2:
        return Isotrivial()
    return Inconclusive(f"all fixed-point multiplier invariants are constant, which does not decide degree {f.d}")
