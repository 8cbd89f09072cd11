"""Endomorphisms of P^k over Q(t) given by k+1 forms of a common degree d >= 2.

Building an :class:`Endomorphism` certifies it is a morphism (a nonzero
specialized Macaulay resultant) and derives a proven height-defect constant
C with ``|h(f(x)) - d*h(x)| <= C`` for every Q(t)-point x.

The constant comes from an explicit elimination identity

    sum_j G_ij * F_j = R * X_i^rho      (i = 0..k)

with G_ij forms over Q[t].  For a point with coprime polynomial coordinates
a, the gcd of the F_j(a) divides R, and comparing degrees on both sides of
the identity at the coordinate of largest degree gives
``h(f(x)) >= d*h(x) - max t-degree of the G_ij``.  The upper side
``h(f(x)) <= d*h(x) + h(f)`` is a term count.  The identity is checked
exactly after it is solved for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import gmpy2
from gmpy2 import mpz

from . import _zpoly as zp
from . import linalg
from .arith import RationalFunc, UniPoly, as_rational_func, content_and_primitive, poly_gcd
from .errors import (
    CofactorSystemError,
    DegreeTooSmall,
    DimensionMismatch,
    InhomogeneousInput,
    NotAMorphism,
)
from .forms import HomogeneousForm, monomials, mp_add, mp_mul, mp_scale, mp_substitute_linear
from .projective import ProjectivePoint, projective_image
from .resultant import has_common_zero, macaulay_resultant, regularity_degree


@dataclass(frozen=True)
class ResultantCertificate:
    t0: Fraction
    value: Fraction
    res_degree_bound: int


@dataclass(frozen=True)
class CofactorIdentity:
    """sum_j cofactors[i][j] * F_j == multiplier * X_i^rho for every i."""

    rho: int
    cofactors: tuple[tuple[dict, ...], ...]
    multiplier: UniPoly
    tdegree: int


def parameter_sequence() -> Iterator[Fraction]:
    """1, -1, 2, -2, 3, ... (deterministic specialization points)."""
    n = 1
    while True:
        yield Fraction(n)
        yield Fraction(-n)
        n += 1


def _check_shape(forms: Sequence[HomogeneousForm]) -> tuple[int, int]:
    if not forms:
        raise DimensionMismatch("no forms given")
    k = forms[0].k
    if any(f.k != k for f in forms):
        raise DimensionMismatch("forms are written in different numbers of variables")
    if len(forms) != k + 1:
        raise DimensionMismatch(f"P^{k} needs {k + 1} forms, got {len(forms)}")
    degrees = {f.d for f in forms}
    if len(degrees) != 1:
        raise InhomogeneousInput(f"forms have different degrees {sorted(degrees)}")
    return k, forms[0].d


def morphism_check(forms: Sequence[HomogeneousForm]) -> ResultantCertificate:
    """Certificate that the forms have no common zero over the closure of Q(t).

    Res(F) is a polynomial in t of degree at most (k+1) d^k h(f), so vanishing
    at that many plus one parameters proves it is identically zero.
    """
    k, d = _check_shape(forms)
    h = max((f.coeff_height() for f in forms), default=0)
    bound = (k + 1) * d**k * max(h, 0)
    params = parameter_sequence()
    for _ in range(bound + 1):
        t0 = next(params)
        spec = [f.specialize(t0) for f in forms]
        if any(not s for s in spec) or has_common_zero(spec, k, d):
            continue
        value = macaulay_resultant(spec, k, d)
        return ResultantCertificate(t0, value, bound)
    raise NotAMorphism(f"the resultant vanishes at {bound + 1} parameters, so the forms share a zero")


def _rf_cost(v) -> int:
    if isinstance(v, RationalFunc):
        return max(v.num.degree, 0) + max(v.den.degree, 0)
    return 0


def cofactor_identity(forms: Sequence[HomogeneousForm], extra: int = 2) -> CofactorIdentity:
    """Solve sum_j g_ij F_j = X_i^rho over Q(t) for the smallest workable rho."""
    k, d = _check_shape(forms)
    top = regularity_degree(k, d) + extra
    coeff = [{m: RationalFunc(c) for m, c in f.items()} for f in forms]
    for rho in range(d, top + 1):
        mus = monomials(k + 1, rho - d)
        nus = monomials(k + 1, rho)
        row_of = {nu: r for r, nu in enumerate(nus)}
        matrix = [[0] * ((k + 1) * len(mus)) for _ in nus]
        for j, form in enumerate(coeff):
            for m, mu in enumerate(mus):
                col = j * len(mus) + m
                for mono, c in form.items():
                    matrix[row_of[tuple(a + b for a, b in zip(mu, mono))]][col] = c
        rhs = []
        for i in range(k + 1):
            target = tuple(rho if w == i else 0 for w in range(k + 1))
            rhs.append([1 if nu == target else 0 for nu in nus])
        sols = linalg.solve(matrix, rhs, cost=_rf_cost)
        if any(s is None for s in sols):
            continue
        return _clear_denominators(forms, k, d, rho, mus, sols)
    raise CofactorSystemError(f"no cofactor identity up to exponent {top}")


def _clear_denominators(forms, k, d, rho, mus, sols) -> CofactorIdentity:
    entries = [RationalFunc._coerce(v) for s in sols for v in s]
    lcm = UniPoly([1])
    for v in entries:
        if v and not v.den.is_constant():
            lcm = lcm * v.den.exact_div(poly_gcd(lcm, v.den))
    polys = [v.num * lcm.exact_div(v.den) if v else UniPoly() for v in entries]
    g, parts = content_and_primitive(polys + [lcm])
    multiplier = parts[-1]
    parts = parts[:-1]
    cofactors = []
    pos = 0
    for i in range(k + 1):
        row = []
        for j in range(k + 1):
            form = {}
            for mu in mus:
                p = parts[pos]
                pos += 1
                if p:
                    form[mu] = p
            row.append(form)
        cofactors.append(tuple(row))
    tdeg = max((p.degree for p in parts if p), default=0)
    ident = CofactorIdentity(rho, tuple(cofactors), multiplier, int(tdeg))
    if not verify_cofactor_identity(forms, ident):
        raise CofactorSystemError("solved cofactors fail the exact identity check")
    return ident


def verify_cofactor_identity(forms: Sequence[HomogeneousForm], ident: CofactorIdentity) -> bool:
    k = forms[0].k
    for i in range(k + 1):
        acc: dict = {}
        for j, form in enumerate(forms):
            acc = mp_add(acc, mp_mul(ident.cofactors[i][j], dict(form.items())))
        target = tuple(ident.rho if w == i else 0 for w in range(k + 1))
        if acc != {target: ident.multiplier}:
            return False
    return True


def arithmetic_growth_bound(zforms: Sequence[dict], ident: CofactorIdentity) -> mpz:
    """B with H(f(x)) >= H(x)^d / B on Q-points, for maps with constant coefficients.

    H is the max absolute value of coprime integer coordinates.  Same
    elimination argument as the degree bound, with absolute values in place
    of degrees; the identity is rescaled to integer coefficients first.
    """
    den = mpz(1)
    for row in ident.cofactors:
        for form in row:
            for c in form.values():
                den = gmpy2.lcm(den, c.integer_parts()[1])
    den = gmpy2.lcm(den, ident.multiplier.integer_parts()[1])
    ints = []
    for row in ident.cofactors:
        ints.append([[c.coefficient(0) * int(den) for c in form.values()] for form in row])
    g = mpz(0)
    for row in ints:
        for form in row:
            for c in form:
                g = gmpy2.gcd(g, mpz(c.numerator))
    r = ident.multiplier.coefficient(0) * int(den)
    g = gmpy2.gcd(g, mpz(r.numerator)) or mpz(1)
    best = mpz(0)
    for row in ints:
        s = sum(abs(mpz(c.numerator)) for form in row for c in form)
        best = max(best, s // g)
    return best


@dataclass(frozen=True, eq=False)
class Endomorphism:
    k: int
    d: int
    forms: tuple[HomogeneousForm, ...]
    coeff_height: int
    morphism_certificate: ResultantCertificate
    defect_bound: int
    identity: CofactorIdentity = field(repr=False)
    arithmetic_bound: Optional[mpz] = field(repr=False, default=None)
    _zforms: tuple = field(repr=False, default=())
    _gcd_hint: tuple = field(repr=False, default=())

    @classmethod
    def from_strings(cls, literals: Sequence[str], k: Optional[int] = None) -> "Endomorphism":
        k = len(literals) - 1 if k is None else k
        parsed = [HomogeneousForm.parse(s, k) for s in literals]
        return endo_build(parsed)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.forms == other.forms

    def __hash__(self) -> int:
        return hash(self.forms)

    def to_strings(self) -> list[str]:
        return [str(f) for f in self.forms]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"

    def specialize(self, t0) -> list[dict]:
        return [f.specialize(t0) for f in self.forms]

    def __call__(self, x: ProjectivePoint) -> ProjectivePoint:
        return evaluate(self, x)


def _normalize_forms(forms: Sequence[HomogeneousForm], k: int, d: int) -> tuple[HomogeneousForm, ...]:
    """Divide out the Q[t]-content, clear denominators, fix the overall sign."""
    keys = [(j, m) for j, f in enumerate(forms) for m, _ in f.items()]
    polys = [c for f in forms for _, c in f.items()]
    if not polys:
        return tuple(forms)
    _, parts = content_and_primitive(polys)
    den = mpz(1)
    for p in parts:
        den = gmpy2.lcm(den, p.integer_parts()[1])
    ints = [[c * (den // p.integer_parts()[1]) for c in p.integer_parts()[0]] for p in parts]
    g = mpz(0)
    for row in ints:
        for c in row:
            g = gmpy2.gcd(g, c)
    lead = ints[0][-1]
    if lead < 0:
        g = -g
    out = [dict() for _ in forms]
    for (j, m), row in zip(keys, ints):
        out[j][m] = UniPoly._make([gmpy2.divexact(c, g) for c in row], 1)
    return tuple(HomogeneousForm(k, d, t) for t in out)


def endo_build(forms: Sequence[HomogeneousForm]) -> Endomorphism:
    """Normalize, certify, and attach the height-defect constant."""
    forms = list(forms)
    k, d = _check_shape(forms)
    if d < 2:
        raise DegreeTooSmall(f"degree {d} < 2")
    forms = _normalize_forms(forms, k, d)
    cert = morphism_check(forms)
    h = max(f.coeff_height() for f in forms)
    ident = cofactor_identity(forms)
    defect = max(h, ident.tdegree)
    zforms = tuple(
        tuple((m, c.integer_parts()[0]) for m, c in f.items()) for f in forms
    )
    hint = tuple(zp.primitive(ident.multiplier.integer_parts()[0])[1])
    arith = None
    if h == 0:
        arith = arithmetic_growth_bound(zforms, ident)
    return Endomorphism(
        k=k,
        d=d,
        forms=forms,
        coeff_height=int(h),
        morphism_certificate=cert,
        defect_bound=int(defect),
        identity=ident,
        arithmetic_bound=arith,
        _zforms=zforms,
        _gcd_hint=hint,
    )


def height_defect_bound(f: Endomorphism) -> int:
    """Proven C with |h(f(x)) - d*h(x)| <= C for all Q(t)-points x."""
    return f.defect_bound


def evaluate(f: Endomorphism, x: ProjectivePoint) -> ProjectivePoint:
    if x.k != f.k:
        raise DimensionMismatch(f"map on P^{f.k} applied to a point of P^{x.k}")
    coords = [list(c) for c in x.integer_coords]
    n = f.k + 1
    cache: dict = {}

    def product(mono):
        hit = cache.get(mono)
        if hit is not None:
            return hit
        nz = [i for i, e in enumerate(mono) if e]
        if not nz:
            out = [mpz(1)]
        elif len(nz) == 1 and mono[nz[0]] == 1:
            out = coords[nz[0]]
        elif all(e % 2 == 0 for e in mono):
            out = zp.sqr(product(tuple(e // 2 for e in mono)))
        else:
            i = next(i for i in nz if mono[i] % 2) if any(mono[i] % 2 for i in nz) else nz[0]
            rest = tuple(e - 1 if w == i else e for w, e in enumerate(mono))
            out = zp.mul(product(rest), coords[i])
        cache[mono] = out
        return out

    values = []
    for zform in f._zforms:
        acc: list = []
        for mono, c in zform:
            if any(not coords[i] for i in range(n) if mono[i]):
                continue
            acc = zp.add(acc, zp.mul(c, product(mono)))
        values.append(acc)
    return ProjectivePoint._canonical(values, gcd_hint=f._gcd_hint)


def orbit(f: Endomorphism, x: ProjectivePoint, n: int) -> list[ProjectivePoint]:
    """(x, f(x), ..., f^n(x))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if x.k != f.k:
        raise DimensionMismatch(f"map on P^{f.k} applied to a point of P^{x.k}")
    out = [x]
    for _ in range(n):
        out.append(evaluate(f, out[-1]))
    return out


def fiber_image(f: Endomorphism, t0, values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Image of a Q-point under the specialized map f_{t0}, scaled first-nonzero = 1."""
    spec = f.specialize(t0)
    out = []
    for form in spec:
        acc = Fraction(0)
        for mono, c in form.items():
            term = c
            for v, e in zip(values, mono):
                if e:
                    term *= Fraction(v) ** e
            acc += term
        out.append(acc)
    if not any(out):
        raise NotAMorphism(f"f_{t0} is undefined at {tuple(values)}")
    return projective_image(out)


def _poly_matrix(matrix: Sequence[Sequence]) -> list[list[UniPoly]]:
    rows = [[as_rational_func(e) for e in row] for row in matrix]
    lcm = UniPoly([1])
    for row in rows:
        for e in row:
            if e and not e.den.is_constant():
                lcm = lcm * e.den.exact_div(poly_gcd(lcm, e.den))
    return [[e.num * lcm.exact_div(e.den) if e else UniPoly() for e in row] for row in rows]


def conjugate(f: Endomorphism, matrix: Sequence[Sequence]) -> Endomorphism:
    """M o f o M^{-1} for an invertible (k+1)x(k+1) matrix over Q(t)."""
    n = f.k + 1
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise DimensionMismatch(f"need a {n}x{n} matrix")
    m = _poly_matrix(matrix)
    if not linalg.leibniz_det(m):
        raise ValueError("matrix is singular")
    adj = linalg.adjugate(m)
    one = UniPoly([1])
    unit = [tuple(1 if w == v else 0 for w in range(n)) for v in range(n)]
    images = []
    for i in range(n):
        img = {}
        for j in range(n):
            if adj[i][j]:
                img[unit[j]] = adj[i][j]
        images.append(img)
    pulled = [mp_substitute_linear(dict(form.items()), images, n, one) for form in f.forms]
    new_forms = []
    for r in range(n):
        acc: dict = {}
        for l in range(n):
            if m[r][l]:
                acc = mp_add(acc, mp_scale(pulled[l], m[r][l]))
        new_forms.append(HomogeneousForm(f.k, f.d, acc))
    return endo_build(new_forms)
