"""Homogeneous forms in X0..Xk with coefficients in Q[t].

Sparse multivariate polynomials are plain dicts ``{exponent tuple: coeff}``
with no zero coefficients stored; the helpers below work for any coefficient
ring (Fraction, UniPoly, RationalFunc).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .arith import ZERO_DEGREE, UniPoly, format_poly, to_rational
from .errors import InhomogeneousInput
from .literal import parse_form_terms


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, lexicographically descending."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def mp_add(a: Mapping, b: Mapping, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        if sign < 0:
            c = -c
        v = out[e] + c if e in out else c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mp_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out[e] + ca * cb if e in out else ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def mp_scale(a: Mapping, c) -> dict:
    out = {}
    for e, v in a.items():
        w = v * c
        if w:
            out[e] = w
    return out


def mp_pow(a: Mapping, n: int, nvars: int, one) -> dict:
    out = {(0,) * nvars: one}
    for _ in range(n):
        out = mp_mul(out, a)
    return out


def mp_substitute_linear(p: Mapping, images: Sequence[Mapping], nvars: int, one) -> dict:
    """p(L_0, ..., L_k) where each L_i is a sparse polynomial."""
    out: dict = {}
    cache: dict = {}
    for mono, c in p.items():
        term = {(0,) * nvars: c}
        for i, e in enumerate(mono):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = mp_pow(images[i], e, nvars, one)
                term = mp_mul(term, cache[key])
        out = mp_add(out, term)
    return out


class HomogeneousForm:
    """A form of total degree d in k+1 variables over Q[t] (immutable)."""

    __slots__ = ("k", "d", "_terms")

    def __init__(self, k: int, d: int, terms: Mapping[tuple[int, ...], object]):
        clean = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != k + 1:
                raise InhomogeneousInput(f"monomial {mono} does not have {k + 1} exponents")
            c = c if isinstance(c, UniPoly) else UniPoly([to_rational(c)])
            if not c:
                continue
            if sum(mono) != d:
                raise InhomogeneousInput(
                    f"monomial {_fmt_mono(mono)} has degree {sum(mono)}, expected {d}"
                )
            clean[mono] = c
        self.k = k
        self.d = d
        self._terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def parse(cls, text: str, k: int, d: int | None = None) -> "HomogeneousForm":
        terms = parse_form_terms(text, k)
        degrees = {sum(m) for m in terms}
        if d is None:
            if len(degrees) > 1:
                raise InhomogeneousInput(f"form {text!r} mixes degrees {sorted(degrees)}")
            if not degrees:
                raise InhomogeneousInput(f"cannot infer the degree of the zero form {text!r}")
            d = degrees.pop()
        return cls(k, d, terms)

    @property
    def terms(self) -> dict[tuple[int, ...], UniPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def coeff_height(self) -> int:
        return max((c.degree for c in self._terms.values()), default=0)

    def specialize(self, t0) -> dict[tuple[int, ...], Fraction]:
        t0 = to_rational(t0)
        out = {}
        for mono, c in self._terms.items():
            v = c.eval(t0)
            if v:
                out[mono] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.k, self.d, self._terms) == (other.k, other.d, other._terms)

    def __hash__(self) -> int:
        return hash((self.k, self.d, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"HomogeneousForm({str(self)!r}, k={self.k}, d={self.d})"

    def __str__(self) -> str:
        parts = []
        for mono, c in self._terms.items():
            m = _fmt_mono(mono)
            nterms = sum(1 for x in c.coeffs if x)
            if m == "1":
                body = str(c)
            elif nterms == 1 and c.is_constant():
                q = c.coeffs[0]
                body = m if q == 1 else (f"-{m}" if q == -1 else f"{format_poly((q,), 't')}*{m}")
            elif nterms == 1:
                body = f"{c}*{m}"
            else:
                body = f"({c})*{m}"
            if parts and body.startswith("-"):
                parts.append(f"- {body[1:]}")
            elif parts:
                parts.append(f"+ {body}")
            else:
                parts.append(body)
        return " ".join(parts) if parts else "0"


def _fmt_mono(mono: Sequence[int]) -> str:
    out = []
    for i, e in enumerate(mono):
        if e == 1:
            out.append(f"X{i}")
        elif e > 1:
            out.append(f"X{i}^{e}")
    return "*".join(out) if out else "1"


def form_max_tdegree(forms: Sequence[HomogeneousForm]):
    return max((c.degree for f in forms for c in f._terms.values()), default=ZERO_DEGREE)
