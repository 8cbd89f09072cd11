"""Exact arithmetic in Q, Q[t] and Q(t).

Rationals are :class:`fractions.Fraction`.  A :class:`UniPoly` keeps its
coefficients as a tuple of integers over one positive common denominator,
which keeps multiplication and gcd work in Z[t] where the fast kernels live.
A :class:`RationalFunc` is always stored coprime with a monic denominator, so
two equal field elements have identical representations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import gmpy2
from gmpy2 import mpz

from . import _zpoly as zp
from .errors import AllZero, DivisionByZero, PoleAtParameter

Rational = Fraction

#: degree of the zero polynomial; behaves correctly under max() and +.
ZERO_DEGREE = -math.inf


def fmt_int(n) -> str:
    # str(int) is capped at 4300 digits on this interpreter line
    return mpz(n).digits()


def fmt_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return fmt_int(q.numerator)
    return f"{fmt_int(q.numerator)}/{fmt_int(q.denominator)}"


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or str")
    if isinstance(x, type(gmpy2.mpq())):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


class UniPoly:
    """Polynomial in t with rational coefficients (immutable)."""

    __slots__ = ("_c", "_den", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        fracs = [to_rational(c) for c in coeffs]
        den = mpz(1)
        for q in fracs:
            den = gmpy2.lcm(den, q.denominator)
        ints = [mpz(q.numerator) * (den // q.denominator) for q in fracs]
        self._set(zp.trim(ints), den)

    def _set(self, c: list, den) -> None:
        if not c:
            den = mpz(1)
        elif den != 1:
            g = den
            for x in c:
                g = gmpy2.gcd(g, x)
                if g == 1:
                    break
            if g != 1:
                c = [gmpy2.divexact(x, g) for x in c]
                den = gmpy2.divexact(den, g)
        self._c = tuple(c)
        self._den = mpz(den)
        self._hash = None

    @classmethod
    def _make(cls, c: list, den=1) -> "UniPoly":
        p = object.__new__(cls)
        if den < 0:
            c = [-x for x in c]
            den = -den
        p._set(zp.trim(list(c)), den)
        return p

    @classmethod
    def constant(cls, value) -> "UniPoly":
        return cls([value])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "UniPoly":
        from .literal import parse_unipoly

        return parse_unipoly(text)

    # -- inspection ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = int(self._den)
        return tuple(Fraction(int(x), d) for x in self._c)

    @property
    def degree(self):
        """Degree in t; ``ZERO_DEGREE`` (-inf) for the zero polynomial."""
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    @property
    def leading(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        return Fraction(int(self._c[-1]), int(self._den))

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(int(self._c[i]), int(self._den))
        return Fraction(0)

    def integer_parts(self) -> tuple[list, mpz]:
        """(integer coefficient list, positive denominator)."""
        return list(self._c), self._den

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, type(mpz())):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return UniPoly._make(zp.add(self._c, other._c), self._den)
        l = gmpy2.lcm(self._den, other._den)
        a = zp.scale(self._c, l // self._den)
        b = zp.scale(other._c, l // other._den)
        return UniPoly._make(zp.add(a, b), l)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._make(zp.neg(self._c), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return UniPoly._make(zp.mul(self._c, other._c), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, q) -> "UniPoly":
        q = to_rational(q)
        return UniPoly._make(zp.scale(self._c, mpz(q.numerator)), self._den * q.denominator)

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if not other:
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        m = len(b) - 1
        if len(r) - 1 < m:
            return UniPoly(), self
        q = [Fraction(0)] * (len(r) - m)
        lc = b[-1]
        for i in range(len(r) - 1 - m, -1, -1):
            c = r[i + m] / lc
            q[i] = c
            if c:
                for j in range(m + 1):
                    r[i + j] -= c * b[j]
        return UniPoly(q), UniPoly(r[:m])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        """Quotient when ``other`` divides ``self`` exactly over Q."""
        if not other:
            raise DivisionByZero("polynomial division by zero")
        if not self:
            return self
        _, pb = zp.primitive(other._c)
        cb = Fraction(int(other._c[-1]), int(other._den)) / int(pb[-1])
        q = zp.divexact(list(self._c), pb)
        if q is None:
            raise ValueError("division is not exact")
        return UniPoly._make(q, self._den).scale(1 / cb)

    def monic(self) -> "UniPoly":
        if not self._c:
            return self
        lc = self._c[-1]
        return UniPoly._make(list(self._c), lc) if lc > 0 else UniPoly._make(zp.neg(self._c), -lc)

    def derivative(self) -> "UniPoly":
        return UniPoly._make([x * i for i, x in enumerate(self._c)][1:], self._den)

    def __call__(self, t0) -> Fraction:
        return self.eval(t0)

    def eval(self, t0) -> Fraction:
        t0 = to_rational(t0)
        r, s = mpz(t0.numerator), mpz(t0.denominator)
        c = self._c
        if not c:
            return Fraction(0)
        n = len(c) - 1
        if s == 1:
            v = zp.eval_at(list(c), r)
            return Fraction(int(v), int(self._den))
        acc = c[n]
        spow = mpz(1)
        for i in range(n - 1, -1, -1):
            spow *= s
            acc = acc * r + c[i] * spow
        return Fraction(int(acc), int(self._den * s**n))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._den == other._den and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._c, self._den))
        return self._hash

    def __reduce__(self):
        return (UniPoly._make, (list(self._c), self._den))

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r})"

    def __str__(self) -> str:
        return format_poly(self.coeffs, "t")


def format_poly(coeffs: Sequence[Fraction], var: str) -> str:
    """Literal syntax, highest power first: ``3*t^2 - 1/2*t + 4``."""
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if i == 0:
            body = fmt_rational(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{fmt_rational(a)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q; gcd(0, 0) = 0."""
    g = zp.gcd(list(a._c), list(b._c))
    if not g:
        return UniPoly()
    return UniPoly._make(g, g[-1])


def content_and_primitive(polys: Sequence[UniPoly]) -> tuple[UniPoly, list[UniPoly]]:
    """Monic gcd of the entries and the entries divided by it."""
    polys = [p if isinstance(p, UniPoly) else UniPoly([p]) for p in polys]
    if all(not p for p in polys):
        raise AllZero("all entries are zero")
    g: list = []
    for p in polys:
        if p:
            g = zp.gcd(g, list(p._c)) if g else zp.primitive(list(p._c))[1]
            if len(g) == 1:
                break
    gp = UniPoly._make(g, g[-1])
    if len(g) == 1:
        return gp, list(polys)
    return gp, [p.exact_div(gp) for p in polys]


class RationalFunc:
    """Element of Q(t) in canonical form: coprime, monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _trusted: bool = False):
        num = num if isinstance(num, UniPoly) else UniPoly([num])
        den = den if isinstance(den, UniPoly) else UniPoly([den])
        if not _trusted:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def parse(cls, text: str) -> "RationalFunc":
        from .literal import parse_rational_function

        return parse_rational_function(text)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, UniPoly):
            return RationalFunc(other, UniPoly([1]), _trusted=True)
        if isinstance(other, (int, Fraction)) or isinstance(other, type(mpz())):
            return RationalFunc(UniPoly([other]), UniPoly([1]), _trusted=True)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunc()
        # cross-cancel first so the products stay small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        lc = d.leading
        return RationalFunc(n.scale(1 / lc), d.scale(1 / lc), _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(t)")
        lc = self.num.leading
        return RationalFunc(self.den.scale(1 / lc), self.num.scale(1 / lc), _trusted=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunc(self.num**n, self.den**n, _trusted=True)

    def eval(self, t0) -> Fraction:
        return rf_eval(self, t0)

    def __call__(self, t0) -> Fraction:
        return rf_eval(self, t0)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __reduce__(self):
        return (_rf_trusted, (self.num, self.den))

    @property
    def degree_pair(self) -> tuple:
        return (self.num.degree, self.den.degree)

    def __repr__(self) -> str:
        return f"RationalFunc({str(self)!r})"

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num._c) > 1 and sum(1 for x in self.num._c if x) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"


def _rf_trusted(num, den):
    return RationalFunc(num, den, _trusted=True)


def _canonical(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    if not den:
        raise DivisionByZero("denominator is zero")
    if not num:
        return UniPoly(), UniPoly([1])
    if den.is_constant():
        lc = den.leading
        return num.scale(1 / lc), UniPoly([1])
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.leading
    return num.scale(1 / lc), den.scale(1 / lc)


def rf_normalize(num, den) -> RationalFunc:
    """Canonical element num/den of Q(t)."""
    num = num if isinstance(num, UniPoly) else UniPoly([num])
    den = den if isinstance(den, UniPoly) else UniPoly([den])
    return RationalFunc(num, den)


def rf_eval(x: RationalFunc, t0) -> Fraction:
    """Specialize x at t = t0."""
    x = RationalFunc._coerce(x)
    dv = x.den.eval(t0)
    if not dv:
        raise PoleAtParameter(f"denominator {x.den} vanishes at t = {fmt_rational(to_rational(t0))}")
    return x.num.eval(t0) / dv


RationalLike = Union[int, Fraction, str, UniPoly, RationalFunc]


def as_rational_func(x: RationalLike) -> RationalFunc:
    if isinstance(x, str):
        return RationalFunc.parse(x)
    out = RationalFunc._coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(t)")
    return out
