"""Dense univariate polynomials over the integers.

A polynomial is a list of ``gmpy2.mpz`` coefficients indexed by exponent, with
no trailing zeros; the zero polynomial is ``[]``.  Every function returns a
fresh list and never mutates its arguments.

Multiplication switches to Kronecker substitution (pack both operands into one
big integer, multiply with GMP, unpack) once operands are large.  Degrees
double at every dynamical iterate, so this is the hot path of the package.
"""

from __future__ import annotations

from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpz

ZERO = mpz(0)
ONE = mpz(1)

_SCHOOLBOOK_MAX = 24
_BIG_COEFF = 4096


def trim(c: list) -> list:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    if n != len(c):
        del c[n:]
    return c


def from_ints(values) -> list:
    return trim([mpz(v) for v in values])


def neg(a: Sequence) -> list:
    return [-x for x in a]


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return trim(out)


def sub(a: Sequence, b: Sequence) -> list:
    out = list(a)
    if len(out) < len(b):
        out.extend([ZERO] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] = out[i] - x
    return trim(out)


def scale(a: Sequence, s) -> list:
    if not s:
        return []
    return [x * s for x in a]


def shift(a: Sequence, k: int) -> list:
    if not a:
        return []
    return [ZERO] * k + list(a)


def maxbits(a: Sequence) -> int:
    return max((abs(x).bit_length() for x in a), default=0)


def maxnorm(a: Sequence) -> mpz:
    return max((abs(x) for x in a), default=ZERO)


def content(a: Sequence) -> mpz:
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    g = ZERO
    for x in a:
        g = gmpy2.gcd(g, x)
        if g == 1:
            break
    return g


def primitive(a: Sequence) -> tuple[mpz, list]:
    """Split ``a`` as ``c * p`` with ``p`` primitive and ``lc(p) > 0``."""
    if not a:
        return ZERO, []
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return c, list(a)
    return c, [gmpy2.divexact(x, c) for x in a]


# -- Kronecker substitution -------------------------------------------------

_ONES_CACHE: dict[tuple[int, int], mpz] = {}


def _ones(n: int, nbytes: int) -> mpz:
    """sum(2**(8*nbytes*i) for i in range(n))."""
    key = (n, nbytes)
    v = _ONES_CACHE.get(key)
    if v is None:
        v = mpz.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * n, "little")
        if len(_ONES_CACHE) > 64:
            _ONES_CACHE.clear()
        _ONES_CACHE[key] = v
    return v


def _pack(c: Sequence, nbytes: int) -> mpz:
    # requires |c_i| < 2**(8*nbytes - 1)
    off = ONE << (8 * nbytes - 1)
    buf = b"".join((x + off).to_bytes(nbytes, "little") for x in c)
    return mpz.from_bytes(buf, "little") - (_ones(len(c), nbytes) << (8 * nbytes - 1))


def _unpack(v: mpz, n: int, nbytes: int) -> list:
    off = ONE << (8 * nbytes - 1)
    w = v + (_ones(n, nbytes) << (8 * nbytes - 1))
    buf = w.to_bytes(n * nbytes, "little")
    frm = mpz.from_bytes
    return trim([frm(buf[i : i + nbytes], "little") - off for i in range(0, n * nbytes, nbytes)])


def _schoolbook(a: Sequence, b: Sequence) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    m = min(len(a), len(b))
    if m == 1:
        return _schoolbook(a, b)
    ba, bb = maxbits(a), maxbits(b)
    # with big coefficients one packed product beats many coefficient products
    if min(ba, bb) < _BIG_COEFF and (m == 2 or len(a) * len(b) <= _SCHOOLBOOK_MAX * _SCHOOLBOOK_MAX):
        return _schoolbook(a, b)
    bits = ba + bb + m.bit_length() + 1
    nbytes = (bits + 8) // 8
    pa = _pack(a, nbytes)
    prod = pa * pa if a is b else pa * _pack(b, nbytes)
    return _unpack(prod, len(a) + len(b) - 1, nbytes)


def sqr(a: Sequence) -> list:
    return mul(a, a)


# -- evaluation / interpolation at integers --------------------------------

def eval_at(a: Sequence, x) -> mpz:
    """Exact value a(x) for an integer x (divide and conquer for long inputs)."""
    x = mpz(x)
    powers: dict[int, mpz] = {}

    def rec(lo: int, hi: int) -> mpz:
        if hi - lo <= 32:
            acc = ZERO
            for i in range(hi - 1, lo - 1, -1):
                acc = acc * x + a[i]
            return acc
        mid = (lo + hi) // 2
        span = mid - lo
        p = powers.get(span)
        if p is None:
            p = powers[span] = x**span
        return rec(lo, mid) + rec(mid, hi) * p

    if not a:
        return ZERO
    return rec(0, len(a))


def interpolate(v, xi) -> list:
    """Balanced xi-adic digits of v, read as a polynomial (digits in (-xi/2, xi/2])."""
    v = mpz(v)
    xi = mpz(xi)
    half = xi // 2
    out = []
    while v:
        q, r = gmpy2.f_divmod(v, xi)
        if r > half:
            r -= xi
            q += 1
        out.append(r)
        v = q
    return out


# -- division ------------------------------------------------------------------

def divexact(a: Sequence, b: Sequence) -> Optional[list]:
    """Return q with a == b*q if such q exists in Z[x], else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    n, m = len(a) - 1, len(b) - 1
    if n < m:
        return None
    if m == 0:
        lc = b[0]
        out = []
        for x in a:
            if not gmpy2.is_divisible(x, lc):
                return None
            out.append(gmpy2.divexact(x, lc))
        return out
    r = list(a)
    lc = b[-1]
    q = [ZERO] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = r[i + m]
        if not c:
            continue
        if not gmpy2.is_divisible(c, lc):
            return None
        qi = gmpy2.divexact(c, lc)
        q[i] = qi
        for j in range(m):
            if b[j]:
                r[i + j] -= qi * b[j]
    if any(r[:m]):
        return None
    return q


def pseudo_rem(a: Sequence, b: Sequence) -> list:
    """Pseudo-remainder: lc(b)**(deg a - deg b + 1) * a mod b."""
    r = list(a)
    m = len(b) - 1
    lc = b[-1]
    steps = len(r) - 1 - m + 1
    if steps <= 0:
        return r
    for _ in range(steps):
        if len(r) - 1 < m:
            r = [x * lc for x in r]
            continue
        c = r[-1]
        shift_by = len(r) - 1 - m
        r = [x * lc for x in r]
        for j in range(m + 1):
            r[shift_by + j] -= c * b[j]
        trim(r)
    return trim(r)


def _prs_gcd(a: Sequence, b: Sequence) -> list:
    """Primitive PRS; a and b primitive and nonzero."""
    if len(a) < len(b):
        a, b = b, a
    a, b = list(a), list(b)
    while b:
        r = pseudo_rem(a, b)
        a = b
        b = primitive(r)[1] if r else []
    return primitive(a)[1]


def _heuristic_gcd(a: Sequence, b: Sequence) -> Optional[list]:
    """Candidate gcd of primitive a, b through integer gcds at a large point.

    With xi >= 2*min(|a|, |b|) + 2 a candidate that divides both inputs is the
    true gcd: any extra common factor q would satisfy |q(xi)| > xi/2 (Cauchy's
    root bound), yet q(xi) has to divide the content of the interpolant, which
    is at most xi/2.  So acceptance after the divisibility test is exact.
    """
    xi = 2 * min(maxnorm(a), maxnorm(b)) + 2
    for _ in range(6):
        va = eval_at(a, xi)
        vb = eval_at(b, xi)
        g = gmpy2.gcd(va, vb)
        cand = primitive(interpolate(g, xi))[1]
        if cand and _divides(cand, a, va, xi) and _divides(cand, b, vb, xi):
            return cand
        xi = xi * 73794 // 27011 + 3
    return None


def _divides(c: list, a: Sequence, va: mpz, xi: mpz) -> bool:
    if len(c) == 1:
        return True
    if len(c) > len(a):
        return False
    vc = eval_at(c, xi)
    if vc and gmpy2.is_divisible(va, vc):
        cof = interpolate(gmpy2.divexact(va, vc), xi)
        if len(cof) + len(c) - 1 == len(a) and mul(c, cof) == list(a):
            return True
    return divexact(a, c) is not None


def gcd(a: Sequence, b: Sequence) -> list:
    """Primitive gcd with positive leading coefficient; gcd(0, 0) = []."""
    if not a:
        return primitive(b)[1]
    if not b:
        return primitive(a)[1]
    if len(a) == 1 or len(b) == 1:
        return [ONE]
    pa = primitive(a)[1]
    pb = primitive(b)[1]
    if pa == pb:
        return pa
    cand = _heuristic_gcd(pa, pb)
    if cand is None:
        cand = _prs_gcd(pa, pb)
    return cand
