"""Exact naive heights along an orbit without computing the iterates.

For a coprime representative a of y, with G = F(a) and g = gcd(G) over Q[t],

    h(f(y)) = max_i deg G_i - deg g.

Both terms are local.  g divides the multiplier R of the cofactor identity,
so g = gcd(G_0 mod R^N, ..., G_k mod R^N, R^N) for any N >= 1, and the next
representative G/g is known modulo R^(N-1).  The top degree is read off the
expansion at t = oo: with s = 1/t and the reversed coordinates
s^D a(1/s), the order of vanishing at s = 0 of s^(dD + h(f)) F(a)(1/s) is
the drop below dD + h(f).  The cofactor identity caps that drop at
mu = h(f) + D_g - deg R per step, so precision n*mu + 1 at infinity and
n + 1 powers of R suffice for n steps.  Residues stay small while the true
iterates grow like d^n in degree.
"""

from __future__ import annotations

from typing import Sequence

import gmpy2
from gmpy2 import mpz

from . import _zpoly as zp
from .endomorphism import Endomorphism
from .errors import DimensionMismatch
from .projective import ProjectivePoint


def _apply(zforms, coords: Sequence[list], trunc: int | None = None) -> list[list]:
    """F(coords) with integer forms; optionally truncate every product mod s^trunc."""
    cache: dict = {}

    def cut(p):
        return zp.trim(p[:trunc]) if trunc is not None else p

    def product(mono):
        hit = cache.get(mono)
        if hit is not None:
            return hit
        nz = [i for i, e in enumerate(mono) if e]
        if not nz:
            out = [mpz(1)]
        elif len(nz) == 1 and mono[nz[0]] == 1:
            out = list(coords[nz[0]])
        else:
            i = nz[0]
            rest = tuple(e - 1 if w == i else e for w, e in enumerate(mono))
            out = cut(zp.mul(product(rest), coords[i]))
        cache[mono] = out
        return out

    values = []
    for zform in zforms:
        acc: list = []
        for mono, c in zform:
            acc = zp.add(acc, cut(zp.mul(c, product(mono))))
        values.append(acc)
    return values


def _prem_uniform(polys: list[list], m: list) -> list[list]:
    """lc(m)^E * p mod m for every p, with one exponent E for all of them."""
    dm = len(m) - 1
    lc = m[-1]
    steps = [max(len(p) - dm, 0) for p in polys]
    e = max(steps)
    out = []
    for p, s in zip(polys, steps):
        r = zp.pseudo_rem(p, m) if s else list(p)
        if e - s:
            r = zp.scale(r, lc ** (e - s))
        out.append(zp.trim(r))
    return out


def _drop_content(polys: list[list]) -> list[list]:
    c = mpz(0)
    for p in polys:
        for x in p:
            c = gmpy2.gcd(c, x)
            if c == 1:
                return polys
    if c in (0, 1):
        return polys
    return [[x // c for x in p] for p in polys]


def _series_quotient(g: list, u: list, n: int) -> list:
    """u0^n * g / u mod s^n for a power series u with u0 != 0 (integers throughout)."""
    u0 = u[0]
    q: list = []
    for j in range(n):
        acc = (g[j] if j < len(g) else 0) * u0**j
        for l in range(1, min(j, len(u) - 1) + 1):
            if u[l] and q[j - l]:
                acc -= u[l] * u0 ** (l - 1) * q[j - l]
        q.append(mpz(acc))
    # coefficient j carries u0^(j+1); bring all to u0^n
    return zp.trim([q[j] * u0 ** (n - 1 - j) for j in range(n)])


def _order(p: list) -> int:
    for i, c in enumerate(p):
        if c:
            return i
    return -1


def orbit_heights(f: Endomorphism, x: ProjectivePoint, n: int) -> list[int]:
    """[h(x), h(f(x)), ..., h(f^n(x))], exactly."""
    if x.k != f.k:
        raise DimensionMismatch(f"map on P^{f.k} applied to a point of P^{x.k}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    heights = [x.height]
    if n == 0:
        return heights
    if f.coeff_height == 0 and x.is_constant():
        return [0] * (n + 1)
    d, hf = f.d, f.coeff_height
    r = list(zp.primitive(f.identity.multiplier.integer_parts()[0])[1])
    deg_r = len(r) - 1
    mu = max(hf + f.identity.tdegree - deg_r, 0)

    zforms = [[(m, list(c)) for m, c in form] for form in f._zforms]
    rforms = []
    for form in zforms:
        rev = []
        for m, c in form:
            rc = [mpz(0)] * (hf + 1)
            for j, v in enumerate(c):
                rc[hf - j] = v
            rev.append((m, zp.trim(rc)))
        rforms.append(rev)

    coords = [list(z) for z in x.integer_coords]
    D = x.height

    # finite side: residues modulo R^N
    if deg_r > 0:
        level = n + 1
        powers = [[mpz(1)]]
        for _ in range(level):
            powers.append(zp.mul(powers[-1], r))
        fin = _prem_uniform(coords, powers[level])
    # infinite side: reversed coordinates modulo s^P
    prec = n * mu + 1
    inf = []
    for z in coords:
        rc = [mpz(0)] * (D + 1)
        for j, v in enumerate(z):
            rc[D - j] = v
        inf.append(zp.trim(rc[:prec]))

    for step in range(n):
        g = [mpz(1)]
        if deg_r > 0:
            modulus = powers[level]
            vals = _prem_uniform(_apply(zforms, fin), modulus)
            g = list(modulus)
            for v in vals:
                if len(g) <= 1:
                    break
                g = zp.gcd(g, v) if v else g
            if len(g) > 1:
                vals = [zp.divexact(v, g) if v else [] for v in vals]
            level -= 1
            fin = _drop_content(_prem_uniform(vals, powers[level]) if level > 0 else vals)
        series = _apply(rforms, inf, trunc=prec)
        orders = [_order(s) for s in series if s]
        if not orders:
            raise ArithmeticError("precision exhausted at infinity")
        m = min(orders)
        if m > mu:
            raise ArithmeticError("drop at infinity exceeds the proven bound")
        prec -= m
        series = [zp.trim(s[m:]) for s in series]
        if len(g) > 1:
            grev = list(reversed(g))
            series = [_series_quotient(s, grev, prec) if s else [] for s in series]
        inf = _drop_content(series)
        D = d * D + hf - m - (len(g) - 1)
        heights.append(D)
    return heights
