"""Shared generators and independent oracles for the test suite.

The oracles use sympy polynomials and deliberately avoid the package's own
arithmetic, normalization, caching and hashing.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ffheights import (
    Endomorphism,
    HomogeneousForm,
    NotAMorphism,
    endo_build,
    pp_normalize,
)
from ffheights.arith import UniPoly

T = sympy.Symbol("t")

FIXED_MAPS = {
    "quadratic_t": ["X0^2 + t*X1^2", "X1^2"],
    "power": ["X0^2", "X1^2"],
    "mixed": ["X0^2 + t*X0*X1", "t^2*X1^2 + X0^2 - X0*X1"],
    "cubic": ["X0^3 - t*X0*X1^2 + (t^2 + 1)*X1^3", "t*X0^2*X1 + X1^3"],
    "plane": ["X0^2 + t*X1^2", "X1^2 + t*X2^2 - X0*X2", "X2^2 + X0*X1"],
}


def fixed_map(name: str) -> Endomorphism:
    lits = FIXED_MAPS[name]
    return Endomorphism.from_strings(lits)


def random_unipoly(rng: random.Random, deg: int, bound: int = 3) -> UniPoly:
    coeffs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
    if deg >= 0 and coeffs[-1] == 0:
        coeffs[-1] = rng.choice([-1, 1]) * rng.randint(1, max(bound, 1))
    return UniPoly(coeffs)


def random_point(rng: random.Random, k: int, max_h: int, bound: int = 3):
    """A point whose raw coordinates have degree <= max_h (one of them exactly)."""
    while True:
        h = rng.randint(0, max_h)
        coords = []
        for i in range(k + 1):
            if rng.random() < 0.15:
                coords.append(UniPoly())
            else:
                coords.append(random_unipoly(rng, rng.randint(0, h), bound))
        coords[rng.randrange(k + 1)] = random_unipoly(rng, h, bound)
        if any(coords):
            return pp_normalize(coords)


def random_forms(rng: random.Random, k: int, d: int, tdeg: int, bound: int = 2, density: float = 0.7):
    from ffheights.forms import monomials

    forms = []
    for _ in range(k + 1):
        terms = {}
        for mono in monomials(k + 1, d):
            if rng.random() < density:
                c = random_unipoly(rng, rng.randint(0, tdeg), bound) if rng.random() < 0.9 else UniPoly()
                if c:
                    terms[mono] = c
        forms.append(HomogeneousForm(k, d, terms))
    return forms


def random_map(rng: random.Random, k: int, d: int, tdeg: int = 1, bound: int = 2) -> Endomorphism:
    while True:
        forms = random_forms(rng, k, d, tdeg, bound)
        if any(f.is_zero() for f in forms):
            continue
        try:
            return endo_build(forms)
        except NotAMorphism:
            continue


def random_mobius(rng: random.Random, tdeg: int = 1, bound: int = 2):
    while True:
        m = [[random_unipoly(rng, rng.randint(0, tdeg), bound) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return m


# ---- sympy oracles ------------------------------------------------------


def to_sympy(p: UniPoly) -> sympy.Expr:
    return sum((sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def sympy_forms(f: Endomorphism):
    xs = sympy.symbols(f"X0:{f.k + 1}")
    out = []
    for form in f.forms:
        expr = sympy.Integer(0)
        for mono, c in form.items():
            term = to_sympy(c)
            for x, e in zip(xs, mono):
                term *= x**e
            expr += term
        out.append(expr)
    return xs, out


def oracle_normalize(exprs):
    """Coprime polynomial coordinates, first nonzero one monic, as sympy Polys."""
    exprs = [sympy.together(sympy.sympify(e)) for e in exprs]
    nums, dens = zip(*(sympy.fraction(e) for e in exprs))
    lcm = sympy.Integer(1)
    for den in dens:
        lcm = sympy.lcm(lcm, den)
    polys = [sympy.Poly(sympy.cancel(n * lcm / den), T, domain="QQ") for n, den in zip(nums, dens)]
    g = sympy.Poly(0, T, domain="QQ")
    for p in polys:
        g = sympy.gcd(g, p)
    polys = [sympy.div(p, g)[0] for p in polys]
    lead = next(p for p in polys if not p.is_zero).LC()
    return [p.quo_ground(lead) for p in polys]


def oracle_height(polys) -> int:
    return max(p.degree() for p in polys if not p.is_zero)


def oracle_point(x):
    return [sympy.Poly(to_sympy(c), T, domain="QQ") for c in x.coords]


def oracle_image(f: Endomorphism, polys):
    xs, exprs = sympy_forms(f)
    subs = {x: p.as_expr() for x, p in zip(xs, polys)}
    return oracle_normalize([sympy.expand(e.subs(subs)) for e in exprs])


def same_point(polys, x) -> bool:
    mine = oracle_point(x)
    return len(mine) == len(polys) and all(a == b for a, b in zip(mine, polys))


def oracle_classify(f: Endomorphism, polys, budget: int, c: int):
    """Straight iteration: linear search for repeats, no caching of any kind."""
    d = f.d
    history = []
    cur = polys
    for n in range(budget + 1):
        for i, old in enumerate(history):
            if all(a == b for a, b in zip(old, cur)):
                return ("Preperiodic", i, n - i)
        history.append(cur)
        h = oracle_height(cur)
        if (d - 1) * h > c:
            return ("PositiveCertified", Fraction((d - 1) * h - c, (d - 1) * d**n), n)
        if n < budget:
            cur = oracle_image(f, cur)
    return ("Undecided",)
