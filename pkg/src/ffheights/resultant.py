"""Macaulay matrices and resultants of k+1 forms of one degree over Q.

The forms are sparse dicts ``{exponent tuple: Fraction}``.  The resultant is
computed with Macaulay's quotient formula ``det(D) / det(D')``; when the
extraneous minor ``D'`` happens to vanish, a unimodular change of variables
(which leaves the resultant unchanged) is applied first.  Vanishing itself is
decided independently by the rank of the full degree-rho Macaulay matrix.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import linalg
from .forms import monomials, mp_substitute_linear


def regularity_degree(k: int, d: int) -> int:
    """rho = (k+1)(d-1)+1: every monomial of this degree lies in the ideal of a morphism."""
    return (k + 1) * (d - 1) + 1


def _plus(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def macaulay_matrix(forms: Sequence[dict], k: int, d: int, rho: int) -> tuple[list[list], tuple]:
    """Rows mu*F_j for all monomials mu of degree rho-d; columns are degree-rho monomials."""
    cols = monomials(k + 1, rho)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for form in forms:
        for mu in monomials(k + 1, rho - d):
            row = [0] * len(cols)
            for mono, c in form.items():
                row[index[_plus(mu, mono)]] = c
            rows.append(row)
    return rows, cols


def has_common_zero(forms: Sequence[dict], k: int, d: int) -> bool:
    """True iff the forms share a zero in P^k over the algebraic closure of Q."""
    rows, cols = macaulay_matrix(forms, k, d, regularity_degree(k, d))
    return linalg.rank(rows) < len(cols)


def _quotient_dets(forms: Sequence[dict], k: int, d: int) -> tuple[Fraction, Fraction]:
    rho = regularity_degree(k, d)
    cols = monomials(k + 1, rho)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    nonreduced = []
    for pos, alpha in enumerate(cols):
        big = [i for i, e in enumerate(alpha) if e >= d]
        i = big[0]
        if len(big) > 1:
            nonreduced.append(pos)
        shift = tuple(e - d if j == i else e for j, e in enumerate(alpha))
        row = [0] * len(cols)
        for mono, c in forms[i].items():
            row[index[_plus(shift, mono)]] = c
        rows.append(row)
    full = linalg.det(rows)
    minor = linalg.det([[rows[r][c] for c in nonreduced] for r in nonreduced])
    return Fraction(full), Fraction(minor)


def _unimodular_changes(k: int):
    """Deterministic sequence of det-1 substitutions, each a list of X_i -> X_i + s*X_j."""
    yield None
    for s in range(1, 13):
        q = Fraction(s)
        up = [(i, i + 1, q) for i in range(k)]
        down = [(i, i - 1, q) for i in range(1, k + 1)]
        yield up
        yield down
        yield up + down
    # denser elementary products from a fixed seed
    rng = random.Random(20240531)
    pairs = [(i, j) for i in range(k + 1) for j in range(k + 1) if i != j]
    for _ in range(64):
        yield [(i, j, Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))) for i, j in rng.sample(pairs, len(pairs))]


def _apply_change(forms: Sequence[dict], k: int, change) -> list[dict]:
    # elementary operations applied one after another keep determinant 1
    out = [dict(f) for f in forms]
    n = k + 1
    for i, j, s in change:
        images = []
        for v in range(n):
            e = tuple(1 if w == v else 0 for w in range(n))
            img = {e: Fraction(1)}
            if v == i:
                ej = tuple(1 if w == j else 0 for w in range(n))
                img[ej] = s
            images.append(img)
        out = [mp_substitute_linear(f, images, n, Fraction(1)) for f in out]
    return out


def macaulay_resultant(forms: Sequence[dict], k: int, d: int) -> Fraction:
    """Res(F_0, ..., F_k) normalized by Res(X_0^d, ..., X_k^d) = 1."""
    if len(forms) != k + 1:
        raise ValueError("need exactly k+1 forms")
    if k == 0:
        return Fraction(forms[0].get((d,), 0))
    if has_common_zero(forms, k, d):
        return Fraction(0)
    for change in _unimodular_changes(k):
        fs = forms if change is None else _apply_change(forms, k, change)
        full, minor = _quotient_dets(fs, k, d)
        if minor:
            value = full / minor
            if not value:
                raise ArithmeticError("resultant quotient vanished for a morphism")
            return value
    raise ArithmeticError("no coordinate change made the extraneous factor nonzero")
