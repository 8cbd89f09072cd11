import random
from fractions import Fraction

import pytest
import sympy

from ffheights import (
    Endomorphism,
    Inconclusive,
    Isotrivial,
    NonIsotrivial,
    PoleAtParameter,
    UnsupportedShape,
    conjugate,
    fixed_point_data,
    isotriviality_verdict,
    multiplier_invariants,
    rf_eval,
)
from support import fixed_map, random_map, random_mobius

Z, W = sympy.symbols("z w")
maps = lambda *lits: Endomorphism.from_strings(list(lits))


def numeric_sigmas(f: Endomorphism, t0: int, prec: int = 60):
    """Multipliers of f_{t0} at its fixed points found by numerical root finding."""
    spec = f.specialize(t0)
    num = sum(sympy.Rational(c.numerator, c.denominator) * Z ** m[0] for m, c in spec[0].items())
    den = sum(sympy.Rational(c.numerator, c.denominator) * Z ** m[0] for m, c in spec[1].items())
    g = num / den
    fixed = sympy.Poly(sympy.expand(num - Z * den), Z)
    lams = []
    if not fixed.is_zero:
        for r in fixed.nroots(n=prec, maxsteps=200):
            lams.append(sympy.N(sympy.diff(g, Z).subs(Z, r), prec))
    missing = f.d + 1 - len(lams)
    if missing:
        flipped = sympy.cancel(1 / g.subs(Z, 1 / W))
        lam_inf = sympy.diff(flipped, W).subs(W, 0)
        lams += [lam_inf] * missing
    y = sympy.Symbol("y")
    poly = sympy.Poly(sympy.expand(sympy.prod([y - l for l in lams])), y)
    coeffs = poly.all_coeffs()
    return [(-1) ** (i + 1) * coeffs[i + 1] for i in range(f.d + 1)]


def test_power_map_invariants():
    inv = multiplier_invariants(maps("X0^2", "X1^2"))
    assert [str(s) for s in inv.sigmas] == ["2", "0", "0"]


def test_quadratic_family_invariants():
    inv = multiplier_invariants(fixed_map("quadratic_t"))
    assert [str(s) for s in inv.sigmas] == ["2", "4*t", "0"]
    assert inv.index_relation_holds()


def test_isotriviality_triple():
    assert isotriviality_verdict(maps("X0^2 + X1^2", "X1^2")) == Isotrivial()
    v = isotriviality_verdict(fixed_map("quadratic_t"))
    assert isinstance(v, NonIsotrivial) and v.witness == "sigma2" and str(v.value) == "4*t"
    # z -> t * ((z/t)^2 + 1) = (z^2 + t^2) / t
    g = maps("X0^2 + t^2*X1^2", "t*X1^2")
    assert [str(s) for s in multiplier_invariants(g).sigmas] == ["2", "4", "0"]
    assert isotriviality_verdict(g) == Isotrivial()


def test_swapping_map():
    # 1/z^2: fixed points are the cube roots of unity, each with multiplier -2
    data = fixed_point_data(maps("X1^2", "X0^2"))
    assert not data.infinity_fixed
    inv = multiplier_invariants(maps("X1^2", "X0^2"))
    assert [str(s) for s in inv.sigmas] == ["-6", "12", "-8"]


def test_infinity_with_multiplicity():
    # z + 1/z: infinity is the only fixed point, parabolic of multiplicity 3
    f = maps("X0^2 + X1^2", "X0*X1")
    data = fixed_point_data(f)
    assert data.infinity_fixed and data.infinity_multiplicity == 3
    inv = multiplier_invariants(f)
    assert [str(s) for s in inv.sigmas] == ["3", "3", "1"]
    assert [rf_eval(s, 0) for s in inv.sigmas] == [Fraction(s) for s in numeric_sigmas(f, 0, 30)]


def test_index_relation_on_random_maps():
    rng = random.Random(31)
    for _ in range(60):
        f = random_map(rng, 1, 2, rng.randint(0, 2), 3)
        assert multiplier_invariants(f).index_relation_holds()


def test_invariants_match_numerical_fixed_points():
    rng = random.Random(32)
    checked = 0
    for _ in range(25):
        f = random_map(rng, 1, rng.choice([2, 2, 3]), rng.randint(0, 1), 3)
        inv = multiplier_invariants(f)
        for t0 in (2, -3):
            try:
                exact = [rf_eval(s, t0) for s in inv.sigmas]
            except PoleAtParameter:
                continue
            spec = f.specialize(t0)
            if not spec[0] or not spec[1]:
                continue
            numeric = numeric_sigmas(f, t0)
            for a, b in zip(exact, numeric):
                assert abs(sympy.Rational(a.numerator, a.denominator) - b) < sympy.Float("1e-25")
            checked += 1
    assert checked > 20


def test_conjugation_leaves_invariants_unchanged():
    rng = random.Random(33)
    for _ in range(20):
        f = random_map(rng, 1, 2, rng.randint(0, 1), 2)
        g = conjugate(f, random_mobius(rng))
        assert multiplier_invariants(f) == multiplier_invariants(g)


def test_constant_maps_are_isotrivial():
    rng = random.Random(34)
    for _ in range(10):
        f = random_map(rng, 1, 2, 0, 3)
        assert all(s.is_constant() for s in multiplier_invariants(f).sigmas)
        assert isotriviality_verdict(f) == Isotrivial()


def test_plane_maps_rejected():
    with pytest.raises(UnsupportedShape):
        multiplier_invariants(fixed_map("plane"))
    with pytest.raises(UnsupportedShape):
        isotriviality_verdict(fixed_map("plane"))


def test_cubic_maps():
    v = isotriviality_verdict(maps("X0^3 + t*X1^3", "X1^3"))
    assert isinstance(v, NonIsotrivial)
    v = isotriviality_verdict(maps("X0^3 + X1^3", "X1^3"))
    assert isinstance(v, Inconclusive)


def test_verdict_json():
    v = isotriviality_verdict(fixed_map("quadratic_t"))
    assert v.to_json() == {"verdict": "NonIsotrivial", "witness": "sigma2", "value": "4*t"}
    inv = multiplier_invariants(fixed_map("quadratic_t"))
    assert inv.to_json() == {"sigma1": "2", "sigma2": "4*t", "sigma3": "0"}
