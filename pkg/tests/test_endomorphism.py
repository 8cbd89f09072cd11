import random
from fractions import Fraction

import pytest
import sympy

from ffheights import (
    DegreeTooSmall,
    DimensionMismatch,
    Endomorphism,
    HomogeneousForm,
    InhomogeneousInput,
    NotAMorphism,
    ProjectivePoint,
    RationalFunc,
    conjugate,
    endo_build,
    evaluate,
    height_defect_bound,
    morphism_check,
    orbit,
    pp_equals,
    pp_normalize,
    pp_specialize,
)
from ffheights.endomorphism import cofactor_identity, fiber_image, verify_cofactor_identity
from ffheights.projective import apply_linear, projective_image
from ffheights.resultant import has_common_zero, macaulay_resultant
from support import (
    FIXED_MAPS,
    fixed_map,
    oracle_height,
    oracle_image,
    oracle_point,
    random_map,
    random_mobius,
    random_point,
    random_unipoly,
    same_point,
)

pt = ProjectivePoint.parse
forms = lambda *lits: [HomogeneousForm.parse(s, len(lits) - 1) for s in lits]


def test_build_quadratic_family():
    f = endo_build(forms("X0^2 + t*X1^2", "X1^2"))
    assert (f.k, f.d, f.coeff_height) == (1, 2, 1)


def test_build_power_map():
    f = endo_build(forms("X0^2", "X1^2"))
    assert f.coeff_height == 0 and f.defect_bound == 0


def test_build_rejects_common_zero():
    with pytest.raises(NotAMorphism):
        endo_build(forms("X0^2", "t*X0*X1"))


def test_build_rejects_degree_mismatch():
    with pytest.raises(InhomogeneousInput):
        endo_build(forms("X0^2", "X1^3"))
    with pytest.raises(InhomogeneousInput):
        HomogeneousForm.parse("X0^2 + X1^3", 1)


def test_build_rejects_linear_maps():
    with pytest.raises(DegreeTooSmall):
        endo_build(forms("X0 + X1", "X1"))


def test_build_rejects_wrong_count():
    with pytest.raises(DimensionMismatch):
        endo_build([HomogeneousForm.parse("X0^2", 1)])


def test_build_normalizes_common_factor():
    f = endo_build(forms("2*t*X0^2 + 2*t^2*X1^2", "2*t*X1^2"))
    g = endo_build(forms("X0^2 + t*X1^2", "X1^2"))
    assert f == g


def test_certificate_for_quadratic_family():
    cert = morphism_check(forms("X0^2 + t*X1^2", "X1^2"))
    assert cert.t0 == 1 and cert.value == 1
    assert cert.res_degree_bound == 4


def test_linear_resultant_is_one():
    assert morphism_check(forms("X0", "X1")).value == 1


def test_resultant_vanishes_identically():
    with pytest.raises(NotAMorphism):
        morphism_check(forms("X0^2", "t*X0*X1"))


def test_sylvester_by_hand():
    # Res(x^2 + y^2, y^2): Sylvester determinant of [[1,0,1,0],[0,1,0,1],[0,0,1,0],[0,0,0,1]]
    assert macaulay_resultant([{(2, 0): 1, (0, 2): 1}, {(0, 2): 1}], 1, 2) == 1


def test_resultant_matches_sympy_for_binary_forms():
    rng = random.Random(4)
    x = sympy.Symbol("x")
    for _ in range(40):
        d = rng.choice([2, 3])
        fs = []
        for _ in range(2):
            fs.append({(i, d - i): Fraction(rng.randint(-4, 4)) for i in range(d + 1)})
            fs[-1] = {m: c for m, c in fs[-1].items() if c}
        if not fs[0].get((d, 0)) or not fs[1].get((d, 0)):
            continue
        polys = [sum(c * x**m[0] for m, c in f.items()) for f in fs]
        expected = sympy.resultant(polys[0], polys[1], x)
        assert macaulay_resultant(fs, 1, d) == Fraction(int(expected))


def test_resultant_is_multiplicative_in_plane():
    # Res(a*X0^2, b*X1^2, c*X2^2) = a^4 b^4 c^4 for k = 2, d = 2
    fs = [{(2, 0, 0): Fraction(2)}, {(0, 2, 0): Fraction(3)}, {(0, 0, 2): Fraction(5)}]
    assert macaulay_resultant(fs, 2, 2) == 30**4


def test_certificate_rechecked_independently():
    rng = random.Random(8)
    for _ in range(20):
        f = random_map(rng, rng.choice([1, 2]), 2)
        cert = f.morphism_certificate
        spec = f.specialize(cert.t0)
        assert cert.value != 0
        assert not has_common_zero(spec, f.k, f.d)
        if f.k == 1:
            x = sympy.Symbol("x")
            polys = [sum(c * x**m[0] for m, c in s.items()) for s in spec]
            degs = [sympy.Poly(p, x).degree() if p != 0 else -1 for p in polys]
            if min(degs) == f.d:
                assert sympy.resultant(polys[0], polys[1], x) != 0


def test_evaluate_examples():
    f = fixed_map("quadratic_t")
    assert evaluate(f, pt(["0", "1"])) == pt(["t", "1"])
    assert evaluate(f, pt(["t", "1"])) == pt(["t^2 + t", "1"])
    g = fixed_map("power")
    assert evaluate(g, pt(["1", "0"])) == pt(["1", "0"])


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        evaluate(fixed_map("quadratic_t"), pt(["1", "0", "0"]))


def test_orbit_examples():
    f = fixed_map("quadratic_t")
    assert orbit(f, pt(["0", "1"]), 2) == [pt(["0", "1"]), pt(["t", "1"]), pt(["t^2 + t", "1"])]
    assert orbit(f, pt(["0", "1"]), 0) == [pt(["0", "1"])]
    g = fixed_map("power")
    assert orbit(g, pt(["2", "1"]), 2) == [pt(["2", "1"]), pt(["4", "1"]), pt(["16", "1"])]


def test_defect_bound_examples():
    assert height_defect_bound(fixed_map("power")) >= 0
    f = fixed_map("quadratic_t")
    x = pt(["0", "1"])
    assert evaluate(f, x).height == 1
    assert height_defect_bound(f) >= 1


@pytest.mark.parametrize("name", sorted(FIXED_MAPS))
def test_cofactor_identity_verified(name):
    f = fixed_map(name)
    assert verify_cofactor_identity(f.forms, f.identity)
    assert f.defect_bound == max(f.coeff_height, f.identity.tdegree)


def test_cofactor_identity_detects_tampering():
    f = fixed_map("mixed")
    ident = f.identity
    bad_row = tuple(dict(form) for form in ident.cofactors[0])
    mono = next(iter(bad_row[0]), None)
    if mono is None:
        bad_row[1][next(iter(bad_row[1]))] += 1
    else:
        bad_row[0][mono] = bad_row[0][mono] + 1
    tampered = type(ident)(ident.rho, (bad_row,) + ident.cofactors[1:], ident.multiplier, ident.tdegree)
    assert not verify_cofactor_identity(f.forms, tampered)


def test_cofactor_exponent_can_be_below_regularity():
    ident = cofactor_identity(forms("X0^2", "X1^2"))
    assert ident.rho == 2


@pytest.mark.parametrize("name", sorted(FIXED_MAPS))
def test_defect_soundness(name):
    f = fixed_map(name)
    rng = random.Random(hash(name) % 1000)
    c = f.defect_bound
    for _ in range(500):
        x = random_point(rng, f.k, 8)
        y = evaluate(f, x)
        assert abs(y.height - f.d * x.height) <= c


def test_defect_soundness_random_maps():
    rng = random.Random(12)
    for _ in range(40):
        f = random_map(rng, 1, rng.choice([2, 3]), rng.randint(0, 2), 3)
        for _ in range(25):
            x = random_point(rng, 1, 5)
            assert abs(evaluate(f, x).height - f.d * x.height) <= f.defect_bound


def test_evaluate_matches_sympy_oracle():
    rng = random.Random(13)
    for _ in range(60):
        k = rng.choice([1, 1, 2])
        f = random_map(rng, k, 2 if k == 2 else rng.choice([2, 3]))
        x = random_point(rng, k, 3)
        expected = oracle_image(f, oracle_point(x))
        y = evaluate(f, x)
        assert same_point(expected, y)
        assert y.height == oracle_height(expected)


def test_projectivity():
    rng = random.Random(14)
    for _ in range(60):
        f = random_map(rng, rng.choice([1, 2]), 2)
        x = random_point(rng, f.k, 4)
        lam = RationalFunc(random_unipoly(rng, rng.randint(0, 2)), random_unipoly(rng, rng.randint(0, 2)))
        scaled = pp_normalize([lam * RationalFunc(c) for c in x.coords])
        assert evaluate(f, scaled) == evaluate(f, x)


def test_specialization_compatibility():
    rng = random.Random(15)
    checked = 0
    for _ in range(60):
        f = random_map(rng, rng.choice([1, 2]), 2)
        x = random_point(rng, f.k, 3)
        t0 = Fraction(rng.randint(-7, 7), rng.randint(1, 3))
        spec = f.specialize(t0)
        if has_common_zero(spec, f.k, f.d):
            continue
        y = evaluate(f, x)
        assert projective_image(pp_specialize(y, t0)) == fiber_image(f, t0, pp_specialize(x, t0))
        checked += 1
    assert checked > 40


def test_conjugate_identity_matrix():
    f = fixed_map("mixed")
    assert conjugate(f, [[1, 0], [0, 1]]) == f


def test_conjugate_intertwines():
    rng = random.Random(16)
    for _ in range(20):
        f = random_map(rng, 1, 2)
        m = random_mobius(rng)
        g = conjugate(f, m)
        x = random_point(rng, 1, 3)
        assert pp_equals(evaluate(g, apply_linear(m, x)), apply_linear(m, evaluate(f, x)))


def test_endomorphism_pickles():
    import pickle

    f = fixed_map("plane")
    g = pickle.loads(pickle.dumps(f))
    assert g == f and g.defect_bound == f.defect_bound
