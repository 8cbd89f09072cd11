import random

import pytest

from ffheights import (
    DimensionMismatch,
    InhomogeneousInput,
    NotAMorphism,
    ProblemSyntaxError,
    ProjectivePoint,
    parse_problem,
    serialize_problem,
)
from support import random_map, random_point

MINIMAL = """\
[map]
F0 = X0^2 + t*X1^2
F1 = X1^2

[points]
origin = [0, 1]
"""


def test_minimal_file():
    prob = parse_problem(MINIMAL)
    assert (prob.k, prob.d) == (1, 2)
    assert prob.point("origin") == ProjectivePoint.parse(["0", "1"])
    assert prob.options == {}


def test_minimal_round_trip():
    prob = parse_problem(MINIMAL)
    text = serialize_problem(prob)
    assert parse_problem(text) == prob
    assert serialize_problem(parse_problem(text)) == text


def test_comments_options_and_quotes():
    prob = parse_problem(
        "# header comment\n"
        "[map]\nk = 1\nd = 2   # degree\nF0 = X0^2 + t*X1^2\nF1 = X1^2\n"
        '[points]\na = ["t^2 + 1", "t"]  # quoted\nb = [t/(t+1), 1]\n'
        "[options]\nbudget = 30\niters = 8\nmax_deg = 1\ncoeff_bound = 2\nthreads = 4\n"
    )
    assert [n for n, _ in prob.points] == ["a", "b"]
    assert prob.point("b").to_strings() == ["t", "t + 1"]
    assert prob.options == {"budget": 30, "iters": 8, "max_deg": 1, "coeff_bound": 2, "threads": 4}


def test_inhomogeneous_form_located():
    text = "[map]\nF0 = X0^2 + X1^3\nF1 = X1^2\n"
    with pytest.raises(InhomogeneousInput) as info:
        parse_problem(text)
    assert info.value.line == 2 and info.value.column >= 6


def test_degree_mismatch_between_forms():
    with pytest.raises(InhomogeneousInput) as info:
        parse_problem("[map]\nF0 = X0^2\nF1 = X1^3\n")
    assert info.value.line == 3


def test_common_zero_is_not_a_morphism():
    with pytest.raises(NotAMorphism) as info:
        parse_problem("\n[map]\nF0 = X0^2\nF1 = t*X0*X1\n")
    assert info.value.line == 2


def test_dimension_errors():
    with pytest.raises(DimensionMismatch) as info:
        parse_problem(MINIMAL + "bad = [1, 2, 3]\n")
    assert info.value.line == 7
    with pytest.raises(DimensionMismatch):
        parse_problem("[map]\nk = 2\nF0 = X0^2\nF1 = X1^2\n")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[nonsense]\n", 4, 1),
        ("F0 = X0^2\n", 1, 1),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[points]\np = 0, 1\n", 5, 5),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[options]\nbudget = lots\n", 5, 10),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[options]\nspeed = 3\n", 5, 1),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[points]\np = [1, ]\n", 5, 9),
        ("[map]\nF0 = X0^2\nF1 = X1^2\nF1 = X0^2\n", 4, 1),
        ("[map]\nF0 = X0^2\nF2 = X1^2\n", 1, 1),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[points]\np = [1, 2]\np = [0, 1]\n", 6, 1),
        ("[map]\nF0 = X0^2\nF1 = X1^2\n[points]\np\n", 5, 1),
    ],
)
def test_syntax_errors_are_located(text, line, column):
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem(text)
    assert info.value.line == line
    assert info.value.column == column
    assert f"line {line}" in str(info.value)


def test_bad_literal_inside_point_located():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("[map]\nF0 = X0^2\nF1 = X1^2\n[points]\np = [1, t^]\n")
    assert info.value.line == 5 and info.value.column >= 9


def test_random_round_trips():
    rng = random.Random(41)
    for _ in range(25):
        f = random_map(rng, rng.choice([1, 2]), 2, rng.randint(0, 2), 3)
        pts = [(f"p{i}", random_point(rng, f.k, 3)) for i in range(rng.randint(0, 3))]
        lines = ["[map]"] + [f"F{i} = {form}" for i, form in enumerate(f.forms)]
        lines += ["[points]"] + [f"{n} = [" + ", ".join(f'"{c}"' for c in p.to_strings()) + "]" for n, p in pts]
        lines += ["[options]", f"budget = {rng.randint(1, 40)}"]
        prob = parse_problem("\n".join(lines))
        assert prob.map == f and prob.points == pts
        again = parse_problem(serialize_problem(prob))
        assert again == prob
