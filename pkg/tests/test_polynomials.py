import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from vvforms.forms import BilinearForm, DimensionError, det
from vvforms.polynomials import (
    SparsePolynomial,
    VariableMismatch,
    discriminant,
    form_variables,
    pencil_determinant,
    poly_equal,
)

from conftest import parse_pretty
from oracles import det2

GOLDEN = Path(__file__).parent / "golden"
VARS = ("x", "y", "z")

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monomial = st.tuples(*(st.integers(0, 3) for _ in VARS))
polys = st.dictionaries(monomial, coef, max_size=5).map(lambda d: SparsePolynomial(VARS, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(p, q, s):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + s == p + (q + s)
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert (p - p).is_zero()
    assert p * 1 == p and (p * 0).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.tuples(coef, coef, coef))
def test_evaluation_is_a_homomorphism(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


@settings(max_examples=40, deadline=None)
@given(polys)
def test_json_round_trip(p):
    assert SparsePolynomial.from_json(p.to_json()) == p


def test_pretty_and_parse_round_trip(golden_f23):
    assert parse_pretty(golden_f23.pretty()) == golden_f23
    assert SparsePolynomial.zero(form_variables(2, 2)).pretty() == "0"


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        SparsePolynomial.variable(("x",), "x") + SparsePolynomial.variable(("y",), "y")


def test_pow_and_degree():
    x = SparsePolynomial.variable(VARS, "x")
    y = SparsePolynomial.variable(VARS, "y")
    p = (x + y) ** 3
    assert p.degree() == 3 and p.is_homogeneous(3) and len(p) == 4
    assert p.coefficient((2, 1, 0)) == 3


def test_pencil_matches_golden():
    lines = dict(line.split(": ", 1) for line in GOLDEN.joinpath("pencil.txt").read_text().strip().splitlines())
    q = pencil_determinant()
    assert q.A == parse_pretty(lines["x^2"])
    assert q.Bc == parse_pretty(lines["xy"])
    assert q.C == parse_pretty(lines["y^2"])


def test_pencil_examples():
    q = pencil_determinant(BilinearForm(2, 2, (((1, 0), (0, -1)), ((0, 1), (1, 0)))))
    # det(x B1 + y B2) = -x^2 - y^2
    assert q.A.evaluate([0] * 8) == -1 and q.Bc.is_zero() and q.C.evaluate([0] * 8) == -1
    q = pencil_determinant(BilinearForm(2, 2, (((1, 0), (0, 0)), ((0, 0), (0, 1)))))
    assert q.Bc.evaluate([0] * 8) == 1 and q.A.is_zero() and q.C.is_zero()
    assert discriminant(q).evaluate([0] * 8) == 1
    q = pencil_determinant(BilinearForm(2, 2, (((1, 0), (0, 1)), ((0, 0), (0, 0)))))
    assert q.A.evaluate([0] * 8) == 1 and q.Bc.is_zero() and q.C.is_zero()
    # x^2 - y^2 has discriminant 4
    q = pencil_determinant(BilinearForm(2, 2, (((1, 0), (0, 1)), ((1, 0), (0, -1)))))
    assert (q.A.evaluate([0] * 8), q.Bc.evaluate([0] * 8), q.C.evaluate([0] * 8)) == (1, 0, -1)
    assert discriminant(q).evaluate([0] * 8) == 4


def test_pencil_dimension_error():
    with pytest.raises(DimensionError):
        pencil_determinant(BilinearForm(3, 2, tuple(((0,) * 3,) * 3 for _ in range(2))))


def test_pencil_numeric_agreement():
    rng = random.Random(3)
    q = pencil_determinant()
    for _ in range(20):
        vals = [Fraction(rng.randint(-5, 5)) for _ in range(8)]
        b1, b2 = [[vals[0], vals[1]], [vals[2], vals[3]]], [[vals[4], vals[5]], [vals[6], vals[7]]]
        x, y = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        m = [[x * b1[i][j] + y * b2[i][j] for j in range(2)] for i in range(2)]
        assert q.at(x, y).evaluate(vals) == det2(m)


def test_discriminant_equals_invariant(golden_f23):
    assert discriminant(pencil_determinant()) == golden_f23 * Fraction(-1, 2)


def test_discriminant_covariance():
    rng = random.Random(8)
    disc = discriminant(pencil_determinant())
    for _ in range(10):
        form = BilinearForm(2, 2, tuple(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(2)) for _ in range(2)))
        a = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if not det(a):
            continue
        before = disc.evaluate(form.values())
        after = disc.evaluate(form.transform(a, [[1, 0], [0, 1]]).values())
        assert after * det(a) ** 4 == before


def test_poly_equal():
    v = form_variables(2, 1)
    b = SparsePolynomial.variable(v, "b[1][1][2]")
    c = SparsePolynomial.variable(v, "b[1][2][1]")
    assert poly_equal(b - c, -(c - b))
    assert not poly_equal(b - c, c - b)
