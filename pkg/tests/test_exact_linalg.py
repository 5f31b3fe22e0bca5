import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from vvforms.exact_linalg import RationalMatrix, SpanTracker, in_span, kernel_basis, rank

from oracles import dense_rank


def test_rank_examples():
    assert rank(RationalMatrix.identity(5)) == 5
    assert rank(RationalMatrix.from_dense([[1, 1, 0], [0, 1, 1]])) == 2
    assert rank(RationalMatrix.from_dense([[0, 0], [0, 0]])) == 0
    assert rank(RationalMatrix.from_dense([[Fraction(1, 2), 1], [1, 2], [3, 6]])) == 1


def test_kernel_examples():
    m = RationalMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    assert kernel_basis(m) == [[1, -1, 1]]
    assert kernel_basis(RationalMatrix.identity(4)) == []
    ker = kernel_basis(RationalMatrix.from_dense([[1, 1, 1]]))
    assert len(ker) == 2 and all(sum(v) == 0 for v in ker)


def test_in_span_examples():
    basis = [[1, 0, 1], [0, 1, 1]]
    assert in_span([2, 3, 5], basis)
    assert not in_span([0, 0, 1], basis)
    assert in_span([0, 0, 0], [])
    assert in_span([Fraction(1, 3), 0, Fraction(1, 3)], basis)


def test_span_tracker():
    s = SpanTracker(3)
    assert s.add({0: 1, 2: 1})
    assert not s.add({0: 2, 2: 2})
    assert s.add({1: 1})
    assert s.contains({0: 1, 1: 5, 2: 1})
    assert not s.contains({2: 1})
    assert s.rank == 2 and len(s.basis()) == 2


matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=6)
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_nullity_against_oracle(data):
    m = RationalMatrix.from_dense(data)
    r = rank(m)
    assert r == dense_rank(data)
    ker = kernel_basis(m)
    assert r + len(ker) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert rank(m.transpose()) == r


def test_random_span_membership():
    rng = random.Random(2)
    for _ in range(30):
        basis = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(3)]
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]
        v = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(5)]
        assert in_span(v, basis)
        r = dense_rank(basis)
        extra = [rng.randint(-2, 2) for _ in range(5)]
        assert in_span(extra, basis) == (dense_rank(basis + [extra]) == r)
