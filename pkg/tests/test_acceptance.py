"""Acceptance criteria, one test per criterion (named ``test_criterion_N_*``)."""

import random
import time
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import pytest

from vvforms.forms import BilinearForm, det
from vvforms.invariants import (
    GeneratorId,
    NoInvariantsError,
    canonicalize,
    contract_power,
    count_distinct,
    enumerate_distinct,
    evaluate_polynomial,
    generator_tensor,
    weight_check,
)
from vvforms.permutations import Permutation
from vvforms.polynomials import discriminant, pencil_determinant
from vvforms.relations import (
    ShuffleSpec,
    VGen,
    combined_relation,
    kernel_span_check,
    random_shuffle_spec,
    typeA_relation,
    typeB_relation,
)
from vvforms.tensor_space import V, WDUAL, build_v, build_w, interleave, symmetrize

from conftest import P, golden, parse_pretty, signed_terms

GOLDEN_DIR = Path(__file__).parent / "golden"


def sigma_relation():
    return typeB_relation(2, 4, ShuffleSpec(Permutation.identity(4), (1, 2, 3)))


def test_criterion_1_small_expansions():
    data = golden("small_expansions.json")
    start = time.perf_counter()
    built = [
        build_v(2, 1, Permutation.identity(2)),
        build_v(2, 2, Permutation.identity(4)),
        build_v(2, 2, P("(23)", 4)),
    ]
    elapsed = time.perf_counter() - start
    keys = ["v_2_1_identity", "v_2_2_identity", "v_2_2_(23)"]
    for t, key in zip(built, keys):
        expected = signed_terms(data[key])
        assert t.entries == expected
    assert elapsed / 3 < 1e-3


def test_criterion_2_b_minus_c():
    poly = evaluate_polynomial(GeneratorId.parse(2, 1, 1, "(1)", "(1)"))
    assert poly == parse_pretty("b^1_12 - b^1_21", 2, 1)


def test_criterion_3_sigma_relation():
    cert = sigma_relation()
    assert [(c, str(t.eta)) for c, t in cert.terms] == [(1, "(1)"), (-1, "(23)"), (1, "(132)")]
    total = cert.expand()
    assert total.is_zero() and cert.verified
    assert [ax.dim for ax in total.profile] == [2] * 4  # 2^4 = 16 coordinates
    groups = golden("sigma_groups.json")["groups"]
    union = {}
    for (coef, term), group in zip(cert.terms, groups):
        assert str(term.eta) == group["eta"] and coef == group["coef"]
        displayed = signed_terms(group["terms"])
        assert term.tensor().scale(coef).entries == displayed
        for idx, s in displayed.items():
            union[idx] = union.get(idx, 0) + s
    assert sum(len(g["terms"]) for g in groups) == 12
    assert not any(union.values())


def test_criterion_4_block_sign_criterion():
    a = canonicalize(GeneratorId.parse(2, 2, 4, "(1)", "(123)"))
    b = canonicalize(GeneratorId.parse(2, 2, 4, "(1)", "(23)"))
    assert a.w_blocks == b.w_blocks and a.sign == -b.sign
    assert build_w(2, 4, P("(123)", 4)) == -build_w(2, 4, P("(23)", 4))
    # the worked table of inverse images
    sigma_inv = P("(123)", 4).inverse()
    tau_inv = P("(23)", 4).inverse()
    assert [sigma_inv(i) for i in range(1, 5)] == [3, 1, 2, 4]
    assert [tau_inv(i) for i in range(1, 5)] == [1, 3, 2, 4]
    first_s, first_t = (sigma_inv(1), sigma_inv(2)), (tau_inv(1), tau_inv(2))
    assert set(first_s) == set(first_t) and first_s != first_t  # odd rearrangement
    assert (sigma_inv(3), sigma_inv(4)) == (tau_inv(3), tau_inv(4))  # identical


def test_criterion_5_v_23_67_and_sigma():
    start = time.perf_counter()
    v = build_v(2, 4, P("(23)(67)", 8))
    expected = signed_terms(golden("v_23_67.json")["terms"])
    assert v.entries == expected and len(v) == 16
    comb = combined_relation(VGen(2, 4, P("(23)(67)", 8)), sigma_relation())
    total = comb.expand()
    assert total.is_zero() and comb.verified
    assert [ax.kind for ax in total.profile] == [V] * 8 + [WDUAL] * 4
    assert all(ax.dim == 2 for ax in total.profile)
    assert time.perf_counter() - start < 1.0


def test_criterion_6_worked_polynomials(golden_f23):
    start = time.perf_counter()
    f1 = evaluate_polynomial(GeneratorId.parse(2, 2, 4, "(23)(67)", "(1)"))
    f23 = evaluate_polynomial(GeneratorId.parse(2, 2, 4, "(23)(67)", "(23)"))
    f132 = evaluate_polynomial(GeneratorId.parse(2, 2, 4, "(23)(67)", "(132)"))
    elapsed = time.perf_counter() - start
    assert f1.is_zero()
    assert f23 == golden_f23
    display = golden("f_23_67__23.json")["terms"]
    assert [c for c, _ in display] == [4, 4, -8, -8, 4, 4, -2, -2, 4, -2, -2, 4]
    assert f132 == f23
    assert elapsed < 1.0


def test_criterion_7_pencil_and_discriminant():
    lines = dict(line.split(": ", 1) for line in (GOLDEN_DIR / "pencil.txt").read_text().strip().splitlines())
    q = pencil_determinant()
    assert (q.A, q.Bc, q.C) == tuple(parse_pretty(lines[key]) for key in ("x^2", "xy", "y^2"))
    f23 = evaluate_polynomial(GeneratorId.parse(2, 2, 4, "(23)(67)", "(23)"))
    assert discriminant(q) == f23 * Fraction(-1, 2)


def test_criterion_8_r2_degeneracy():
    for sigma in ("(1)", "(23)", "(132)"):
        assert evaluate_polynomial(GeneratorId.parse(2, 2, 2, sigma, "(1)")).is_zero()


def test_criterion_9_symmetrizer_kernel():
    g = GeneratorId.parse(2, 2, 4, "(23)(67)", "(1)")
    assert symmetrize(interleave(generator_tensor(g))).is_zero()
    for images in permutations(range(1, 5)):
        assert symmetrize(build_w(2, 4, Permutation(images))).is_zero()


def test_criterion_10_existence_gate():
    for n in range(1, 5):
        for k in range(1, 5):
            for r in range(1, 7):
                expected = (2 * r) % n == 0 and r % k == 0
                if expected:
                    forms = enumerate_distinct(n, k, r)
                    assert len(forms) == count_distinct(n, k, r) > 0
                else:
                    with pytest.raises(NoInvariantsError, match="no invariants"):
                        enumerate_distinct(n, k, r)


def test_criterion_11_relations_span_kernel():
    start = time.perf_counter()
    for n, k, r in [(2, 1, 1), (2, 1, 2), (2, 2, 2)]:
        report = kernel_span_check(n, k, r)
        assert report.spanned and report.deficit == 0 and report.relations_in_kernel
    assert time.perf_counter() - start < 10.0


def _random_form(n, k, rng):
    return BilinearForm(
        n, k, tuple(tuple(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)) for _ in range(n)) for _ in range(k))
    )


def _random_invertible(size, rng):
    while True:
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
        if det(m):
            return m


def _random_perm(m, rng):
    return Permutation(tuple(rng.sample(range(1, m + 1), m)))


def test_criterion_12_property_suite():
    start = time.perf_counter()
    rng = random.Random(20240601)
    for i in range(1000):
        if i % 2:
            cert = typeA_relation(2, 4, random_shuffle_spec(8, 3, rng))
        else:
            cert = typeB_relation(2, 4, random_shuffle_spec(4, 3, rng))
        assert cert.verified and cert.expand().is_zero()
    sizes = [(2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 2, 4), (3, 3, 3)]
    for i in range(100):
        n, k, r = sizes[i % len(sizes)]
        g = GeneratorId(n, k, r, _random_perm(2 * r, rng), _random_perm(r, rng))
        assert weight_check(g, _random_form(n, k, rng), _random_invertible(n, rng), _random_invertible(k, rng))
    for _ in range(50):
        g = GeneratorId(2, 2, 4, _random_perm(8, rng), _random_perm(4, rng))
        assert evaluate_polynomial(g) == contract_power(generator_tensor(g), 2, 2, 4)
    assert time.perf_counter() - start < 60.0
