import random

import pytest

from toricgkm.gkm import divisible_H, divisible_K, laurent_divides
from toricgkm.laurent import (
    GradedPolynomial,
    LaurentPolynomial,
    euler_class_H,
    euler_class_K,
)
from toricgkm.zlinalg import ZeroVector

from oracles import multiply, primitive_vectors, quotient_by_euler_class, quotient_by_linear_form


def rand_poly(rng, n, terms=4, lo=-2, hi=2):
    return {tuple(rng.randint(lo, hi) for _ in range(n)): rng.choice((-2, -1, 1, 2)) for _ in range(terms)}


def test_ring_axioms():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 3)
        f, g, h = (LaurentPolynomial(n, rand_poly(rng, n)) for _ in range(3))
        assert f * (g + h) == f * g + f * h
        assert (f * g) * h == f * (g * h)
        assert f - f == LaurentPolynomial.zero(n)
        assert f * g == g * f
        assert (f * g).terms == multiply(f.terms, g.terms)


def test_no_zero_coefficients_and_equality():
    f = LaurentPolynomial(2, [((1, 0), 2), ((1, 0), -2), ((0, -1), 1)])
    assert f.terms == {(0, -1): 1}
    assert f == LaurentPolynomial.monomial((0, -1))
    assert hash(f) == hash(LaurentPolynomial.monomial((0, -1)))
    assert LaurentPolynomial.from_terms(2, f.to_terms()) == f


def test_graded_rejects_negative_exponents():
    with pytest.raises(ValueError):
        GradedPolynomial(1, {(-1,): 1})


def test_euler_classes():
    assert euler_class_K((1, 0)).terms == {(0, 0): 1, (-1, 0): -1}
    assert euler_class_K((1, -1)).terms == {(0, 0): 1, (-1, 1): -1}
    assert euler_class_K((0, 1)).terms == {(0, 0): 1, (0, -1): -1}
    assert euler_class_H((2, -1)).terms == {(1, 0): 2, (0, 1): -1}
    with pytest.raises(ZeroVector):
        euler_class_K((0, 0))


def test_divides_examples():
    x1 = LaurentPolynomial.variable(1, 0)
    one = LaurentPolynomial.constant(1, 1)
    assert laurent_divides(euler_class_K((1,)), one - x1)
    assert not laurent_divides(euler_class_K((1,)), one)
    y1, y2 = LaurentPolynomial.variable(2, 0), LaurentPolynomial.variable(2, 1)
    assert laurent_divides(euler_class_K((1, -1)), y1 - y2)
    with pytest.raises(ValueError):
        laurent_divides(one + x1, one)


def test_oracle_examples():
    assert quotient_by_euler_class({(0,): 1, (1,): -1}, (1,)) == {(1,): -1}
    assert quotient_by_euler_class({(0,): 1}, (1,)) is None
    assert quotient_by_linear_form({(1, 1): 1}, (1, 0)) == {(0, 1): 1}
    assert quotient_by_linear_form({(0, 1): 1}, (1, 0)) is None


def test_K_divisibility_agrees_with_quotient_search():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 3)
        u = rng.choice(primitive_vectors(n, 2))
        if rng.random() < 0.5:
            f = rand_poly(rng, n)
        else:
            f = multiply({(0,) * n: 1, tuple(-a for a in u): -1}, rand_poly(rng, n, 2, -1, 1))
        expect = quotient_by_euler_class(f, u) is not None
        p = LaurentPolynomial(n, f)
        assert divisible_K(p, u) == expect
        assert divisible_K(p, [-a for a in u]) == expect


def test_H_divisibility_agrees_with_quotient_search():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(1, 3)
        u = rng.choice(primitive_vectors(n, 2))
        g = rand_poly(rng, n, 3, 0, 2)
        f = multiply(euler_class_H(u).terms, g) if rng.random() < 0.5 else g
        expect = quotient_by_linear_form(f, u) is not None
        p = GradedPolynomial(n, f)
        assert divisible_H(p, u) == expect
        assert divisible_H(p, [-a for a in u]) == expect
