"""Polynomial arithmetic, resultants, roots, Dickson and Legendre families."""

import random

import pytest

from hypercount import polys
from hypercount.errors import (DivisionByZero, IndexTooLargeForCharacteristic,
                               ZeroPolynomial)
from hypercount.fields import make_extension, make_prime_field


def _p(F, *ints):
    return [F.coerce(v) for v in ints]


def test_mul_and_eval():
    F = make_prime_field(7)
    prod = polys.mul(F, _p(F, 1, 1), _p(F, -1, 1))  # (x+1)(x-1)
    assert prod == _p(F, 6, 0, 1)
    assert polys.evaluate(F, prod, F.from_int(3)) == F.from_int(1)


def test_divmod_gcd():
    F = make_prime_field(13)
    f = polys.mul(F, _p(F, 2, 1), _p(F, 5, 0, 1))
    q, r = polys.divmod_poly(F, f, _p(F, 2, 1))
    assert r == [] and q == _p(F, 5, 0, 1)
    with pytest.raises(DivisionByZero):
        polys.divmod_poly(F, f, [])
    g = polys.mul(F, _p(F, 2, 1), _p(F, 1, 1))
    assert polys.gcd_poly(F, f, g) == _p(F, 2, 1)  # monic gcd
    # gcd with zero normalizes the other argument to monic
    assert polys.gcd_poly(F, polys.scale(F, f, F.from_int(3)), []) \
        == polys.monic(F, f)


def test_xgcd_identity():
    F = make_prime_field(11)
    rng = random.Random(1)
    for _ in range(10):
        f = [F.rand(rng) for _ in range(4)] + [F.one]
        g = [F.rand(rng) for _ in range(3)] + [F.one]
        d, u, v = polys.xgcd_poly(F, f, g)
        lhs = polys.add(F, polys.mul(F, u, f), polys.mul(F, v, g))
        assert lhs == d


def test_resultant_degree_one_is_evaluation():
    F = make_prime_field(101)
    g = _p(F, 3, 0, 1, 2)
    for a in (0, 5, 17):
        res = polys.resultant(F, _p(F, -a, 1), g)
        assert res == polys.evaluate(F, g, F.from_int(a))


def test_resultant_vanishes_iff_common_root():
    F = make_prime_field(13)
    f = polys.mul(F, _p(F, -2, 1), _p(F, 1, 1))
    g = polys.mul(F, _p(F, -2, 1), _p(F, 4, 1))
    assert polys.resultant(F, f, g) == F.zero
    assert polys.resultant(F, _p(F, 1, 1), _p(F, 4, 1)) != F.zero
    with pytest.raises(ZeroPolynomial):
        polys.resultant(F, [], f)


def _sylvester_det(F, f, g):
    """Determinant of the Sylvester matrix by Gaussian elimination."""
    n, m = polys.degree(f), polys.degree(g)
    size = n + m
    M = [[F.zero] * size for _ in range(size)]
    for i in range(m):
        for j, c in enumerate(reversed(f)):
            M[i][i + j] = c
    for i in range(n):
        for j, c in enumerate(reversed(g)):
            M[m + i][i + j] = c
    det = F.one
    for col in range(size):
        piv = next((r for r in range(col, size) if M[r][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = F.neg(det)
        det = F.mul(det, M[col][col])
        inv = F.inv(M[col][col])
        for r in range(col + 1, size):
            factor = F.mul(M[r][col], inv)
            if factor == F.zero:
                continue
            for c in range(col, size):
                M[r][c] = F.sub(M[r][c], F.mul(factor, M[col][c]))
    return det


def test_resultant_matches_sylvester_oracle():
    F = make_prime_field(101)
    rng = random.Random(2)
    for _ in range(10):
        f = [F.rand(rng) for _ in range(3)] + [F.one]
        g = [F.rand(rng) for _ in range(3)] + [F.one]
        assert polys.resultant(F, f, g) == _sylvester_det(F, f, g)


def test_resultant_swap_sign():
    F = make_prime_field(101)
    rng = random.Random(3)
    for _ in range(8):
        f = [F.rand(rng) for _ in range(rng.randrange(1, 4))] + [F.one]
        g = [F.rand(rng) for _ in range(rng.randrange(1, 4))] + [F.one]
        sign = (-1) ** (polys.degree(f) * polys.degree(g))
        lhs = polys.resultant(F, f, g)
        rhs = polys.resultant(F, g, f)
        assert lhs == (rhs if sign == 1 else F.neg(rhs))


def test_roots_in_prime_field():
    F = make_prime_field(7)
    assert polys.roots_in_prime_field(F, _p(F, -1, 0, 1)) == [1, 6]
    assert polys.roots_in_prime_field(F, _p(F, 1, 0, 1)) == []
    # construct-then-solve with a repeated factor thrown in
    F101 = make_prime_field(101)
    want = [3, 17, 44, 90]
    f = [F101.one]
    for r in want + [17]:
        f = polys.mul(F101, f, _p(F101, -r, 1))
    assert polys.roots_in_prime_field(F101, f) == want


def test_roots_in_extension_field():
    F = make_prime_field(7)
    K = make_extension(F, 2)
    # x^2 + 1 has no roots mod 7 but splits over F_49
    f = [K.one, K.zero, K.one]
    rs = polys.roots_in_field(K, f)
    assert len(rs) == 2
    for r in rs:
        assert K.add(K.mul(r, r), K.one) == K.zero


def test_dickson_small_and_identity():
    F = make_prime_field(13)
    alpha = F.from_int(5)
    d2 = polys.dickson(F, 2, alpha)
    assert d2 == [F.neg(F.add(alpha, alpha)), F.zero, F.one]  # x^2 - 2 alpha
    # D_g(t + alpha/t) = t^g + (alpha/t)^g
    rng = random.Random(4)
    for g in (2, 3, 4, 5, 7):
        dg = polys.dickson(F, g, alpha)
        for _ in range(10):
            t = F.rand(rng)
            if t == F.zero:
                continue
            u = F.add(t, F.div(alpha, t))
            lhs = polys.evaluate(F, dg, u)
            rhs = F.add(F.pow(t, g), F.pow(F.div(alpha, t), g))
            assert lhs == rhs


def test_dickson_matches_quotient_bracket():
    # D_4(x, b^(1/4)) = x^4 - 4 b^(1/4) x^2 + 2 sqrt(b)
    F = make_prime_field(17)
    for b4 in (2, 3, 5):
        alpha = F.from_int(b4)
        sqrtb = F.mul(alpha, alpha)
        d4 = polys.dickson(F, 4, alpha)
        want = [F.add(sqrtb, sqrtb), F.zero,
                F.neg(F.from_int(4 * b4)), F.zero, F.one]
        assert d4 == want


def test_legendre_eval_basics():
    F = make_prime_field(101)
    x = F.from_int(3)
    assert polys.legendre_eval(F, 0, x) == F.one
    assert polys.legendre_eval(F, 1, x) == x
    # P_2(3) = (3*9 - 1)/2 = 13
    assert polys.legendre_eval(F, 2, x) == F.from_int(13)
    with pytest.raises(IndexTooLargeForCharacteristic):
        polys.legendre_eval(F, 101, x)


def test_legendre_eval_matches_coefficient_oracle():
    for p in (101, 103):
        F = make_prime_field(p)
        rng = random.Random(5)
        for m in list(range(0, 65, 7)) + [64]:
            oracle = polys.legendre_coeff_oracle(F, m)
            for _ in range(8):
                x = F.rand(rng)
                assert polys.legendre_eval(F, m, x) == \
                    polys.evaluate(F, oracle, x)


def test_squarefree_and_derivative():
    F = make_prime_field(7)
    f = polys.mul(F, _p(F, 1, 1), _p(F, 1, 1))
    assert not polys.is_squarefree(F, f)
    assert polys.is_squarefree(F, _p(F, 6, 0, 1))
    assert polys.derivative(F, _p(F, 4, 0, 1)) == _p(F, 0, 2)


def test_int_poly_mul():
    assert polys._int_poly_mul([1, 2], [3, 4]) == [3, 10, 8]
    assert polys._int_poly_mul([7, -1, 1], [7, -1, 1]) == [49, -14, 15, -2, 1]
