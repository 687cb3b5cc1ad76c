"""Extension and descent of L-polynomials, with the genus-4 closed form."""

import random

import pytest

from hypercount import polys
from hypercount.curves import LPoly, curve_from_ab, zeta_oracle
from hypercount.descent import (CandidateSet, _chi_from_real, _compose_int,
                                _degree_g_products, _dickson_int, _factor_mod,
                                _order_check_prune, _real_weil_poly,
                                a1_elimination_coeffs, extend_lpoly,
                                generic_descend, genus2_twist_combine,
                                genus3_descend_mod_p, genus4_descend,
                                weil_filter)
from hypercount.errors import (AmbiguousResult, EmptyAfterFilter,
                               NoCandidateSurvives, NoSolution, NotPrimeField)
from hypercount.fields import make_extension, make_prime_field


def test_extend_lpoly_elliptic_closed_form():
    # g = 1: a1 over q^2 is 2q - a1^2
    L = LPoly(5, 1, (-2,))
    assert extend_lpoly(L, 2).a == (2 * 5 - 4,)
    assert extend_lpoly(L, 1) == L
    with pytest.raises(ValueError):
        extend_lpoly(L, 0)


def test_extend_lpoly_matches_direct_oracle():
    # the heavyweight g = 3, k = 3 combination runs in the acceptance suite
    cases = ((2, 5, 2), (2, 7, 2), (2, 5, 3), (2, 13, 2), (3, 5, 2))
    rng = random.Random(8)
    for g, p, k in cases:
        F = make_prime_field(p)
        while True:
            a, b = rng.randrange(p), rng.randrange(1, p)
            if (a * a - 4 * b) % p:
                break
        C = curve_from_ab(F, g, a, b)
        lifted = extend_lpoly(zeta_oracle(C), k)
        assert lifted == zeta_oracle(C.base_extend(k))


def test_weil_filter_drops_violators():
    F = make_prime_field(7)
    C = curve_from_ab(F, 2, 1, 4)
    true = zeta_oracle(C).a
    cands = CandidateSet(7, 2, [true, (100, 0), (-10, -45)])
    kept = weil_filter(cands)
    assert true in kept.tuples
    assert (100, 0) not in kept.tuples       # a1 past the Weil box
    assert (-10, -45) not in kept.tuples     # L(1) <= 0
    with pytest.raises(EmptyAfterFilter):
        weil_filter(CandidateSet(7, 2, [(100, 0)]))


def test_order_check_prune_kills_off_by_one():
    F = make_prime_field(7)
    C = curve_from_ab(F, 2, 1, 4)
    true = zeta_oracle(C).a
    # order of the fake differs from the true order by exactly 1, so it
    # cannot be a multiple of the group exponent
    fake = (true[0], true[1] + 1)
    cs = _order_check_prune(CandidateSet(7, 2, [true, fake]), C, 6, 42)
    assert cs.tuples == [true]


def test_candidate_set_plumbing():
    cs = CandidateSet(49, 2, [(1, 2), (3, 4)], ["x", "y"])
    assert len(cs) == 2 and cs.status == "ambiguous"
    j = cs.to_json()
    assert j["candidates"] == [["1", "2"], ["3", "4"]]
    assert CandidateSet(49, 2, [(1, 2)]).status == "unique"
    with pytest.raises(ValueError):
        CandidateSet(49, 2, [(1, 2)], ["a", "b"])


def _lpoly_product_tail(b1, b2, q, twisted):
    """Coefficients 1..4 of L(T) * L(+-T) multiplied out directly."""
    L = [1, b1, b2, q * b1, q * q]
    M = [c if i % 2 == 0 else (-c if twisted else c) for i, c in enumerate(L)]
    return tuple(polys._int_poly_mul(L, M)[1:5])


def test_genus2_twist_combine_is_lpoly_product():
    for (b1, b2, q) in ((3, -2, 9), (-5, 7, 25), (0, 4, 49), (2, 2, 121)):
        assert genus2_twist_combine(b1, b2, q, True) == \
            _lpoly_product_tail(b1, b2, q, False)
        assert genus2_twist_combine(b1, b2, q, False) == \
            _lpoly_product_tail(b1, b2, q, True)


def test_genus3_descend_mod_p_recovers_pairs():
    F = make_prime_field(13)
    rng = random.Random(6)
    for _ in range(10):
        b1, b2 = F.el(rng.randrange(13)), F.el(rng.randrange(13))
        pairs = genus3_descend_mod_p(b1 * b1 - b2 - b2, b2 * b2)
        assert (b1, b2) in pairs and len(pairs) <= 4
        for (c1, c2) in pairs:
            assert c1 * c1 - c2 - c2 == b1 * b1 - b2 - b2
            assert c2 * c2 == b2 * b2
    ns = next(v for v in range(2, 13) if F.legendre(v) == -1)
    with pytest.raises(NoSolution):
        genus3_descend_mod_p(F.el(1), F.el(ns))
    K = make_extension(F, 2)
    with pytest.raises(NotPrimeField):
        genus3_descend_mod_p(K.el(K.from_int(1)), K.el(K.from_int(1)))


def test_a1_elimination_polynomial_has_a1_root():
    rng = random.Random(9)
    for p in (7, 11, 13):
        F = make_prime_field(p)
        for _ in range(3):
            a, b = rng.randrange(p), rng.randrange(1, p)
            if (a * a - 4 * b) % p == 0:
                continue
            C = curve_from_ab(F, 4, a, b)
            L = zeta_oracle(C)
            L2 = extend_lpoly(L, 2)
            cs = a1_elimination_coeffs(*L2.a, p)
            a1 = L.a[0]
            val = a1 ** 16 + sum(c * a1 ** (2 * i) for i, c in enumerate(cs))
            assert val == 0


def test_genus4_descend_roundtrip():
    rng = random.Random(10)
    for p in (7, 13):
        F = make_prime_field(p)
        done = 0
        while done < 3:
            a, b = rng.randrange(p), rng.randrange(1, p)
            if (a * a - 4 * b) % p == 0:
                continue
            C = curve_from_ab(F, 4, a, b)
            L = zeta_oracle(C)
            L2 = extend_lpoly(L, 2)
            try:
                assert genus4_descend(*L2.a, p, C) == L.a
            except AmbiguousResult as e:
                assert L.a in e.candidates
            done += 1


def test_genus4_descend_known_ambiguous_case():
    F = make_prime_field(11)
    C = curve_from_ab(F, 4, 1, 1)
    L = zeta_oracle(C)
    assert L.a == (0, 12, 0, 278)
    L2 = extend_lpoly(L, 2)
    with pytest.raises(AmbiguousResult) as exc:
        genus4_descend(*L2.a, 11, C)
    cands = exc.value.candidates
    assert (0, 12, 0, 278) in cands and len(cands) == 3


def test_genus4_descend_rejects_garbage():
    F = make_prime_field(7)
    C = curve_from_ab(F, 4, 1, 3)
    L2 = extend_lpoly(zeta_oracle(C), 2)
    assert L2.a == (48, 1056, 13872, 118850)
    with pytest.raises(NoCandidateSurvives):
        genus4_descend(L2.a[0], L2.a[1] + 2, L2.a[2], L2.a[3], 7, C)
    with pytest.raises(ValueError):
        genus4_descend(*L2.a, 49, C)  # curve lives over F_7, not F_49


def test_real_weil_poly_roundtrip():
    rng = random.Random(12)
    for p, g in ((7, 2), (11, 3), (7, 4)):
        F = make_prime_field(p)
        while True:
            a, b = rng.randrange(p), rng.randrange(1, p)
            if (a * a - 4 * b) % p:
                break
        L = zeta_oracle(curve_from_ab(F, g, a, b))
        h = _real_weil_poly(L)
        assert len(h) == g + 1 and h[-1] == 1
        assert _chi_from_real(h, p) == L.chi_coeffs()


def test_dickson_int_matches_field_dickson():
    F = make_prime_field(101)
    for n in (1, 2, 3, 5, 8):
        for alpha in (2, 7):
            want = polys.dickson(F, n, F.from_int(alpha))
            got = [F.coerce(c) for c in _dickson_int(n, alpha)]
            assert got == want
    assert _compose_int([1, 0, 1], [0, 0, 1]) == [1, 0, 0, 0, 1]


def test_factor_mod_and_products():
    F = make_prime_field(103)  # -1 is a nonsquare, so x^2 + 1 stays prime
    f = polys.mul(F, [1, 0, 1], polys.mul(F, [3, 1], polys.mul(F, [3, 1],
                                                               [5, 1])))
    factors = _factor_mod(F, f, seed=42)
    assert sorted((polys.degree(irr), m) for irr, m in factors) == \
        [(1, 1), (1, 2), (2, 1)]
    rebuilt = [F.one]
    for irr, m in factors:
        for _ in range(m):
            rebuilt = polys.mul(F, rebuilt, irr)
    assert rebuilt == f
    prods = _degree_g_products(F, factors, 2, 10_000)
    assert len(prods) == 3 and all(polys.degree(t) == 2 for t in prods)
    assert _degree_g_products(F, factors, 2, 1) is None


def test_generic_descend_roundtrip():
    cases = ((2, 11, 2), (2, 7, 3), (3, 5, 2), (3, 5, 3))
    rng = random.Random(14)
    for g, p, k in cases:
        F = make_prime_field(p)
        while True:
            a, b = rng.randrange(p), rng.randrange(1, p)
            if (a * a - 4 * b) % p:
                break
        C = curve_from_ab(F, g, a, b)
        L = zeta_oracle(C)
        cs = generic_descend(extend_lpoly(L, k), k, C)
        assert L.a in cs.tuples
        if cs.status == "unique":
            assert cs.tuples == [L.a]


def test_generic_descend_without_curve():
    F = make_prime_field(11)
    C = curve_from_ab(F, 2, 3, 4)
    L = zeta_oracle(C)
    cs = generic_descend(extend_lpoly(L, 2), 2, None)
    assert L.a in cs.tuples  # no order checks, so possibly several


def test_generic_descend_identity_and_errors():
    L = LPoly(9, 2, (1, 2))
    cs = generic_descend(L, 1, None)
    assert cs.tuples == [(1, 2)] and cs.status == "unique"
    with pytest.raises(ValueError):
        generic_descend(LPoly(7, 2, (1, 2)), 2, None)  # 7 not a square
