"""Dense univariate polynomial arithmetic over a field context.

A polynomial is a plain list of raw field elements in ascending degree with no
trailing zeros; the zero polynomial is the empty list. Every function takes
the field context F first and never mutates its arguments. F only needs the
raw-element protocol (zero/one, add/sub/neg/mul/inv, from_int, p, k, q), so
these routines work over F_p and any extension alike.
"""

import random

from .config import DEFAULT_SEED
from .errors import (DivisionByZero, IndexTooLargeForCharacteristic,
                     InternalError, ZeroPolynomial)


def trim(F, f):
    n = len(f)
    while n > 0 and f[n - 1] == F.zero:
        n -= 1
    return list(f[:n])


def degree(f):
    # zero polynomial has degree -1 by convention
    return len(f) - 1


def constant(F, c):
    return [] if c == F.zero else [c]


def x_poly(F):
    return [F.zero, F.one]


def add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return trim(F, out)


def neg(F, f):
    return [F.neg(c) for c in f]


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, f, c):
    if c == F.zero:
        return []
    return trim(F, [F.mul(a, c) for a in f])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_poly(F, f, g):
    g = trim(F, g)
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = trim(F, f)
    dg = degree(g)
    inv_lc = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    r = list(f)
    while degree(r) >= dg:
        k = degree(r) - dg
        c = F.mul(r[-1], inv_lc)
        q[k] = c
        for i in range(dg + 1):
            r[k + i] = F.sub(r[k + i], F.mul(c, g[i]))
        r = trim(F, r)
    return trim(F, q), r


def quo(F, f, g):
    return divmod_poly(F, f, g)[0]


def rem(F, f, g):
    return divmod_poly(F, f, g)[1]


def monic(F, f):
    f = trim(F, f)
    if not f:
        return f
    if f[-1] == F.one:
        return f
    return scale(F, f, F.inv(f[-1]))


def gcd_poly(F, f, g):
    """Monic gcd; gcd(f, 0) = monic f."""
    a, b = trim(F, f), trim(F, g)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd_poly(F, f, g):
    """(d, u, v) with u*f + v*g = d, d monic."""
    r0, r1 = trim(F, f), trim(F, g)
    u0, u1 = [F.one], []
    v0, v1 = [], [F.one]
    while r1:
        q, r = divmod_poly(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(F, u0, mul(F, q, u1))
        v0, v1 = v1, sub(F, v0, mul(F, q, v1))
    if not r0:
        return [], u0, v0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, u0, c), scale(F, v0, c)


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.from_int(i), f[i]))
    return trim(F, out)


def is_squarefree(F, f):
    f = trim(F, f)
    if not f:
        return False
    return degree(gcd_poly(F, f, derivative(F, f))) == 0


def resultant(F, f, g):
    """Resultant by the Euclidean scheme; res(x - a, g) = g(a)."""
    f, g = trim(F, f), trim(F, g)
    if not f or not g:
        raise ZeroPolynomial("resultant of the zero polynomial")
    res = F.one
    while True:
        m, n = degree(f), degree(g)
        if n == 0:
            return F.mul(res, F.pow(g[0], m))
        if m < n:
            f, g = g, f
            if (m & 1) and (n & 1):
                res = F.neg(res)
            continue
        r = rem(F, f, g)
        if not r:
            return F.zero
        if (m & 1) and (n & 1):
            res = F.neg(res)
        res = F.mul(res, F.pow(g[-1], m - degree(r)))
        f, g = g, r


def mulmod(F, f, g, h):
    return rem(F, mul(F, f, g), h)


def powmod(F, f, e, h):
    if e < 0:
        raise ValueError("negative exponent")
    result = [F.one]
    base = rem(F, f, h)
    while e:
        if e & 1:
            result = mulmod(F, result, base, h)
        base = mulmod(F, base, base, h)
        e >>= 1
    return result


def _split_linear(F, f, rng):
    """Split a product of distinct linear factors into roots (odd q)."""
    f = monic(F, f)
    d = degree(f)
    if d == 0:
        return []
    if d == 1:
        return [F.neg(f[0])]
    half = (F.q - 1) // 2
    for _ in range(200):
        delta = F.rand(rng)
        s = powmod(F, [delta, F.one], half, f)
        s = sub(F, s, [F.one])
        d1 = gcd_poly(F, s, f)
        if 0 < degree(d1) < d:
            d2 = quo(F, f, d1)
            return _split_linear(F, d1, rng) + _split_linear(F, d2, rng)
    raise InternalError("equal-degree splitting failed to converge")


def roots_in_field(F, f, seed=DEFAULT_SEED):
    """All distinct roots of f in F, sorted by canonical key."""
    f = trim(F, f)
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    if degree(f) == 0:
        return []
    # x^q - x mod f cuts out exactly the roots lying in F
    xq = powmod(F, x_poly(F), F.q, f)
    lin = gcd_poly(F, sub(F, xq, x_poly(F)), f)
    if degree(lin) == 0:
        return []
    rng = random.Random(repr((seed, "edf", F.p, F.k, degree(f))))
    roots = _split_linear(F, lin, rng)
    return sorted(roots, key=F.sort_key)


def roots_in_prime_field(F, f, seed=DEFAULT_SEED):
    """Distinct roots over a prime field, ascending integer order."""
    if F.k != 1:
        raise ValueError("prime field expected")
    return roots_in_field(F, f, seed=seed)


def dickson(F, n, alpha):
    """D_n(x, alpha): D_0 = 2, D_1 = x, D_n = x*D_{n-1} - alpha*D_{n-2}."""
    if n < 0:
        raise ValueError("Dickson index must be >= 0")
    two = F.from_int(2)
    if n == 0:
        return constant(F, two)
    prev = constant(F, two)
    cur = x_poly(F)
    for _ in range(n - 1):
        nxt = sub(F, mul(F, x_poly(F), cur), scale(F, prev, alpha))
        prev, cur = cur, nxt
    return cur


def legendre_eval(F, m, x):
    """P_m(x) by the three-term recurrence; O(m), no coefficients stored.

    Denominators 2..m must be invertible, so m < p is required.
    """
    if m < 0:
        raise ValueError("Legendre index must be >= 0")
    if m >= F.p:
        raise IndexTooLargeForCharacteristic(
            f"P_{m} needs division by {m}! but characteristic is {F.p}")
    if m == 0:
        return F.one
    prev = F.one
    cur = x
    for n in range(2, m + 1):
        # n*P_n = (2n-1)*x*P_{n-1} - (n-1)*P_{n-2}
        t = F.sub(F.mul(F.from_int(2 * n - 1), F.mul(x, cur)),
                  F.mul(F.from_int(n - 1), prev))
        prev, cur = cur, F.mul(t, F.inv(F.from_int(n)))
    return cur


def legendre_coeff_oracle(F, m):
    """P_m as a coefficient list via 2^{-m} sum C(m,k)^2 (x-1)^{m-k} (x+1)^k.

    Independent of the recurrence; exact integer expansion reduced into F.
    Intended for cross-checks, m <= 64.
    """
    from math import comb
    if m > 64:
        raise ValueError("oracle limited to m <= 64")
    acc = [0] * (m + 1)
    for k in range(m + 1):
        term = [comb(m, k) ** 2]
        for _ in range(m - k):
            term = _int_poly_mul(term, [-1, 1])
        for _ in range(k):
            term = _int_poly_mul(term, [1, 1])
        for i, t in enumerate(term):
            acc[i] += t
    inv2m = F.inv(F.pow(F.from_int(2), m))
    return trim(F, [F.mul(F.from_int(t), inv2m) for t in acc])


def _int_poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out
