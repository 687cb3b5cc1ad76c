"""Curves y^2 = f(x), the zeta oracle, and Mumford/Cantor Jacobian arithmetic.

Only odd-degree models (one point at infinity) are handled; callers that meet
an even-degree right-hand side move a rational Weierstrass point to infinity
first. The zeta oracle inverts point counts over F_{q^k}, k = 1..g, through
Newton's identities; everything there is exact integer arithmetic.
"""

import math
import random

from . import polys
from .config import DEFAULT_SEED, default_budget
from .enumeration import count_curve_points
from .errors import (BadGenus, CharacteristicDividesGenus, InternalError,
                     SingularCurve)
from .fields import FieldElement, embed, make_extension


def _raw(F, v):
    if isinstance(v, FieldElement):
        if v.desc is not F:
            raise ValueError("element belongs to a different field")
        return v.rep
    return F.coerce(v)


class CurveSpec:
    """y^2 = f(x), f monic of odd degree 2g+1, squarefree."""

    __slots__ = ("F", "f", "g", "a", "b")

    def __init__(self, F, fcoeffs, a=None, b=None):
        f = polys.trim(F, [_raw(F, c) for c in fcoeffs])
        deg = polys.degree(f)
        if deg < 3 or deg % 2 == 0:
            raise BadGenus(f"need odd degree >= 3, got degree {deg}")
        if f[-1] != F.one:
            raise ValueError("f must be monic")
        if not polys.is_squarefree(F, f):
            raise SingularCurve("f has a repeated root")
        self.F = F
        self.f = f
        self.g = (deg - 1) // 2
        self.a = a
        self.b = b

    @property
    def is_family(self):
        return self.a is not None

    def __repr__(self):
        return f"genus-{self.g} curve over {self.F!r}"

    def base_extend(self, k, seed=DEFAULT_SEED):
        """The same equation over F_{q^k}."""
        if k == 1:
            return self
        E = make_extension(self.F, k, seed=seed)
        f = [embed(c, self.F, E) for c in self.f]
        a = None if self.a is None else embed(self.a, self.F, E)
        b = None if self.b is None else embed(self.b, self.F, E)
        return CurveSpec(E, f, a=a, b=b)


def curve_from_ab(F, g, a, b):
    """Family curve y^2 = x^(2g+1) + a x^(g+1) + b x."""
    if not 1 <= g <= 7:
        raise BadGenus(f"genus {g} outside the supported range 1..7")
    if g % F.p == 0:
        raise CharacteristicDividesGenus(f"p = {F.p} divides g = {g}")
    a = _raw(F, a)
    b = _raw(F, b)
    if b == F.zero:
        raise SingularCurve("b = 0 gives x^(g+1) | f")
    f = [F.zero] * (2 * g + 2)
    f[1] = b
    f[g + 1] = a
    f[2 * g + 1] = F.one
    return CurveSpec(F, f, a=a, b=b)


def curve_from_f(F, coeffs):
    """General monic odd-degree model; family parameters auto-detected."""
    c = CurveSpec(F, coeffs)
    g, f = c.g, c.f
    inner = [f[i] for i in range(2 * g + 1) if i not in (1, g + 1)]
    if all(v == F.zero for v in inner) and f[1] != F.zero:
        c.a = f[g + 1]
        c.b = f[1]
    return c


def quadratic_twist(curve, d):
    """Twist by d: substitute so that d*y^2 = f(x) is monic odd again."""
    F = curve.F
    d = _raw(F, d)
    if d == F.zero:
        raise ValueError("twist by zero")
    n = 2 * curve.g + 1
    f = [F.mul(c, F.pow(d, n - i)) for i, c in enumerate(curve.f)]
    a = None if curve.a is None else F.mul(curve.a, F.pow(d, curve.g))
    b = None if curve.b is None else F.mul(curve.b, F.pow(d, 2 * curve.g))
    return CurveSpec(F, f, a=a, b=b)


def count_points(curve, k=1, budget=None, seed=DEFAULT_SEED):
    """#C(F_{q^k}) by exhaustive enumeration."""
    if budget is None:
        budget = default_budget()
    ext = make_extension(curve.F, k, seed=seed)
    f = [embed(c, curve.F, ext) for c in curve.f]
    return count_curve_points(ext, f, budget)


class LPoly:
    """L-polynomial of a curve over F_q: 1 + a1 T + ... + q^g T^(2g).

    Only a1..ag are stored; the upper half follows from the functional
    equation L_{2g-j} = q^(g-j) L_j.
    """

    __slots__ = ("q", "g", "a")

    def __init__(self, q, g, a):
        a = tuple(int(v) for v in a)
        if len(a) != g:
            raise ValueError("need exactly g coefficients")
        self.q = q
        self.g = g
        self.a = a

    def coeffs(self):
        """All 2g+1 coefficients of L, ascending."""
        low = [1] + list(self.a)
        high = [self.q ** (j - self.g) * low[2 * self.g - j]
                for j in range(self.g + 1, 2 * self.g + 1)]
        return low + high

    def chi_coeffs(self):
        """chi(T) = T^(2g) L(1/T); ascending coefficients, monic."""
        return list(reversed(self.coeffs()))

    def order(self):
        """#J = L(1)."""
        return sum(self.coeffs())

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return (self.q, self.g, self.a) == (other.q, other.g, other.a)

    def __hash__(self):
        return hash((self.q, self.g, self.a))

    def __repr__(self):
        return f"LPoly(q={self.q}, g={self.g}, a={self.a})"

    def elementary(self):
        """e_1..e_2g of the inverse roots, from L_j = (-1)^j e_j."""
        L = self.coeffs()
        return [(-1) ** j * L[j] for j in range(1, 2 * self.g + 1)]

    def power_sums(self, upto):
        """s_1..s_upto where s_i = sum of i-th powers of inverse roots."""
        e = [1] + self.elementary()
        n = 2 * self.g
        s = []
        for i in range(1, upto + 1):
            if i <= n:
                acc = (-1) ** (i - 1) * i * e[i]
                for j in range(1, i):
                    acc += (-1) ** (j - 1) * e[j] * s[i - j - 1]
            else:
                acc = 0
                for j in range(1, n + 1):
                    acc += (-1) ** (j - 1) * e[j] * s[i - j - 1]
            s.append(acc)
        return s


def lpoly_from_counts(q, g, counts):
    """Invert N_k = q^k + 1 - s_k, k = 1..g, by Newton's identities."""
    s = [q ** k + 1 - counts[k - 1] for k in range(1, g + 1)]
    e = [1]
    for i in range(1, g + 1):
        acc = 0
        for j in range(1, i + 1):
            acc += (-1) ** (j - 1) * e[i - j] * s[j - 1]
        if acc % i:
            raise InternalError("Newton recursion left a fraction")
        e.append(acc // i)
    a = [(-1) ** i * e[i] for i in range(1, g + 1)]
    return LPoly(q, g, a)


def zeta_oracle(curve, budget=None, seed=DEFAULT_SEED):
    """L-polynomial by brute-force counting over F_{q^k}, k = 1..g."""
    counts = [count_points(curve, k, budget=budget, seed=seed)
              for k in range(1, curve.g + 1)]
    return lpoly_from_counts(curve.F.q, curve.g, counts)


# --- Mumford representation and Cantor's algorithm ---

def jac_identity(curve):
    return ([curve.F.one], [])


def is_identity(D):
    u, v = D
    return polys.degree(u) == 0 and not v


def mumford_valid(curve, D):
    """Representation invariants: u monic, deg v < deg u <= g, u | v^2 - f."""
    F = curve.F
    u, v = D
    if not u or u[-1] != F.one:
        return False
    if polys.degree(u) > curve.g:
        return False
    if polys.degree(v) >= polys.degree(u):
        return False
    t = polys.sub(F, polys.mul(F, v, v), curve.f)
    return not polys.rem(F, t, u)


def jac_neg(curve, D):
    F = curve.F
    u, v = D
    return (u, polys.rem(F, polys.neg(F, v), u) if polys.degree(u) > 0 else [])


def _reduce(curve, u, v):
    F, f, g = curve.F, curve.f, curve.g
    while polys.degree(u) > g:
        t = polys.sub(F, f, polys.mul(F, v, v))
        u2, r = polys.divmod_poly(F, t, u)
        if r:
            raise InternalError("Cantor reduction: inexact division")
        u2 = polys.monic(F, u2)
        v = polys.rem(F, polys.neg(F, v), u2)
        u = u2
    return polys.monic(F, u), v


def jac_add(curve, D1, D2):
    """Cantor composition + reduction."""
    F, f = curve.F, curve.f
    u1, v1 = D1
    u2, v2 = D2
    d1, e1, e2 = polys.xgcd_poly(F, u1, u2)
    d, c1, c2 = polys.xgcd_poly(F, d1, polys.add(F, v1, v2))
    s1 = polys.mul(F, c1, e1)
    s2 = polys.mul(F, c1, e2)
    s3 = c2
    u3, r = polys.divmod_poly(F, polys.mul(F, u1, u2), polys.mul(F, d, d))
    if r:
        raise InternalError("Cantor composition: inexact division")
    num = polys.add(F, polys.add(F,
        polys.mul(F, s1, polys.mul(F, u1, v2)),
        polys.mul(F, s2, polys.mul(F, u2, v1))),
        polys.mul(F, s3, polys.add(F, polys.mul(F, v1, v2), f)))
    v3, r = polys.divmod_poly(F, num, d)
    if r:
        raise InternalError("Cantor composition: inexact v division")
    v3 = polys.rem(F, v3, u3)
    return _reduce(curve, u3, v3)


def jac_scalar_mul(curve, n, D):
    if n < 0:
        return jac_scalar_mul(curve, -n, jac_neg(curve, D))
    acc = jac_identity(curve)
    base = D
    while n:
        if n & 1:
            acc = jac_add(curve, acc, base)
        base = jac_add(curve, base, base)
        n >>= 1
    return acc


def random_divisor(curve, seed):
    """Sum of up to g random points; deterministic for a given seed."""
    F, g = curve.F, curve.g
    rng = seed if isinstance(seed, random.Random) else \
        random.Random(repr((seed, "divisor", F.p, F.k)))
    want = rng.randrange(1, g + 1)
    D = jac_identity(curve)
    got = 0
    for _ in range(10000):
        if got == want:
            return D
        x = F.rand(rng)
        y = F.sqrt(polys.evaluate(F, curve.f, x))
        if y is None:
            continue
        if rng.getrandbits(1):
            y = F.neg(y)
        pt = ([F.neg(x), F.one], [y] if y != F.zero else [])
        D = jac_add(curve, D, pt)
        got += 1
    if got == want:
        return D
    raise InternalError("random divisor sampling exhausted its retries")


def jacobian_order_check(curve, N, trials, seed):
    """True iff N*D = 0 for `trials` sampled divisors; False is conclusive."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if N <= 0:
        raise ValueError("order must be positive")
    for t in range(trials):
        rng = random.Random(repr((seed, "order-check", t, curve.F.p, curve.F.k)))
        D = random_divisor(curve, rng)
        if not is_identity(jac_scalar_mul(curve, N, D)):
            return False
    return True
