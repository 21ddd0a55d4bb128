"""Dense univariate polynomial arithmetic over an exact field.

Coefficient lists run low degree to high and are kept trimmed.  Just
enough is implemented to factor minimal polynomials into coprime parts:
gcd, xgcd, squarefree parts, distinct-degree splitting over F_p and a
rational root search over Q.
"""

from __future__ import annotations

from .fields import Field


def trim(f: Field, p):
    while p and p[-1] == f.zero:
        p = p[:-1]
    return list(p)


def deg(p) -> int:
    return len(p) - 1


def add(f: Field, p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else f.zero
        b = q[i] if i < len(q) else f.zero
        out.append(f.add(a, b))
    return trim(f, out)


def sub(f: Field, p, q):
    return add(f, p, [f.neg(c) for c in q])


def scale(f: Field, c, p):
    if c == f.zero:
        return []
    return trim(f, [f.mul(c, a) for a in p])


def mul(f: Field, p, q):
    if not p or not q:
        return []
    out = [f.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == f.zero:
            continue
        for j, b in enumerate(q):
            out[i + j] = f.add(out[i + j], f.mul(a, b))
    return trim(f, out)


def divmod_poly(f: Field, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [f.zero] * max(0, len(p) - len(q) + 1)
    inv_lead = f.inv(q[-1])
    for i in range(len(rem) - len(q), -1, -1):
        c = f.mul(rem[i + len(q) - 1], inv_lead)
        if c == f.zero:
            continue
        quo[i] = c
        for j, b in enumerate(q):
            rem[i + j] = f.sub(rem[i + j], f.mul(c, b))
    return trim(f, quo), trim(f, rem)


def monic(f: Field, p):
    if not p:
        return p
    return scale(f, f.inv(p[-1]), p)


def gcd(f: Field, p, q):
    a, b = trim(f, p), trim(f, q)
    while b:
        a, b = b, divmod_poly(f, a, b)[1]
    return monic(f, a)


def xgcd(f: Field, p, q):
    """(g, s, t) with s*p + t*q = g monic."""
    a, b = trim(f, p), trim(f, q)
    sa, sb = [f.one], []
    ta, tb = [], [f.one]
    while b:
        quo, rem = divmod_poly(f, a, b)
        a, b = b, rem
        sa, sb = sb, sub(f, sa, mul(f, quo, sb))
        ta, tb = tb, sub(f, ta, mul(f, quo, tb))
    if not a:
        return [], [], []
    c = f.inv(a[-1])
    return scale(f, c, a), scale(f, c, sa), scale(f, c, ta)


def derivative(f: Field, p):
    return trim(f, [f.mul(f.of(i), p[i]) for i in range(1, len(p))])


def evaluate(f: Field, p, c):
    acc = f.zero
    for a in reversed(p):
        acc = f.add(f.mul(acc, c), a)
    return acc


def mulmod(f: Field, p, q, m):
    return divmod_poly(f, mul(f, p, q), m)[1]


def powmod(f: Field, p, e: int, m):
    acc = [f.one]
    base = divmod_poly(f, p, m)[1]
    while e:
        if e & 1:
            acc = mulmod(f, acc, base, m)
        base = mulmod(f, base, base, m)
        e >>= 1
    return acc


def squarefree_part(f: Field, p):
    """Product of the distinct irreducible factors of p."""
    p = monic(f, p)
    if deg(p) <= 1:
        return p
    dp = derivative(f, p)
    if not dp:
        # char p with p = h(t^p); over F_p the coefficient Frobenius is
        # the identity, so h has the same coefficients, compressed.
        h = [p[i] for i in range(0, len(p), f.p)]
        return squarefree_part(f, h)
    g = gcd(f, p, dp)
    w = divmod_poly(f, p, g)[0]
    # w holds every irreducible of p at least once, but g may still hide
    # factors whose multiplicity is divisible by the characteristic
    if f.p:
        rest = g
        for _ in range(deg(p)):
            c = gcd(f, rest, w)
            if deg(c) <= 0:
                break
            rest = divmod_poly(f, rest, c)[0]
        if deg(rest) > 0:
            return monic(f, mul(f, w, squarefree_part(f, rest)))
    return monic(f, w)


def _saturate(f: Field, m, h):
    """Split m = f1*f2 with f1 the full primary part of the factors of h."""
    n = deg(m)
    hp = [f.one]
    for _ in range(n):
        hp = mul(f, hp, h)
    f1 = gcd(f, m, hp)
    f2 = divmod_poly(f, m, f1)[0]
    return f1, f2


def _equal_degree_split(f: Field, s, d: int, rng):
    """Cantor-Zassenhaus step for squarefree s, all factors of degree d."""
    n = deg(s)
    for _ in range(64):
        r = [f.of(rng.randrange(f.p)) for _ in range(n)]
        r = trim(f, r)
        if deg(r) < 1:
            continue
        if f.p == 2:
            w = []
            acc = divmod_poly(f, r, s)[1]
            for _ in range(d):
                w = add(f, w, acc)
                acc = mulmod(f, acc, acc, s)
            g = gcd(f, s, w)
        else:
            e = (f.p ** d - 1) // 2
            w = powmod(f, r, e, s)
            g = gcd(f, s, sub(f, w, [f.one]))
        if 0 < deg(g) < deg(s):
            return g
    return None


def coprime_split(f: Field, m, rng):
    """Some factorization m = f1*f2 with gcd(f1,f2)=1, both nonconstant.

    Returns None when m is (or cannot be shown to be other than) a power
    of a single irreducible.  Complete over F_p; over Q only powers of t
    and rational roots are tried, so None is not a proof there.
    """
    m = monic(f, m)
    n = deg(m)
    if n <= 1:
        return None
    # the power of t is always a clean primary part
    a = 0
    while a < len(m) and m[a] == f.zero:
        a += 1
    if 0 < a < n:
        t_part = [f.zero] * a + [f.one]
        return t_part, trim(f, m[a:])
    s = squarefree_part(f, m)
    if f.p:
        x = [f.zero, f.one]
        frob = x
        for d in range(1, deg(s) + 1):
            frob = powmod(f, frob, f.p, s)
            if 2 * d > deg(s):
                break
            g = gcd(f, s, sub(f, frob, x))
            if 0 < deg(g) < deg(s):
                return _saturate(f, m, g)
            if deg(g) == deg(s) and deg(s) > d:
                # several factors, all of degree d
                h = _equal_degree_split(f, s, d, rng)
                if h is None:
                    return None
                return _saturate(f, m, h)
        return None
    # rational roots: after clearing denominators, roots are p/q with
    # p | constant term and q | leading coefficient
    from fractions import Fraction
    lcm = 1
    for c in m:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    zint = [int(c * lcm) for c in m]
    while zint and zint[0] == 0:
        zint = zint[1:]
    if not zint:
        return None
    for p_ in _divisors(abs(zint[0])):
        for q_ in _divisors(abs(zint[-1])):
            for sgn in (1, -1):
                c = Fraction(sgn * p_, q_)
                if evaluate(f, m, c) == f.zero:
                    f1, f2 = _saturate(f, m, [f.neg(c), f.one])
                    if 0 < deg(f1) < n:
                        return f1, f2
    return None


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int):
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n and d <= 10 ** 6:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)
