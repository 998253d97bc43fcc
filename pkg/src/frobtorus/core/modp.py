"""Polynomials over Z/pZ (and Z/p^kZ for lifting), as ascending int lists.

All functions return normalized lists (no trailing zeros, entries reduced
into ``range(p)``).  The zero polynomial is ``[]``.
"""

from __future__ import annotations

import random
from typing import Sequence


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(a: Sequence[int], p: int) -> list[int]:
    return trim([c % p for c in a])


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def scal(a, c, p):
    return trim([(x * c) % p for x in a])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_p(a, b, p):
    """Quotient and remainder; the leading coefficient of b must be a unit mod p."""
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [c % p for c in a]
    trim(rem)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv = pow(b[-1], -1, p)
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        c = (rem[i + db] * inv) % p
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - c * y) % p
    return trim(quo), trim(rem[:db] if db > 0 else [])


def rem(a, b, p):
    return divmod_p(a, b, p)[1]


def monic(a, p):
    a = trim(list(a))
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gcd(a, b, p):
    a, b = reduce_mod(a, p), reduce_mod(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = reduce_mod(a, p), reduce_mod(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return scal(r0, inv, p), scal(s0, inv, p), scal(t0, inv, p)


def deriv(a, p):
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def powmod(a, e: int, f, p):
    result = [1]
    base = rem(a, f, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), f, p)
        base = rem(mul(base, base, p), f, p)
        e >>= 1
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree(f, p) -> bool:
    f = reduce_mod(f, p)
    return len(gcd(f, deriv(f, p), p)) == 1


def is_irreducible(f, p) -> bool:
    """Rabin's irreducibility test."""
    f = monic(reduce_mod(f, p), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes_n = _prime_divisors(n)
    for r in primes_n:
        h = _frob_power(x, n // r, f, p)
        if len(gcd(sub(h, x, p), f, p)) != 1:
            return False
    return _frob_power(x, n, f, p) == rem(x, f, p)


def _frob_power(a, k, f, p):
    for _ in range(k):
        a = powmod(a, p, f, p)
    return a


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def distinct_degree(f, p) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a monic squarefree f."""
    f = monic(reduce_mod(f, p), p)
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d: int, p: int, rng: random.Random | None = None) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a monic squarefree f into degree-d factors."""
    f = monic(f, p)
    n = len(f) - 1
    if n == d:
        return [f]
    rng = rng or random.Random(0x5eed ^ p ^ n)
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        trim(a)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map T(a) = a + a^2 + ... + a^(2^(d-1))
            t = list(a)
            cur = list(a)
            for _ in range(d - 1):
                cur = rem(mul(cur, cur, p), f, p)
                t = add(t, cur, p)
            g = gcd(t, f, p)
        else:
            e = (p**d - 1) // 2
            b = powmod(a, e, f, p)
            g = gcd(sub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            h = divmod_p(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor_squarefree(f, p, rng=None) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial mod p."""
    out = []
    for g, d in distinct_degree(f, p):
        out.extend(equal_degree(g, d, p, rng))
    return sorted(out, key=lambda g: (len(g), g))


def factor(f, p, rng=None) -> list[tuple[list[int], int]]:
    """Full factorization mod p of a nonzero polynomial: monic irreducibles with multiplicities."""
    f = monic(reduce_mod(f, p), p)
    if len(f) <= 1:
        return []
    out: dict[tuple, int] = {}
    for g, k in _sqf_mod_p(f, p):
        for h in factor_squarefree(g, p, rng):
            out[tuple(h)] = out.get(tuple(h), 0) + k
    return sorted(((list(h), k) for h, k in out.items()), key=lambda t: (len(t[0]), t[0]))


def _sqf_mod_p(f, p):
    """Squarefree decomposition over F_p (handles p-th powers)."""
    out = []
    f = monic(f, p)
    fp = deriv(f, p)
    if not fp:
        # f is a p-th power
        g = [f[i] for i in range(0, len(f), p)]
        return [(h, k * p) for h, k in _sqf_mod_p(g, p)]
    c = gcd(f, fp, p)
    w = divmod_p(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        g = [c[i] for i in range(0, len(c), p)]
        out.extend((h, k * p) for h, k in _sqf_mod_p(g, p))
    return out


# -- Hensel lifting over Z/p^k -------------------------------------------


def hensel_lift(f: Sequence[int], factors: list[list[int]], p: int, k: int) -> list[list[int]]:
    """Lift a factorization f = lc * prod(factors) mod p to mod p^k.

    ``f`` is an integer polynomial whose leading coefficient is a unit mod p;
    ``factors`` are monic, pairwise coprime mod p.  Returns monic lifts with
    ``f == lc(f) * prod(lifts) (mod p^k)``.  Uses a binary factor tree with
    quadratic lifting.
    """
    if len(factors) == 1:
        pk = p**k
        inv = pow(f[-1], -1, pk)
        return [reduce_mod([c * inv for c in f], pk)]
    mid = len(factors) // 2
    left, right = factors[:mid], factors[mid:]
    g = [1]
    for h in left:
        g = mul(g, h, p)
    h = [1]
    for x in right:
        h = mul(h, x, p)
    gk, hk = _lift_pair(f, g, h, p, k)
    return hensel_lift(gk, left, p, k) + hensel_lift(hk, right, p, k)


def _lift_pair(f, g, h, p, k):
    """Lift f = lc*g*h (mod p) to mod p^k with g, h monic."""
    lc = f[-1]
    _, s, t = xgcd(g, h, p)
    m = p
    g, h = list(g), list(h)
    while m < p**k:
        m2 = min(m * m, p**k)
        inv = pow(lc, -1, m2)
        fm = reduce_mod([c * inv for c in f], m2)
        e = sub(fm, mul(g, h, m2), m2)
        # g' = g + (t*e mod g), h' = h + (s*e mod h)
        q, r = divmod_p(mul(s, e, m2), h, m2)
        g_new = add(g, add(mul(t, e, m2), mul(q, g, m2), m2), m2)
        h_new = add(h, r, m2)
        g, h = g_new, h_new
        # lift Bezout coefficients
        b = sub(add(mul(s, g, m2), mul(t, h, m2), m2), [1], m2)
        c, d = divmod_p(mul(s, b, m2), h, m2)
        s = sub(s, d, m2)
        t = sub(t, add(mul(t, b, m2), mul(c, g, m2), m2), m2)
        m = m2
    return g, h


def symmetric(a: Sequence[int], m: int) -> list[int]:
    """Map coefficients into the symmetric range (-m/2, m/2]."""
    out = []
    half = m // 2
    for c in a:
        c %= m
        if c > half:
            c -= m
        out.append(c)
    return trim(out)
