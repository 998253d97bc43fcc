"""Shared constructors and independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from frobtorus.core.arith import is_prime
from frobtorus.core.factor import is_irreducible_rational
from frobtorus.core.poly import IntPoly
from frobtorus.invariants import synthetic_weight_system
from frobtorus.weil.weilpoly import validate


def W(coeffs, q, m=1):
    return validate(IntPoly(list(coeffs)), q, m)


def cheb2(g: int) -> list[int]:
    """2 T_g(y/2), ascending: D_0 = 2, D_1 = y, D_k = y D_(k-1) - D_(k-2)."""
    a, b = [2], [0, 1]
    if g == 0:
        return a
    for _ in range(g - 1):
        c = [0] + b
        for i, x in enumerate(a):
            c[i] -= x
        a, b = b, c
    return b


def height_one_poly(g: int, p: int, extra: int = 0) -> IntPoly:
    """Degree-2g Weil p-polynomial of weight 2 with one slope-0 root, one slope-2 root, the rest slope 1.

    P(t) = t^g h(t + p^2/t) with h(x) = p^(g-1) k(x/p) and
    k = p * 2T_g(y/2) + y^(g-1) + extra.  Modulo p the trace polynomial h is
    x^(g-1) (x + 1) up to units, which forces the slope pattern; the
    Chebyshev part keeps the real roots of h inside (-2p, 2p).
    """
    k = [p * c for c in cheb2(g)]
    k[g - 1] += 1
    k[0] += extra
    h = [k[i] * p ** (g - 1 - i) for i in range(g)] + [k[g] // p]
    Q = p * p
    u = IntPoly([Q, 0, 1])
    t = IntPoly([0, 1])
    P = IntPoly([0])
    for i, c in enumerate(h):
        P = P + IntPoly([c]) * u**i * t ** (g - i)
    return P


def height_one_family(g: int, count: int, start: int | None = None):
    """First ``count`` (p, extra, P) with P irreducible, for primes p > 2^(g-2)."""
    out = []
    p = max(start or 2 ** max(g - 2, 0) + 1, 2)
    while len(out) < count:
        if is_prime(p):
            for extra in (0, 1, -1):
                P = height_one_poly(g, p, extra)
                if is_irreducible_rational(P):
                    out.append((p, extra, P))
                    break
        p += 1
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for odd positive n (Jacobi reciprocity)."""
    assert n > 0 and n % 2 == 1
    a %= n
    res = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def exact_roots(w):
    """sympy radical expressions for the distinct roots of w, aligned with ``w.roots`` (degree <= 4)."""
    import sympy

    x = sympy.symbols("x")
    expr = sum(c * x**i for i, c in enumerate(w.sqf.coeffs))
    cands = list(sympy.roots(sympy.Poly(expr, x), multiple=False).keys())
    out = []
    for b in w.roots:
        z = b.to_complex()
        best = min(cands, key=lambda r: abs(complex(sympy.N(r, 30)) - z))
        out.append(best)
    assert len(set(out)) == len(out)
    return out


def check_relation_exact(w, vector, num, order) -> bool:
    """Does prod root_i^n_i equal exp(2 pi i num/order) * sqrt(q^m)^(sum n)?  Decided by sympy."""
    import sympy

    rs = exact_roots(w)
    lhs = sympy.Integer(1)
    for r, n in zip(rs, vector):
        lhs *= r**n
    R = sympy.sqrt(sympy.Integer(w.q) ** w.m)
    rhs = sympy.exp(2 * sympy.pi * sympy.I * sympy.Rational(num, order)) * R ** sum(vector)
    diff = sympy.nsimplify(sympy.expand(lhs - rhs))
    if diff == 0:
        return True
    y = sympy.symbols("y")
    return sympy.minimal_polynomial(lhs - rhs, y) == y


def _power_sums(coeffs, count):
    """p_1..p_count of the roots of the monic ascending ``coeffs`` (Newton's identities)."""
    d = len(coeffs) - 1
    # e_k = (-1)^k c_(d-k)
    e = [Fraction((-1) ** k * coeffs[d - k]) for k in range(d + 1)]
    p = []
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, min(k - 1, d) + 1):
            acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        if k <= d:
            acc += (-1) ** (k - 1) * k * e[k]
        p.append(acc)
    return p


def _poly_from_power_sums(p):
    """Monic ascending coefficients of the polynomial with power sums p (Newton's identities)."""
    N = len(p)
    e = [Fraction(1)]
    for k in range(1, N + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1))
        e.append(acc / k)
    return [(-1) ** (N - i) * e[N - i] for i in range(N + 1)]


def tensor_power_root_count(coeffs, n: int, value) -> int:
    """Number of ordered n-tuples of roots (with multiplicity) whose product equals ``value``.

    The products are the eigenvalues of the n-th tensor power of a semisimple
    matrix with characteristic polynomial ``coeffs``; its power sums are
    p_k^n, which gives its characteristic polynomial exactly.  The count is
    the multiplicity of ``value`` as a root.
    """
    d = len(coeffs) - 1
    if n == 0:
        return 1 if value == 1 else 0
    N = d**n
    ps = [x**n for x in _power_sums(coeffs, N)]
    c = _poly_from_power_sums(ps)
    count = 0
    while len(c) > 1:
        # synthetic division by (X - value)
        out = [Fraction(0)] * (len(c) - 1)
        acc = Fraction(0)
        for i in range(len(c) - 1, 0, -1):
            acc = acc * value + c[i]
            out[i - 1] = acc
        rem = acc * value + c[0]
        if rem != 0:
            break
        c = out
        count += 1
    return count


def brute_force_quadratic_tuples(a1: int, a0: int, n: int, value) -> int:
    """Literal enumeration of n-tuples of the two roots of t^2 + a1 t + a0 with sympy radicals."""
    from itertools import product as iproduct

    import sympy

    x = sympy.symbols("x")
    r = sympy.roots(x**2 + a1 * x + a0, x, multiple=True)
    hits = 0
    for tup in iproduct(r, repeat=n):
        prod = sympy.Integer(1)
        for z in tup:
            prod *= z
        if sympy.simplify(sympy.expand(prod) - value) == 0:
            hits += 1
    return hits


def certified_tuple_count(coeffs, q, m, n, dps=120):
    """Count root tuples (with multiplicity) whose product is q^(mn/2), deciding equality rigorously.

    A product minus the target is an algebraic integer of the Galois closure (degree at most d!).
    If nonzero its norm is a nonzero integer, so its absolute value is at least
    1 / B^(d! - 1) with B bounding every conjugate.  Roots are computed far beyond that.
    """
    import mpmath
    from math import factorial

    d = len(coeffs) - 1
    if (m * n) % 2:
        return 0
    bound_digits = (factorial(d) - 1) * mpmath.log10(2 * mpmath.mpf(q) ** (mpmath.mpf(m * n) / 2) + 1)
    dps = max(dps, int(3 * bound_digits) + 40)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=500, extraprec=4 * dps)
        target = mpmath.mpf(q) ** (m * n // 2)
        B = 2 * mpmath.mpf(q) ** (mpmath.mpf(m * n) / 2) + 1
        gap = 1 / B ** (factorial(d) - 1)
        assert gap > mpmath.mpf(10) ** (-dps // 3), "precision too low for the separation bound"
        count = 0
        for tup in product(roots, repeat=n):
            val = mpmath.fprod(tup)
            diff = abs(val - target)
            assert diff < gap / 4 or diff > gap / 2, "ambiguous product"
            count += diff < gap / 4
    return count


def random_paired_system(rng):
    """Weights e_1..e_m, -e_1..-e_m and r two-torsion weights, random multiplicities, total dim <= 6."""
    while True:
        m = rng.randint(0, 3)
        r = rng.randint(0, 6 - 2 * m) if 2 * m < 6 else 0
        k = 2 * m + r
        if k == 0:
            continue
        mults = [1] * k
        while sum(mults) < 6 and rng.random() < 0.5:
            mults[rng.randrange(k)] += 1
        chars = [[int(i == j) for j in range(k)] for i in range(k)]
        rels = [[int(j in (i, m + i)) for j in range(k)] for i in range(m)]
        rels += [[2 * int(j == 2 * m + i) for j in range(k)] for i in range(r)]
        return synthetic_weight_system(chars, rels, mults), (chars, rels, mults)
