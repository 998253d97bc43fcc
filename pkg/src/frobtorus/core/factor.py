"""Factorization over the rationals (Zassenhaus: mod-p factoring, Hensel lifting, recombination)."""

from __future__ import annotations

from itertools import combinations
from math import isqrt

from . import modp
from .poly import IntPoly, divexact, squarefree_decomposition

_SMALL_PRIMES = [p for p in range(3, 400) if all(p % d for d in range(2, isqrt(p) + 1))]


def factor_rational(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Irreducible factors over Q with multiplicities.

    Factors are primitive with positive leading coefficient, sorted by
    (degree, coefficients).  The product of ``f**k`` equals ``p`` up to a
    rational scalar.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for f, k in squarefree_decomposition(p):
        for g in factor_squarefree_rational(f):
            out.append((g, k))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def factor_squarefree_rational(f: IntPoly) -> list[IntPoly]:
    f = f.primitive()
    if f.degree <= 0:
        return []
    out = []
    # pull out powers of t first
    k = 0
    while f[k] == 0:
        k += 1
    if k:
        out.append(IntPoly([0, 1]))
        f = IntPoly(f.coeffs[k:])
    if f.degree == 0:
        return out
    if f.degree == 1:
        return out + [f]
    return out + _zassenhaus(f)


def _choose_prime(f: IntPoly):
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if f.lc % p == 0:
            continue
        fp = modp.reduce_mod(f.coeffs, p)
        if not modp.is_squarefree(fp, p):
            continue
        facs = modp.factor_squarefree(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            break
        tried += 1
        if tried >= 5:
            break
    if best is None:
        raise ArithmeticError("no good reduction prime found")
    return best


def _mignotte_bound(f: IntPoly) -> int:
    n = f.degree
    norm2 = sum(c * c for c in f.coeffs)
    # |coeff of any factor| <= binom(n, n//2) * ||f||_2 ; use 2^n * ||f||_2 * |lc|
    return (2**n) * (isqrt(norm2) + 1) * abs(f.lc)


def _zassenhaus(f: IntPoly) -> list[IntPoly]:
    p, facs = _choose_prime(f)
    if len(facs) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) + 1
    k = 1
    while p**k < bound:
        k += 1
    mod = p**k
    lifted = modp.hensel_lift(list(f.coeffs), facs, p, k)
    lc = f.lc
    result = []
    remaining = list(range(len(lifted)))
    g = f
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for subset in combinations(remaining, s):
            # trailing-coefficient prune
            tc = lc
            for i in subset:
                tc = (tc * lifted[i][0]) % mod
            tc = _sym(tc, mod)
            if tc == 0 or g[0] % tc != 0 and (lc * g[0]) % tc != 0:
                continue
            cand = [lc]
            for i in subset:
                cand = modp.mul(cand, lifted[i], mod)
            cand = IntPoly(modp.symmetric(cand, mod)).primitive()
            try:
                quo = divexact(g, cand)
            except ArithmeticError:
                continue
            result.append(cand)
            g = quo
            lc = g.lc
            remaining = [i for i in remaining if i not in subset]
            found = True
            break
        if not found:
            s += 1
    if g.degree > 0:
        result.append(g.primitive())
    return result


def _sym(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def is_irreducible_rational(f: IntPoly) -> bool:
    fs = factor_rational(f)
    return len(fs) == 1 and fs[0][1] == 1
