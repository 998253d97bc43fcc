"""Power sums, elementary symmetric functions and exterior-power traces."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import mat_mul


def elementary_from_power_sums(s: Sequence) -> list[Fraction]:
    """e_0..e_r from power sums s_1..s_r via Newton's identities."""
    r = len(s)
    e = [Fraction(1)]
    for k in range(1, r + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * Fraction(s[i - 1])
            acc += term if i % 2 == 1 else -term
        e.append(acc / k)
    return e


def charpoly_from_power_sums(s: Sequence, r: int | None = None) -> list[Fraction]:
    """Monic characteristic polynomial with the given power sums.

    ``s[k-1]`` is the trace of the k-th power.  Returns ascending
    coefficients ``[c_0, ..., c_{r-1}, 1]`` where ``c_{r-i} = (-1)^i e_i``.
    """
    if r is None:
        r = len(s)
    if r < 1 or len(s) != r:
        raise ValueError(f"need exactly r={r} power sums, got {len(s)}")
    e = elementary_from_power_sums(s)
    coeffs = [Fraction(0)] * (r + 1)
    for i in range(r + 1):
        coeffs[r - i] = e[i] if i % 2 == 0 else -e[i]
    return coeffs


def power_traces(M, k: int) -> list[Fraction]:
    """tr(M), tr(M^2), ..., tr(M^k)."""
    n = len(M)
    P = [[Fraction(x) for x in row] for row in M]
    A = P
    out = []
    for _ in range(k):
        out.append(sum(A[i][i] for i in range(n)))
        A = mat_mul(A, P)
    return out


def partitions(n: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def antisymmetrizer_trace(M, i: int) -> Fraction:
    """Trace of the normalized antisymmetrizer composed with M on the i-fold tensor power.

    Computed as a class-function sum over cycle types of S_i:
    ``sum_lambda sgn(lambda)/z_lambda * prod_j tr(M^lambda_j)``.
    """
    n = len(M)
    if i < 1:
        raise ValueError("i must be positive")
    if i > n:
        raise ValueError(f"i={i} exceeds matrix dimension {n}")
    tr = power_traces(M, i)
    total = Fraction(0)
    for lam in partitions(i):
        z = 1
        for part, mult in Counter(lam).items():
            z *= part**mult * factorial(mult)
        sign = -1 if (i - len(lam)) % 2 else 1
        prod = Fraction(1)
        for part in lam:
            prod *= tr[part - 1]
        total += Fraction(sign, z) * prod
    return total
