"""Small integer helpers: primality, prime powers, sieving."""

from __future__ import annotations

from math import gcd, isqrt

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, a) with q = p**a, p prime, a >= 1; None if q is not a prime power."""
    if q < 2:
        return None
    for a in range(q.bit_length(), 0, -1):
        r = integer_root(q, a)
        if r is not None and is_prime(r):
            return r, a
    return None


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of n >= 0 if it exists."""
    if n < 0:
        return None
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k))) if n < 1 << 1000 else _iroot(n, k)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    c = _iroot(n, k)
    return c if c**k == n else None


def _iroot(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def factorint(n: int) -> dict[int, int]:
    """Trial division plus Pollard rho; adequate for the discriminant-sized inputs seen here."""
    n = abs(n)
    out: dict[int, int] = {}
    if n < 2:
        return out
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard(m)
        stack.extend([d, m // d])
    return out


def _pollard(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1

