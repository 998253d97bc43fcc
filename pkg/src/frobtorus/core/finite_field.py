"""Finite fields GF(l^d) = F_l[y]/(M(y)) and polynomials over them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import modp


class FiniteField:
    """GF(l^d) with an explicit irreducible modulus (verified on construction)."""

    def __init__(self, l: int, modulus):
        modulus = modp.monic(modp.reduce_mod(modulus, l), l)
        if not modp.is_irreducible(modulus, l):
            raise ValueError(f"modulus {modulus} is reducible mod {l}")
        self.l = l
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.order = l**self.degree

    def __repr__(self):
        return f"FiniteField(l={self.l}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.l, self.modulus) == (other.l, other.modulus)

    def __hash__(self):
        return hash((self.l, self.modulus))

    def __call__(self, value) -> "FiniteFieldElem":
        if isinstance(value, int):
            value = [value]
        return FiniteFieldElem(self, tuple(modp.rem(list(value), list(self.modulus), self.l)))

    def zero(self):
        return FiniteFieldElem(self, ())

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1])

    def elements(self):
        for cs in product(range(self.l), repeat=self.degree):
            yield self(list(cs))

    def random_element(self, rng: random.Random):
        return self([rng.randrange(self.l) for _ in range(self.degree)])


@dataclass(frozen=True)
class FiniteFieldElem:
    field: FiniteField
    value: tuple

    @property
    def modulus(self):
        return self.field.modulus

    @property
    def characteristic(self):
        return self.field.l

    def _wrap(self, v):
        return FiniteFieldElem(self.field, tuple(v))

    def _lift(self, other):
        if isinstance(other, FiniteFieldElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        return self._wrap(modp.add(self.value, other.value, self.field.l))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return self._wrap(modp.sub(self.value, other.value, self.field.l))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return self._wrap(modp.sub([], self.value, self.field.l))

    def __mul__(self, other):
        other = self._lift(other)
        l = self.field.l
        return self._wrap(modp.rem(modp.mul(self.value, other.value, l), list(self.field.modulus), l))

    __rmul__ = __mul__

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("inverse of zero in a finite field")
        g, s, _ = modp.xgcd(list(self.value), list(self.field.modulus), self.field.l)
        assert g == [1]
        return self._wrap(modp.rem(s, list(self.field.modulus), self.field.l))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(modp.powmod(list(self.value), e, list(self.field.modulus), self.field.l))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, FiniteFieldElem) and self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"FFE({list(self.value)})"

    def frobenius(self, k: int = 1):
        return self ** (self.field.l**k)


def irreducible_moduli(l: int, d: int, limit: int | None = None):
    """Monic irreducible polynomials of degree d over F_l in lexicographic order."""
    count = 0
    for tail in product(range(l), repeat=d):
        f = list(tail) + [1]
        if d > 1 and f[0] == 0:
            continue
        if modp.is_irreducible(f, l):
            yield f
            count += 1
            if limit is not None and count >= limit:
                return


def select_modulus(l: int, d: int, index: int = 0, seed: int | None = None):
    """Pick an irreducible modulus: the ``index``-th in lex order, or a random one if ``seed`` is given."""
    if seed is not None:
        rng = random.Random(seed)
        while True:
            f = [rng.randrange(l) for _ in range(d)] + [1]
            if modp.is_irreducible(f, l):
                return f
    for i, f in enumerate(irreducible_moduli(l, d)):
        if i == index:
            return f
    raise ValueError("not enough irreducible polynomials of that degree")


# -- polynomials over GF(l^d): lists of FiniteFieldElem, ascending ---------


def fpoly_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def fpoly_mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return fpoly_trim(out)


def fpoly_sub(a, b, F):
    n = max(len(a), len(b))
    z = F.zero()
    return fpoly_trim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def fpoly_divmod(a, b, F):
    b = fpoly_trim(list(b))
    r = list(a)
    fpoly_trim(r)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = b[-1].inverse()
    q = [F.zero()] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] * inv
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = r[i + j] - c * y
    return fpoly_trim(q), fpoly_trim(r[:db])


def fpoly_monic(a, F):
    a = fpoly_trim(list(a))
    inv = a[-1].inverse()
    return [c * inv for c in a]


def fpoly_gcd(a, b, F):
    a, b = fpoly_trim(list(a)), fpoly_trim(list(b))
    while b:
        a, b = b, fpoly_divmod(a, b, F)[1]
    return fpoly_monic(a, F) if a else a


def fpoly_powmod(a, e, f, F):
    result = [F.one()]
    base = fpoly_divmod(a, f, F)[1]
    while e:
        if e & 1:
            result = fpoly_divmod(fpoly_mul(result, base, F), f, F)[1]
        base = fpoly_divmod(fpoly_mul(base, base, F), f, F)[1]
        e >>= 1
    return result


def roots_in_field(coeffs, F: FiniteField, seed: int = 1) -> list[FiniteFieldElem]:
    """All roots in F of a polynomial with F_l (int) or F coefficients, squarefree assumed."""
    f = [c if isinstance(c, FiniteFieldElem) else F(c) for c in coeffs]
    f = fpoly_monic(f, F)
    x = [F.zero(), F.one()]
    # restrict to the product of linear factors
    xq = fpoly_powmod(x, F.order, f, F)
    g = fpoly_gcd(fpoly_sub(xq, x, F), f, F)
    rng = random.Random(seed)
    return sorted(_split_linear(g, F, rng), key=lambda e: e.value)


def _split_linear(g, F, rng):
    n = len(g) - 1
    if n == 0:
        return []
    if n == 1:
        return [-(g[0] / g[1])]
    while True:
        if F.l == 2:
            c1 = F.random_element(rng)
            if not c1:
                continue
            a = [F.random_element(rng), c1]
            # absolute trace map into F_2
            t = list(a)
            cur = list(a)
            for _ in range(F.degree - 1):
                cur = fpoly_divmod(fpoly_mul(cur, cur, F), g, F)[1]
                t = _fpoly_add(t, cur, F)
            h = fpoly_gcd(t, g, F)
        else:
            a = [F.random_element(rng), F.one()]
            b = fpoly_powmod(a, (F.order - 1) // 2, g, F)
            h = fpoly_gcd(fpoly_sub(b, [F.one()], F), g, F)
        if 1 < len(h) < len(g):
            k = fpoly_divmod(g, h, F)[0]
            return _split_linear(h, F, rng) + _split_linear(fpoly_monic(k, F), F, rng)


def _fpoly_add(a, b, F):
    n = max(len(a), len(b))
    z = F.zero()
    return fpoly_trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])
