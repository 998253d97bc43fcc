"""Dense univariate polynomials with integer coefficients.

Coefficients are stored in ascending order: ``IntPoly([c0, c1, c2])`` is
``c0 + c1*t + c2*t**2``.  The zero polynomial has an empty coefficient tuple
and degree -1.  Instances are immutable and hashable.

Rational-coefficient helpers (``qp_*``) operate on plain lists of
``Fraction`` in the same ascending convention; they back the gcd and
resultant computations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    continue
                raise TypeError(f"integer coefficient expected, got {c!r}")
        cs = [int(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> "IntPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    # -- basic accessors --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return self.lc == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "IntPoly"):
        """Division by a divisor whose leading coefficient is +-1."""
        if other.lc not in (1, -1):
            raise ValueError("divmod over Z needs a divisor with unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), self
        quo = [0] * (dq + 1)
        lc = other.lc
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * lc
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return IntPoly(quo), IntPoly(rem)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        return divexact(self, other)

    def __mod__(self, other: "IntPoly") -> "IntPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- derived polynomials ----------------------------------------------

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        if not self.coeffs:
            return 0
        g = reduce(gcd, self.coeffs)
        return -g if self.lc < 0 else g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        c = self.content()
        if c == 0:
            return self
        return IntPoly([x // c for x in self.coeffs])

    def reverse(self, n: int | None = None) -> "IntPoly":
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return IntPoly(cs[: n + 1][::-1])

    def scale(self, c: int) -> "IntPoly":
        """Return p(c*t)."""
        return IntPoly([a * c**i for i, a in enumerate(self.coeffs)])

    def shift(self, c: int) -> "IntPoly":
        """Return p(t + c) (Horner-style Taylor shift)."""
        out = IntPoly()
        x = IntPoly([c, 1])
        for a in reversed(self.coeffs):
            out = out * x + a
        return out

    def compose(self, other: "IntPoly") -> "IntPoly":
        out = IntPoly()
        for a in reversed(self.coeffs):
            out = out * other + a
        return out

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(c) for c in self.coeffs]

    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)


def divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a/b over Z; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a.coeffs)
    dq = len(rem) - len(b.coeffs)
    if dq < 0:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return IntPoly()
    quo = [0] * (dq + 1)
    lb = b.lc
    for i in range(dq, -1, -1):
        c, r = divmod(rem[i + b.degree], lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[i] = c
        if c:
            for j, x in enumerate(b.coeffs):
                rem[i + j] -= c * x
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return IntPoly(quo)


# ---------------------------------------------------------------------------
# rational polynomial helpers (lists of Fraction, ascending)


def qp_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def qp_monic(a: Sequence[Fraction]) -> list[Fraction]:
    a = qp_trim(a)
    lc = a[-1]
    return [Fraction(x) / lc for x in a]


def qp_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = [Fraction(x) for x in qp_trim(a)]
    b = [Fraction(x) for x in qp_trim(b)]
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return qp_trim(quo), qp_trim(a)


def qp_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = qp_trim(a), qp_trim(b)
    while b:
        a, b = b, qp_divmod(a, b)[1]
        if b:
            b = qp_monic(b)
    return qp_monic(a) if a else []


def to_intpoly(a: Sequence[Fraction]) -> IntPoly:
    """Clear denominators of a rational polynomial and take the primitive part."""
    a = qp_trim(a)
    if not a:
        return IntPoly()
    den = 1
    for x in a:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return IntPoly([int(Fraction(x) * den) for x in a]).primitive()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Z with positive leading coefficient."""
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    g = qp_gcd(a.to_fractions(), b.to_fractions())
    return to_intpoly(g)


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Resultant Res(a, b) via the Euclidean algorithm over Q."""
    if not a or not b:
        return 0
    A = a.to_fractions()
    B = b.to_fractions()
    res = Fraction(1)
    while True:
        da, db = len(A) - 1, len(B) - 1
        if db == 0:
            res *= B[0] ** da
            break
        _, R = qp_divmod(A, B)
        if not R:
            return 0
        dr = len(R) - 1
        # Res(A, B) = (-1)^(da*db) * lc(B)^(da-dr) * Res(B, R)
        if (da * db) % 2:
            res = -res
        res *= B[-1] ** (da - dr)
        A, B = B, R
    assert res.denominator == 1
    return int(res)


def discriminant(a: IntPoly) -> int:
    n = a.degree
    r = resultant(a, a.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, a.lc)
    assert rem == 0
    return q


def squarefree_decomposition(a: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Q.

    Returns primitive factors ``[(f_k, k), ...]`` with each ``f_k`` squarefree,
    pairwise coprime and of positive degree, such that ``a`` equals
    ``c * prod f_k**k`` for a rational constant ``c``.
    """
    if a.degree < 1:
        return []
    out = []
    F = a.primitive().to_fractions()
    Fp = _qp_deriv(F)
    G = qp_gcd(F, Fp)
    B = qp_divmod(F, G)[0]
    C = qp_divmod(Fp, G)[0]
    D = _qp_sub(C, _qp_deriv(B))
    k = 1
    while len(B) > 1:
        A = qp_gcd(B, D)
        if len(A) > 1:
            out.append((to_intpoly(A), k))
        B = qp_divmod(B, A)[0]
        C = qp_divmod(D, A)[0]
        D = _qp_sub(C, _qp_deriv(B))
        k += 1
    return out


def squarefree_part(a: IntPoly) -> IntPoly:
    out = IntPoly([1])
    for f, _ in squarefree_decomposition(a):
        out = out * f
    return out.primitive()


def _qp_deriv(a: Sequence[Fraction]) -> list[Fraction]:
    return qp_trim([i * Fraction(c) for i, c in enumerate(a)][1:])


def _qp_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return qp_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def ord_p(n: int, p: int) -> int | None:
    """p-adic valuation of an integer (None for zero)."""
    if n == 0:
        return None
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k
