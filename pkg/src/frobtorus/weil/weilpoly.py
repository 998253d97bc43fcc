"""Certified Weil q-polynomials.

Validation is exact.  After stripping the real roots ``+-sqrt(q^m)``, the
remaining factor ``P0`` of degree ``2g`` must satisfy the functional
equation ``t^(2g) P0(Q/t) = Q^g P0(t)`` with ``Q = q^m``; it can then be
written ``P0(t) = t^g h(t + Q/t)`` and all its roots lie on ``|t| = sqrt(Q)``
exactly when every root of ``h`` is real and lies in ``(-2 sqrt(Q), 2 sqrt(Q))``.
That last condition is decided with a Sturm sequence evaluated exactly at the
(possibly irrational) endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt

from ..core.arith import is_square, prime_power
from ..core.factor import factor_rational
from ..core.poly import IntPoly, divexact, qp_divmod, squarefree_part
from ..core.roots import BoxedRoot, isolate_roots
from ..errors import AbsValueViolation, BadPrimePower, DegenerateInput, NotMonic


@dataclass(frozen=True)
class WeilPolynomial:
    poly: IntPoly
    q: int
    p: int
    a: int
    m: int
    roots: tuple  # distinct roots as BoxedRoot, sorted by center
    conj_pairing: tuple  # conj_pairing[i] = index of Q/roots[i]
    fe_sign: int  # sign s in t^d P(Q/t) = s Q^(d/2) P(t)
    scale_n: int = 0  # roots were pre-multiplied by q^scale_n
    real_count: tuple = field(default=(0, 0))  # multiplicities of +sqrt(Q), -sqrt(Q)

    @property
    def Q(self) -> int:
        return self.q**self.m

    @property
    def degree(self) -> int:
        return self.poly.degree

    @cached_property
    def sqf(self) -> IntPoly:
        return squarefree_part(self.poly)

    @cached_property
    def factors(self) -> list[tuple[IntPoly, int]]:
        return factor_rational(self.poly)

    def self_paired(self) -> list[int]:
        return [i for i, j in enumerate(self.conj_pairing) if i == j]

    def cm_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i, j), i the root with positive imaginary part."""
        out = []
        for i, j in enumerate(self.conj_pairing):
            if i != j and self.roots[i].im > 0:
                out.append((i, j))
        return out

    @property
    def has_real_roots(self) -> bool:
        return bool(self.self_paired())

    def root_factor_index(self, i: int) -> int:
        """Index into ``factors`` of the irreducible factor vanishing at root i."""
        f = self.roots[i].factor
        for k, (g, _) in enumerate(self.factors):
            if g == f:
                return k
        raise ArithmeticError("root is not attached to an irreducible factor")

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "a": self.a,
            "m": self.m,
            "coeffs": list(self.poly.coeffs),
            "degree": self.degree,
            "fe_sign": self.fe_sign,
            "real_roots": {"plus": self.real_count[0], "minus": self.real_count[1]},
            "conj_pairing": list(self.conj_pairing),
        }


# ---------------------------------------------------------------------------
# exact helpers


def _quad_sign(A: Fraction, B: Fraction, D: int) -> int:
    """Sign of A + B*sqrt(D) with D >= 0 not necessarily a square."""
    if is_square(D):
        v = A + B * isqrt(D)
        return (v > 0) - (v < 0)
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare A^2 with B^2 D
    lhs, rhs = A * A, B * B * D
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _eval_quadratic(coeffs, u: Fraction, v: Fraction, D: int) -> tuple[Fraction, Fraction]:
    """Evaluate sum c_i x^i at x = u + v sqrt(D); returns (A, B) with value A + B sqrt(D)."""
    A, B = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        A, B = A * u + B * v * D + c, A * v + B * u
    return A, B


def sturm_sequence(f: list[Fraction]) -> list[list[Fraction]]:
    seq = [list(f), _deriv(f)]
    while len(seq[-1]) > 1:
        _, r = qp_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _deriv(f):
    out = [i * c for i, c in enumerate(f)][1:]
    while out and out[-1] == 0:
        out.pop()
    return out


def _variations(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def sturm_count_quadratic(f: list[Fraction], a: tuple, b: tuple, D: int) -> int:
    """Distinct real roots of squarefree f in (a, b], endpoints given as (u, v) = u + v sqrt(D)."""
    seq = sturm_sequence(f)
    va = _variations(_quad_sign(*_eval_quadratic(s, a[0], a[1], D), D) for s in seq)
    vb = _variations(_quad_sign(*_eval_quadratic(s, b[0], b[1], D), D) for s in seq)
    return va - vb


def trace_polynomial(P0: IntPoly, Q: int) -> IntPoly:
    """h with P0(t) = t^g h(t + Q/t), assuming P0 satisfies the functional equation."""
    g = P0.degree // 2
    x = IntPoly([0, 1])
    D = [IntPoly([2]), x]
    for k in range(1, g):
        D.append(x * D[k] - Q * D[k - 1])
    h = IntPoly([P0[g]])
    for k in range(1, g + 1):
        h = h + P0[g + k] * D[k]
    return h


# ---------------------------------------------------------------------------
# validation


def _split_real(poly: IntPoly, Q: int):
    """Strip (t - R), (t + R) when Q is a square, else (t^2 - Q).  Returns (P0, plus, minus)."""
    plus = minus = 0
    P0 = poly
    if is_square(Q):
        R = isqrt(Q)
        for sign in (1, -1):
            lin = IntPoly([-sign * R, 1])
            while P0.degree >= 1 and P0(sign * R) == 0:
                P0 = divexact(P0, lin)
                if sign == 1:
                    plus += 1
                else:
                    minus += 1
    else:
        quad = IntPoly([-Q, 0, 1])
        while P0.degree >= 2:
            quo, rem = divmod(P0, quad)
            if rem:
                break
            P0 = quo
            plus += 1
            minus += 1
    return P0, plus, minus


def _on_circle_exact(poly: IntPoly, Q: int) -> tuple[bool, str]:
    P0, _, _ = _split_real(poly, Q)
    d0 = P0.degree
    if d0 == 0:
        return True, ""
    if d0 % 2:
        return False, "odd degree after removing real roots +-sqrt(Q)"
    g = d0 // 2
    for j in range(g):
        if P0[2 * g - j] * Q ** (g - j) != P0[j]:
            return False, f"functional equation fails at coefficient {j}"
    h = trace_polynomial(P0, Q)
    hs = squarefree_part(h)
    hf = [Fraction(c) for c in hs.coeffs]
    # count roots in (-2 sqrt Q, 2 sqrt Q]
    n_in = sturm_count_quadratic(hf, (Fraction(0), Fraction(-2)), (Fraction(0), Fraction(2)), Q)
    if n_in != hs.degree:
        return False, "trace polynomial has roots outside [-2 sqrt(Q), 2 sqrt(Q)] or non-real roots"
    return True, ""


def _violation_witness(poly: IntPoly, Q: int) -> dict:
    bound = Fraction(1, 1 << 20)
    for _ in range(12):
        for b in isolate_roots(poly, bound):
            lo, hi = b.abs2_interval()
            if hi < Q or lo > Q:
                return {
                    "center": [str(b.re), str(b.im)],
                    "radius": str(b.radius),
                    "abs2_interval": [str(lo), str(hi)],
                    "expected_abs2": str(Q),
                }
        bound /= 1 << 20
    return {"note": "no separating box found within refinement budget"}


def validate(poly, q: int, m: int, scale_n: int = 0) -> WeilPolynomial:
    """Certify that ``poly`` is a Weil q-polynomial of weight m.

    ``poly`` may be an IntPoly or an ascending coefficient list.  Raises
    BadPrimePower, NotMonic, AbsValueViolation or DegenerateInput.
    """
    if not isinstance(poly, IntPoly):
        poly = IntPoly(poly)
    pa = prime_power(q) if isinstance(q, int) else None
    if pa is None:
        raise BadPrimePower(f"q={q} is not a prime power")
    p, a = pa
    if m < 0:
        raise DegenerateInput(f"weight m={m} must be nonnegative")
    if poly.degree < 1:
        raise DegenerateInput("polynomial must have positive degree")
    if poly.lc != 1:
        raise NotMonic(f"leading coefficient is {poly.lc}, expected 1")
    Q = q**m
    if poly[0] == 0:
        raise AbsValueViolation("zero is a root", witness={"root": "0", "expected_abs2": str(Q)})
    ok, why = _on_circle_exact(poly, Q)
    if not ok:
        raise AbsValueViolation(why, witness=_violation_witness(poly, Q))
    _, plus, minus = _split_real(poly, Q)
    factors = factor_rational(poly)
    roots, pairing = _paired_roots(poly, factors)
    fe_sign = 1 if poly[0] > 0 else -1
    w = WeilPolynomial(
        poly=poly,
        q=q,
        p=p,
        a=a,
        m=m,
        roots=tuple(roots),
        conj_pairing=tuple(pairing),
        fe_sign=fe_sign,
        scale_n=scale_n,
        real_count=(plus, minus),
    )
    w.__dict__["factors"] = factors
    return w


def _paired_roots(poly: IntPoly, factors):
    """Isolate roots per irreducible factor and match each root with its complex conjugate.

    On the circle the conjugate of a root r is Q/r, so this realizes the pairing involution.
    """
    bound = Fraction(1, 1 << 30)
    while True:
        roots = []
        for f, k in factors:
            for b in isolate_roots(f, bound):
                roots.append(BoxedRoot(b.center, b.radius, k, f))
        roots.sort(key=lambda b: (b.center[0], b.center[1]))
        disjoint = all(not roots[i].intersects(roots[j]) for i in range(len(roots)) for j in range(i + 1, len(roots)))
        pairing = []
        for b in roots:
            c = b.conj()
            hits = [j for j, o in enumerate(roots) if o.factor == b.factor and o.intersects(c)]
            pairing.append(hits[0] if len(hits) == 1 else None)
        if disjoint and None not in pairing and all(pairing[pairing[i]] == i for i in range(len(pairing))):
            return roots, pairing
        bound /= 1 << 30


def functional_equation_sign(poly: IntPoly, Q: int) -> int | None:
    """Sign s with t^d P(Q/t) = s Q^(d/2) P(t) when d*m makes Q^(d/2) rational; None otherwise."""
    d = poly.degree
    if d % 2 and not is_square(Q):
        return None
    for s in (1, -1):
        if _fe_holds(poly, Q, s):
            return s
    return None


def _fe_holds(poly: IntPoly, Q: int, s: int) -> bool:
    d = poly.degree
    # compare c_i Q^i against s Q^(d/2) c_(d-i), squaring out half powers when d is odd
    if d % 2 == 0:
        half = Q ** (d // 2)
        return all(poly[i] * Q**i == s * half * poly[d - i] for i in range(d + 1))
    R = isqrt(Q)
    half = R**d
    return all(poly[i] * Q**i == s * half * poly[d - i] for i in range(d + 1))


def prescale(coeffs, q: int, n: int) -> IntPoly:
    """Monic integer polynomial whose roots are q^n times the roots of the rational polynomial ``coeffs``.

    Use ``validate(prescale(c, q, n), q, m + 2*n, scale_n=n)`` for Weil numbers that only
    become integral after multiplying by q^n.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    d = len(cs) - 1
    lc = cs[-1]
    scaled = [cs[i] / lc * Fraction(q) ** (n * (d - i)) for i in range(d + 1)]
    if any(c.denominator != 1 for c in scaled):
        raise NotMonic("roots are not integral after scaling by q^n")
    return IntPoly([int(c) for c in scaled])
