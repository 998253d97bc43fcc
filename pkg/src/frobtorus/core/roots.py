"""Certified complex root isolation.

Floating-point root finders only *propose* approximations.  Each proposal is
rounded to a dyadic Gaussian rational ``z`` and then certified exactly: for a
squarefree ``f`` of degree ``n`` the disc of radius ``n*|f(z)/f'(z)|`` about
``z`` contains a root.  When the ``n`` discs are pairwise disjoint every disc
holds exactly one root.  Precision doubles until the requested radius bound
is met.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import mpmath

from .poly import IntPoly, squarefree_decomposition

CRational = tuple  # (Fraction real, Fraction imag)


@dataclass(frozen=True)
class BoxedRoot:
    """A disc ``|z - center| <= radius`` holding ``multiplicity`` roots (counted with multiplicity)."""

    center: tuple[Fraction, Fraction]
    radius: Fraction
    multiplicity: int
    factor: IntPoly = field(default=None, compare=False, repr=False)

    @property
    def re(self) -> Fraction:
        return self.center[0]

    @property
    def im(self) -> Fraction:
        return self.center[1]

    def to_complex(self) -> complex:
        return complex(float(self.center[0]), float(self.center[1]))

    def contains(self, z) -> bool:
        dx = Fraction(z[0]) - self.center[0]
        dy = Fraction(z[1]) - self.center[1]
        return dx * dx + dy * dy <= self.radius * self.radius

    def intersects(self, other: "BoxedRoot") -> bool:
        return _discs_meet(self.center, self.radius, other.center, other.radius)

    def conj(self) -> "BoxedRoot":
        return BoxedRoot((self.center[0], -self.center[1]), self.radius, self.multiplicity, self.factor)

    def refine(self, radius_bound) -> "BoxedRoot":
        """Shrink to radius <= radius_bound, keeping the same root."""
        if self.radius <= radius_bound:
            return self
        if self.factor is None:
            raise ValueError("box carries no source factor; cannot refine")
        for b in _isolate_squarefree(self.factor, Fraction(radius_bound)):
            if self.intersects(b) and _inside(b, self):
                return BoxedRoot(b.center, b.radius, self.multiplicity, self.factor)
        # the shrunken disc might poke out of the old one; pick the unique meeting box
        meets = [b for b in _isolate_squarefree(self.factor, Fraction(radius_bound)) if self.intersects(b)]
        if len(meets) == 1:
            b = meets[0]
            return BoxedRoot(b.center, b.radius, self.multiplicity, self.factor)
        raise ArithmeticError("refinement lost track of the root")

    def abs2_interval(self) -> tuple[Fraction, Fraction]:
        """Rational enclosure of |z|^2 over the disc."""
        c2 = self.center[0] ** 2 + self.center[1] ** 2
        lo_abs = sqrt_lower(c2) - self.radius
        hi_abs = sqrt_upper(c2) + self.radius
        lo = max(lo_abs, Fraction(0)) ** 2
        return lo, hi_abs * hi_abs


def _inside(inner: BoxedRoot, outer: BoxedRoot) -> bool:
    dx = inner.center[0] - outer.center[0]
    dy = inner.center[1] - outer.center[1]
    gap = outer.radius - inner.radius
    return gap >= 0 and dx * dx + dy * dy <= gap * gap


def _discs_meet(c1, r1, c2, r2) -> bool:
    dx = c1[0] - c2[0]
    dy = c1[1] - c2[1]
    s = r1 + r2
    return dx * dx + dy * dy <= s * s


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    """Rational upper bound for sqrt(x), x >= 0."""
    if x <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = x.numerator * scale
    d = x.denominator
    v = isqrt(n // d) + 1
    return Fraction(v, 1 << bits)


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    if x <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    v = isqrt((x.numerator * scale) // x.denominator)
    return Fraction(v, 1 << bits)


def _ceval(coeffs, zr: Fraction, zi: Fraction):
    """Evaluate an integer polynomial at a Gaussian rational; returns (re, im)."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * zr - ai * zi + c, ar * zi + ai * zr
    return ar, ai


def _to_dyadic(x, bits: int) -> Fraction:
    """Round an mpf exactly to the nearest multiple of 2^-bits."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    exact = Fraction(-int(man) if sign else int(man)) * Fraction(2) ** int(exp)
    return Fraction(round(exact * (1 << bits)), 1 << bits)


def _propose(f: IntPoly, dps: int, seeds=None):
    """Approximate roots at ``dps`` digits: polyroots once, then Newton polishing."""
    coeffs = [int(c) for c in reversed(f.coeffs)]
    dcoeffs = [int(c) for c in reversed(f.derivative().coeffs)]
    with mpmath.workdps(dps + 10):
        if seeds is None:
            try:
                with mpmath.workdps(max(30, f.degree * 2)):
                    seeds = mpmath.polyroots(coeffs, maxsteps=200 + 20 * f.degree, extraprec=60)
            except mpmath.libmp.libhyper.NoConvergence:
                return None
        out = []
        tol = mpmath.mpf(2) ** (-int(dps * 3.33))
        for z in seeds:
            z = mpmath.mpc(z)
            for _ in range(200):
                fz = mpmath.polyval(coeffs, z)
                dz = mpmath.polyval(dcoeffs, z)
                if dz == 0:
                    break
                step = fz / dz
                z -= step
                if abs(step) <= tol * max(1, abs(z)):
                    break
            out.append(z)
        return out


def _certify(f: IntPoly, proposals, bits: int):
    n = f.degree
    fp = f.derivative()
    boxes = []
    for r in proposals:
        zr = _to_dyadic(r.real, bits)
        zi = _to_dyadic(r.imag, bits)
        vr, vi = _ceval(f.coeffs, zr, zi)
        dr, di = _ceval(fp.coeffs, zr, zi)
        den = dr * dr + di * di
        if den == 0:
            return None
        rad2 = (vr * vr + vi * vi) / den * n * n
        rad = sqrt_upper(rad2, bits + 8)
        if rad == 0:
            rad = Fraction(1, 1 << (bits + 8))
        boxes.append(BoxedRoot((zr, zi), rad, 1, f))
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if boxes[i].intersects(boxes[j]):
                return None
    return boxes


def _isolate_squarefree(f: IntPoly, radius_bound: Fraction, start_bits: int = 64) -> list[BoxedRoot]:
    if f.degree < 1:
        return []
    if f.degree == 1:
        c = Fraction(-f[0], f[1])
        return [BoxedRoot((c, Fraction(0)), min(radius_bound, Fraction(1, 1 << 64)), 1, f)]
    bits = start_bits
    while True:
        dps = int(bits * 0.302) + 10
        props = _propose(f, dps)
        if props is not None and len(props) == f.degree:
            boxes = _certify(f, props, bits)
            if boxes is not None and all(b.radius <= radius_bound for b in boxes):
                return boxes
        bits *= 2
        if bits > 1 << 20:
            raise ArithmeticError("root isolation did not converge")


def isolate_roots(p: IntPoly, radius_bound=Fraction(1, 2**20)) -> list[BoxedRoot]:
    """Certified boxes for all complex roots of ``p``.

    Multiplicities sum to ``deg p``; boxes of distinct roots are disjoint and
    each radius is at most ``radius_bound``.
    """
    if not p or p.degree < 1:
        if not p:
            raise ValueError("zero polynomial")
        return []
    bound = Fraction(radius_bound)
    parts = squarefree_decomposition(p)
    while True:
        out = []
        for f, k in parts:
            for b in _isolate_squarefree(f, bound):
                out.append(BoxedRoot(b.center, b.radius, k, f))
        ok = all(not out[i].intersects(out[j]) for i in range(len(out)) for j in range(i + 1, len(out)))
        if ok:
            out.sort(key=lambda b: (b.center[0], b.center[1]))
            return out
        bound /= 1 << 16


def roots_as_mpc(boxes, dps: int = 30):
    with mpmath.workdps(dps):
        return [mpmath.mpc(mpmath.mpf(b.center[0]), mpmath.mpf(b.center[1])) for b in boxes]
