"""Fixed-point complex ball arithmetic with integer mantissas.

A ``Ball`` is the disc with center ``(re + i*im) / 2**prec`` and radius
``rad / 2**prec``.  Every operation returns a ball guaranteed to contain the
exact result for all inputs drawn from the operand balls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _ceil_shift(x: int, s: int) -> int:
    return -((-x) >> s)


@dataclass(frozen=True)
class Ball:
    re: int
    im: int
    rad: int
    prec: int

    @classmethod
    def from_rational(cls, re, im, radius, prec: int) -> "Ball":
        scale = 1 << prec
        r_re = Fraction(re) * scale
        r_im = Fraction(im) * scale
        c_re = round(r_re)
        c_im = round(r_im)
        # rounding error of the center is at most 1/2 ulp per coordinate
        rad = _ceil_frac(Fraction(radius) * scale) + 1
        return cls(c_re, c_im, rad, prec)

    @classmethod
    def exact_int(cls, n: int, prec: int) -> "Ball":
        return cls(n << prec, 0, 0, prec)

    def _abs_upper(self) -> int:
        return isqrt(self.re * self.re + self.im * self.im) + 1

    def abs_upper(self) -> Fraction:
        return Fraction(self._abs_upper() + self.rad, 1 << self.prec)

    def abs_lower(self) -> Fraction:
        c = isqrt(self.re * self.re + self.im * self.im)
        return max(Fraction(c - self.rad, 1 << self.prec), Fraction(0))

    def __add__(self, other: "Ball") -> "Ball":
        return Ball(self.re + other.re, self.im + other.im, self.rad + other.rad, self.prec)

    def __sub__(self, other: "Ball") -> "Ball":
        return Ball(self.re - other.re, self.im - other.im, self.rad + other.rad, self.prec)

    def __neg__(self) -> "Ball":
        return Ball(-self.re, -self.im, self.rad, self.prec)

    def conj(self) -> "Ball":
        return Ball(self.re, -self.im, self.rad, self.prec)

    def __mul__(self, other: "Ball") -> "Ball":
        p = self.prec
        re = (self.re * other.re - self.im * other.im) >> p
        im = (self.re * other.im + self.im * other.re) >> p
        a1 = self._abs_upper()
        a2 = other._abs_upper()
        err = a1 * other.rad + a2 * self.rad + self.rad * other.rad
        rad = _ceil_shift(err, p) + 2
        return Ball(re, im, rad, p)

    def __pow__(self, n: int) -> "Ball":
        if n < 0:
            raise ValueError("negative power")
        result = Ball.exact_int(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def contains_rational(self, re, im=0) -> bool:
        scale = 1 << self.prec
        dx = Fraction(re) * scale - self.re
        dy = Fraction(im) * scale - self.im
        return dx * dx + dy * dy <= self.rad * self.rad

    def distance_upper(self, re, im=0) -> Fraction:
        """Upper bound on |z - (re + i*im)| over the ball."""
        scale = 1 << self.prec
        dx = Fraction(re) * scale - self.re
        dy = Fraction(im) * scale - self.im
        d2 = dx * dx + dy * dy
        return Fraction(_isqrt_frac_upper(d2) + self.rad, scale)

    def radius(self) -> Fraction:
        return Fraction(self.rad, 1 << self.prec)

    def center(self) -> tuple[Fraction, Fraction]:
        s = 1 << self.prec
        return Fraction(self.re, s), Fraction(self.im, s)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _isqrt_frac_upper(x: Fraction) -> int:
    v = x.numerator // x.denominator + 1
    return isqrt(v) + 1


def ball_product(balls: list[Ball]) -> Ball:
    if not balls:
        raise ValueError("empty product")
    out = balls[0]
    for b in balls[1:]:
        out = out * b
    return out
