"""Newton polygons normalized so that ord(q) = 1, and the ordinarity test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.poly import IntPoly, ord_p
from ..errors import NotApplicable
from .weilpoly import WeilPolynomial


@dataclass(frozen=True)
class NewtonPolygon:
    slopes: tuple  # ((slope: Fraction, multiplicity: int), ...) ascending by slope
    vertices: tuple  # ((i, value: Fraction), ...)

    def multiset(self) -> dict:
        return {s: k for s, k in self.slopes}

    def is_symmetric(self, m: int) -> bool:
        ms = self.multiset()
        return all(ms.get(m - s, 0) == k for s, k in ms.items())

    def to_dict(self) -> dict:
        return {"slopes": [[str(s), k] for s, k in self.slopes]}


def lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points sorted by x (monotone chain)."""
    pts = sorted(points)
    hull: list = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon_of(poly: IntPoly, p: int, a: int = 1) -> NewtonPolygon:
    """Slopes of the roots of ``poly`` in units of ord_p(p^a)."""
    pts = [(i, Fraction(ord_p(c, p), a)) for i, c in enumerate(poly.coeffs) if c != 0]
    hull = lower_hull(pts)
    acc: dict[Fraction, int] = {}
    # roots at zero have infinite valuation; none occur for Weil polynomials
    for (i, vi), (j, vj) in zip(hull, hull[1:]):
        s = (vi - vj) / (j - i)
        acc[s] = acc.get(s, 0) + (j - i)
    slopes = tuple(sorted(acc.items()))
    return NewtonPolygon(slopes=slopes, vertices=tuple(hull))


def newton_polygon(w: WeilPolynomial) -> NewtonPolygon:
    return newton_polygon_of(w.poly, w.p, w.a)


@dataclass(frozen=True)
class OrdinaryResult:
    ordinary: bool
    middle_index: int
    coefficient: int
    valuation: int | None  # ord_p of the middle coefficient (None if it is 0)
    slopes_agree: bool  # cross-check against the Newton polygon

    def to_dict(self) -> dict:
        return {
            "ordinary": self.ordinary,
            "middle_coefficient": self.coefficient,
            "middle_index": self.middle_index,
            "p_valuation": self.valuation,
            "newton_cross_check": self.slopes_agree,
        }


def is_ordinary(w: WeilPolynomial) -> OrdinaryResult:
    """Ordinary iff the middle coefficient is a p-adic unit.

    Raises NotApplicable for odd degree, weight 0, or real roots.
    """
    d = w.degree
    if d % 2:
        raise NotApplicable("ordinarity needs even degree")
    if w.m == 0:
        raise NotApplicable("ordinarity needs positive weight")
    if w.has_real_roots:
        raise NotApplicable("ordinarity is not defined with real roots")
    g = d // 2
    c = w.poly[g]
    v = ord_p(c, w.p)
    ordinary = v == 0
    np = newton_polygon(w)
    by_slopes = np.multiset() == {Fraction(0): g, Fraction(w.m): g}
    return OrdinaryResult(ordinary, g, c, v, by_slopes == ordinary)
