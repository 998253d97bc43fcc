"""Multiplicative relations among Frobenius eigenvalues.

Write the distinct roots as ``pi_i`` and ``R = sqrt(q^m)``.  The relation
lattice is the set of ``n`` in ``Z^d`` with ``prod pi_i^(n_i) = zeta * R^(sum n)``
for a root of unity ``zeta``.  It is spanned by

* the pairing relations ``e_i + e_ibar`` (``zeta = 1``),
* ``e_i`` for each real root ``+-R`` (``zeta = +-1``),
* lifts of the lattice ``Lambda`` of ``k`` in ``Z^g`` with ``sum k_j phi_j`` rational,
  where ``pi_j = R exp(i pi phi_j)`` runs over the roots in the upper half plane.

``Lambda`` is proposed by LLL on certified argument intervals.  A candidate
``(k, k0)`` with ``sum k_j phi_j + k0 = 0`` is accepted only after an exact
separation argument: ``beta = prod r^(2|k_j|)`` (conjugated where ``k_j < 0``)
is an algebraic integer whose conjugates all have modulus ``c = Q^(sum |k_j|)``,
so ``beta != c`` forces ``|beta - c| >= (2c)^(1-D)`` with ``D`` the number of
conjugates of ``beta``.  A ball enclosure of ``beta - c`` below that bound
proves equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from mpmath import iv

from ..core.ball import Ball
from ..core.linalg import gram_schmidt_norms, lll, saturate, solve
from ..core.roots import BoxedRoot, _isolate_squarefree
from ..errors import SearchBudgetExceeded
from ..weil.weilpoly import WeilPolynomial

DEFAULT_HEIGHT = 32
DEFAULT_START_BITS = 128
DEFAULT_ESCALATIONS = 10
DEFAULT_CERT_BITS = 1 << 15


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i * num / order) in lowest terms."""

    num: int
    order: int

    @classmethod
    def from_turn(cls, t: Fraction) -> "RootOfUnity":
        t = Fraction(t) % 1
        return cls(t.numerator, t.denominator)

    @property
    def turn(self) -> Fraction:
        return Fraction(self.num, self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_turn(self.turn + other.turn)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.from_turn(self.turn * k)

    def conj(self) -> "RootOfUnity":
        return RootOfUnity.from_turn(-self.turn)

    def is_one(self) -> bool:
        return self.order == 1

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        return f"exp(2*pi*i*{self.num}/{self.order})"

    def to_dict(self) -> dict:
        return {"num": self.num, "order": self.order}


ONE = RootOfUnity(0, 1)


@dataclass(frozen=True)
class Relation:
    vector: tuple
    zeta: RootOfUnity
    kind: str  # pairing | real | extra

    def to_dict(self) -> dict:
        return {"vector": list(self.vector), "zeta": self.zeta.to_dict(), "kind": self.kind}


@dataclass(frozen=True)
class RelationLattice:
    ambient_rank: int
    basis: tuple  # Relation objects; a Z-basis of the lattice
    complete: bool
    height_bound: int
    precision_bits: int
    cm_pairs: tuple  # (i_plus, i_minus)
    real_roots: tuple  # ((index, zeta), ...)
    extra: tuple  # ((k vector in Z^g, zeta), ...), a basis of Lambda
    notes: tuple = field(default=())

    @property
    def saturation_flag(self) -> bool:
        return self.complete

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def extra_rank(self) -> int:
        return len(self.extra)

    @property
    def angle_rank(self) -> int:
        return len(self.cm_pairs) - self.extra_rank

    def zeta_of(self, n) -> RootOfUnity | None:
        """Root of unity with prod pi_i^n_i = zeta * R^(sum n), or None if n is not a relation."""
        n = list(n)
        z = ONE
        for i, zi in self.real_roots:
            z = z * zi ** n[i]
        k = [n[a] - n[b] for a, b in self.cm_pairs]
        if not any(k):
            return z
        if not self.extra:
            return None
        A = [[ext[0][j] for ext in self.extra] for j in range(len(k))]
        coeffs = solve(A, k)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            return None
        for c, (_, zb) in zip(coeffs, self.extra):
            z = z * zb ** int(c)
        return z

    def contains(self, n) -> bool:
        return self.zeta_of(n) is not None

    def iota_closed(self) -> bool:
        """Each basis relation composed with the pairing is again a relation with conjugate zeta."""
        pairing = list(range(self.ambient_rank))
        for a, b in self.cm_pairs:
            pairing[a], pairing[b] = b, a
        for rel in self.basis:
            img = [0] * self.ambient_rank
            for i, x in enumerate(rel.vector):
                img[pairing[i]] += x
            z = self.zeta_of(img)
            if z is None or z != rel.zeta.conj():
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "basis": [r.to_dict() for r in self.basis],
            "complete": self.complete,
            "height_bound": self.height_bound,
            "precision_bits": self.precision_bits,
            "extra_rank": self.extra_rank,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# certified arguments


def _frac_of_raw(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _iv_of(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


class _RootCache:
    """Roots of w refined on demand, aligned with ``w.roots``."""

    def __init__(self, w: WeilPolynomial):
        self.w = w
        self.current = list(w.roots)

    def at_radius(self, radius: Fraction) -> list[BoxedRoot]:
        if all(b.radius <= radius for b in self.current):
            return self.current
        by_factor: dict = {}
        for b in self.current:
            by_factor.setdefault(b.factor, None)
        for f in by_factor:
            by_factor[f] = _isolate_squarefree(f, radius)
        out = []
        for b in self.current:
            hits = [c for c in by_factor[b.factor] if c.intersects(b)]
            if len(hits) != 1:
                raise ArithmeticError("refined boxes do not match the original roots")
            c = hits[0]
            out.append(BoxedRoot(c.center, c.radius, b.multiplicity, b.factor))
        self.current = out
        return out


def argument_intervals(boxes, bits: int) -> list[tuple[Fraction, Fraction]]:
    """Rational enclosures of arg(z)/pi for each box (boxes away from 0)."""
    out = []
    old = iv.prec
    iv.prec = bits + 32
    try:
        for b in boxes:
            re = iv.mpf([0, 0]) + _iv_of(b.re) + iv.mpf([-1, 1]) * _iv_of(b.radius)
            im = iv.mpf([0, 0]) + _iv_of(b.im) + iv.mpf([-1, 1]) * _iv_of(b.radius)
            phi = iv.atan2(im, re) / iv.pi
            lo, hi = phi._mpi_
            out.append((_frac_of_raw(lo), _frac_of_raw(hi)))
    finally:
        iv.prec = old
    return out


# ---------------------------------------------------------------------------
# exact certification


def _falling(n: int, t: int) -> int:
    out = 1
    for i in range(t):
        out *= n - i
    return out


def conjugate_bound(w: WeilPolynomial, indices) -> int:
    """Upper bound on the number of Galois conjugates of a monomial in the given roots."""
    per_factor: dict = {}
    for i in set(indices):
        f = w.roots[i].factor
        per_factor[f] = per_factor.get(f, 0) + 1
    D = 1
    for f, t in per_factor.items():
        D *= _falling(f.degree, t)
    return D


def certify_candidate(w: WeilPolynomial, cache: _RootCache, cm_pairs, k, max_bits: int) -> bool | None:
    """Prove prod (r_j/R)^(2 k_j) = 1 exactly.  None means the precision budget ran out."""
    Q = w.Q
    factors = []  # (root index, exponent) with exponent > 0
    for (a, b), kj in zip(cm_pairs, k):
        if kj > 0:
            factors.append((a, 2 * kj))
        elif kj < 0:
            factors.append((b, -2 * kj))
    if not factors:
        return True
    total = sum(abs(x) for x in k)
    c = Q**total
    D = conjugate_bound(w, [i for i, _ in factors])
    need = (D - 1) * (2 * c).bit_length() + 2
    if need > max_bits:
        return None
    K = sum(e for _, e in factors)
    prec = need + c.bit_length() + K.bit_length() + 16
    for _ in range(2):
        boxes = cache.at_radius(Fraction(1, 1 << (prec + 8)))
        beta = Ball.exact_int(1, prec + 16)
        for i, e in factors:
            b = boxes[i]
            beta = beta * Ball.from_rational(b.re, b.im, b.radius, prec + 16) ** e
        dist = beta.distance_upper(c)
        if dist * (2 * c) ** (D - 1) < 1:
            return True
        # a certified gap means beta != c; otherwise retry with more bits
        if (beta - Ball.exact_int(c, prec + 16)).abs_lower() > 0:
            return False
        prec *= 2
        if prec > max_bits + c.bit_length() + 64:
            return None
    return None


# ---------------------------------------------------------------------------
# search


def _lattice_search(w: WeilPolynomial, cache: _RootCache, cm_pairs, H: int, start_bits: int, escalations: int, max_cert_bits: int):
    """Return (certified (k, k0) relations, complete flag, bits used, notes)."""
    g = len(cm_pairs)
    bits = start_bits
    notes = []
    certified: list = []
    for _ in range(escalations + 1):
        boxes = cache.at_radius(Fraction(1, 1 << (bits + 24)))
        ivs = argument_intervals([boxes[a] for a, _ in cm_pairs], bits + 24)
        mids = [(lo + hi) / 2 for lo, hi in ivs]
        eps = max((hi - lo) / 2 for lo, hi in ivs)
        C = 1 << bits
        rows = []
        for j in range(g):
            r = [0] * (g + 2)
            r[j] = 1
            r[g + 1] = round(C * mids[j])
            rows.append(r)
        last = [0] * (g + 2)
        last[g] = 1
        last[g + 1] = C
        rows.append(last)
        B = lll(rows)
        norms = gram_schmidt_norms(B)
        gH = g * H
        T2 = g * H * H + gH * gH + (gH * (Fraction(1, 2) + C * eps)) ** 2
        t = 0
        for s, ns in enumerate(norms):
            if ns <= T2:
                t = s + 1
        cands = [(b[:g], b[g]) for b in B[:t]]
        plausible = True
        for k, k0 in cands:
            val = sum(kj * m for kj, m in zip(k, mids)) + k0
            err = sum(abs(kj) for kj in k) * eps
            if abs(val) > err or not any(k):
                plausible = False
                break
        if not plausible:
            bits *= 2
            continue
        certified = []
        complete = True
        for k, k0 in cands:
            ok = certify_candidate(w, cache, cm_pairs, k, max_cert_bits)
            if ok is True:
                certified.append((k, k0))
            elif ok is None:
                complete = False
                notes.append(f"certification budget exhausted for k={list(k)}")
            else:
                bits *= 2
                break
        else:
            return certified, complete, bits, notes
    notes.append("precision escalations exhausted")
    return certified, False, bits, notes


def relation_lattice(
    w: WeilPolynomial,
    height: int = DEFAULT_HEIGHT,
    start_bits: int = DEFAULT_START_BITS,
    escalations: int = DEFAULT_ESCALATIONS,
    max_cert_bits: int = DEFAULT_CERT_BITS,
    strict: bool = False,
) -> RelationLattice:
    """Certified basis of the relation lattice of the distinct roots of w.

    When the search budget runs out the returned lattice has ``complete=False``;
    with ``strict=True`` SearchBudgetExceeded is raised instead, carrying the partial lattice.
    """
    d = len(w.roots)
    cm = tuple(w.cm_pairs())
    basis = []
    for a, b in cm:
        v = [0] * d
        v[a] += 1
        v[b] += 1
        basis.append(Relation(tuple(v), ONE, "pairing"))
    reals = []
    for i in w.self_paired():
        z = ONE if w.roots[i].re > 0 else RootOfUnity(1, 2)
        v = [0] * d
        v[i] = 1
        basis.append(Relation(tuple(v), z, "real"))
        reals.append((i, z))
    extra = []
    complete = True
    bits = 0
    notes: list = []
    if cm:
        cache = _RootCache(w)
        found, complete, bits, notes = _lattice_search(w, cache, cm, height, start_bits, escalations, max_cert_bits)
        g = len(cm)
        if found:
            ks = [list(k) for k, _ in found]
            k0s = [k0 for _, k0 in found]
            Lam = saturate(ks, g)
            A = [[ks[i][j] for i in range(len(ks))] for j in range(g)]
            for lam in Lam:
                coeffs = solve(A, lam)
                s = -sum(c * k0 for c, k0 in zip(coeffs, k0s))
                # prod x_j^lam_j = exp(i pi s)
                z = RootOfUnity.from_turn(Fraction(s) / 2)
                extra.append((tuple(lam), z))
                v = [0] * d
                for (a, _), lj in zip(cm, lam):
                    v[a] += lj
                basis.append(Relation(tuple(v), z, "extra"))
    rl = RelationLattice(
        ambient_rank=d,
        basis=tuple(basis),
        complete=complete,
        height_bound=height,
        precision_bits=bits,
        cm_pairs=cm,
        real_roots=tuple(reals),
        extra=tuple(extra),
        notes=tuple(notes),
    )
    if strict and not complete:
        err = SearchBudgetExceeded("relation search exhausted its budget")
        err.partial = rl
        raise err
    return rl
