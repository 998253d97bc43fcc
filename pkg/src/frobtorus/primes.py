"""The prime set P(X): primes l whose Frobenius powers contain complex conjugation.

For an unramified prime l the roots of the squarefree part reduce to distinct
roots over a finite field.  Frobenius acts on them by ``r -> r^l`` and complex
conjugation by ``r -> Q/r`` (``Q = q^m``); l is a member when the second
permutation is a power of the first.

Two constructions of the permutations are available:

* ``splitting``: all roots in one field ``F_{l^d}``, ``d`` the lcm of the degrees
  of the factors mod l;
* ``residue``: one residue field ``F_l[x]/(g)`` per factor ``g`` mod l.  The
  roots of ``g`` are ``x^(l^i)`` and conjugation either maps ``x`` to
  ``x^(l^j)`` (when ``g`` is self-reciprocal) or to the generator of the
  partner factor, which fixes the permutation without building a large field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .core import modp
from .core.arith import primes_up_to
from .core.finite_field import FiniteField, roots_in_field, select_modulus
from .core.poly import IntPoly, discriminant
from .weil.weilpoly import WeilPolynomial



@dataclass(frozen=True)
class FrobeniusSample:
    l: int
    factor_degrees: tuple = ()
    in_PX: bool | None = None
    skipped_reason: str | None = None  # "ramified" | "equals p"
    frobenius: tuple | None = field(default=None, compare=False, repr=False)
    tau: tuple | None = field(default=None, compare=False, repr=False)
    root_factor: tuple | None = field(default=None, compare=False, repr=False)
    method: str = ""

    @property
    def skipped(self) -> bool:
        return self.skipped_reason is not None

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "factor_degrees": list(self.factor_degrees),
            "in_PX": self.in_PX,
            "skipped_reason": self.skipped_reason,
        }


@dataclass(frozen=True)
class PrimeSelectionReport:
    bound: int
    members: tuple
    density_estimate: Fraction | None
    skipped: tuple  # ((l, reason), ...)
    tested: int

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "members": list(self.members),
            "member_count": len(self.members),
            "tested": self.tested,
            "density_estimate": None if self.density_estimate is None else str(self.density_estimate),
            "density_float": None if self.density_estimate is None else float(self.density_estimate),
            "skipped": [[l, r] for l, r in self.skipped],
        }


def _distinct_factors(w: WeilPolynomial) -> list[IntPoly]:
    return [f for f, _ in w.factors]


def _sqf_discriminant(w: WeilPolynomial) -> int:
    return discriminant(w.sqf)


def _compose(a, b):
    return tuple(a[i] for i in b)  # (a o b)(i) = a[b[i]]


def _power_contains(phi: tuple, tau: tuple) -> bool:
    n = len(phi)
    cur = tuple(range(n))
    seen = set()
    while cur not in seen:
        if cur == tau:
            return True
        seen.add(cur)
        cur = _compose(phi, cur)
    return False


def _check_involution(phi: tuple, tau: tuple) -> None:
    n = len(tau)
    if any(tau[tau[i]] != i for i in range(n)):
        raise ArithmeticError("conjugation permutation is not an involution")
    if _compose(phi, tau) != _compose(tau, phi):
        raise ArithmeticError("Frobenius does not commute with conjugation")


def _permutations_splitting(factors, l: int, Q: int, d: int, modulus_index: int = 0):
    F = FiniteField(l, select_modulus(l, d, index=modulus_index))
    roots, labels = [], []
    for k, f in enumerate(factors):
        rs = roots_in_field(modp.reduce_mod(f.coeffs, l), F)
        if len(rs) != f.degree:
            raise ArithmeticError("factor does not split in the expected field")
        roots.extend(rs)
        labels.extend([k] * len(rs))
    index = {r: i for i, r in enumerate(roots)}
    phi = tuple(index[r.frobenius(1)] for r in roots)
    tau = tuple(index[r.inverse() * Q] for r in roots)
    return phi, tau, tuple(labels)


def _reciprocal_mod(g: list[int], Q: int, l: int) -> list[int]:
    """Monic polynomial whose roots are Q/r for the roots r of g."""
    e = len(g) - 1
    out = [g[e - i] * pow(Q, e - i, l) % l for i in range(e + 1)]
    return modp.monic(out, l)


def _permutations_residue(local_factors, l: int, Q: int):
    """Labels (block, i) stand for x_block^(l^i); partner blocks are labelled through conjugation."""
    blocks = []  # (rational factor index, g)
    for k, gs in enumerate(local_factors):
        for g, mult in gs:
            if mult != 1:
                raise ArithmeticError("factor is not squarefree mod l")
            blocks.append((k, tuple(g)))
    pos = {}
    offset = 0
    for b, (_, g) in enumerate(blocks):
        pos[b] = offset
        offset += len(g) - 1
    n = offset
    phi = [0] * n
    tau = [None] * n
    labels = [0] * n
    by_poly = {g: b for b, (_, g) in enumerate(blocks)}
    for b, (k, g) in enumerate(blocks):
        e = len(g) - 1
        for i in range(e):
            phi[pos[b] + i] = pos[b] + (i + 1) % e
            labels[pos[b] + i] = k
    done = set()
    for b, (k, g) in enumerate(blocks):
        if b in done:
            continue
        e = len(g) - 1
        star = tuple(_reciprocal_mod(list(g), Q, l))
        partner = by_poly.get(star)
        if partner is None:
            raise ArithmeticError("conjugate factor missing mod l")
        if partner == b:
            F = FiniteField(l, list(g))
            x = F.gen()
            target = x.inverse() * Q
            cur, j = x, None
            for i in range(e):
                if cur == target:
                    j = i
                    break
                cur = cur.frobenius(1)
            if j is None:
                raise ArithmeticError("conjugate root not in the Frobenius orbit")
            for i in range(e):
                tau[pos[b] + i] = pos[b] + (i + j) % e
        else:
            # the roots of the partner are labelled as the images Q/x^(l^i)
            for i in range(e):
                tau[pos[b] + i] = pos[partner] + i
                tau[pos[partner] + i] = pos[b] + i
            done.add(partner)
        done.add(b)
    return tuple(phi), tuple(tau), tuple(labels)


def frobenius_permutations(w: WeilPolynomial, l: int, method: str = "auto", modulus_index: int = 0):
    """(phi, tau, labels, factor degrees mod l, method used) for an unramified l.

    ``auto`` uses the residue construction; ``splitting`` builds F_{l^d} with the
    ``modulus_index``-th irreducible modulus of degree d.
    """
    factors = _distinct_factors(w)
    local = [modp.factor(f.coeffs, l) for f in factors]
    degs = tuple(sorted(len(g) - 1 for gs in local for g, _ in gs))
    d = lcm(*degs) if degs else 1
    Q = w.Q % l
    if method == "auto":
        method = "residue"
    if method == "splitting":
        phi, tau, labels = _permutations_splitting(factors, l, Q, d, modulus_index)
    elif method == "residue":
        phi, tau, labels = _permutations_residue(local, l, Q)
    else:
        raise ValueError(f"unknown method {method!r}")
    _check_involution(phi, tau)
    return phi, tau, labels, degs, method


def is_in_PX(
    w: WeilPolynomial, l: int, method: str = "auto", disc: int | None = None, modulus_index: int = 0
) -> FrobeniusSample:
    if l == w.p:
        return FrobeniusSample(l=l, skipped_reason="equals p")
    if disc is None:
        disc = _sqf_discriminant(w)
    if disc % l == 0:
        return FrobeniusSample(l=l, skipped_reason="ramified")
    phi, tau, labels, degs, used = frobenius_permutations(w, l, method, modulus_index)
    return FrobeniusSample(
        l=l,
        factor_degrees=degs,
        in_PX=_power_contains(phi, tau),
        frobenius=phi,
        tau=tau,
        root_factor=labels,
        method=used,
    )


def enumerate_PX(w: WeilPolynomial, bound: int, method: str = "auto") -> PrimeSelectionReport:
    if bound < 2:
        raise ValueError("bound must be at least 2")
    disc = _sqf_discriminant(w)
    members, skipped = [], []
    tested = 0
    for l in primes_up_to(bound):
        s = is_in_PX(w, l, method, disc)
        if s.skipped:
            skipped.append((l, s.skipped_reason))
            continue
        tested += 1
        if s.in_PX:
            members.append(l)
    density = Fraction(len(members), tested) if tested else None
    return PrimeSelectionReport(bound, tuple(members), density, tuple(skipped), tested)


def frobenius_evidence(w: WeilPolynomial, count: int = 500, method: str = "auto") -> list[FrobeniusSample]:
    """Samples at the first ``count`` unskipped primes (Galois evidence for the ordinary criterion)."""
    disc = _sqf_discriminant(w)
    out = []
    bound = max(100, 12 * count)
    while True:
        out = []
        for l in primes_up_to(bound):
            s = is_in_PX(w, l, method, disc)
            if not s.skipped:
                out.append(s)
                if len(out) == count:
                    return out
        bound *= 2
