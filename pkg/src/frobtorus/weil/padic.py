"""Primes of Q[pi] above p: local degrees, slopes and the action of the pairing involution.

Two independent methods:

* ``ore_local_primes``: Ore's theorem at order one.  For each irreducible
  factor phi of F mod p, expand F phi-adically, take the principal Newton
  polygon and its residual polynomials.  When all residual polynomials are
  squarefree the local factorization is read off directly.  Returns None
  otherwise.
* ``round2_local_primes``: build the p-maximal order by the Round 2
  (Zassenhaus) enlargement, split O/pO by its idempotents, and measure each
  component.  Always applicable; used when Ore's method gives up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .. import errors
from ..core import modp
from ..core.finite_field import FiniteField, fpoly_divmod, fpoly_gcd, fpoly_monic, fpoly_powmod, fpoly_sub
from ..core.linalg import det_bareiss, hnf_rows, kernel_mod, rank_mod
from ..core.poly import IntPoly, discriminant, divexact, ord_p
from .newton_polygon import lower_hull
from .weilpoly import WeilPolynomial


@dataclass(frozen=True)
class LocalPrime:
    degree: int  # [Q[pi]_v : Q_p]
    slope: Fraction  # ord_v(pi) / ord_v(q), in [0, m]
    factor_id: int  # index into the irreducible factors of the polynomial
    ramification: int
    residue_degree: int
    iota_stable: bool | None  # does pi -> q^m/pi fix v?  None when undetermined
    method: str

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "slope": str(self.slope),
            "factor_id": self.factor_id,
            "e": self.ramification,
            "f": self.residue_degree,
            "iota_stable": self.iota_stable,
            "method": self.method,
        }


@dataclass(frozen=True)
class PadicPrimeProfile:
    p: int
    primes: tuple  # LocalPrime entries

    def total_degree(self) -> int:
        return sum(v.degree for v in self.primes)

    def slope_multiset(self) -> dict:
        out: dict = {}
        for v in self.primes:
            out[v.slope] = out.get(v.slope, 0) + v.degree
        return out

    def to_dict(self) -> dict:
        return {"p": self.p, "primes": [v.to_dict() for v in self.primes]}


def prime_profile(w: WeilPolynomial, method: str = "auto", max_precision: int = 4096) -> PadicPrimeProfile:
    """One entry per prime of Q[pi] above p, for each irreducible factor of the polynomial."""
    out = []
    for k, (F, _) in enumerate(w.factors):
        entries = None
        if method in ("auto", "ore"):
            entries = ore_local_primes(F, w.p, w.a, w.m)
            if entries is None and method == "ore":
                raise errors.NotApplicable("residual polynomials are not squarefree")
        if entries is None:
            entries = round2_local_primes(F, w.p, w.a, w.q**w.m, max_precision=max_precision)
        out.extend(LocalPrime(e.degree, e.slope, k, e.ramification, e.residue_degree, e.iota_stable, e.method) for e in entries)
    return PadicPrimeProfile(w.p, tuple(out))


# ---------------------------------------------------------------------------
# Ore / Montes order one


def _phi_adic(F: IntPoly, phi: IntPoly, count: int) -> list[IntPoly]:
    out = []
    rest = F
    for _ in range(count + 1):
        q, r = divmod(rest, phi)
        out.append(r)
        rest = q
        if not rest:
            break
    while len(out) < count + 1:
        out.append(IntPoly())
    return out


def _poly_val(a: IntPoly, p: int):
    if not a:
        return None
    return min(ord_p(c, p) for c in a.coeffs if c)


def ore_local_primes(F: IntPoly, p: int, a: int, m: int):
    """Local primes of Q[t]/F above p by Ore's theorem, or None if F is not regular at order one."""
    if m == 0:
        return None
    n = F.degree
    if n == 1:
        v = ord_p(F[0], p)
        return [LocalPrime(1, Fraction(v, a), 0, 1, 1, 2 * v == m * a, "ore")]
    out = []
    for phibar, mult in modp.factor(list(F.coeffs), p):
        phi = IntPoly(phibar)
        fdeg = phi.degree
        is_t = phibar == [0, 1]
        expansion = _phi_adic(F, phi, mult)
        pts = []
        for k in range(mult + 1):
            v = _poly_val(expansion[k], p)
            if v is not None:
                pts.append((k, Fraction(v)))
        if not pts or pts[-1][0] != mult or pts[-1][1] != 0:
            return None
        if mult == 1 and len(pts) == 1:
            # phi itself is the local factor
            out.append(LocalPrime(fdeg, Fraction(0) if not is_t else Fraction(_poly_val(F, p) or 0, a), 0, 1, fdeg, None, "ore"))
            continue
        hull = lower_hull(pts)
        if hull[0][0] != 0:
            return None
        field = FiniteField(p, phibar)
        for (s, us), (t, ut) in zip(hull, hull[1:]):
            lam = (us - ut) / (t - s)
            h, e = lam.numerator, lam.denominator
            deg_r = (t - s) // e
            coeffs = []
            for j in range(deg_r + 1):
                k = s + j * e
                target = int(us) - j * h
                ak = expansion[k]
                if ak and _poly_val(ak, p) == target:
                    red = [c // p**target % p for c in ak.coeffs]
                    coeffs.append(field(red))
                else:
                    coeffs.append(field.zero())
            factors = _factor_residual(coeffs, field)
            if factors is None:
                return None
            for psi, psi_deg in factors:
                slope = Fraction(lam, a) if is_t else Fraction(0)
                stable = None
                if is_t and 2 * lam == m * a and psi is not None:
                    stable = _is_self_reciprocal(psi, p)
                elif m > 0 and 2 * slope != m:
                    stable = False
                out.append(LocalPrime(e * fdeg * psi_deg, slope, 0, e, fdeg * psi_deg, stable, "ore"))
    if sum(v.degree for v in out) != n:
        return None
    return out


def _factor_residual(coeffs, field: FiniteField):
    """Irreducible factors (psi or None, degree) of a residual polynomial, or None if not squarefree."""
    R = list(coeffs)
    while R and not R[-1]:
        R.pop()
    if len(R) <= 1:
        return []
    deriv = [c * i for i, c in enumerate(R)][1:]
    while deriv and not deriv[-1]:
        deriv.pop()
    if not deriv or len(fpoly_gcd(R, deriv, field)) != 1:
        return None
    if field.degree == 1:
        # residual field is F_p: factor completely
        ints = [_as_int(c, field) for c in R]
        return [(tuple(g), len(g) - 1) for g in modp.factor_squarefree(ints, field.l)]
    return [(None, d) for d in _ddf_degrees(fpoly_monic(R, field), field)]


def _as_int(c, field: FiniteField) -> int:
    # the degree-one field F_p[t]/(t + c0) stores constants
    return c.value[0] if c.value else 0


def _ddf_degrees(f, field: FiniteField) -> list[int]:
    """Degrees of irreducible factors of a monic squarefree f over ``field``."""
    out = []
    x = [field.zero(), field.one()]
    h = x
    k = 0
    while len(f) > 1:
        k += 1
        if 2 * k > len(f) - 1:
            out.append(len(f) - 1)
            break
        h = fpoly_powmod(h, field.order, f, field)
        g = fpoly_gcd(fpoly_sub(h, x, field), f, field)
        if len(g) > 1:
            out.extend([k] * ((len(g) - 1) // k))
            f = fpoly_divmod(f, g, field)[0]
            f = fpoly_monic(f, field)
            h = fpoly_divmod(h, f, field)[1]
    return out


def _is_self_reciprocal(psi: tuple, p: int) -> bool:
    rev = list(reversed(psi))
    return modp.monic(rev, p) == modp.monic(list(psi), p)


# ---------------------------------------------------------------------------
# Round 2


def _kmul(x, y, F: IntPoly):
    n = F.degree
    prod = [Fraction(0)] * (2 * n - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    prod[i + j] += a * b
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n):
                prod[k - n + i] -= c * F[i]
    return prod[:n]


def _inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


class _Order:
    """An order of K = Q[t]/F given by a rational basis matrix in power-basis coordinates."""

    def __init__(self, F: IntPoly, B):
        self.F = F
        self.n = F.degree
        self.B = B
        self.Binv = _inverse(B)
        n = self.n
        self.T = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                c = self.coords(_kmul(B[i], B[j], F))
                ci = [int(x) for x in c]
                if any(Fraction(x) != y for x, y in zip(ci, c)):
                    raise ArithmeticError("basis does not span a ring")
                self.T[i][j] = self.T[j][i] = ci

    def coords(self, x):
        n = self.n
        return [sum(x[k] * self.Binv[k][j] for k in range(n)) for j in range(n)]

    def to_field(self, c):
        n = self.n
        return [sum(Fraction(c[i]) * self.B[i][k] for i in range(n)) for k in range(n)]

    def mult_matrix(self, u, mod):
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i, ui in enumerate(u):
            if ui:
                Ti = self.T[i]
                for j in range(n):
                    row = M[j]
                    Tij = Ti[j]
                    for k in range(n):
                        row[k] += ui * Tij[k]
        return [[x % mod for x in row] for row in M]

    def mul(self, u, v, mod):
        M = self.mult_matrix(u, mod)
        n = self.n
        return [sum(v[j] * M[j][k] for j in range(n)) % mod for k in range(n)]

    def power(self, u, e, mod):
        n = self.n
        result = self.one(mod)
        base = [x % mod for x in u]
        while e:
            if e & 1:
                result = self.mul(result, base, mod)
            base = self.mul(base, base, mod)
            e >>= 1
        return result

    def one(self, mod=None):
        c = self.coords([Fraction(1)] + [Fraction(0)] * (self.n - 1))
        out = [int(x) for x in c]
        return [x % mod for x in out] if mod else out


def _radical_basis(O: _Order, p: int):
    """Z-basis (O-coordinates) of the p-radical I_p = {x : x^(p^j) in pO}."""
    n = O.n
    j = 1
    while p**j < n:
        j += 1
    e = p**j
    rows = []
    for i in range(n):
        basis_i = [int(i == k) for k in range(n)]
        rows.append(O.power(basis_i, e, p))
    # left kernel: sum x_i rows_i = 0
    cols = [[rows[i][k] for i in range(n)] for k in range(n)]
    ker = kernel_mod(cols, p)
    gens = [list(v) for v in ker] + [[p * int(i == k) for k in range(n)] for i in range(n)]
    return hnf_rows(gens), ker


def _enlarge(O: _Order, p: int):
    """One Round 2 step.  Returns the enlarged order, or None if O is p-maximal."""
    n = O.n
    G, _ = _radical_basis(O, p)
    Ginv = _inverse(G)
    # for each basis element b_i: coordinates of b_i * gamma_k in the I_p basis, mod p
    rows = []
    for i in range(n):
        Ti = O.T[i]
        row = []
        for gk in G:
            prod = [sum(gk[l] * Ti[l][c] for l in range(n)) for c in range(n)]
            ipc = [sum(prod[l] * Ginv[l][c] for l in range(n)) for c in range(n)]
            for x in ipc:
                if x.denominator != 1:
                    raise ArithmeticError("radical is not an ideal")
                row.append(int(x) % p)
        rows.append(row)
    cols = [[rows[i][c] for i in range(n)] for c in range(len(rows[0]))]
    ker = kernel_mod(cols, p)
    if not ker:
        return None
    gens = [list(v) for v in ker] + [[p * int(i == k) for k in range(n)] for i in range(n)]
    H = hnf_rows(gens)
    newB = []
    for row in H:
        v = [sum(Fraction(row[i], p) * O.B[i][k] for i in range(n)) for k in range(n)]
        newB.append(v)
    return _Order(O.F, newB)


def p_maximal_order(F: IntPoly, p: int, max_steps: int = 200) -> _Order:
    n = F.degree
    O = _Order(F, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    for _ in range(max_steps):
        bigger = _enlarge(O, p)
        if bigger is None:
            return O
        O = bigger
    raise errors.PrecisionExhausted("Round 2 did not stabilize")


def _primitive_idempotents(O: _Order, p: int):
    n = O.n
    frob_rows = [O.power([int(i == k) for k in range(n)], p, p) for i in range(n)]
    # left kernel of (Frob - I)
    cols = [[(frob_rows[i][k] - int(i == k)) % p for i in range(n)] for k in range(n)]
    B0 = kernel_mod(cols, p)
    r = len(B0)
    one = O.one(p)
    idems = [one]
    for y in B0:
        if len(idems) == r:
            break
        new = []
        for e in idems:
            ey = O.mul(e, y, p)
            pieces = []
            total = [0] * n
            for c in range(p):
                z = [(a - c * b) % p for a, b in zip(ey, e)]
                zp = O.power(z, p - 1, p)
                ec = [(a - b) % p for a, b in zip(e, zp)]
                if any(ec):
                    pieces.append(ec)
                    total = [(a + b) % p for a, b in zip(total, ec)]
                    if total == e:
                        break
            new.extend(pieces)
        idems = new
    if len(idems) != r:
        raise ArithmeticError("idempotent splitting incomplete")
    return idems


def _lift_idempotent(O: _Order, e, p: int, N: int):
    mod = p
    e = list(e)
    while mod < p**N:
        mod = min(mod * mod, p**N)
        e2 = O.mul(e, e, mod)
        e3 = O.mul(e2, e, mod)
        e = [(3 * a - 2 * b) % mod for a, b in zip(e2, e3)]
    return e


def round2_local_primes(F: IntPoly, p: int, a: int, Q: int, max_precision: int = 4096):
    n = F.degree
    if n == 1:
        v = ord_p(F[0], p)
        m_a = ord_p(Q, p) if Q > 1 else 0
        return [LocalPrime(1, Fraction(v, a), 0, 1, 1, 2 * v == m_a, "round2")]
    O = p_maximal_order(F, p)
    idems = _primitive_idempotents(O, p)
    _, radical_ker = _radical_basis(O, p)
    vQ = ord_p(Q, p) if Q > 1 else 0
    disc_v = ord_p(discriminant(F), p) or 0
    N = max(2 * disc_v + vQ * n + 4, vQ * n + 2)
    if N > max_precision:
        raise errors.PrecisionExhausted(f"needs p-adic precision {N} > {max_precision}")
    theta = [int(x) for x in O.coords([Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2))]
    # iota(theta) = Q / theta in power-basis coordinates
    inv_theta = [Fraction(-F[k + 1], F[0]) for k in range(n)]
    iota_theta = [Q * c for c in inv_theta]
    out = []
    lifted = []
    while True:
        mod = p**N
        lifted = [_lift_idempotent(O, e, p, N) for e in idems]
        ok = True
        entries = []
        for e_mod_p, e in zip(idems, lifted):
            Me = O.mult_matrix(e_mod_p, p)
            d_v = rank_mod(Me, p)
            radical_part = [O.mul(e_mod_p, k, p) for k in radical_ker]
            f_v = d_v - (rank_mod(radical_part, p) if radical_part else 0)
            one = O.one()
            u = [(t + o - x) % mod for t, o, x in zip(O.mul(theta, e, mod), one, e)]
            det = det_bareiss(O.mult_matrix(u, mod)) % mod
            if det == 0:
                ok = False
                break
            v = ord_p(det, p)
            entries.append((d_v, f_v, Fraction(v, d_v * a)))
        if ok:
            break
        N *= 2
        if N > max_precision:
            raise errors.PrecisionExhausted("idempotent lifting exceeded the precision ceiling")
    images = [_iota_image(O, e, iota_theta, p, idems) for e in lifted]
    for (d_v, f_v, slope), img, idx in zip(entries, images, range(len(entries))):
        out.append(LocalPrime(d_v, slope, 0, d_v // f_v, f_v, img == idx, "round2"))
    return out


def _iota_image(O: _Order, e, iota_theta, p: int, idems) -> int | None:
    x = O.to_field(e)
    F = O.F
    n = O.n
    acc = [Fraction(0)] * n
    for c in reversed(x):
        acc = _kmul(acc, iota_theta, F)
        acc[0] += c
    c = O.coords(acc)
    red = []
    for v in c:
        if v.denominator % p == 0:
            return None
        red.append(v.numerator * pow(v.denominator, -1, p) % p)
    for i, e2 in enumerate(idems):
        if e2 == red:
            return i
    return None
