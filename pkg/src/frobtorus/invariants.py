"""Torus invariants in tensor powers, degree-two generation, and pole orders.

A weight system is a list of characters of a diagonalizable group with
multiplicities.  A basis tensor of ``V^{(x)n}`` is invariant when its weights
sum to zero.  It lies in the algebra generated by the degree-two invariants
(positions may be permuted) when its weights can be matched in pairs summing
to zero.  Both counts depend only on how many times each weight is used, so
they are computed with generating functions over the character group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .core.factor import factor_rational
from .core.linalg import integer_kernel
from .core.poly import IntPoly
from .errors import CombinatorialExplosion, IncompleteLattice, NotApplicable
from .torus.lattice import AbelianGroup, character_lattice, quotient_key, smith_quotient
from .torus.relations import RelationLattice
from .weil.weilpoly import WeilPolynomial

DEFAULT_EXPLOSION_BOUND = 10**12


@dataclass(frozen=True)
class WeightSystem:
    group: AbelianGroup
    weights: tuple  # ((character key, multiplicity), ...)
    source: str = "synthetic"

    def __post_init__(self):
        if any(mult < 1 for _, mult in self.weights):
            raise ValueError("multiplicities must be positive")

    @property
    def dimension(self) -> int:
        return sum(mult for _, mult in self.weights)

    def aggregated(self) -> dict:
        """Total multiplicity per distinct character."""
        out: dict = {}
        for chi, mult in self.weights:
            key = self.group.normalize(chi)
            out[key] = out.get(key, 0) + mult
        return out

    def negated(self) -> "WeightSystem":
        return WeightSystem(self.group, tuple((self.group.neg(c), k) for c, k in self.weights), self.source)

    def to_dict(self) -> dict:
        return {
            "moduli": list(self.group.moduli),
            "weights": [[list(c), k] for c, k in self.weights],
            "source": self.source,
        }


def weight_system(w: WeilPolynomial) -> WeightSystem:
    """Weights xi_sigma of the torus of w, each with the multiplicity of its root."""
    L = character_lattice(w)
    ws = tuple((L.xi(i), r.multiplicity) for i, r in enumerate(w.roots))
    return WeightSystem(L.group, ws, "weil")


def synthetic_weight_system(characters, relations, multiplicities=None) -> WeightSystem:
    """Weights given as vectors in Z^k, read in Z^k / <relations>."""
    characters = [list(c) for c in characters]
    k = len(characters[0]) if characters else 0
    V, diag, group = smith_quotient(relations, k)
    mults = multiplicities or [1] * len(characters)
    return WeightSystem(group, tuple((quotient_key(V, diag, c), m) for c, m in zip(characters, mults)))


# ---------------------------------------------------------------------------
# counting


def invariant_dimension(ws: WeightSystem, n: int) -> int:
    """dim (V^{(x)n})^S: weighted count of weight sequences summing to zero."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    G = ws.group
    agg = list(ws.aggregated().items())
    dp = {G.zero(): 1}
    for _ in range(n):
        nxt: dict = {}
        for s, cnt in dp.items():
            for chi, a in agg:
                t = G.add(s, chi)
                nxt[t] = nxt.get(t, 0) + cnt * a
        dp = nxt
    return dp.get(G.zero(), 0)


def _series_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += x * b[j]
    return out


def dim_generated(ws: WeightSystem, n: int) -> int:
    """Degree-n part of the algebra generated by degree-two invariants, tensor positions permuted.

    A weight sequence qualifies when its weights split into pairs chi, -chi.
    The exponential generating function factors over the classes {chi, -chi}.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    G = ws.group
    agg = ws.aggregated()
    series = [Fraction(1)] + [Fraction(0)] * n
    done = set()
    for chi, a in agg.items():
        if chi in done:
            continue
        neg = G.neg(chi)
        done.add(chi)
        done.add(neg)
        factor = [Fraction(0)] * (n + 1)
        if neg == chi:
            # 2 chi = 0: any even number of copies pairs up
            for c in range(0, n + 1, 2):
                factor[c] = Fraction(a**c, factorial(c))
        else:
            b = agg.get(neg, 0)
            for c in range(0, n // 2 + 1):
                factor[2 * c] = Fraction((a * b) ** c, factorial(c) ** 2)
        series = _series_mul(series, factor, n)
    val = series[n] * factorial(n)
    assert val.denominator == 1
    return int(val)


@dataclass(frozen=True)
class InvariantRow:
    n: int
    dim_invariants: int
    dim_generated: int

    @property
    def generated_in_degree_two(self) -> bool:
        return self.dim_generated == self.dim_invariants

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_invariants": self.dim_invariants,
            "dim_generated": self.dim_generated,
            "generated_in_degree_two": self.generated_in_degree_two,
        }


@dataclass(frozen=True)
class InvariantReport:
    rows: tuple

    @property
    def generated_in_degree_two(self) -> bool:
        return all(r.generated_in_degree_two for r in self.rows)

    def row(self, n: int) -> InvariantRow:
        return next(r for r in self.rows if r.n == n)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "generated_in_degree_two": self.generated_in_degree_two}


def degree_two_generation(ws: WeightSystem, n_max: int, bound: int = DEFAULT_EXPLOSION_BOUND) -> InvariantReport:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if ws.dimension**n_max > bound:
        raise CombinatorialExplosion(f"dimension^n = {ws.dimension}^{n_max} exceeds {bound}")
    rows = tuple(InvariantRow(n, invariant_dimension(ws, n), dim_generated(ws, n)) for n in range(1, n_max + 1))
    return InvariantReport(rows)


# ---------------------------------------------------------------------------
# pole orders


def trivial_relation_sublattice(rl: RelationLattice) -> list[list[int]]:
    """Basis of the relations whose root of unity is 1."""
    basis = [list(r.vector) for r in rl.basis]
    if not basis:
        return []
    N = 1
    for r in rl.basis:
        N = N * r.zeta.order // _gcd(N, r.zeta.order)
    a = [r.zeta.num * (N // r.zeta.order) for r in rl.basis]
    # x in Z^r with sum x_i a_i = 0 mod N
    K = integer_kernel([a + [N]])
    out = []
    for row in K:
        x = row[:-1]
        v = [sum(x[i] * basis[i][j] for i in range(len(basis))) for j in range(rl.ambient_rank)]
        if any(v):
            out.append(v)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def fixed_weight_system(w: WeilPolynomial, rl: RelationLattice) -> WeightSystem:
    """Roots as characters of Z^d modulo the relations with trivial root of unity."""
    d = rl.ambient_rank
    V, diag, group = smith_quotient(trivial_relation_sublattice(rl), d)
    ws = []
    for i, r in enumerate(w.roots):
        e = [0] * d
        e[i] = 1
        ws.append((quotient_key(V, diag, e), r.multiplicity))
    return WeightSystem(group, tuple(ws), "fixed")


@dataclass(frozen=True)
class PoleRow:
    n: int
    twist: int
    fixed_dim: int
    invariant_dim: int

    @property
    def equal(self) -> bool:
        return self.fixed_dim == self.invariant_dim

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "twist": self.twist,
            "fixed_dim": self.fixed_dim,
            "invariant_dim": self.invariant_dim,
            "equal": self.equal,
        }


@dataclass(frozen=True)
class PoleOrderReport:
    rows: tuple

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)

    def row(self, n: int) -> PoleRow:
        return next(r for r in self.rows if r.n == n)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "all_equal": self.all_equal}


def fixed_dimension(w: WeilPolynomial, rl: RelationLattice, n: int, twist: int | None = None) -> int:
    """Ordered root tuples (with multiplicity) whose product is q^twist; twist defaults to mn/2."""
    if not rl.complete:
        raise IncompleteLattice("relation lattice was truncated by the search budget")
    if twist is None:
        if (w.m * n) % 2:
            raise NotApplicable("mn must be even for the middle twist")
        twist = w.m * n // 2
    if 2 * twist != w.m * n:
        return 0  # absolute values differ
    return invariant_dimension(fixed_weight_system(w, rl), n)


def pole_orders(w: WeilPolynomial, rl: RelationLattice, n_max: int, twist: int | None = None) -> PoleOrderReport:
    """For each n <= n_max with mn even: fixed-vector dimension against torus invariants.

    With ``twist`` set, only the n with mn = 2*twist can contribute.
    """
    if not rl.complete:
        raise IncompleteLattice("relation lattice was truncated by the search budget")
    ws = weight_system(w)
    fixed_ws = fixed_weight_system(w, rl)
    rows = []
    for n in range(0, n_max + 1):
        if (w.m * n) % 2:
            continue
        j = w.m * n // 2
        if twist is not None and twist != j:
            rows.append(PoleRow(n, twist, 0, invariant_dimension(ws, n)))
            continue
        rows.append(PoleRow(n, j, invariant_dimension(fixed_ws, n), invariant_dimension(ws, n)))
    return PoleOrderReport(tuple(rows))


# ---------------------------------------------------------------------------
# transcendental part


def _cyclotomic(N: int) -> IntPoly:
    """Phi_N by repeated exact division."""
    f = IntPoly([-1] + [0] * (N - 1) + [1])
    for d in range(1, N):
        if N % d == 0:
            f = f // _cyclotomic(d)
    return f


def _totient(N: int) -> int:
    out, n, p = N, N, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


def _is_scaled_cyclotomic(f: IntPoly, R: int) -> bool:
    """Are the roots of f equal to R times roots of unity?"""
    d = f.degree
    cs = []
    for i, c in enumerate(f.coeffs):
        scale = R ** (d - i)
        if c % scale:
            return False
        cs.append(c // scale)
    g = IntPoly(cs)
    # phi(N) = d forces N <= 2 d^2 (crude but safe for small d), and N <= 6 d^2 generally suffices
    for N in range(1, 6 * d * d + 3):
        if _totient(N) == d and _cyclotomic(N) == g:
            return True
    return False


@dataclass(frozen=True)
class TranscendentalSplit:
    algebraic: tuple  # ((factor, multiplicity), ...)
    transcendental: tuple
    algebraic_dimension: int
    distinct: bool

    def to_dict(self) -> dict:
        return {
            "algebraic_dimension": self.algebraic_dimension,
            "algebraic_factors": [[list(f.coeffs), k] for f, k in self.algebraic],
            "transcendental_degree": sum(f.degree * k for f, k in self.transcendental),
            "transcendental_distinct": self.distinct,
        }


def transcendental_split(w: WeilPolynomial) -> TranscendentalSplit:
    if w.m % 2:
        raise NotApplicable("the algebraic part is defined for even weight")
    R = w.q ** (w.m // 2)
    alg, tr = [], []
    for f, k in factor_rational(w.poly):
        (alg if _is_scaled_cyclotomic(f, R) else tr).append((f, k))
    return TranscendentalSplit(
        algebraic=tuple(alg),
        transcendental=tuple(tr),
        algebraic_dimension=sum(f.degree * k for f, k in alg),
        distinct=all(k == 1 for _, k in tr),
    )


def distinct_transcendental_eigenvalues(w: WeilPolynomial) -> bool:
    return transcendental_split(w).distinct
