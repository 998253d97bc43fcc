import random
from itertools import product

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from frobtorus.core.poly import IntPoly
from frobtorus.errors import CombinatorialExplosion, IncompleteLattice, NotApplicable
from frobtorus.invariants import (
    WeightSystem,
    degree_two_generation,
    dim_generated,
    distinct_transcendental_eigenvalues,
    fixed_dimension,
    invariant_dimension,
    pole_orders,
    synthetic_weight_system,
    transcendental_split,
    weight_system,
)
from frobtorus.torus.lattice import AbelianGroup
from frobtorus.torus.regularity import regularity
from frobtorus.torus.relations import relation_lattice
from frobtorus.weil.weilpoly import validate

from helpers import W, brute_force_quadratic_tuples, random_paired_system, tensor_power_root_count


def cm_elliptic():
    return WeightSystem(AbelianGroup((0,)), (((1,), 1), ((-1,), 1)))


def test_invariant_dimension_examples():
    ws = cm_elliptic()
    assert invariant_dimension(ws, 0) == 1
    assert invariant_dimension(ws, 2) == 2
    assert invariant_dimension(ws, 3) == 0
    line = WeightSystem(AbelianGroup((2,)), (((1,), 1),))
    assert invariant_dimension(line, 2) == 1


def test_three_term_negative_control():
    ws = synthetic_weight_system([[1, 0], [0, 1], [-1, -1]], [])
    rep = degree_two_generation(ws, 4)
    assert rep.row(3).dim_invariants >= 1 and rep.row(3).dim_generated == 0
    assert not rep.row(3).generated_in_degree_two
    assert not rep.generated_in_degree_two


def test_empty_weight_system():
    ws = WeightSystem(AbelianGroup(()), ())
    rep = degree_two_generation(ws, 5)
    assert all(r.dim_invariants == 0 == r.dim_generated for r in rep.rows)
    assert rep.generated_in_degree_two


def test_explosion_guard():
    ws = synthetic_weight_system([[1], [-1]] * 3, [])
    with pytest.raises(CombinatorialExplosion):
        degree_two_generation(ws, 30, bound=10**6)


# -- independent oracles --------------------------------------------------------


def _in_lattice(v, rels):
    """Is v in the row lattice of rels?  Decided with sympy's Smith form."""
    if not any(v):
        return True
    if not rels:
        return False
    A = sympy.Matrix(rels)
    B = sympy.Matrix(rels + [list(v)])
    if A.rank() != B.rank():
        return False
    da = smith_normal_form(A, domain=sympy.ZZ)
    db = smith_normal_form(B, domain=sympy.ZZ)
    pa = sympy.prod([da[i, i] for i in range(min(da.shape)) if da[i, i] != 0])
    pb = sympy.prod([db[i, i] for i in range(min(db.shape)) if db[i, i] != 0])
    return abs(pa) == abs(pb)


def brute_invariants(chars, rels, mults, n):
    """Basis tensors of the n-fold tensor power (indices run over the dimension) with trivial weight."""
    basis = [i for i, mu in enumerate(mults) for _ in range(mu)]
    k = len(chars[0]) if chars else 0
    cache = {}
    count = 0
    for tup in product(basis, repeat=n):
        s = tuple(sum(chars[i][j] for i in tup) for j in range(k))
        if s not in cache:
            cache[s] = _in_lattice(list(s), rels)
        count += cache[s]
    return count


def brute_generated(chars, rels, mults, n):
    """Basis tensors whose positions split into pairs of opposite weight."""
    basis = [i for i, mu in enumerate(mults) for _ in range(mu)]
    k = len(chars[0]) if chars else 0
    zero_pair = {}

    def pairs_to_zero(a, b):
        if (a, b) not in zero_pair:
            zero_pair[(a, b)] = _in_lattice([chars[a][j] + chars[b][j] for j in range(k)], rels)
        return zero_pair[(a, b)]

    def matchable(items):
        if not items:
            return True
        first, rest = items[0], items[1:]
        return any(pairs_to_zero(first, rest[i]) and matchable(rest[:i] + rest[i + 1 :]) for i in range(len(rest)))

    if n % 2:
        return 0
    return sum(1 for tup in product(basis, repeat=n) if matchable(list(tup)))


def test_oracle_agreement_random():
    rng = random.Random(2024)
    for _ in range(25):
        # general random weights (not only paired systems) in Z^2 mod a random relation
        k = 2
        d = rng.randint(1, 4)
        chars = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(d)]
        rels = [[rng.randint(-2, 2) for _ in range(k)]] if rng.random() < 0.6 else []
        mults = [rng.randint(1, 2) for _ in range(d)]
        while sum(mults) > 6:
            mults[mults.index(max(mults))] -= 1
        ws = synthetic_weight_system(chars, rels, mults)
        for n in range(0, 5):
            assert invariant_dimension(ws, n) == brute_invariants(chars, rels, mults, n)
            assert dim_generated(ws, n) == brute_generated(chars, rels, mults, n)


def test_paired_systems_generate_in_degree_two():
    rng = random.Random(8)
    for _ in range(50):
        ws, _ = random_paired_system(rng)
        rep = degree_two_generation(ws, 6)
        assert rep.generated_in_degree_two


def test_properties_on_random_systems():
    rng = random.Random(77)
    for _ in range(30):
        d = rng.randint(1, 5)
        chars = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(d)]
        rels = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(rng.randint(0, 2))]
        ws = synthetic_weight_system(chars, rels)
        perm = list(range(d))
        rng.shuffle(perm)
        ws_perm = synthetic_weight_system([chars[i] for i in perm], rels)
        for n in range(0, 5):
            di = invariant_dimension(ws, n)
            assert di == invariant_dimension(ws_perm, n) == invariant_dimension(ws.negated(), n)
            assert dim_generated(ws, n) <= di
        assert dim_generated(ws, 2) == invariant_dimension(ws, 2)
    # odd n without torsion weights: both vanish for CM systems
    ws = weight_system(W([9, -3, 2, -1, 1], 3))
    assert invariant_dimension(ws, 3) == 0 == dim_generated(ws, 3)


# -- weights from Weil polynomials ---------------------------------------------------


def test_weight_system_multiplicities():
    w = W((IntPoly([2, -1, 1]) ** 2).coeffs, 2)
    ws = weight_system(w)
    assert ws.dimension == 4
    assert invariant_dimension(ws, 2) == 8


# -- pole orders -------------------------------------------------------------------------


def test_pole_examples():
    w = W([2, -1, 1], 2)
    rep = pole_orders(w, relation_lattice(w), 4)
    assert rep.row(0).fixed_dim == 1
    assert rep.row(2).fixed_dim == 2 == brute_force_quadratic_tuples(-1, 2, 2, 2)
    w = W([3, 0, 1], 3)
    rep = pole_orders(w, relation_lattice(w), 4)
    assert rep.row(2).fixed_dim == brute_force_quadratic_tuples(0, 3, 2, 3)
    assert rep.row(4).fixed_dim == brute_force_quadratic_tuples(0, 3, 4, 9)


ORACLE_CASES = [
    ([2, -1, 1], 2, 1),
    ([3, 0, 1], 3, 1),
    ([-3, 0, 1], 3, 1),
    ([4, -1, 1], 2, 2),
    ([4, 2, 1], 2, 2),
    ([-2, 1], 4, 1),
    ([9, -3, 2, -1, 1], 3, 1),
    ([9, 0, 1, 0, 1], 3, 1),
    ([25, 0, -9, 0, 1], 5, 1),
    ([4, 0, 0, 0, 1], 2, 1),
    ([16, 0, 0, 0, 1], 2, 2),
    ([4, -4, 3, -2, 1], 2, 1),
    ((IntPoly([2, -1, 1]) ** 2).coeffs, 2, 1),
    ((IntPoly([2, -1, 1]) * IntPoly([2, 1, 1])).coeffs, 2, 1),
    ((IntPoly([-3, 1]) * IntPoly([3, 1])).coeffs, 9, 1),
]


@pytest.mark.parametrize("coeffs,q,m", ORACLE_CASES)
def test_fixed_dim_matches_tensor_power_oracle(coeffs, q, m):
    w = W(coeffs, q, m)
    rl = relation_lattice(w)
    for n in range(0, 4):
        if (m * n) % 2 == 0:
            assert fixed_dimension(w, rl, n) == tensor_power_root_count(list(coeffs), n, q ** (m * n // 2))
        # other twists are empty by absolute values
        for j in range(0, 3):
            if 2 * j != m * n:
                assert fixed_dimension(w, rl, n, twist=j) == 0


@pytest.mark.parametrize("coeffs,q,m", ORACLE_CASES)
def test_fixed_at_least_invariant(coeffs, q, m):
    w = W(coeffs, q, m)
    rl = relation_lattice(w)
    rep = pole_orders(w, rl, 4)
    for r in rep.rows:
        assert r.fixed_dim >= r.invariant_dim
    if regularity(w, lattice=rl).regular:
        assert rep.all_equal


def test_incomplete_lattice_rejected():
    w = W([9, -3, 2, -1, 1], 3)
    rl = relation_lattice(w, start_bits=8, escalations=0, max_cert_bits=8)
    if rl.complete:
        pytest.skip("search completed at minimal budget")
    with pytest.raises(IncompleteLattice):
        pole_orders(w, rl, 2)


# -- transcendental part ------------------------------------------------------------------


def test_distinct_eigenvalues():
    assert distinct_transcendental_eigenvalues(W([4, -1, 1], 2, 2))
    assert not distinct_transcendental_eigenvalues(W((IntPoly([4, -1, 1]) ** 2).coeffs, 2, 2))
    with pytest.raises(NotApplicable):
        distinct_transcendental_eigenvalues(W([2, -1, 1], 2, 1))


def test_k3_like_split():
    from helpers import height_one_poly

    T20 = height_one_poly(10, 257, 0)  # degree 20, weight 2 over F_257
    P = IntPoly([-257, 1]) * T20
    w = validate(P, 257, 2)
    sp = transcendental_split(w)
    assert sp.algebraic_dimension == 1 and sp.distinct
    # algebraic part: roots q times roots of unity, here q itself
    w2 = validate(IntPoly([-257, 1]) ** 2 * IntPoly([257**2, 0, 1]) * T20, 257, 2)
    sp2 = transcendental_split(w2)
    assert sp2.algebraic_dimension == 4 and sp2.distinct
