import random
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings
from hypothesis import strategies as st

from frobtorus.core.factor import factor_rational, is_irreducible_rational
from frobtorus.core.finite_field import FiniteField, roots_in_field, select_modulus
from frobtorus.core.linalg import (
    charpoly_det,
    det,
    gram_schmidt_norms,
    integer_kernel,
    lll,
    mat_mul,
    minimal_poly_squarefree_at,
    kron,
    snf,
)
from frobtorus.core.newton import antisymmetrizer_trace, charpoly_from_power_sums, power_traces
from frobtorus.core.poly import IntPoly, resultant, squarefree_decomposition
from frobtorus.core.roots import isolate_roots

t = sympy.symbols("t")


def sym(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)), t)


# -- factorization ---------------------------------------------------------


def test_factor_distinct_rational_roots():
    fs = factor_rational(IntPoly([2, -3, 1]))
    assert sorted(fs, key=lambda x: x[0].coeffs) == [(IntPoly([-2, 1]), 1), (IntPoly([-1, 1]), 1)]


def test_factor_t4_minus_4():
    fs = factor_rational(IntPoly([-4, 0, 0, 0, 1]))
    assert sorted(fs, key=lambda x: x[0].coeffs) == [(IntPoly([-2, 0, 1]), 1), (IntPoly([2, 0, 1]), 1)]


def test_factor_repeated():
    assert factor_rational(IntPoly([2, -1, 1]) ** 2) == [(IntPoly([2, -1, 1]), 2)]


def _expand(fs):
    out = IntPoly([1])
    for f, k in fs:
        out = out * f**k
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7), st.lists(st.integers(-6, 6), min_size=2, max_size=5))
def test_factor_round_trip_and_irreducible(a, b):
    p = IntPoly(a) * IntPoly(b)
    if not p or p.degree < 1:
        return
    fs = factor_rational(p)
    prod = _expand(fs)
    # equal up to a rational scalar
    assert prod.degree == p.degree
    assert all(x * p.lc == y * prod.lc for x, y in zip(prod.coeffs, p.coeffs))
    ref = sympy.factor_list(sym(p))[1]
    assert sorted(f.degree for f, k in fs for _ in range(k)) == sorted(
        g.degree() for g, k in ref for _ in range(k)
    )
    for f, _ in fs:
        assert f.content() == 1 and f.lc > 0
        assert is_irreducible_rational(f)


def test_irreducible_low_degree_oracle():
    # degree <= 4 cross-check against sympy on a fixed sample
    rng = random.Random(5)
    for _ in range(80):
        d = rng.randint(1, 4)
        c = [rng.randint(-9, 9) for _ in range(d)] + [rng.choice([1, 2, 3])]
        p = IntPoly(c)
        assert is_irreducible_rational(p.primitive()) == sym(p.primitive()).is_irreducible


# -- root isolation ----------------------------------------------------------


def test_isolate_i():
    boxes = isolate_roots(IntPoly([1, 0, 1]), Fraction(1, 10))
    assert len(boxes) == 2
    for b in boxes:
        assert b.radius <= Fraction(1, 10)
    assert any(b.contains((0, 1)) for b in boxes) and any(b.contains((0, -1)) for b in boxes)


def test_isolate_quadratic_against_high_precision():
    boxes = isolate_roots(IntPoly([2, -1, 1]), Fraction(1, 100))
    mpmath.mp.dps = 50
    expected = [(mpmath.mpf(1) + s * mpmath.sqrt(7) * 1j) / 2 for s in (1, -1)]
    for z in expected:
        hits = [b for b in boxes if abs(complex(b.to_complex()) - complex(z)) <= float(b.radius) + 1e-30]
        assert len(hits) == 1


def test_isolate_triple_root():
    boxes = isolate_roots(IntPoly([-1, 3, -3, 1]))
    assert len(boxes) == 1 and boxes[0].multiplicity == 3 and boxes[0].contains((1, 0))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=8))
def test_isolate_multiplicities_sum(c):
    c = c + [1]
    p = IntPoly(c)
    boxes = isolate_roots(p, Fraction(1, 2**10))
    assert sum(b.multiplicity for b in boxes) == p.degree
    for a, b in combinations(boxes, 2):
        assert not a.intersects(b)


def test_refine_keeps_conjugate_pairs():
    p = IntPoly([9, -3, 2, -1, 1])
    coarse = isolate_roots(p, Fraction(1, 4))
    for b in coarse:
        fine = b.refine(Fraction(1, 2**40))
        partner = [c for c in coarse if c.intersects(b.conj())]
        assert len(partner) == 1
        assert partner[0].refine(Fraction(1, 2**40)).intersects(fine.conj())


# -- power sums and exterior traces --------------------------------------------


def test_charpoly_power_sums_examples():
    assert charpoly_from_power_sums([3, 5]) == [2, -3, 1]
    assert charpoly_from_power_sums([3, 3, 3]) == [-1, 3, -3, 1]
    assert charpoly_from_power_sums([0, -4]) == [2, 0, 1]


def test_charpoly_length_mismatch():
    with pytest.raises(ValueError):
        charpoly_from_power_sums([1, 2], r=3)


def test_antisymmetrizer_examples():
    assert antisymmetrizer_trace([[1, 0, 0], [0, 2, 0], [0, 0, 3]], 2) == 11
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    assert antisymmetrizer_trace(eye, 4) == 1
    with pytest.raises(ValueError):
        antisymmetrizer_trace(eye, 5)


def _principal_minor_sum(M, i):
    n = len(M)
    return sum(det([[M[r][c] for c in S] for r in S]) for S in combinations(range(n), i))


def test_antisymmetrizer_principal_minors():
    rng = random.Random(11)
    M = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(5)]
    for i in range(1, 6):
        assert antisymmetrizer_trace(M, i) == _principal_minor_sum(M, i)


# -- finite fields -------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (7, 3), (2, 5)]), st.data())
def test_field_axioms(ld, data):
    l, d = ld
    F = FiniteField(l, select_modulus(l, d))
    pick = st.lists(st.integers(0, l - 1), min_size=d, max_size=d)
    a, b, c = (F(data.draw(pick)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == F.one()
    assert a ** (F.order) == a


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FiniteField(2, [1, 0, 1])  # (y+1)^2


def test_roots_in_field():
    F = FiniteField(5, select_modulus(5, 2))
    rs = roots_in_field([2, 0, 1], F)  # t^2 + 2, -2 is a non-residue mod 5
    assert len(rs) == 2
    for r in rs:
        assert r * r + 2 == F.zero()


# -- lattices ------------------------------------------------------------------


def _gram_schmidt(B):
    Bs, mu = [], [[Fraction(0)] * len(B) for _ in B]
    for i, b in enumerate(B):
        v = [Fraction(x) for x in b]
        for j in range(i):
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(b, Bs[j])) / sum(y * y for y in Bs[j])
            v = [x - mu[i][j] * y for x, y in zip(v, Bs[j])]
        Bs.append(v)
    return [sum(x * x for x in v) for v in Bs], mu


def test_lll_properties():
    rng = random.Random(3)
    delta = Fraction(3, 4)
    for _ in range(40):
        n = rng.randint(2, 5)
        B = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        if det(B) == 0:
            continue
        R = lll(B)
        assert abs(det(R)) == abs(det(B))
        norms, mu = _gram_schmidt(R)
        assert norms == gram_schmidt_norms(R)
        for k in range(1, n):
            assert all(abs(mu[k][j]) <= Fraction(1, 2) for j in range(k))
            assert norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]
        # same lattice: each reduced row is an integer combination of B
        inv = sympy.Matrix(B).inv()
        for r in R:
            coeffs = sympy.Matrix([r]) * inv
            assert all(x.is_integer for x in coeffs)


def test_snf_transform_identity():
    rng = random.Random(8)
    for _ in range(30):
        A = [[rng.randint(-6, 6) for _ in range(rng.randint(1, 4))] for _ in range(rng.randint(1, 4))]
        width = len(A[0])
        A = [r[:width] + [0] * (width - len(r)) for r in A]
        U, D, V = snf(A)
        assert mat_mul(mat_mul(U, A), V) == D
        diag = [D[i][i] for i in range(min(len(D), width))]
        assert all(x >= 0 for x in diag)
        for x, y in zip(diag, diag[1:]):
            assert (y == 0) or (x != 0 and y % x == 0)
        ref = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
        assert sorted(abs(ref[i, i]) for i in range(min(ref.shape))) == sorted(diag)


def test_integer_kernel():
    K = integer_kernel([[2, 4, 6]])
    assert len(K) == 2
    for k in K:
        assert 2 * k[0] + 4 * k[1] + 6 * k[2] == 0


# -- semisimplicity transfer ----------------------------------------------------


def _companion(c):
    n = len(c) - 1
    M = [[0] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = 1
    for i in range(n):
        M[i][n - 1] = -c[i]
    return M


def _block(A, B):
    n, m = len(A), len(B)
    return [r + [0] * m for r in A] + [[0] * n + r for r in B]


@pytest.mark.parametrize(
    "alpha, semisimple",
    [
        # two copies of a CM pair with product 2 on the diagonal: semisimple
        (_block(_companion([2, -1, 1]), _companion([2, -1, 1])), True),
        # the same eigenvalues with a Jordan block: not semisimple
        (
            [[0, -2, 1, 0], [1, 1, 0, 1], [0, 0, 0, -2], [0, 0, 1, 1]],
            False,
        ),
        (_block(_companion([3, 0, 1]), _companion([3, 1, 1])), True),
        ([[0, -3, 1, 0], [1, 0, 0, 1], [0, 0, 0, -3], [0, 0, 1, 0]], False),
    ],
)
def test_semisimplicity_transfer(alpha, semisimple):
    # eigenvalues come in pairs with product q; q is the product of all of them to the power 2/n
    q = sympy.integer_nthroot(int(sympy.Matrix(alpha).det()), len(alpha) // 2)[0]
    T = kron(alpha, alpha)
    assert minimal_poly_squarefree_at(T, q) == semisimple
    assert sympy.Matrix(alpha).is_diagonalizable() == semisimple


def test_resultant_and_squarefree():
    a, b = IntPoly([2, -1, 1]), IntPoly([-3, 0, 1])
    assert resultant(a, b) == sympy.resultant(sym(a).as_expr(), sym(b).as_expr(), t)
    dec = squarefree_decomposition(a**2 * b)
    assert sorted((f.coeffs, k) for f, k in dec) == sorted([(a.coeffs, 2), (b.coeffs, 1)])


def test_power_traces_match_charpoly():
    rng = random.Random(1)
    for n in range(1, 5):
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        assert charpoly_from_power_sums(power_traces(M, n)) == charpoly_det(M)
