import random
from fractions import Fraction

import pytest
import sympy

from frobtorus.core.poly import IntPoly
from frobtorus.errors import AbsValueViolation, BadPrimePower, NotApplicable, NotMonic
from frobtorus.weil.newton_polygon import is_ordinary, newton_polygon
from frobtorus.weil.padic import prime_profile
from frobtorus.weil.weilpoly import prescale, validate

from helpers import W

F0, F1, F2 = Fraction(0), Fraction(1), Fraction(2)
HALF = Fraction(1, 2)


def test_validate_cm_quadratic():
    w = W([2, -1, 1], 2)
    assert w.conj_pairing == (1, 0)
    for r in w.roots:
        lo, hi = r.abs2_interval()
        assert lo <= 2 <= hi


def test_validate_rejects_rational_roots():
    with pytest.raises(AbsValueViolation):
        W([2, -3, 1], 2)


def test_validate_sqrt_minus_3():
    w = W([3, 0, 1], 3)
    assert w.conj_pairing == (1, 0)


def test_validate_clauses():
    with pytest.raises(NotMonic):
        W([2, -1, 2], 2)
    with pytest.raises(BadPrimePower):
        W([6, -1, 1], 6)


def test_real_roots_self_paired():
    w = W([-3, 0, 1], 3)
    assert w.self_paired() == [0, 1]
    assert w.real_count == (1, 1)


def test_repeated_roots_accepted():
    w = W((IntPoly([2, -1, 1]) ** 2).coeffs, 2)
    assert [r.multiplicity for r in w.roots] == [2, 2]


def test_prescaled_nonintegral():
    # roots (1 +- sqrt(-7))/4 are Weil 2-numbers of weight -1 after dividing by 2
    P = prescale([Fraction(1, 2), Fraction(-1, 2), 1], 2, 1)
    w = validate(P, 2, 1, scale_n=1)
    assert w.poly == IntPoly([2, -1, 1]) and w.scale_n == 1


def test_newton_examples():
    assert newton_polygon(W([2, -1, 1], 2)).multiset() == {F0: 1, F1: 1}
    assert newton_polygon(W([3, 0, 1], 3)).multiset() == {HALF: 2}
    assert newton_polygon(W([25, 0, 0, 0, 1], 5)).multiset() == {HALF: 4}


def test_ordinary_examples():
    assert is_ordinary(W([2, -1, 1], 2)).ordinary
    assert not is_ordinary(W([3, 0, 1], 3)).ordinary
    r = is_ordinary(W([9, -3, 2, -1, 1], 3))
    assert r.ordinary and r.coefficient == 2 and r.valuation == 0 and r.slopes_agree
    with pytest.raises(NotApplicable):
        is_ordinary(W([-3, 0, 1], 3))


def test_profile_examples():
    pr = prime_profile(W([2, -1, 1], 2))
    assert sorted((v.degree, v.slope) for v in pr.primes) == [(1, F0), (1, F1)]
    pr = prime_profile(W([3, 0, 1], 3))
    assert [(v.degree, v.slope, v.ramification, v.iota_stable) for v in pr.primes] == [(2, HALF, 2, True)]
    pr = prime_profile(W([25, 0, 0, 0, 1], 5))
    assert all(v.slope == HALF for v in pr.primes) and pr.total_degree() == 4


def _weil_quartics(q, count, seed):
    """Random Weil quartics t^4 + a t^3 + b t^2 + q a t + q^2 from the trace-polynomial bounds."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = rng.randint(-4 * int(q**0.5), 4 * int(q**0.5))
        b = rng.randint(-2 * q, a * a // 4 + 2 * q)
        c = [q * q, q * a, b, a, 1]
        try:
            out.append(W(c, q))
        except AbsValueViolation:
            continue
    return out


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_newton_matches_profile_and_symmetry(q):
    for w in _weil_quartics(q, 6, q):
        np_ms = newton_polygon(w).multiset()
        # the profile covers the distinct irreducible factors; weight by multiplicity
        tot = {}
        for v in prime_profile(w).primes:
            k = w.factors[v.factor_id][1]
            tot[v.slope] = tot.get(v.slope, 0) + v.degree * k
        assert tot == np_ms
        assert newton_polygon(w).is_symmetric(w.m)
        try:
            o = is_ordinary(w)
        except NotApplicable:
            continue
        assert o.ordinary == (np_ms == {F0: 2, Fraction(w.m): 2})


@pytest.mark.parametrize("q", [3, 5, 7])
def test_ore_and_round2_agree(q):
    for w in _weil_quartics(q, 5, 100 + q):
        a = sorted((v.degree, v.slope, v.factor_id) for v in prime_profile(w, method="round2").primes)
        try:
            b = sorted((v.degree, v.slope, v.factor_id) for v in prime_profile(w, method="ore").primes)
        except NotApplicable:
            continue
        assert a == b


def test_products_validate():
    a, b = IntPoly([2, -1, 1]), IntPoly([2, 1, 1])
    w = validate(a * b, 2, 1)
    assert w.degree == 4 and len(w.factors) == 2
    c = IntPoly([2, 0, 1])
    validate(a * b * c, 2, 1)


def test_profile_degree_sum_matches_squarefree():
    for w in _weil_quartics(5, 8, 7):
        assert prime_profile(w).total_degree() == w.sqf.degree


def test_abs_witness_independent():
    # witness of an AbsValueViolation names a root off the circle; check with sympy
    with pytest.raises(AbsValueViolation) as ei:
        W([2, -3, 1], 2)
    assert ei.value.clause == "AbsValueViolation"
    roots = sympy.Poly([1, -3, 2], sympy.symbols("t")).all_roots()
    assert any(abs(r) ** 2 != 2 for r in roots)
