from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fflab.errors import PoleError
from fflab.fields import QQ, make_field
from fflab.poly import (Poly, RatFunc, count_distinct_roots, is_squarefree, poly_gcd,
                        poly_xgcd, root_multiplicity, roots)

F101 = make_field(101)
F2521 = make_field(2521)

coeffs101 = st.lists(st.integers(0, 100), min_size=0, max_size=7)
coeffsQ = st.lists(st.integers(-5, 5), min_size=0, max_size=5)


@settings(max_examples=80, deadline=None)
@given(coeffs101, coeffs101)
def test_divmod_identity(a, b):
    A, B = Poly(F101, a), Poly(F101, b)
    if B.is_zero():
        return
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.is_zero() or r.deg < B.deg


@settings(max_examples=80, deadline=None)
@given(coeffs101, coeffs101)
def test_xgcd_bezout_and_divisibility(a, b):
    A, B = Poly(F101, a), Poly(F101, b)
    g, s, t = poly_xgcd(A, B)
    assert s * A + t * B == g
    assert g == poly_gcd(A, B)
    if not g.is_zero():
        assert (A % g).is_zero() and (B % g).is_zero()


@settings(max_examples=40, deadline=None)
@given(coeffsQ, coeffsQ)
def test_gcd_over_rationals(a, b):
    A, B = Poly.from_ints(QQ, a), Poly.from_ints(QQ, b)
    g = poly_gcd(A, B)
    if not g.is_zero():
        assert (A % g).is_zero() and (B % g).is_zero()
        assert g.lc == 1


@settings(max_examples=60, deadline=None)
@given(coeffs101)
def test_roots_match_brute_force_small_field(a):
    f = Poly(F101, a)
    if f.deg < 1:
        return
    brute = sorted(x for x in range(101) if f(x) == 0)
    assert sorted(roots(f)) == brute
    assert count_distinct_roots(f) == len(brute)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 2520), min_size=1, max_size=5), st.integers(0, 2520))
def test_roots_large_field_against_brute_force(rts, extra):
    # products of linear factors times a random quadratic
    f = Poly(F2521, [extra, 0, 1])
    for r in rts:
        f = f * Poly(F2521, [-r, 1])
    brute = sorted(x for x in range(2521) if f(x) == 0)
    assert sorted(roots(f)) == brute


def test_root_multiplicity_and_squarefree():
    x = Poly.x(F101)
    f = (x - Poly.const(F101, 3)) ** 3 * (x + Poly.one(F101))
    assert root_multiplicity(f, 3) == 3
    assert root_multiplicity(f, 100) == 1
    assert root_multiplicity(f, 5) == 0
    assert not is_squarefree(f)
    assert is_squarefree(x ** 3 + x + Poly.one(F101))
    assert is_squarefree(Poly.const(F101, 7))


@settings(max_examples=40, deadline=None)
@given(coeffs101)
def test_squarefree_matches_derivative_gcd(a):
    f = Poly(F101, a)
    if f.deg < 1:
        return
    assert is_squarefree(f) == (poly_gcd(f, f.derivative()).deg == 0)


def test_ratfunc_orders_and_poles():
    x = RatFunc.x(QQ)
    one = RatFunc.one(QQ)
    r = (x * x) / ((x - one) ** 3)
    assert r.ord_at(Fraction(0)) == 2
    assert r.ord_at(Fraction(1)) == -3
    assert r.ord_inf() == 1
    with pytest.raises(PoleError):
        r(Fraction(1))
    assert r(Fraction(2)) == 4


@settings(max_examples=40, deadline=None)
@given(coeffsQ, coeffsQ)
def test_ratfunc_field_ops(a, b):
    A, B = Poly.from_ints(QQ, a), Poly.from_ints(QQ, b)
    if A.is_zero() or B.is_zero():
        return
    r = RatFunc(A, B)
    assert r * r.inv() == RatFunc.one(QQ)
    assert (r + r) - r == r
