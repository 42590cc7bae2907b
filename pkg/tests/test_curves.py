from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fflab.curves import (INF0, INF_HYP, Place, cover_model, default_hyperelliptic_f, evaluate,
                          find_split_locus, hyperelliptic_model, rational_model, split_points,
                          valuation)
from fflab.errors import ConfigError, ExhaustedSearch, PreconditionError
from fflab.fields import QQ, make_field
from fflab.poly import Poly, RatFunc, roots, root_multiplicity

F101 = make_field(101)
H1 = hyperelliptic_model(F101, Poly(F101, [1, 1, 0, 1]))  # y^2 = x^3 + x + 1
H2 = hyperelliptic_model(F101, default_hyperelliptic_f(F101, 2))

small = st.lists(st.integers(0, 100), max_size=4)


def hyp_elem(model, c0, c1):
    return model.elem([RatFunc(Poly(F101, c0)), RatFunc(Poly(F101, c1))])


def test_hyperelliptic_basics():
    y, x = H1.y(), H1.t()
    assert y * y == x ** 3 + x + H1.one()
    one = H1.one()
    assert (one + y) * (one - y) == x ** 3 * H1.const(100) + x * H1.const(100)
    assert valuation(x, INF_HYP) == -2
    assert valuation(y, INF_HYP) == -3
    assert H1.genus == 1 and H2.genus == 2


def test_hyperelliptic_model_validation():
    with pytest.raises(ConfigError):
        hyperelliptic_model(F101, Poly(F101, [0, 0, 1, 1]))  # x^2 (x + 1) not squarefree
    with pytest.raises(ConfigError):
        hyperelliptic_model(F101, Poly(F101, [1, 0, 0, 0, 1]))  # even degree
    with pytest.raises(ConfigError):
        hyperelliptic_model(make_field(2), Poly(make_field(2), [1, 1, 0, 1]))
    with pytest.raises(PreconditionError):
        cover_model(F101, RatFunc.one(F101))


@settings(max_examples=40, deadline=None)
@given(small, small, small, small, small, small)
def test_hyperelliptic_ring_laws(a0, a1, b0, b1, c0, c1):
    u, v, w = hyp_elem(H2, a0, a1), hyp_elem(H2, b0, b1), hyp_elem(H2, c0, c1)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    if not u.is_zero():
        assert u * u.inv() == H2.one()


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_valuation_at_infinity_formula(c0, c1):
    # v(c0 + c1 y) = -max(2 deg c0, 2 deg c1 + 2g + 1)
    u = hyp_elem(H2, c0, c1)
    if u.is_zero():
        return
    P0, P1 = Poly(F101, c0), Poly(F101, c1)
    cands = []
    if P0:
        cands.append(2 * P0.deg)
    if P1:
        cands.append(2 * P1.deg + 5)
    assert valuation(u, INF_HYP) == -max(cands)


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_fibre_valuations_sum_to_norm_order(c0, c1):
    # v_P(u) + v_P'(u) = ord_a N(u) with N(u) = c0^2 - f c1^2
    u = hyp_elem(H1, c0, c1)
    if u.is_zero():
        return
    P0, P1 = Poly(F101, c0), Poly(F101, c1)
    N = P0 * P0 - H1.f * P1 * P1
    for a in roots(N)[:3]:
        fib = split_points(H1, a)
        if not fib.fully_split:
            continue
        total = sum(valuation(u, P) for P in fib.points)
        assert total == root_multiplicity(N, a)


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_principal_divisor_degree_zero_on_split_instances(c0, c1):
    u = hyp_elem(H1, c0, c1)
    if u.is_zero():
        return
    P0, P1 = Poly(F101, c0), Poly(F101, c1)
    N = P0 * P0 - H1.f * P1 * P1
    rts = roots(N)
    if sum(root_multiplicity(N, a) for a in rts) != N.deg:
        return
    fibres = [split_points(H1, a) for a in rts]
    if not all(fib.fully_split or fib.ramified for fib in fibres):
        return
    zeros = sum(valuation(u, P) for fib in fibres for P in fib.points)
    assert zeros == -valuation(u, INF_HYP)


def test_evaluate_matches_direct_formula():
    u = hyp_elem(H1, [3, 0, 2], [5, 1])
    for a in range(20):
        for P in split_points(H1, a).points:
            assert evaluate(u, P) == (3 + 2 * a * a + (5 + a) * P.b) % 101


def test_split_points_and_locus():
    fib = split_points(H1, 0)
    assert [(P.a, P.b) for P in fib.points] == [(0, 1), (0, 100)]
    assert find_split_locus(H1) == 0
    assert find_split_locus(H1, avoid={0}) == 3


def test_split_locus_exhausted_over_f3():
    F3 = make_field(3)
    H = hyperelliptic_model(F3, Poly(F3, [2, 2, 0, 1]))
    with pytest.raises(ExhaustedSearch):
        find_split_locus(H)


def test_rational_valuations():
    R = rational_model(QQ)
    x = RatFunc.x(QQ)
    u = R.from_ratfunc((x - RatFunc.const(QQ, Fraction(2))) ** 2 / (x ** 3 + RatFunc.one(QQ)))
    assert valuation(u, Place("finite0", Fraction(2))) == 2
    assert valuation(u, Place("finite0", Fraction(-1))) == -1
    assert valuation(u, INF0) == 1


def _cover():
    F = make_field(2521)
    x = RatFunc.x(F)
    return cover_model(F, x ** 4), F


def test_cover_round_trip_and_fibres():
    C, F = _cover()
    base = C.base
    u = base.from_ratfunc(RatFunc(Poly(F, [1, 2, 0, 5])))
    assert C.to_base(C.from_base(u)) == u
    a = find_split_locus(C)
    fib = split_points(C, a)
    assert fib.fully_split and len(fib.points) == 4
    for P in fib.points:
        assert F.power(P.b, 4) == a


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2520), max_size=6), st.lists(st.integers(0, 2520), max_size=6))
def test_cover_multiplication_matches_base(a, b):
    C, F = _cover()
    u = C.from_base(C.base.from_ratfunc(RatFunc(Poly(F, a))))
    v = C.from_base(C.base.from_ratfunc(RatFunc(Poly(F, b))))
    assert C.to_base(u * v) == C.to_base(u) * C.to_base(v)
    if not v.is_zero():
        assert C.to_base(u / v) == C.to_base(u) / C.to_base(v)
