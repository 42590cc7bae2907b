from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from fflab.curves import (INF0, INF_HYP, Place, default_hyperelliptic_f, hyperelliptic_model,
                          rational_model)
from fflab.errors import UnsupportedError
from fflab.fields import QQ, make_field
from fflab.poly import Poly, RatFunc
from fflab.riemann_roch import (Divisor, in_rr_space, infinity_divisor, minimal_divisor,
                                rr_basis, rr_dim_identities)
from fflab.serialize import parse_element
from fflab.subspaces import k_span

F101 = make_field(101)
RQ = rational_model(QQ)
H1 = hyperelliptic_model(F101, Poly(F101, [1, 1, 0, 1]))
H2 = hyperelliptic_model(F101, default_hyperelliptic_f(F101, 2))


def fmt(rb):
    return [u.fmt() for u in rb.basis]


def span(model, *texts):
    return k_span(model, [parse_element(model, t) for t in texts])


def test_rr_basis_examples():
    assert fmt(rr_basis(RQ, infinity_divisor(RQ, 3))) == ["1", "x", "x^2", "x^3"]
    assert fmt(rr_basis(H1, infinity_divisor(H1, 3))) == ["1", "x", "y"]
    assert fmt(rr_basis(H2, infinity_divisor(H2, 2))) == ["1", "x"]


def test_minimal_divisor_examples():
    assert minimal_divisor(span(H1, "1", "x")) == Divisor(H1, {INF_HYP: 2})
    S = span(RQ, "1", "x", "x^2", "x^3", "x^5")
    assert minimal_divisor(S) == Divisor(RQ, {INF0: 5})
    S = span(RQ, "1", "1/(x-1)", "1/(x-1)^2")
    assert minimal_divisor(S) == Divisor(RQ, {Place("finite0", Fraction(1)): 2})


def test_dim_identity_examples():
    tab = {r["n"]: r for r in rr_dim_identities(H1, range(0, 4))}
    assert tab[1]["dim"] == 1 and tab[1]["rule"] == "riemann-roch"
    tab = {r["n"]: r for r in rr_dim_identities(H2, range(0, 4))}
    assert tab[2]["dim"] == 2 and tab[2]["rule"] == "clifford" and tab[2]["bound"] == 2
    for r in rr_dim_identities(RQ, range(-1, 6)):
        assert r["dim"] == r["n"] + 1


def test_hyperelliptic_divisor_shape_is_enforced():
    with pytest.raises(UnsupportedError):
        rr_basis(H1, Divisor(H1, {Place("point", 0, 1): 1}))


finite_divs = st.dictionaries(st.integers(-3, 3), st.integers(-2, 3), max_size=3)


@settings(max_examples=60, deadline=None)
@given(finite_divs, st.integers(-2, 4))
def test_rational_rr_dimension_and_membership(fin, ninf):
    entries = {Place("finite0", Fraction(a)): m for a, m in fin.items()}
    entries[INF0] = ninf
    D = Divisor(RQ, entries)
    rb = rr_basis(RQ, D)
    assert rb.dim == max(D.degree + 1, 0)
    if rb.basis:
        assert k_span(RQ, rb.basis).dim == rb.dim
    for u in rb.basis:
        assert in_rr_space(u, D)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_monotone_in_n(n1, n2):
    for H in (H1, H2):
        lo, hi = sorted((n1, n2))
        assert rr_basis(H, infinity_divisor(H, lo)).dim <= rr_basis(H, infinity_divisor(H, hi)).dim


def _decrements(D):
    for P, m in D.entries.items():
        yield D.with_entry(P, m - 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=5), min_size=1, max_size=4),
       st.lists(st.integers(-2, 2), max_size=2))
def test_minimal_divisor_is_minimal_on_rational_model(nums, poles):
    den = parse_element(RQ, "1")
    for a in poles:
        den = den * parse_element(RQ, f"x-({a})")
    S = k_span(RQ, [RQ.from_ratfunc(RatFunc(Poly.from_ints(QQ, c))) / den for c in nums])
    assume(S.dim)
    try:
        D = minimal_divisor(S)
    except UnsupportedError:
        assume(False)  # common zero at a place of degree > 1
    assert all(in_rr_space(u, D) for u in S.basis)
    for D0 in _decrements(D):
        assert not all(in_rr_space(u, D0) for u in S.basis)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 9), st.data())
def test_minimal_divisor_is_minimal_on_hyperelliptic(n, data):
    basis = rr_basis(H2, infinity_divisor(H2, n)).basis
    picks = data.draw(st.lists(st.sampled_from(basis[1:]), min_size=1, max_size=3))
    S = k_span(H2, [H2.one()] + picks)
    D = minimal_divisor(S)
    assert all(in_rr_space(u, D) for u in S.basis)
    for D0 in _decrements(D):
        assert not all(in_rr_space(u, D0) for u in S.basis)
