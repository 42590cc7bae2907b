import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fflab.fields import QQ, make_field
from fflab.linalg import rref_K, rref_Kx, solve_Kx
from fflab.poly import Poly, RatFunc, is_squarefree, poly_gcd

F5 = make_field(5)
F7 = make_field(7)
F101 = make_field(101)
FIELD_CONFIGS = [QQ, make_field(2), F101, make_field(2, 4), make_field(3, 3), make_field(65521)]


def P(F, *c):
    return Poly.from_ints(F, c)


def test_gcd_examples():
    assert poly_gcd(P(QQ, -1, 0, 1), P(QQ, -1, 1)) == P(QQ, -1, 1)
    assert poly_gcd(P(QQ, 0, 3), Poly.zero(QQ)) == P(QQ, 0, 1)
    assert poly_gcd(Poly.zero(QQ), Poly.zero(QQ)).is_zero()
    g = poly_gcd(P(F5, 0, -1, 0, 0, 0, 1), P(F5, 1, 0, 1))
    # oracle: exhaustive division shows x^2 + 1 = (x - 2)(x - 3) divides x^5 - x
    assert (P(F5, 0, -1, 0, 0, 0, 1) % P(F5, 1, 0, 1)).is_zero()
    assert g == P(F5, 1, 0, 1)


def test_squarefree_examples():
    assert is_squarefree(P(QQ, -1, 0, 1))
    assert not is_squarefree(P(QQ, 1, -2, 1))
    assert is_squarefree(P(F101, 1, 1, 0, 1))
    # f' = 0 in characteristic 5
    assert not is_squarefree(P(F5, 1, 0, 0, 0, 0, 1))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 100), min_size=1, max_size=4),
       st.lists(st.integers(0, 100), min_size=1, max_size=4),
       st.lists(st.integers(0, 100), min_size=1, max_size=4))
def test_gcd_is_maximal_on_planted_factors(g, u, v):
    G, U, V = P(F101, *g), P(F101, *u), P(F101, *v)
    if G.is_zero() or U.is_zero() or V.is_zero():
        return
    d = poly_gcd(G * U, G * V)
    assert ((G * U) % d).is_zero() and ((G * V) % d).is_zero()
    assert (d % G.monic()).is_zero()
    assert d.deg >= G.deg


def test_ratfunc_planted_common_factor():
    common = P(F7, 3, 1, 2)
    r = RatFunc(P(F7, 1, 2) * common, P(F7, 5, 0, 3) * common)
    assert poly_gcd(r.num, r.den).deg == 0
    assert r.den.lc == 1
    assert r == RatFunc(P(F7, 1, 2), P(F7, 5, 0, 3))


@pytest.mark.parametrize("F", FIELD_CONFIGS, ids=lambda F: F.describe().__repr__())
def test_field_axioms_1000_triples(F):
    rng = random.Random(1)
    for _ in range(1000):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one


def test_rref_examples():
    I3 = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert rref_K(I3, QQ) == (3, I3)
    rows = [[Fraction(v) for v in r] for r in [[1, 1], [1, 2], [0, 1]]]
    assert rref_K(rows, QQ) == (2, [[1, 0], [0, 1]])
    x, one, zero = RatFunc.x(QQ), RatFunc.one(QQ), RatFunc.zero(QQ)
    assert rref_Kx([[one, zero], [zero, x]], QQ) == (2, [[one, zero], [zero, one]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 100), min_size=4, max_size=4), min_size=1, max_size=4),
       st.integers(0, 2 ** 32))
def test_rref_canonical_under_invertible_multiplier(M, seed):
    rng = random.Random(seed)
    n = len(M)
    while True:
        G = [[rng.randrange(101) for _ in range(n)] for _ in range(n)]
        if rref_K(G, F101)[0] == n:
            break
    GM = [[sum(G[i][k] * M[k][j] for k in range(n)) % 101 for j in range(4)] for i in range(n)]
    assert rref_K(GM, F101) == rref_K(M, F101)


def test_solve_examples():
    x, one, zero = RatFunc.x(QQ), RatFunc.one(QQ), RatFunc.zero(QQ)
    sol = solve_Kx([[one]], [x], QQ)
    assert sol.consistent and sol.particular == [x] and sol.kernel == []


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), max_size=3), min_size=6, max_size=6))
def test_solve_generic_2x2_over_f7x_by_residual(c):
    A = [[RatFunc(P(F7, *c[0])), RatFunc(P(F7, *c[1]))],
         [RatFunc(P(F7, *c[2])), RatFunc(P(F7, *c[3]))]]
    b = [RatFunc(P(F7, *c[4])), RatFunc(P(F7, *c[5]))]
    sol = solve_Kx(A, b, F7)
    if sol.consistent:
        for row, rhs in zip(A, b):
            assert row[0] * sol.particular[0] + row[1] * sol.particular[1] == rhs
