from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fflab.additive import (additive_genus, freiman_3k4_verify, int_set, is_normalized,
                            kneser_mod, lev_smeliansky_report, monomial_bridge, normalize,
                            parse_set, sumset)
from fflab.errors import ConfigError, PreconditionError
from fflab.fields import make_field

int_sets = st.sets(st.integers(0, 40), min_size=1, max_size=10)


def normalized_sets(min_size=1):
    return st.sets(st.integers(1, 30), min_size=max(min_size - 1, 0), max_size=11).map(
        lambda s: normalize({0} | s)[0])


def test_sumset_examples():
    A = (0, 1, 2, 3, 5)
    assert sumset((0,), A) == A
    assert sumset((0, 1, 3), (0, 1, 3)) == (0, 1, 2, 3, 4, 6)
    assert sumset(A, A) == (0, 1, 2, 3, 4, 5, 6, 7, 8, 10)


def test_freiman_examples():
    r = freiman_3k4_verify(range(6))
    assert r["gamma"] == 0 and r["gaps"] == 0
    r = freiman_3k4_verify((0, 1, 2, 3, 5))
    assert r["gamma"] == 1 and r["hypothesis_met"] and r["ap_cover_ok"]
    r = freiman_3k4_verify((0, 1, 3))
    assert r["gamma"] == 1 and not r["hypothesis_met"]
    with pytest.raises(PreconditionError):
        freiman_3k4_verify((0, 1))


def test_freiman_auto_normalizes():
    r = freiman_3k4_verify((10, 14, 18, 22, 30))
    assert r["A"] == [0, 1, 2, 3, 5] and r["shift"] == 10 and r["scale"] == 4


def test_kneser_examples():
    r = kneser_mod(range(7), 7)
    assert r["H"] == list(range(7))
    r = kneser_mod((0, 2, 4), 6)
    assert r["H"] == [0, 2, 4] and r["sumset_size"] == 3 == 2 * 3 - 3
    r = kneser_mod((0, 1), 5)
    assert r["H"] == [0] and r["sumset_size"] == 3


def _stabilizer_by_divisors(A, n):
    """Largest subgroup dZ/nZ with S + d = S, searched over divisors d of n."""
    S = {(a + b) % n for a in A for b in A}
    for d in sorted(d for d in range(1, n + 1) if n % d == 0):
        if {(s + d) % n for s in S} == S:
            return list(range(0, n, d))


@settings(max_examples=100, deadline=None)
@given(int_sets, st.integers(1, 60))
def test_kneser_stabilizer_matches_divisor_oracle(A, n):
    r = kneser_mod(A, n)
    assert r["H"] == _stabilizer_by_divisors(A, n)
    At = {a % n for a in A}
    assert r["sumset_size"] >= 2 * len(At) - len(r["H"])


def test_lev_smeliansky_examples():
    r = lev_smeliansky_report((0, 1, 2, 3, 5))
    assert r["A_mod_size"] == 4 and r["sumset_mod_size"] == 5
    assert r["reduced_le_size_plus_gamma"] and r["size_plus_gamma_le_bound"]
    r = lev_smeliansky_report(tuple(range(6)))
    assert r["full_group"]
    r = lev_smeliansky_report((0, 1, 3))
    assert not r["hypothesis_met"]


@settings(max_examples=60, deadline=None)
@given(normalized_sets(min_size=3))
def test_lev_smeliansky_chain(A):
    r = lev_smeliansky_report(A)
    assert r["A_mod_size"] == len(A) - 1
    if r["hypothesis_met"]:
        assert r["reduced_le_size_plus_gamma"] and r["size_plus_gamma_le_bound"]


def test_bridge_examples():
    r = monomial_bridge((0, 1, 2))
    assert r.gamma_add == 0 and r.codim == 0
    r = monomial_bridge((0, 1, 2, 3, 5))
    assert r.dimS2 == 10 and r.codim == 1 and r.D_ok and r.rr_dim == 6
    with pytest.raises(PreconditionError):
        monomial_bridge((1, 2, 3))


@settings(max_examples=40, deadline=None)
@given(normalized_sets())
def test_bridge_over_finite_field(A):
    r = monomial_bridge(A, make_field(101))
    assert r.dimS2 == r.sumset_size and r.gamma_ff == r.gamma_add and r.verdicts_agree


@settings(max_examples=60, deadline=None)
@given(int_sets)
def test_normalize(A):
    An, shift, scale = normalize(A)
    assert is_normalized(An)
    assert tuple(sorted(shift + scale * a for a in An)) == tuple(sorted(A))
    assert additive_genus(An) == additive_genus(tuple(sorted(A)))
    assert gcd(*An) == 1 or An == (0,)


def test_parsing_and_caps():
    assert parse_set("3, 1,2") == (1, 2, 3)
    with pytest.raises(ConfigError):
        parse_set("1,a")
    with pytest.raises(ConfigError):
        int_set([-1])
    with pytest.raises(ConfigError):
        int_set([513])
    with pytest.raises(ConfigError):
        kneser_mod((0, 1), 0)
