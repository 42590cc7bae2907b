import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fflab.errors import ConfigError
from fflab.fields import (QQ, field_from_json, is_irreducible_mod_p, is_prime,
                          least_irreducible, make_field)

SMALL_FIELDS = [(2, 1), (5, 1), (101, 1), (2, 3), (3, 2), (5, 2)]


def _has_factor_brute(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2 (coefficients low first)."""
    n = len(f) - 1

    def rem(a, b):
        a = list(a)
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bi) % p
            while a and a[-1] == 0:
                a.pop()
        return a

    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not rem(f, list(low) + [1]):
                return True
    return False


def test_is_prime_matches_trial_division():
    for n in range(200):
        assert is_prime(n) == (n > 1 and all(n % d for d in range(2, n)))


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_rabin_matches_brute_force(p, m):
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        assert is_irreducible_mod_p(f, p) == (not _has_factor_brute(f, p))


def test_least_irreducible_is_least():
    # x^2 + 1 over F_3; x^3 + x + 1 over F_2
    assert tuple(least_irreducible(3, 2)) == (1, 0, 1)
    assert tuple(least_irreducible(2, 3)) == (1, 1, 0, 1)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_field_axioms_exhaustive_small(p, m):
    F = make_field(p, m)
    els = list(F.elements())
    assert len(els) == p ** m
    for a in els[:12]:
        for b in els[:12]:
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a
            if not F.is_zero(b):
                assert F.mul(F.div(a, b), b) == a
    # multiplicative group has order q - 1
    for a in els:
        if not F.is_zero(a):
            assert F.power(a, p ** m - 1) == F.one


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_prime_field_distributive(a, b, c):
    F = make_field(101)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 124), st.integers(0, 124), st.integers(0, 124))
def test_extension_field_distributive(i, j, k):
    F = make_field(5, 3)
    a, b, c = F.from_index(i), F.from_index(j), F.from_index(k)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_rationals_scan_order():
    assert list(itertools.islice(QQ.scan(), 5)) == [0, 1, -1, 2, -2]
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_json_round_trip():
    for p, m in SMALL_FIELDS:
        F = make_field(p, m)
        assert field_from_json(F.describe()) == F
        for a in list(F.elements())[:10]:
            assert F.from_json(F.to_json(a)) == a


def test_caps_and_bad_input():
    with pytest.raises(ConfigError):
        make_field(4)
    with pytest.raises(ConfigError):
        make_field(3, 9)
    with pytest.raises(ConfigError):
        make_field(65537)
