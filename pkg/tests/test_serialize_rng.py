import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fflab.curves import cover_model, hyperelliptic_model, rational_model
from fflab.errors import ConfigError
from fflab.fields import QQ, make_field
from fflab.instances import (SearchConfig, genus0_instance, hyperelliptic_instance,
                             instance_from_json, monomial_instance)
from fflab.poly import Poly, RatFunc
from fflab.rng import XorShift64Star, splitmix64, trial_rng
from fflab.serialize import (elem_from_json, elem_to_json, model_from_json, model_to_json,
                             parse_element)

F101 = make_field(101)
H1 = hyperelliptic_model(F101, Poly(F101, [1, 1, 0, 1]))


def _np_stream(seed, count):
    """Second implementation in numpy uint64 arithmetic (wrapping)."""
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = z ^ (z >> np.uint64(31))
        out = []
        for _ in range(count):
            x ^= x >> np.uint64(12)
            x ^= x << np.uint64(25)
            x ^= x >> np.uint64(27)
            out.append(int(x * np.uint64(0x2545F4914F6CDD1D)))
    return out


def test_splitmix_reference_value():
    # published first output of SplitMix64 from state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 63))
def test_xorshift_matches_numpy_route(seed):
    r = XorShift64Star(seed)
    assert [r.next_u64() for _ in range(8)] == _np_stream(seed, 8)


def test_randrange_bounds_and_trial_seeds():
    r = XorShift64Star(7)
    vals = [r.randrange(6) for _ in range(600)]
    assert set(vals) == set(range(6))
    assert trial_rng(42, 3).next_u64() == XorShift64Star(45).next_u64()
    r = XorShift64Star(1)
    assert sorted(r.sample(range(10), 10)) == list(range(10))
    with pytest.raises(ValueError):
        r.randrange(0)


def test_parser_examples():
    x, y = H1.t(), H1.y()
    assert parse_element(H1, "x^2+3*x*y-1") == x * x + x * y.scale(3) - H1.one()
    assert parse_element(H1, "-(x+1)^2") == -((x + H1.one()) ** 2)
    R = rational_model(QQ)
    assert parse_element(R, "1/(x-1)^2") == R.from_ratfunc(
        RatFunc.one(QQ) / (RatFunc.x(QQ) - RatFunc.one(QQ)) ** 2)
    F = make_field(5, 2)
    RF = rational_model(F)
    # F_25 = F_5[a]/(a^2 + 2), the least monic irreducible
    assert parse_element(RF, "a^2") == RF.const(F(3))
    assert parse_element(RF, "a") != RF.const(F(3))
    for bad in ("", "x+", "z", "1/0", "(x", "x^y"):
        with pytest.raises(ConfigError):
            parse_element(H1, bad)


def test_parser_on_cover_reads_base_coordinate():
    C = cover_model(make_field(2521), RatFunc.x(make_field(2521)) ** 4)
    u = parse_element(C, "x^2")
    assert C.to_base(u) == C.base.monomial(2)


def test_model_and_element_json_round_trip():
    models = [rational_model(QQ), rational_model(make_field(3, 2)), H1,
              cover_model(F101, RatFunc.x(F101) ** 3)]
    for M in models:
        d = json.loads(json.dumps(model_to_json(M)))
        assert model_from_json(d) == M
    u = parse_element(H1, "x^3/(x+2) + (x-1)*y")
    assert elem_from_json(H1, json.loads(json.dumps(elem_to_json(u)))) == u


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(3, 6), st.integers(0, 2))
def test_instance_json_round_trip(seed, k, c):
    for inst in (genus0_instance(F101, k, c, XorShift64Star(seed)),
                 monomial_instance(QQ, k, c, XorShift64Star(seed)),
                 hyperelliptic_instance(F101, 2, k, c, XorShift64Star(seed))):
        back = instance_from_json(json.loads(json.dumps(inst.to_json())))
        assert back.subspace() == inst.subspace()


def test_instance_schema_errors():
    with pytest.raises(ConfigError):
        instance_from_json({"model": {"kind": "rational", "field": {"p": 0, "m": 1}}})
    with pytest.raises(ConfigError):
        instance_from_json({"model": {"kind": "weird", "field": {"p": 0, "m": 1}},
                            "subspace": ["1"]})
    with pytest.raises(ConfigError):
        instance_from_json({"model": {"kind": "rational", "field": {"p": 0, "m": 1}},
                            "subspace": ["1"], "options": {"assert": "yes"}})


def test_search_config_validation():
    with pytest.raises(ConfigError):
        SearchConfig(genus=3).validate()
    with pytest.raises(ConfigError):
        SearchConfig(char=100).validate()
    with pytest.raises(ConfigError):
        SearchConfig(k_range=(5, 4)).validate()
    with pytest.raises(ConfigError):
        SearchConfig(genus=1, char=2).validate()
    assert SearchConfig().validate() == F101
