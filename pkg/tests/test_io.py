import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from x3ent.cones import lattice_profile
from x3ent.exact import Surd
from x3ent.fixtures import FIXTURES
from x3ent.io import InputError, dumps, load, loads, parse_slack, profile_to_dict, to_dict
from x3ent.sampling import random_float_state, random_generic_state
from x3ent.xcore import DenseHermitian8, WitnessX, make_xstate


@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_round_trip(name):
    x = FIXTURES[name].payload
    assert loads(dumps(x)) == x


@given(st.integers(0, 2**32 - 1))
def test_exact_round_trip(seed):
    x = random_generic_state(seed)
    y = loads(dumps(x))
    assert y == x and y.exact


def test_float_round_trip(rng):
    x = random_float_state(rng)
    y = loads(dumps(x))
    assert not y.exact and y == x


def test_dense_round_trip(rng):
    x = random_float_state(rng)
    d = x.to_dense()
    e = loads(dumps(d))
    assert isinstance(e, DenseHermitian8)
    assert (e.to_complex() == d.to_complex()).all()
    exact = make_xstate((1, 2, 3, 4), (1, 1, 1, 1), (("1/2", "1/3"), 0, 0, 0)).to_dense()
    assert loads(dumps(exact)).exact


def test_witness_form(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"s": [1, 1, 1, 1], "t": ["1/2", 1, 1, 1], "u": [[-1, 0], 0, 0, 0]}))
    w = load(str(p))
    assert isinstance(w, WitnessX) and w.t[0] == Fraction(1, 2)
    assert to_dict(w)["t"][0] == "1/2"


def test_ghz_form():
    g = loads('{"ghz": {"a": [1, 1, 1, 1], "z": [4, 0, 0, 0]}}')
    assert g.z == (4, 0, 0, 0)


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"a": [1, 1, 1], "b": [1, 1, 1, 1], "z": [0, 0, 0, 0]}',
    '{"a": [1, 1, 1, "x"], "b": [1, 1, 1, 1], "z": [0, 0, 0, 0]}',
    '{"a": [1, 1, 1, 1], "b": [1, 1, 1, 1], "z": [[0, 0, 0], 0, 0, 0]}',
    '{"a": [1, 1, 1, true], "b": [1, 1, 1, 1], "z": [0, 0, 0, 0]}',
    '{"matrix": [[0]]}',
    '{"a": [1, 1, 1, "1/0"], "b": [1, 1, 1, 1], "z": [0, 0, 0, 0]}',
])
def test_malformed(text):
    with pytest.raises(InputError):
        loads(text)


def test_dense_must_be_self_adjoint():
    rows = [[[0, 0]] * 8 for _ in range(8)]
    rows[0] = [[0, 0], [1, 0]] + [[0, 0]] * 6
    with pytest.raises(InputError):
        loads(json.dumps({"matrix": rows}))


def test_profile_json_round_trip():
    x = make_xstate((2, 1, 1, 1), (1, 1, 1, 1), (1, 0, 0, 0))
    lp = lattice_profile(x)
    d = json.loads(json.dumps(profile_to_dict(lp)))
    assert d == profile_to_dict(lp)
    for entry, (c, m) in zip(d["cones"], lp.margins.items()):
        assert entry["cone"] == c.name and entry["member"] == m.holds
        back = parse_slack(entry["slack"])
        if isinstance(m.slack, Surd):
            assert back == str(m.slack)
        else:
            assert back == m.slack
