import numpy as np
import pytest

from x3ent.cones import member
from x3ent.lattice import all_cones
from x3ent.sampling import (
    batch_party_action,
    batch_row,
    float_batch,
    float_profiles,
    integer_profiles,
    integer_states,
    random_member,
    random_state,
)
from x3ent.xcore import group_elements, party_action, profile


@pytest.mark.parametrize("cone", all_cones(False) + all_cones(True), ids=lambda c: c.name)
def test_random_members_are_members(cone, rng):
    hits_boundary = False
    for _ in range(30):
        x = random_member(rng, cone)
        m = member(x, cone)
        assert m.holds
        hits_boundary |= m.slack == 0
    assert hits_boundary


def test_random_state_is_psd(rng):
    for _ in range(50):
        assert random_state(rng).psd


def test_integer_batch_is_exact(rng):
    b = integer_states(rng, 500)
    c, m = integer_profiles(b)
    assert (m <= c).all()
    for k in range(0, 500, 50):
        p = profile(batch_row(b, k))
        assert tuple(p.c) == tuple(c[k]) and tuple(p.m) == tuple(m[k])


def test_batch_action_matches_scalar(rng):
    b = integer_states(rng, 40)
    for g in group_elements():
        moved = batch_party_action(b, g)
        for k in (0, 17, 39):
            assert batch_row(moved, k) == party_action(batch_row(b, k), g)


def test_float_batch_is_psd(rng):
    c, m = float_profiles(float_batch(rng, 1000))
    assert np.all(m <= c + 1e-12)
