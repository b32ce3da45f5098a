from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from x3ent.cones import (
    NonPsdWarning,
    batch_holds,
    catalog,
    lattice_profile,
    margins_batch,
    member,
)
from x3ent.lattice import all_cones, arrows, as_cone
from x3ent.sampling import integer_profiles, integer_states, random_generic_state
from x3ent.xcore import DenseHermitian8, Profile, group_elements, make_ghz, make_witness, make_xstate, party_action, swap

RHO1 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0))
RHO2 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 1, 0, 0))


def ket(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def separable_across_a(rng, terms=3):
    """Mixture of product states |a><a| (x) |bc><bc| for the cut A|BC."""
    out = np.zeros((8, 8), complex)
    for _ in range(terms):
        v = np.kron(ket(rng, 2), ket(rng, 4))
        out += rng.random() * np.outer(v, v.conj())
    return out


def separable_across(rng, atom, terms=3):
    rho = separable_across_a(rng, terms)
    if atom == "A":
        return rho
    u = swap("A", atom).unitary()
    return u @ rho @ u.T


def fully_separable(rng, terms=3):
    out = np.zeros((8, 8), complex)
    for _ in range(terms):
        v = np.kron(np.kron(ket(rng, 2), ket(rng, 2)), ket(rng, 2))
        out += rng.random() * np.outer(v, v.conj())
    return out


@pytest.mark.parametrize("atom", ["A", "B", "C"])
def test_separable_states_are_members(atom, rng):
    for _ in range(50):
        rho = separable_across(rng, atom)
        assert member(rho, atom).holds
        assert member(rho, atom).necessary_only


def test_joins_contain_mixtures(rng):
    for _ in range(50):
        rho = separable_across(rng, "A") + separable_across(rng, "B")
        assert member(rho, "AvB").holds
        rho = rho + separable_across(rng, "C")
        assert member(rho, "AvBvC").holds


def test_fully_separable_in_every_cone(rng):
    for _ in range(50):
        lp = lattice_profile(fully_separable(rng))
        assert len(lp.members()) == 23


def test_ghz_state_outside_everything():
    v = np.zeros(8)
    v[0] = v[7] = 1 / np.sqrt(2)
    lp = lattice_profile(np.outer(v, v))
    assert lp.members() == ()
    assert lp.necessary_only


def test_modularity_examples():
    assert member(RHO1, "A") and member(RHO1, "Bv(C^A)")
    m = member(RHO1, "(A^B)v(A^C)")
    assert not m.holds and "S4[1,3|2,3]" in m.failing
    assert member(RHO2, "A") and member(RHO2, "Cv(B^A)")
    m = member(RHO2, "(A^B)v(A^C)")
    assert not m.holds and "S4[1,2|2,3]" in m.failing
    assert {c.name for c in lattice_profile(RHO1).minimal} == {"A^(BvC)", "Bv(A^C)"}


def test_trivial_states():
    zero = make_xstate((0,) * 4, (0,) * 4, (0,) * 4)
    lp = lattice_profile(zero)
    assert len(lp.members()) == 23 and all(m.slack == 0 for m in lp.margins.values())
    ones = make_ghz((1,) * 4, (1,) * 4)
    assert len(lattice_profile(ones).members()) == 23


def test_non_psd_is_flagged():
    with pytest.warns(NonPsdWarning):
        lp = lattice_profile(make_ghz((1, 1, 1, 1), (4, 0, 0, 0)))
    assert not lp.psd
    assert not lp["AvBvC"].holds


def test_kind_mismatch():
    w = make_witness((1,) * 4, (1,) * 4, (0,) * 4)
    with pytest.raises(TypeError):
        member(w, "A")
    with pytest.raises(TypeError):
        member(RHO1, "A*")
    with pytest.raises(ValueError):
        member(make_witness((-1, 1, 1, 1), (1,) * 4, (0,) * 4), "A*")
    with pytest.raises(TypeError):
        lattice_profile(w)


def test_catalog_sides():
    for c in all_cones(False):
        assert all(q.is_state for q in catalog(c))
        assert all(not q.is_state for q in catalog(c.polar()))


@given(st.integers(0, 2**32 - 1), st.integers(0, 47))
def test_covariance_under_party_operations(seed, k):
    g = group_elements()[k]
    x = random_generic_state(seed)
    y = party_action(x, g)
    mapping = g.atom_map()
    for c in all_cones():
        assert member(x, c).holds == member(y, c.permuted(mapping)).holds


@given(st.integers(0, 2**32 - 1))
def test_monotone_along_diagram(seed):
    lp = lattice_profile(random_generic_state(seed))
    for s, d in arrows():
        assert not lp[s].holds or lp[d].holds


def test_batch_matches_scalar(rng):
    batch = integer_states(rng, 300)
    c, m = integer_profiles(batch)
    slacks = margins_batch(c, m)
    holds = batch_holds(slacks, c, m)
    cones = all_cones()
    for k in range(0, 300, 7):
        p = Profile(tuple(map(Fraction, c[k])), tuple(map(Fraction, m[k])), True)
        for j, cone in enumerate(cones):
            mm = member(p, cone)
            assert mm.slack == slacks[k, j]
            assert mm.holds == holds[k, j]
    fs = margins_batch(c.astype(float), m.astype(float))
    assert np.array_equal(batch_holds(fs, c, m), holds)


def test_dense_exact_input():
    d = RHO1.to_dense()
    m = member(d, "(A^B)v(A^C)")
    assert m.necessary_only and m.slack == -1
    assert isinstance(DenseHermitian8.from_complex(RHO1.to_complex()), DenseHermitian8)
    assert as_cone("A") in lattice_profile(d).members()
