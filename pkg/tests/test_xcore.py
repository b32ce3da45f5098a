from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from x3ent.exact import Surd
from x3ent.sampling import random_float_state, random_generic_state
from x3ent.xcore import (
    FLIP_ALL,
    IDENTITY,
    DenseHermitian8,
    GhzDiagonal,
    WitnessX,
    XState,
    bit_flip,
    dense_pair,
    flip,
    ghz_sym,
    group_elements,
    index_table,
    make_ghz,
    make_witness,
    make_xstate,
    pair,
    party_action,
    profile,
    swap,
    xpart,
)

seeds = st.integers(0, 2**32 - 1)


def tensor_action(m, g):
    """Reference action: flip bits with Pauli X, then move qubit k to slot perm[k]."""
    x = np.array([[0, 1], [1, 0]])
    one = np.eye(2)
    f = np.kron(np.kron(x if g.flips[0] else one, x if g.flips[1] else one), x if g.flips[2] else one)
    m = f @ m @ f.T
    t = m.reshape((2,) * 6)
    inv = [0, 0, 0]
    for k in range(3):
        inv[g.perm[k]] = k
    t = t.transpose(inv + [3 + k for k in inv])
    return t.reshape(8, 8)


def test_dense_layout():
    x = make_xstate((1, 2, 3, 4), (5, 6, 7, 8), (1j, 2, 0, 0))
    d = x.to_complex()
    assert d[0, 0] == 1 and d[7, 7] == 5 and d[3, 3] == 4 and d[4, 4] == 8
    assert d[0, 7] == 1j and d[7, 0] == -1j
    assert d[1, 6] == 2
    assert np.count_nonzero(d) == 8 + 4


def test_exactness_is_inferred():
    assert make_xstate((1, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0)).exact
    assert make_xstate(("1/2", 1, 1, 1), (1, 1, 1, 1), ((0, "1/3"), 0, 0, 0)).exact
    assert not make_xstate((0.5, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0)).exact
    x = make_xstate((0.5, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0), exact=True)
    assert x.a[0] == Fraction(1, 2)


@given(seeds, seeds)
def test_pairing_matches_dense_trace(s1, s2):
    rho = random_generic_state(s1)
    w0 = random_generic_state(s2)
    w = WitnessX(w0.a, w0.b, w0.z_re, w0.z_im, True)
    assert pair(w, rho) == dense_pair(w.to_dense(), rho.to_dense())
    # Tr(W rho^T) in floating point as a second reference
    ref = np.trace(w.to_complex() @ rho.to_complex().T).real
    assert float(pair(w, rho)) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_ghz_pairing_doubles():
    w = make_ghz((0, 1, 1, 1), (0, 0, 0, 0))
    assert pair(w, make_ghz((1, 1, 1, 1), (1, 1, 1, 1))) == 6
    assert pair(make_ghz((1, 1, 2, 1), (-2, 0, 0, -2)), make_ghz((1, 2, 0, 1), (1, 0, 0, 1))) == 0


def test_group_has_48_elements_and_closes():
    elems = group_elements()
    assert len(set(elems)) == 48
    maps = {g.basis_map() for g in elems}
    assert len(maps) == 48
    for g in elems[::5]:
        for h in elems[::7]:
            assert (g @ h) in elems
            assert np.array_equal((g @ h).unitary(), g.unitary() @ h.unitary())
        assert g @ g.inverse() == IDENTITY


@pytest.mark.parametrize("g", group_elements())
def test_party_action_matches_tensor_oracle(g, rng):
    x = random_float_state(rng)
    expected = tensor_action(x.to_complex(), g)
    got = party_action(x, g).to_complex()
    assert np.allclose(got, expected, atol=1e-12)


@given(seeds, st.integers(0, 47), st.integers(0, 47))
def test_party_action_composes(seed, i, j):
    g, h = group_elements()[i], group_elements()[j]
    x = random_generic_state(seed)
    assert party_action(party_action(x, h), g) == party_action(x, g @ h)


def test_swap_tables():
    assert index_table(swap("B", "C")) == ((0, False), (2, False), (1, False), (3, False))
    assert index_table(swap("A", "B")) == ((0, False), (1, False), (3, True), (2, True))
    assert index_table(IDENTITY) == tuple((i, False) for i in range(4))


def test_flip_all_is_flip():
    w = make_witness((1, 2, 3, 4), (5, 6, 7, 8), (1 + 2j, 3, -1j, 0))
    assert party_action(w, FLIP_ALL) == flip(w)
    assert flip(flip(w)) == w
    assert bit_flip("A", "B", "C") == FLIP_ALL


def test_xpart_of_dense(rng):
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = m + m.conj().T
    x = xpart(DenseHermitian8.from_complex(m))
    d = x.to_complex()
    mask = np.eye(8, dtype=bool) | np.fliplr(np.eye(8, dtype=bool))
    assert np.allclose(d[mask], m[mask])
    assert np.all(d[~mask] == 0)


def test_xpart_is_the_twirl(rng):
    # averaging over the diagonal sign unitaries Z_pZ_q keeps exactly the X-part
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = m + m.conj().T
    total = np.zeros((8, 8), complex)
    signs = [np.diag([(-1) ** bin(k & mask).count("1") for k in range(8)]) for mask in (3, 5, 6)]
    group = [np.eye(8)]
    for u in signs:
        group = group + [u @ v for v in group]
    twirled = sum(u @ m @ u.conj().T for u in group) / len(group)
    # the sign group kills every entry outside the diagonal and anti-diagonal
    assert np.allclose(twirled, xpart(DenseHermitian8.from_complex(m)).to_complex())


def test_ghz_sym_and_profile():
    x = make_xstate((2, 1, 1, 2), (4, 1, 1, 0), ((1, 1), 0, 1, 0))
    g = ghz_sym(x)
    assert isinstance(g, GhzDiagonal)
    assert g.a == (3, 1, 1, 1) and g.z == (1, 0, 1, 0)
    p = profile(x)
    assert p.c[0] == Surd.sqrt(8)
    assert p.m[0] == Surd.sqrt(2)
    assert profile(make_xstate((4, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0))).c[0] == 2
    with pytest.raises(ValueError):
        profile(make_xstate((-1, 1, 1, 1), (1, 1, 1, 1), (0, 0, 0, 0)))


def test_psd_flag():
    assert make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0)).psd
    assert not make_ghz((1, 1, 1, 1), (4, 0, 0, 0)).as_state().psd
    assert isinstance(make_ghz((1, 1, 1, 1), (4, 0, 0, 0)).as_state(), XState)
