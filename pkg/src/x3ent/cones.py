"""Cone catalog: criteria sets, membership and whole-lattice profiles.

Each of the 23 primal cones (and the 23 cones over the dual atoms) is bound
to the finite list of inequalities whose conjunction characterizes its
X-shaped members.  The tables below are literal data; at import they are
checked against the relabelings induced by party permutations.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exact import tolerance
from .ineq import Ineq, Margin, conjunction, magnitudes, parse_ineq, state_family
from .lattice import ATOMS, PERMUTATIONS, ConeId, all_cones, arrows, as_cone, canonicalize
from .xcore import (
    DenseHermitian8,
    GhzDiagonal,
    PartyOp,
    Profile,
    WitnessX,
    XMatrix,
    XState,
    index_permutation,
    profile,
    xpart,
)

_ALL_S4 = tuple(q.name for q in state_family("S4"))

_PRIMAL = {
    "A^B^C": ("S1[1,4]", "S1[2,3]", "S1[1,3]", "S1[2,4]", "S1[1,2]", "S1[3,4]"),
    "A^B": ("S1[1,4]", "S1[2,3]", "S1[1,3]", "S1[2,4]"),
    "A^C": ("S1[1,4]", "S1[2,3]", "S1[1,2]", "S1[3,4]"),
    "B^C": ("S1[1,3]", "S1[2,4]", "S1[1,2]", "S1[3,4]"),
    "(A^B)v(A^C)": ("S1[1,4]", "S1[2,3]") + _ALL_S4,
    "(A^B)v(B^C)": ("S1[1,3]", "S1[2,4]") + _ALL_S4,
    "(A^C)v(B^C)": ("S1[1,2]", "S1[3,4]") + _ALL_S4,
    "A^(BvC)": ("S1[1,4]", "S1[2,3]", "S2[1,4]"),
    "B^(AvC)": ("S1[1,3]", "S1[2,4]", "S2[1,3]"),
    "C^(AvB)": ("S1[1,2]", "S1[3,4]", "S2[1,2]"),
    "A": ("S1[1,4]", "S1[2,3]"),
    "B": ("S1[1,3]", "S1[2,4]"),
    "C": ("S1[1,2]", "S1[3,4]"),
    "Av(B^C)": ("S4[1,2|1,3]", "S4[1,2|2,4]", "S4[1,2|3,4]", "S4[1,3|2,4]", "S4[1,3|3,4]", "S4[2,4|3,4]"),
    "Bv(A^C)": ("S4[1,2|1,4]", "S4[1,2|2,3]", "S4[1,2|3,4]", "S4[1,4|2,3]", "S4[1,4|3,4]", "S4[2,3|3,4]"),
    "Cv(A^B)": ("S4[1,3|1,4]", "S4[1,3|2,3]", "S4[1,3|2,4]", "S4[1,4|2,3]", "S4[1,4|2,4]", "S4[2,3|2,4]"),
    "(AvB)^(AvC)": ("S2[1,2]", "S2[1,3]"),
    "(AvB)^(BvC)": ("S2[1,2]", "S2[1,4]"),
    "(AvC)^(BvC)": ("S2[1,3]", "S2[1,4]"),
    "AvB": ("S2[1,2]",),
    "AvC": ("S2[1,3]",),
    "BvC": ("S2[1,4]",),
    "AvBvC": ("S3",),
}

_ALL_W2 = ("W2[1,2]", "W2[1,3]", "W2[1,4]", "W2[2,3]", "W2[2,4]", "W2[3,4]")
_ALL_W4 = ("W4[1,2]", "W4[1,3]", "W4[1,4]", "W4[2,3]", "W4[2,4]", "W4[3,4]")

_DUAL = {
    "A^B^C": ("W1[1,4]", "W1[2,3]", "W1[1,3]", "W1[2,4]", "W1[1,2]", "W1[3,4]"),
    "A^B": ("W1[1,4]", "W1[2,3]", "W1[1,3]", "W1[2,4]"),
    "A^C": ("W1[1,4]", "W1[2,3]", "W1[1,2]", "W1[3,4]"),
    "B^C": ("W1[1,3]", "W1[2,4]", "W1[1,2]", "W1[3,4]"),
    "(A^B)v(A^C)": ("W1[1,4]", "W1[2,3]", "W3") + _ALL_W2 + _ALL_W4,
    "(A^B)v(B^C)": ("W1[1,3]", "W1[2,4]", "W3") + _ALL_W2 + _ALL_W4,
    "(A^C)v(B^C)": ("W1[1,2]", "W1[3,4]", "W3") + _ALL_W2 + _ALL_W4,
    "A^(BvC)": ("W1[1,4]", "W1[2,3]", "W2[1,4]", "W2[2,3]", "W3"),
    "B^(AvC)": ("W1[1,3]", "W1[2,4]", "W2[1,3]", "W2[2,4]", "W3"),
    "C^(AvB)": ("W1[1,2]", "W1[3,4]", "W2[1,2]", "W2[3,4]", "W3"),
    "A": ("W1[1,4]", "W1[2,3]"),
    "B": ("W1[1,3]", "W1[2,4]"),
    "C": ("W1[1,2]", "W1[3,4]"),
    "Av(B^C)": ("W3", "W2[1,2]", "W2[1,3]", "W2[2,4]", "W2[3,4]", "W4[1,4]", "W4[2,3]"),
    "Bv(A^C)": ("W3", "W2[1,2]", "W2[1,4]", "W2[2,3]", "W2[3,4]", "W4[1,3]", "W4[2,4]"),
    "Cv(A^B)": ("W3", "W2[1,3]", "W2[1,4]", "W2[2,3]", "W2[2,4]", "W4[1,2]", "W4[3,4]"),
    "(AvB)^(AvC)": ("W2[1,2]", "W2[3,4]", "W2[1,3]", "W2[2,4]", "W3"),
    "(AvB)^(BvC)": ("W2[1,2]", "W2[3,4]", "W2[1,4]", "W2[2,3]", "W3"),
    "(AvC)^(BvC)": ("W2[1,3]", "W2[2,4]", "W2[1,4]", "W2[2,3]", "W3"),
    "AvB": ("W2[1,2]", "W2[3,4]", "W3"),
    "AvC": ("W2[1,3]", "W2[2,4]", "W3"),
    "BvC": ("W2[1,4]", "W2[2,3]", "W3"),
    "AvBvC": ("W3",),
}


def _load(table: dict, dual: bool) -> dict:
    out = {}
    for text, names in table.items():
        c = canonicalize(text).with_dual(dual)
        if c.name.rstrip("*") != text:
            raise AssertionError(f"catalog key {text!r} is not in canonical form")
        out[c] = tuple(parse_ineq(n) for n in names)
    return out


_CATALOG = {**_load(_PRIMAL, False), **_load(_DUAL, True)}


def _party_for(mapping: dict) -> PartyOp:
    return PartyOp(tuple(ATOMS.index(mapping[a]) for a in ATOMS))


def transport_ineq(q: Ineq, idx: tuple) -> Ineq:
    """Relabel a criterion by a 0-based index permutation ``i -> idx[i]``."""
    def move(p):
        return tuple(sorted(idx[k - 1] + 1 for k in p))

    if q.kind in ("S3", "W3"):
        return q
    return Ineq(q.kind, tuple(move(p) for p in q.args))


def _same_set(xs, ys) -> bool:
    """Compare criteria sets up to the S2[i,j] = S2[k,l] identification."""
    def key(q):
        if q.kind == "S2":
            p = q.args[0]
            return ("S2", min(p, tuple(k for k in (1, 2, 3, 4) if k not in p)))
        return (q.kind, q.args)

    return {key(q) for q in xs} == {key(q) for q in ys}


def _check_catalog():
    for c in all_cones(False) + all_cones(True):
        if c not in _CATALOG:
            raise AssertionError(f"catalog misses {c}")
        kinds = {q.is_state for q in _CATALOG[c]}
        if kinds != {not c.dual}:
            raise AssertionError(f"catalog entry {c} mixes state and witness criteria")
        for mapping in PERMUTATIONS:
            idx = index_permutation(_party_for(mapping))
            moved = [transport_ineq(q, idx) for q in _CATALOG[c]]
            if not _same_set(moved, _CATALOG[c.permuted(mapping)]):
                raise AssertionError(f"catalog entry {c} is not covariant under {mapping}")


_check_catalog()


def catalog(c) -> tuple:
    """Criteria whose conjunction characterizes the X-shaped members of ``c``."""
    return _CATALOG[as_cone(c)]


def p_criteria() -> tuple:
    """Conjunction of the three ``Av(B^C)``-type criteria sets."""
    out = []
    for text in ("Av(B^C)", "Bv(A^C)", "Cv(A^B)"):
        out.extend(q for q in catalog(text) if q not in out)
    return tuple(out)


def q_dual_criteria() -> tuple:
    """Conjunction of the three ``Av(B^C)*``-type dual criteria sets."""
    out = []
    for text in ("Av(B^C)*", "Bv(A^C)*", "Cv(A^B)*"):
        out.extend(q for q in catalog(text) if q not in out)
    return tuple(out)


# -- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    """Membership verdict for one cone."""

    cone: ConeId
    margin: Margin
    necessary_only: bool = False
    failing: tuple = ()

    @property
    def holds(self) -> bool:
        return self.margin.holds

    @property
    def slack(self):
        return self.margin.slack

    def __bool__(self):
        return self.holds


class NonPsdWarning(UserWarning):
    pass


def _prepare(x):
    """Reduce the input to an X-shaped matrix; report whether it was dense."""
    if isinstance(x, DenseHermitian8):
        return xpart(x), True
    if isinstance(x, np.ndarray):
        return xpart(DenseHermitian8.from_complex(x)), True
    if isinstance(x, GhzDiagonal):
        return x.as_state(), False
    if isinstance(x, (XMatrix, Profile)):
        return x, False
    raise TypeError(f"cannot classify {type(x).__name__}")


def member(x, c) -> Membership:
    """Evaluate the catalog criteria of ``c`` on ``x``.

    Dense input is projected to its X-part; the verdict is then only a
    necessary condition and flagged as such.
    """
    c = as_cone(c)
    x, dense = _prepare(x)
    if isinstance(x, XMatrix):
        if c.dual and not isinstance(x, WitnessX):
            raise TypeError(f"dual cone {c} takes a witness")
        if not c.dual and isinstance(x, WitnessX):
            raise TypeError(f"primal cone {c} takes a state")
        if c.dual:
            for v in x.a + x.b:
                if v < 0:
                    raise ValueError("negative s or t entry in witness")
    p = magnitudes(x)
    crit = catalog(c)
    m = conjunction(crit, p)
    failing = ()
    if not m.holds:
        failing = tuple(q.name for q in crit if not conjunction((q,), p).holds)
    return Membership(c, m, dense, failing)


@dataclass(frozen=True)
class LatticeProfile:
    """Membership margins for every primal cone."""

    margins: dict
    psd: bool
    exact: bool
    necessary_only: bool
    minimal: tuple = field(default=())

    def members(self) -> tuple:
        return tuple(c for c, m in self.margins.items() if m.holds)

    def __getitem__(self, c):
        return self.margins[as_cone(c)]


class MonotonicityError(AssertionError):
    """A lattice profile violated an inclusion of the diagram (a bug)."""


def _monotone_ok(src: Margin, dst: Margin) -> bool:
    if not src.holds or dst.holds:
        return True
    if dst.exact:
        return False
    # float slack may drift by a few roundings when criteria are summed
    return dst.slack >= -8 * tolerance() * dst.scale


def lattice_profile(x) -> LatticeProfile:
    """Classify ``x`` against all 23 primal cones."""
    x, dense = _prepare(x)
    if isinstance(x, WitnessX):
        raise TypeError("lattice profiles are for states")
    psd = x.psd if isinstance(x, XState) else True
    if not psd:
        warnings.warn("classifying a matrix that is not positive semidefinite", NonPsdWarning, stacklevel=2)
    p = magnitudes(x)
    margins = {c: conjunction(catalog(c), p) for c in all_cones(False)}
    if psd:
        for src, dst in arrows(False):
            if not _monotone_ok(margins[src], margins[dst]):
                raise MonotonicityError(f"member of {src} but not of {dst}")
    below = {c: [s for s, d in arrows(False) if d == c] for c in all_cones(False)}
    minimal = tuple(
        c for c in all_cones(False) if margins[c].holds and not any(margins[s].holds for s in below[c])
    )
    return LatticeProfile(margins, psd, p.exact, dense, minimal)


# -- vectorized evaluation ------------------------------------------------------


@lru_cache(maxsize=None)
def _row_table(dual: bool):
    """Distinct rows over all cones and, per cone, the indices of its rows."""
    rows, index = [], {}
    per_cone = []
    for c in all_cones(dual):
        ids = []
        for q in catalog(c):
            for r in q.rows():
                if r not in index:
                    index[r] = len(rows)
                    rows.append(r)
                ids.append(index[r])
        per_cone.append(np.array(sorted(set(ids))))
    return np.array(rows, dtype=np.int64), tuple(per_cone)


def margins_batch(c, m, dual: bool = False) -> np.ndarray:
    """Slacks of all 23 cones for ``N`` magnitude vectors at once.

    Integer input stays in exact int64 arithmetic; float input is evaluated
    in float.  Returns an ``N x 23`` array ordered like :func:`all_cones`.
    """
    c = np.asarray(c)
    m = np.asarray(m)
    rows, per_cone = _row_table(dual)
    if c.dtype.kind in "iu" and m.dtype.kind in "iu":
        vec = np.concatenate([c, m], axis=1).astype(np.int64)
        if np.abs(vec).max(initial=0) > 2**40:
            raise OverflowError("integer profiles too large for exact batch evaluation")
        vals = vec @ rows.T
    else:
        vals = np.concatenate([c, m], axis=1).astype(float) @ rows.T.astype(float)
    return np.stack([vals[:, ids].min(axis=1) for ids in per_cone], axis=1)


def batch_holds(slacks: np.ndarray, c, m) -> np.ndarray:
    """Verdicts for :func:`margins_batch` output (tolerance applied to floats)."""
    if slacks.dtype.kind in "iu":
        return slacks >= 0
    c = np.asarray(c, float)
    m = np.asarray(m, float)
    scale = np.maximum(np.maximum(c.sum(axis=1), m.sum(axis=1)), 1.0)
    return slacks >= -tolerance() * scale[:, None]
