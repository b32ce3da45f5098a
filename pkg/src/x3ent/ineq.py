"""Inequality families on state profiles and witness radii.

Every inequality here is a minimum of finitely many linear forms in the
magnitude vector ``(c_1..c_4, m_1..m_4)`` of a state, or ``(r_1..r_4,
|u_1|..|u_4|)`` of a witness.  Each linear form is stored as an integer row
of length 8 (coefficients of the c-part, then of the m-part); the margin of
an inequality is the minimum of its rows applied to the vector.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import tolerance
from .xcore import GhzDiagonal, Profile, WitnessX, XMatrix, profile

INDICES = (1, 2, 3, 4)
PAIRS = tuple(itertools.combinations(INDICES, 2))

STATE_KINDS = ("S1", "S2", "S3", "S4")
WITNESS_KINDS = ("W1", "W2", "W3", "W4a", "W4b", "W4")


def _pair(p) -> tuple:
    p = tuple(sorted(int(v) for v in p))
    if len(p) != 2 or p[0] == p[1] or not set(p) <= set(INDICES):
        raise ValueError(f"invalid index pair {p!r}")
    return p


def complement(p) -> tuple:
    return tuple(k for k in INDICES if k not in p)


def _row(plus_c=(), plus_m=(), minus_m=()):
    """Integer row from index multisets (1-based); m entries enter negatively."""
    row = [0] * 8
    for k in plus_c:
        row[k - 1] += 1
    for k in minus_m:
        row[3 + k] -= 1
    return tuple(row)


@dataclass(frozen=True, order=True)
class Ineq:
    """One named inequality (state or witness side)."""

    kind: str
    args: tuple = ()

    def __post_init__(self):
        kind, args = self.kind, self.args
        if kind in ("S3", "W3"):
            if args:
                raise ValueError(f"{kind} takes no indices")
        elif kind == "S4":
            if len(args) != 2:
                raise ValueError("S4 takes two index pairs")
            p, q = sorted((_pair(args[0]), _pair(args[1])))
            object.__setattr__(self, "args", (p, q))
        elif kind in ("S1", "S2", "W1", "W2", "W4a", "W4b", "W4"):
            if len(args) != 1:
                raise ValueError(f"{kind} takes one index pair")
            object.__setattr__(self, "args", (_pair(args[0]),))
        else:
            raise ValueError(f"unknown inequality kind {kind!r}")

    @property
    def is_state(self) -> bool:
        return self.kind.startswith("S")

    @property
    def name(self) -> str:
        if self.kind in ("S3", "W3"):
            return self.kind
        if self.kind == "S4":
            (i, j), (k, l) = self.args
            return f"S4[{i},{j}|{k},{l}]"
        i, j = self.args[0]
        return f"{self.kind}[{i},{j}]"

    def __str__(self):
        return self.name

    def rows(self) -> tuple:
        return _rows(self)


def S1(i, j) -> Ineq:
    return Ineq("S1", ((i, j),))


def S2(i, j) -> Ineq:
    return Ineq("S2", ((i, j),))


def S3() -> Ineq:
    return Ineq("S3")


def S4(p, q) -> Ineq:
    return Ineq("S4", (p, q))


def W1(i, j) -> Ineq:
    return Ineq("W1", ((i, j),))


def W2(i, j) -> Ineq:
    return Ineq("W2", ((i, j),))


def W3() -> Ineq:
    return Ineq("W3")


def W4a(i, j) -> Ineq:
    return Ineq("W4a", ((i, j),))


def W4b(i, j) -> Ineq:
    return Ineq("W4b", ((i, j),))


def W4(i, j) -> Ineq:
    return Ineq("W4", ((i, j),))


_NAME_RE = re.compile(r"^\s*(S1|S2|S3|S4|W1|W2|W3|W4a|W4b|W4)\s*(?:\[([0-9,|\s]*)\])?\s*$")


def parse_ineq(text: str) -> Ineq:
    """Parse names like ``"S4[1,3|2,4]"``, ``"W4a[1,2]"`` or ``"S3"``."""
    m = _NAME_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse inequality name {text!r}")
    kind, body = m.group(1), m.group(2)
    if kind in ("S3", "W3"):
        if body:
            raise ValueError(f"{kind} takes no indices")
        return Ineq(kind)
    if body is None:
        raise ValueError(f"{kind} needs indices")
    try:
        groups = [tuple(int(v) for v in g.split(",")) for g in body.split("|")]
    except ValueError:
        raise ValueError(f"cannot parse inequality name {text!r}") from None
    if kind == "S4":
        if len(groups) != 2:
            raise ValueError("S4 takes two index pairs")
        return Ineq("S4", tuple(groups))
    if len(groups) != 1:
        raise ValueError(f"{kind} takes one index pair")
    return Ineq(kind, (groups[0],))


@lru_cache(maxsize=None)
def _rows(q: Ineq) -> tuple:
    kind = q.kind
    if kind == "S1":
        i, j = q.args[0]
        return tuple(_row((p,), minus_m=(r,)) for p in (i, j) for r in (i, j))
    if kind in ("S2", "S4"):
        if kind == "S2":
            p = q.args[0]
            pairs = (p, complement(p))
        else:
            pairs = q.args
        (i, j), (k, l) = pairs
        out = []
        for cp in ((i, j), (k, l)):
            for mp in ((i, j), (k, l)):
                out.append(_row(cp, minus_m=mp))
        return tuple(dict.fromkeys(out))
    if kind == "S3":
        return tuple(_row(tuple(k for k in INDICES if k != i), minus_m=(i,)) for i in INDICES)
    if kind == "W1":
        i, j = q.args[0]
        return (_row((i, j), minus_m=(i, j)),)
    if kind == "W2":
        i, j = q.args[0]
        return (
            _row(tuple(k for k in INDICES if k != j), minus_m=(i,)),
            _row(tuple(k for k in INDICES if k != i), minus_m=(j,)),
        )
    if kind == "W3":
        return (_row(INDICES, minus_m=INDICES),)
    if kind == "W4a":
        i, j = q.args[0]
        k, l = complement((i, j))
        return (_row((i, j, k, k), minus_m=(i, j)), _row((i, j, l, l), minus_m=(i, j)))
    if kind == "W4b":
        i, j = q.args[0]
        k, l = complement((i, j))
        return (
            _row((i, j, k, k, l, l), minus_m=(i, j, k, k)),
            _row((i, j, k, k, l, l), minus_m=(i, j, l, l)),
        )
    if kind == "W4":
        i, j = q.args[0]
        return _rows(W4a(i, j)) + _rows(W4b(i, j))
    raise AssertionError(kind)


def state_family(kind: str) -> tuple:
    """All instances of one state family (S4 over distinct unordered pairs)."""
    if kind in ("S1", "S2"):
        return tuple(Ineq(kind, (p,)) for p in PAIRS)
    if kind == "S3":
        return (S3(),)
    if kind == "S4":
        return tuple(S4(p, q) for p, q in itertools.combinations(PAIRS, 2))
    raise ValueError(kind)


# -- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class Margin:
    """Verdict plus signed slack (min over constituent linear forms)."""

    holds: bool
    slack: object
    exact: bool = True
    scale: float = 1.0
    parts: tuple = field(default=(), compare=False)

    def __bool__(self):
        return self.holds


def magnitudes(x) -> Profile:
    """Profile of a state or witness (``Profile`` passes through)."""
    if isinstance(x, Profile):
        return x
    if isinstance(x, (XMatrix, GhzDiagonal)):
        return profile(x)
    raise TypeError(f"expected a state, witness or profile, got {type(x).__name__}")


def _rational_vector(p: Profile):
    """Common-denominator integer vector when every entry is rational, else None."""
    vals = p.c + p.m
    if not all(isinstance(v, (int, Fraction)) for v in vals):
        return None
    den = 1
    for v in vals:
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // math.gcd(den, d)
    return [int(v * den) for v in vals], den


def row_values(rows, p: Profile) -> list:
    """Apply each integer row to the profile vector (exact or float)."""
    if not p.exact:
        vec = np.array(p.c + p.m, dtype=float)
        return [float(v) for v in np.asarray(rows, dtype=float) @ vec]
    ints = _rational_vector(p)
    if ints is not None:
        vec, den = ints
        return [Fraction(sum(r * v for r, v in zip(row, vec) if r), den) for row in rows]
    vals = p.c + p.m
    out = []
    for row in rows:
        total = Fraction(0)
        for coef, v in zip(row, vals):
            if coef:
                total = total + coef * v
        out.append(total)
    return out


def _holds(slack, exact: bool, scale: float) -> bool:
    if exact:
        return bool(slack >= 0)
    return bool(slack >= -tolerance() * scale)


def _min(values):
    best = values[0]
    for v in values[1:]:
        if v < best:
            best = v
    return best


def evaluate(q: Ineq, x) -> Margin:
    p = magnitudes(x)
    vals = row_values(q.rows(), p)
    slack = _min(vals)
    scale = p.scale()
    return Margin(_holds(slack, p.exact, scale), slack, p.exact, scale, tuple(vals))


def _check_psd_input(x):
    if isinstance(x, WitnessX):
        for v in x.a + x.b:
            if v < 0:
                raise ValueError("negative s or t entry in witness")


def eval_state(q: Ineq, x) -> Margin:
    """Margin of a state inequality (S1..S4) on a state or profile."""
    if not q.is_state:
        raise ValueError(f"{q} is a witness inequality")
    return evaluate(q, x)


def eval_witness(q: Ineq, w) -> Margin:
    """Margin of a witness inequality (W1..W4b) on a witness or radii profile."""
    if q.is_state:
        raise ValueError(f"{q} is a state inequality")
    _check_psd_input(w)
    return evaluate(q, w)


def conjunction(ineqs, x) -> Margin:
    """Margin of a conjunction: min over all constituent forms."""
    ineqs = tuple(ineqs)
    p = magnitudes(x)
    rows = [r for q in ineqs for r in q.rows()]
    vals = row_values(rows, p)
    scale = p.scale()
    if not vals:
        zero = Fraction(0) if p.exact else 0.0
        return Margin(True, zero, p.exact, scale)
    slack = _min(vals)
    return Margin(_holds(slack, p.exact, scale), slack, p.exact, scale, tuple(vals))


def rows_matrix(ineqs) -> np.ndarray:
    """Integer matrix stacking the rows of several inequalities."""
    return np.array([r for q in ineqs for r in q.rows()], dtype=np.int64).reshape(-1, 8)


def batch_slacks(rows: np.ndarray, c: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Float slacks for N profiles at once: ``min_rows(row . (c, m))``."""
    vec = np.concatenate([np.asarray(c, float), np.asarray(m, float)], axis=1)
    return (vec @ np.asarray(rows, float).T).min(axis=1)
