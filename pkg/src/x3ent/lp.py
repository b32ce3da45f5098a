"""Exact linear programming by the tableau simplex method.

Constraint coefficients are rationals (``gmpy2.mpq`` internally).  Either
the right-hand side or the objective may additionally contain
:class:`~x3ent.exact.Surd` values: pivots only ever multiply those by
rationals, and their signs are decided exactly.

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
leaving variable among ratio ties), so results are deterministic and the
method cannot cycle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .exact import Surd, as_fraction

SENSES = ("<=", ">=", "==")


def _q(v):
    if isinstance(v, Surd):
        return v
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, bool) or isinstance(v, float):
        raise TypeError(f"LP coefficients must be exact rationals, got {v!r}")
    return mpq(v)


def _out(v):
    return v if isinstance(v, Surd) else as_fraction(v)


@dataclass(frozen=True)
class Constraint:
    coeffs: dict
    sense: str
    rhs: object = 0
    name: str = ""

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f"unknown constraint sense {self.sense!r}")


@dataclass
class LinSystem:
    """Nonnegative variables, linear constraints and a linear objective."""

    variables: list
    constraints: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)
    maximize: bool = False

    def add(self, coeffs: dict, sense: str, rhs=0, name: str = "") -> None:
        unknown = set(coeffs) - set(self.variables)
        if unknown:
            raise KeyError(f"unknown variables {sorted(unknown)}")
        self.constraints.append(Constraint(dict(coeffs), sense, rhs, name))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: object = None
    solution: dict = None
    duals: tuple = ()
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    def __init__(self, rows, basis, ncols):
        self.rows = rows  # each row: list of ncols entries + rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r, col, obj_rows):
        row = self.rows[r]
        p = row[col]
        if p != 1:
            inv = 1 / p
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
        nz = [j for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                for j in nz:
                    other[j] = other[j] - f * row[j]
        for other in obj_rows:
            f = other[col]
            if f:
                for j in nz:
                    other[j] = other[j] - f * row[j]
        self.basis[r] = col
        self.pivots += 1

    def run(self, obj, allowed, extra_obj=()):
        """Minimize the objective row ``obj`` over ``allowed`` entering columns."""
        while True:
            col = next((j for j in allowed if obj[j] < 0), None)
            if col is None:
                return "optimal"
            best, best_r = None, None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[best_r]):
                        best, best_r = ratio, i
            if best_r is None:
                return "unbounded"
            self.pivot(best_r, col, (obj,) + tuple(extra_obj))


def lp_solve(sys: LinSystem) -> LPResult:
    """Solve ``sys`` exactly; the returned duals price the constraints in order."""
    names = list(sys.variables)
    n = len(names)
    pos = {v: k for k, v in enumerate(names)}
    m = len(sys.constraints)

    # structural columns, one slack per inequality, one tracking column per row
    slack_of = {}
    for i, con in enumerate(sys.constraints):
        if con.sense != "==":
            slack_of[i] = n + len(slack_of)
    n_struct = n + len(slack_of)
    ncols = n_struct + m
    rows, flips, basis, needs_art = [], [], [], []
    for i, con in enumerate(sys.constraints):
        row = [mpq(0)] * ncols + [_q(con.rhs)]
        for v, a in con.coeffs.items():
            row[pos[v]] = row[pos[v]] + _q(a)
        if i in slack_of:
            row[slack_of[i]] = mpq(1) if con.sense == "<=" else mpq(-1)
        flip = row[-1] < 0
        if flip:
            row = [-v if v else v for v in row]
        row[n_struct + i] = mpq(1)
        rows.append(row)
        flips.append(flip)
        if i in slack_of and row[slack_of[i]] == 1:
            basis.append(slack_of[i])
            needs_art.append(False)
        else:
            basis.append(n_struct + i)
            needs_art.append(True)
    tab = _Tableau(rows, basis, ncols)

    cost = [mpq(0)] * (ncols + 1)
    sign = -1 if sys.maximize else 1
    for v, a in sys.objective.items():
        cost[pos[v]] = cost[pos[v]] + sign * _q(a)

    def priced(c):
        obj = list(c)
        for i, b in enumerate(tab.basis):
            f = obj[b]
            if f:
                row = tab.rows[i]
                obj = [o - f * r if r else o for o, r in zip(obj, row)]
        return obj

    structural = list(range(n_struct))
    if any(needs_art):
        phase1 = [mpq(0)] * (ncols + 1)
        for i, art in enumerate(needs_art):
            if art:
                phase1[n_struct + i] = mpq(1)
        phase1 = priced(phase1)
        tab.run(phase1, structural)
        if -phase1[-1] > 0:
            return LPResult("infeasible", pivots=tab.pivots)
        # drive remaining artificial variables out of the basis
        for i in range(len(tab.rows)):
            if tab.basis[i] >= n_struct:
                col = next((j for j in structural if tab.rows[i][j]), None)
                if col is not None:
                    tab.pivot(i, col, ())
    obj = priced(cost)
    status = tab.run(obj, structural)
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    x = [mpq(0)] * n_struct
    for i, b in enumerate(tab.basis):
        if b < n_struct:
            x[b] = tab.rows[i][-1]
    value = -obj[-1]
    duals = []
    for i in range(m):
        y = -obj[n_struct + i]
        duals.append(_out(-y if flips[i] else y) * sign if y else Fraction(0))
    return LPResult(
        "optimal",
        _out(value * sign) if value else Fraction(0),
        {v: _out(x[k]) if x[k] else Fraction(0) for v, k in pos.items()},
        tuple(duals),
        tab.pivots,
    )
