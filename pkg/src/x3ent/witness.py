"""Witness certificates and implications between witness inequalities.

Both problems are linear in the magnitude variables ``r_1..r_4`` (radii
``sqrt(s_i t_i)``) and ``u_1..u_4`` (moduli ``|u_i|``), which is what makes
exact linear programming applicable.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import isqrt, mpz

from .cones import NonPsdWarning, catalog, member
from .exact import Surd, as_fraction, exact_str, to_fraction
from .ineq import Ineq, conjunction, magnitudes
from .lattice import ConeId, as_cone
from .lp import LinSystem, lp_solve
from .xcore import N, GhzDiagonal, Profile, WitnessX, XState, make_xstate, pair, profile

MAGNITUDE_VARS = ("r1", "r2", "r3", "r4", "u1", "u2", "u3", "u4")


def _row_coeffs(row) -> dict:
    return {v: a for v, a in zip(MAGNITUDE_VARS, row) if a}


def criteria_rows(ineqs) -> tuple:
    """Distinct linear forms of a set of witness inequalities, in order."""
    out = []
    for q in ineqs:
        for r in q.rows():
            if r not in out:
                out.append(r)
    return tuple(out)


def criteria_system(ineqs, objective=None, maximize: bool = False) -> LinSystem:
    """``LinSystem`` over (r, |u|) >= 0 with every form of ``ineqs`` >= 0 and sum 1."""
    sys = LinSystem(list(MAGNITUDE_VARS), objective=dict(objective or {}), maximize=maximize)
    for q in ineqs:
        for k, r in enumerate(q.rows()):
            sys.add(_row_coeffs(r), ">=", 0, f"{q.name}#{k}")
    sys.add({v: 1 for v in MAGNITUDE_VARS}, "==", 1, "normalization")
    return sys


# -- certification --------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A witness in the dual cone pairing strictly negatively with a state."""

    witness: WitnessX
    cone: ConeId
    value: Fraction
    verified: bool
    state: XState = field(repr=False, default=None)
    lp_value: object = None
    magnitudes: tuple = ()
    transcript: tuple = ()

    @property
    def dual_cone(self) -> ConeId:
        return self.cone.polar()

    def recheck(self) -> bool:
        """Independent re-verification: dual criteria pass and pairing < 0."""
        ok = member(self.witness, self.dual_cone).holds
        return bool(ok and pair(self.witness, self.state) < 0)


def _exact_state(rho) -> XState:
    if isinstance(rho, GhzDiagonal):
        rho = rho.as_state()
    if not isinstance(rho, XState):
        raise TypeError("certify takes an X-shaped state")
    if not rho.exact:
        rho = make_xstate(rho.a, rho.b, list(zip(rho.z_re, rho.z_im)), exact=True)
    return rho


def _ceil_bound(values) -> int:
    return int(max(abs(float(v)) for v in values)) + 2


def surrogate_min(p: Profile, dual_criteria) -> tuple:
    """Minimize ``sum r_i c_i - |u_i| m_i`` over the dual criteria with ``sum = 1``.

    Solved through the LP dual (eight constraints, one column per linear
    form); returns ``(value, x)`` with ``x = (r_1..r_4, u_1..u_4)`` read
    from the dual prices.
    """
    rows = criteria_rows(dual_criteria)
    f = list(p.c) + [-v for v in p.m]
    shift = _ceil_bound(f)
    ys = [f"y{k}" for k in range(len(rows))]
    sys = LinSystem(ys + ["tau"], objective={"tau": 1}, maximize=True)
    for j in range(8):
        coeffs = {y: row[j] for y, row in zip(ys, rows) if row[j]}
        coeffs["tau"] = 1
        sys.add(coeffs, "<=", f[j] + shift)
    res = lp_solve(sys)
    if not res.optimal:
        raise AssertionError(f"surrogate LP ended {res.status}")
    x = tuple(as_fraction(d) for d in res.duals)
    return res.value - shift, x


def _sqrt_ratio_approx(num: Fraction, den: Fraction, bits: int) -> Fraction:
    """Rational approximation of ``sqrt(num/den)`` with ``bits`` of precision."""
    q = num / den
    scale = mpz(1) << bits
    root = isqrt(mpz(q.numerator) * scale * scale // q.denominator)
    return Fraction(max(int(root), 1), int(scale))


def _inv_sqrt_lower(w: Fraction, bits: int) -> Fraction:
    """Rational ``k <= 1/sqrt(w)`` within ``2**-bits`` (relative to ``w``'s scale)."""
    scale = mpz(1) << bits
    root = isqrt(mpz(w.denominator) * scale * scale // w.numerator)
    return Fraction(int(root), int(scale))


def lift(rho: XState, x: tuple, target: Fraction, bits: int) -> WitnessX:
    """Build ``X(s, t, u)`` from magnitudes ``x = (r, |u|)`` at the given precision.

    ``s_i t_i = r_i**2`` holds exactly.  ``u_i`` points against ``conj z_i``
    with modulus at most the LP value, so every witness criterion that the
    magnitudes satisfy still holds.
    """
    r, uhat = x[:N], x[N:]
    degenerate = [i for i in range(N) if r[i] and (rho.a[i] == 0) != (rho.b[i] == 0)]
    weight = 1 + sum(rho.a[j] + rho.b[j] for j in degenerate)
    eps = abs(target) / (2 * weight) if degenerate else None
    s, t, u = [], [], []
    for i in range(N):
        a, b = rho.a[i], rho.b[i]
        if r[i] == 0:
            s.append(Fraction(0))
            t.append(Fraction(0))
        elif a > 0 and b > 0:
            q = _sqrt_ratio_approx(a, b, bits)
            s.append(r[i] / q)
            t.append(r[i] * q)
        elif a == 0 and b == 0:
            s.append(r[i])
            t.append(r[i])
        elif a == 0:
            t.append(eps)
            s.append(r[i] * r[i] / eps)
        else:
            s.append(eps)
            t.append(r[i] * r[i] / eps)
        w = rho.abs2(i)
        if w == 0:
            u.append((-uhat[i], Fraction(0)))
        else:
            kappa = uhat[i] * _inv_sqrt_lower(w, bits)
            u.append((-kappa * rho.z_re[i], kappa * rho.z_im[i]))
    return WitnessX(tuple(s), tuple(t), tuple(v[0] for v in u), tuple(v[1] for v in u), True)


def certify(rho, cone, max_bits: int = 4096):
    """Certificate that ``rho`` lies outside ``cone``, or ``None`` if it is a member.

    The surrogate optimum decides: a negative value yields a witness in the
    polar cone whose exact pairing with ``rho`` is negative.
    """
    c = as_cone(cone)
    if c.dual:
        raise ValueError("certify takes a primal cone")
    rho = _exact_state(rho)
    if any(v < 0 for v in rho.a + rho.b):
        raise ValueError("certify requires a nonnegative diagonal")
    if not rho.psd:
        warnings.warn("certifying a matrix that is not positive semidefinite", NonPsdWarning, stacklevel=2)
    polar = c.polar()
    crit = catalog(polar)
    p = profile(rho)
    value, x = surrogate_min(p, crit)
    if value >= 0:
        return None
    target = value if not isinstance(value, Surd) else Fraction(float(value)).limit_denominator(10**12)
    if target >= 0:
        target = Fraction(-1, 10**12)
    bits = 8
    while bits <= max_bits:
        w = lift(rho, x, target, bits)
        val = pair(w, rho)
        if val < 0:
            m = member(w, polar)
            if not m.holds:
                raise AssertionError(f"lifted witness left {polar}: {m.failing}")
            transcript = tuple((q.name, conjunction((q,), magnitudes(w)).slack) for q in crit)
            return Certificate(w, c, val, True, rho, value, x, transcript)
        bits *= 2
    raise AssertionError("witness lifting did not reach a negative pairing")


def certificate_to_dict(cert: Certificate) -> dict:
    from .io import witness_to_dict

    return {
        "cone": cert.cone.name,
        "dual_cone": cert.dual_cone.name,
        "witness": witness_to_dict(cert.witness),
        "pairing": exact_str(cert.value),
        "verified": cert.verified,
        "surrogate_value": exact_str(cert.lp_value),
        "magnitudes": {v: exact_str(x) for v, x in zip(MAGNITUDE_VARS, cert.magnitudes)},
        "transcript": [{"criterion": n, "slack": exact_str(s)} for n, s in cert.transcript],
    }


# -- implications -------------------------------------------------------------


@dataclass(frozen=True)
class Implication:
    """Outcome of ``assumed => claimed``; a counterexample when it fails."""

    holds: bool
    assumed: tuple
    claimed: tuple
    minima: tuple
    counterexample: Profile = None

    def __bool__(self):
        return self.holds


def _claimed_rows(claimed, part):
    if isinstance(claimed, Ineq):
        rows = claimed.rows()
        if part is not None:
            rows = (rows[part],)
        return (claimed,), rows
    claimed = tuple(claimed)
    if part is not None:
        raise ValueError("part selects a form of a single inequality")
    return claimed, criteria_rows(claimed)


def implies(assumed, claimed, part: int | None = None) -> Implication:
    """Decide whether the ``assumed`` inequalities force ``claimed``.

    Each linear form of ``claimed`` (only form ``part`` if given) is
    minimized over ``{assumed hold, r, |u| >= 0, sum = 1}``; the implication
    holds iff every minimum is nonnegative.  A failing form yields the
    optimal vertex as a counterexample, re-checked by direct evaluation.
    """
    assumed = tuple(assumed)
    claimed_set, rows = _claimed_rows(claimed, part)
    minima = []
    witness = None
    for row in rows:
        sys = criteria_system(assumed, objective=_row_coeffs(row))
        res = lp_solve(sys)
        if not res.optimal:
            raise AssertionError(f"implication LP ended {res.status}")
        minima.append(res.value)
        if res.value < 0 and witness is None:
            x = [res.solution[v] for v in MAGNITUDE_VARS]
            witness = Profile(tuple(x[:N]), tuple(x[N:]), True)
    holds = witness is None
    if witness is not None:
        if not conjunction(assumed, witness).holds:
            raise AssertionError("counterexample violates an assumption")
        vals = [sum(a * v for a, v in zip(row, witness.c + witness.m)) for row in rows]
        if min(vals) >= 0:
            raise AssertionError("counterexample does not violate the claim")
    return Implication(holds, assumed, claimed_set, tuple(minima), witness)


def parse_magnitudes(values) -> Profile:
    vals = [to_fraction(v) for v in values]
    if len(vals) != 2 * N:
        raise ValueError("expected r_1..r_4, u_1..u_4")
    return Profile(tuple(vals[:N]), tuple(vals[N:]), True)
