"""Polyhedral computations in the 8-dimensional GHZ-diagonal space.

Coordinates are ``(a_1..a_4, z_1..z_4)`` for ``X(a, a, z)`` with real ``z``.
Restricted to this space every catalog cone is a polyhedral cone: each
linear form ``sum p_i c_i - sum q_i m_i`` of a criterion becomes the
inequalities ``sum p_i a_i - sum q_i (+-z_i) >= 0`` over all sign choices.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cones import catalog, p_criteria
from .dd import extreme_rays as dd_extreme_rays
from .dd import is_extreme, primitive, tight_rank
from .lattice import ConeId, all_cones, arrows, as_cone
from .lp import LinSystem, lp_solve
from .xcore import GhzDiagonal, make_ghz, make_xstate

DIM = 8


def _psd_base() -> tuple:
    rows = []
    for i in range(4):
        for sgn in (1, -1):
            row = [0] * DIM
            row[i] = 1
            row[4 + i] = -sgn
            rows.append(tuple(row))
    return tuple(rows)


PSD_BASE = _psd_base()


@dataclass(frozen=True)
class HPolyhedron:
    """Homogeneous cone ``{x in Q^8 : row . x >= 0}`` in GHZ coordinates."""

    rows: tuple
    label: str = ""

    def contains(self, x) -> bool:
        v = _vector(x)
        return all(sum(r * c for r, c in zip(row, v)) >= 0 for row in self.rows)

    def slack(self, x):
        v = _vector(x)
        return min(sum(r * c for r, c in zip(row, v)) for row in self.rows)


def _vector(x) -> tuple:
    if isinstance(x, GhzDiagonal):
        return tuple(x.a) + tuple(x.z)
    return tuple(x)


def expand_row(row) -> tuple:
    """GHZ inequalities of one magnitude form (c-part, then m-part coefficients)."""
    p, q = row[:4], [-v for v in row[4:]]
    if any(v < 0 for v in p) or any(v < 0 for v in q):
        raise ValueError("state forms have nonnegative c and nonpositive m coefficients")
    support = [i for i in range(4) if q[i]]
    out = []
    for signs in itertools.product((1, -1), repeat=len(support)):
        z = [0] * 4
        for i, sgn in zip(support, signs):
            z[i] = -q[i] * sgn
        out.append(tuple(p) + tuple(z))
    return tuple(out)


def hrep_from_criteria(criteria, label: str = "") -> HPolyhedron:
    rows = list(PSD_BASE)
    for crit in criteria:
        if not crit.is_state:
            raise ValueError("only state criteria have a GHZ H-representation here")
        for form in crit.rows():
            for r in expand_row(form):
                if r not in rows:
                    rows.append(r)
    return HPolyhedron(tuple(rows), label)


def hrep(cone) -> HPolyhedron:
    """H-representation of ``cone`` restricted to GHZ-diagonal matrices."""
    c = as_cone(cone)
    if c.dual:
        raise ValueError("dual cones are not H-represented here; use the primal rays")
    return hrep_from_criteria(catalog(c), c.name)


def extreme_rays(p, check: bool = True) -> tuple:
    """Canonically ordered extreme rays of an :class:`HPolyhedron` (or cone)."""
    if not isinstance(p, HPolyhedron):
        p = hrep(p)
    rays = dd_extreme_rays(p.rows, DIM)
    if check:
        for r in rays:
            if tight_rank(r, p.rows) != DIM - 1:
                raise AssertionError(f"ray {format_ray(r)} fails the rank test")
            if not any(r[:4]) or next(v for v in r[:4] if v) < 0:
                raise AssertionError(f"ray {format_ray(r)} is not in canonical form")
    return rays


def format_ray(r) -> str:
    return "X(" + " ".join(str(v) for v in r[:4]) + " / " + " ".join(str(v) for v in r[4:]) + ")"


def ray_state(r) -> GhzDiagonal:
    return make_ghz(r[:4], r[4:])


# -- candidate sets ---------------------------------------------------------------

DIAGONAL = tuple(tuple(int(i == j) for j in range(4)) + (0, 0, 0, 0) for i in range(4))


def expand_pattern(a, z) -> tuple:
    """All sign choices of a pattern like ``(1,0,1,1; +-1,0,0,0)``."""
    support = [i for i in range(4) if z[i]]
    out = []
    for signs in itertools.product((1, -1), repeat=len(support)):
        zz = [0] * 4
        for i, sgn in zip(support, signs):
            zz[i] = sgn * z[i]
        out.append(tuple(a) + tuple(zz))
    return tuple(out)


# Each block lists the cones of one inclusion chain; patterns accumulate
# within a block (the second cone adds to the rays of the first, ...).
TABLE2 = (
    (
        ("A^B^C", [((1, 1, 1, 1), (1, 1, 1, 1))], 20),
        ("A^B", [((1, 0, 1, 1), (1, 0, 0, 0)), ((0, 1, 1, 1), (0, 1, 0, 0)),
                 ((1, 1, 1, 0), (0, 0, 1, 0)), ((1, 1, 0, 1), (0, 0, 0, 1))], 28),
        ("(A^B)v(A^C)", [((1, 1, 0, 1), (1, 0, 0, 0)), ((0, 1, 1, 1), (0, 0, 1, 0)),
                         ((1, 1, 1, 0), (0, 1, 0, 0)), ((1, 0, 1, 1), (0, 0, 0, 1))], 36),
        ("A^(BvC)", [((1, 2, 0, 1), (1, 0, 0, 1)), ((1, 0, 2, 1), (1, 0, 0, 1)),
                     ((2, 1, 1, 0), (0, 1, 1, 0)), ((0, 1, 1, 2), (0, 1, 1, 0)),
                     ((1, 2, 2, 1), (1, 2, 0, 1)), ((1, 2, 2, 1), (1, 0, 2, 1)),
                     ((2, 1, 1, 2), (2, 1, 1, 0)), ((2, 1, 1, 2), (0, 1, 1, 2))], 84),
    ),
    (
        ("A", [((1, 0, 0, 1), (1, 0, 0, 1)), ((0, 1, 1, 0), (0, 1, 1, 0))], 12),
        ("Av(B^C)", [((1, 1, 1, 0), (1, 0, 0, 0)), ((0, 1, 1, 1), (0, 0, 0, 1)),
                     ((1, 1, 0, 1), (0, 1, 0, 0)), ((1, 0, 1, 1), (0, 0, 1, 0))], 20),
        ("(AvB)^(AvC)", [((1, 1, 2, 0), (1, 1, 0, 0)), ((1, 2, 1, 0), (1, 0, 1, 0)),
                         ((2, 1, 0, 1), (0, 1, 0, 1)), ((2, 0, 1, 1), (0, 0, 1, 1)),
                         ((1, 1, 0, 2), (1, 1, 0, 0)), ((1, 0, 1, 2), (1, 0, 1, 0)),
                         ((0, 1, 2, 1), (0, 1, 0, 1)), ((0, 2, 1, 1), (0, 0, 1, 1))], 52),
    ),
    (
        ("AvB", [((1, 0, 0, 1), (1, 0, 0, 1)), ((0, 1, 1, 0), (0, 1, 1, 0)),
                 ((1, 0, 1, 0), (1, 0, 1, 0)), ((0, 1, 0, 1), (0, 1, 0, 1))], 20),
        ("AvBvC", [((1, 1, 0, 0), (1, 1, 0, 0)), ((0, 0, 1, 1), (0, 0, 1, 1))], 28),
    ),
)


@dataclass(frozen=True)
class CandidateSet:
    cone: ConeId
    rays: tuple
    expected: int


@lru_cache(maxsize=None)
def candidate_sets() -> tuple:
    out = []
    for block in TABLE2:
        acc = list(DIAGONAL)
        for text, patterns, count in block:
            for a, z in patterns:
                acc.extend(expand_pattern(a, z))
            out.append(CandidateSet(as_cone(text), tuple(sorted(set(acc))), count))
    return tuple(out)


def candidate_set(cone) -> CandidateSet:
    c = as_cone(cone)
    for cs in candidate_sets():
        if cs.cone == c:
            return cs
    raise KeyError(f"no tabulated candidates for {c}")


@dataclass
class SuiteReport:
    """Named checks with pass/fail and details, plus timing."""

    name: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, item: str, ok: bool, detail: str = "", **data) -> None:
        self.checks.append({"item": item, "ok": bool(ok), "detail": detail, **data})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c["ok"]]

    def summary(self) -> str:
        lines = [f"[{'PASS' if c['ok'] else 'FAIL'}] {c['item']}" + (f": {c['detail']}" if c["detail"] else "")
                 for c in self.checks]
        lines.append(f"{self.name}: {sum(c['ok'] for c in self.checks)}/{len(self.checks)} passed "
                     f"in {self.seconds:.1f}s")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "checks": self.checks}


def table2_suite() -> SuiteReport:
    """Enumerate each tabulated cone and compare with the candidate sets."""
    report = SuiteReport("table2")
    start = time.perf_counter()
    for cs in candidate_sets():
        rays = set(extreme_rays(hrep(cs.cone)))
        cands = set(cs.rays)
        missing = sorted(cands - rays)
        extra = sorted(rays - cands)
        ok = not missing and not extra and len(rays) == cs.expected == len(cands)
        detail = f"expected {cs.expected}, candidates {len(cands)}, found {len(rays)}"
        if missing:
            detail += "; missing " + ", ".join(format_ray(r) for r in missing)
        if extra:
            detail += "; unexpected " + ", ".join(format_ray(r) for r in extra)
        report.add(cs.cone.name, ok, detail, expected=cs.expected, found=len(rays))
    report.seconds = time.perf_counter() - start
    return report


# -- extremality witnesses ---------------------------------------------------------


def ghz_pairing(w, x):
    """``<W, x> / 2`` for GHZ-diagonal ``W = (s; u)`` and ``x = (a; z)``."""
    w, x = _vector(w), _vector(x)
    return sum(Fraction(p) * q for p, q in zip(w, x))


@dataclass(frozen=True)
class Extremality:
    ray: tuple
    cone: ConeId
    witness: GhzDiagonal = None
    min_slack: Fraction = None
    decomposition: tuple = ()

    @property
    def extreme(self) -> bool:
        return self.witness is not None


def condition_holds(witness, ray, others) -> bool:
    """Zero pairing with ``ray``, strictly positive with every other candidate."""
    if ghz_pairing(witness, ray) != 0:
        return False
    return all(ghz_pairing(witness, psi) > 0 for psi in others if tuple(psi) != tuple(ray))


def verify_extreme(ray, cone, others=None) -> Extremality:
    """Find a GHZ-diagonal witness vanishing on ``ray`` and positive on ``others``.

    ``others`` defaults to the tabulated candidates (or the enumerated rays
    for cones without a table entry).  The witness maximizes the smallest
    pairing over ``others`` subject to ``sum s = 1`` and ``|u_i| <= 4``.
    """
    c = as_cone(cone)
    ray = primitive(ray)
    if not hrep(c).contains(ray):
        raise ValueError(f"{format_ray(ray)} is not in {c}")
    if others is None:
        try:
            others = candidate_set(c).rays
        except KeyError:
            others = extreme_rays(hrep(c))
    others = [tuple(o) for o in others if primitive(o) != ray]

    names = ["s1", "s2", "s3", "s4", "p1", "p2", "p3", "p4", "tp", "tn"]
    sys = LinSystem(names, objective={"tp": 1, "tn": -1}, maximize=True)

    def pairing_coeffs(x):
        co = {f"s{i + 1}": x[i] for i in range(4) if x[i]}
        co.update({f"p{i + 1}": x[4 + i] for i in range(4) if x[4 + i]})
        return co, 4 * sum(x[4:])  # u = p - 4

    for psi in others:
        co, shift = pairing_coeffs(psi)
        co.update({"tp": -1, "tn": 1})
        sys.add(co, ">=", shift)
    co, shift = pairing_coeffs(ray)
    sys.add(co, "==", shift)
    sys.add({f"s{i + 1}": 1 for i in range(4)}, "==", 1)
    for i in range(4):
        sys.add({f"p{i + 1}": 1}, "<=", 8)
    res = lp_solve(sys)
    if not res.optimal:
        raise AssertionError(f"extremality LP ended {res.status}")
    if res.value > 0:
        sol = res.solution
        w = make_ghz([sol[f"s{i + 1}"] for i in range(4)], [sol[f"p{i + 1}"] - 4 for i in range(4)])
        if not condition_holds(w, ray, others):
            raise AssertionError("extremality witness failed its exact re-check")
        return Extremality(ray, c, w, res.value)
    return Extremality(ray, c, None, res.value, decompose(ray, others))


def decompose(ray, generators) -> tuple:
    """Nonnegative combination of ``generators`` equal to ``ray`` (empty if none)."""
    names = [f"l{k}" for k in range(len(generators))]
    sys = LinSystem(names)
    for j in range(DIM):
        sys.add({n: g[j] for n, g in zip(names, generators) if g[j]}, "==", ray[j])
    res = lp_solve(sys)
    if not res.optimal:
        return ()
    return tuple((res.solution[n], tuple(g)) for n, g in zip(names, generators) if res.solution[n])


# explicit witness/state pairs from the GHZ-diagonal analysis
PUBLISHED_WITNESSES = (
    ("A^(BvC)", (1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 1, 1, 0, 0, 0, 0)),
    ("A^(BvC)", (1, 1, 1, 1, 1, 1, 1, 1), (1, 1, 1, 1, -1, -1, -1, -1)),
    ("A^(BvC)", (1, 0, 1, 1, 1, 0, 0, 0), (1, 3, 1, 1, -3, 0, 0, 0)),
    ("A^(BvC)", (1, 1, 0, 1, 1, 0, 0, 0), (1, 1, 3, 1, -3, 0, 0, 0)),
    ("A^(BvC)", (1, 2, 0, 1, 1, 0, 0, 1), (1, 1, 2, 1, -2, 0, 0, -2)),
    ("A^(BvC)", (1, 2, 2, 1, 1, 2, 0, 1), (2, 1, 1, 2, -1, -3, 0, -1)),
    ("(AvB)^(AvC)", (1, 0, 0, 1, 1, 0, 0, 1), (1, 1, 1, 1, -1, 0, 0, -1)),
    ("(AvB)^(AvC)", (1, 1, 1, 0, 1, 0, 0, 0), (1, 1, 1, 3, -3, 0, 0, 0)),
    ("(AvB)^(AvC)", (1, 1, 2, 0, 1, 1, 0, 0), (1, 5, 1, 3, -3, -5, 0, 0)),
)


def extremality_suite(cones=None) -> SuiteReport:
    """Witness every tabulated ray and re-check the published witness pairs."""
    report = SuiteReport("extremality")
    start = time.perf_counter()
    sets = candidate_sets() if cones is None else [candidate_set(c) for c in cones]
    for cs in sets:
        bad = []
        for ray in cs.rays:
            res = verify_extreme(ray, cs.cone, cs.rays)
            if not res.extreme or not is_extreme(ray, hrep(cs.cone).rows):
                bad.append(format_ray(ray))
        report.add(f"{cs.cone.name}: {len(cs.rays)} rays witnessed", not bad,
                   "" if not bad else "no witness for " + ", ".join(bad))
    for text, ray, w in PUBLISHED_WITNESSES:
        others = candidate_set(text).rays
        wit = make_ghz(w[:4], w[4:])
        ok = condition_holds(wit, ray, others)
        report.add(f"{text}: witness {format_ray(w)} for {format_ray(ray)}", ok)
    report.seconds = time.perf_counter() - start
    return report


# -- lattice identities ------------------------------------------------------------


def join_rays(*ray_sets) -> tuple:
    """Extreme rays of the cone generated by the union of ``ray_sets``."""
    gens = sorted({primitive(r) for rs in ray_sets for r in rs})
    keep = []
    for k, g in enumerate(gens):
        rest = gens[:k] + gens[k + 1:]
        if not decompose(g, rest):
            keep.append(g)
    return tuple(sorted(keep))


def meet_rays(*cones) -> tuple:
    """Extreme rays of the intersection of several cones (conjoined criteria)."""
    crit = []
    for c in cones:
        crit.extend(catalog(c) if not isinstance(c, tuple) else c)
    return extreme_rays(hrep_from_criteria(crit))


def _compare(report, item, lhs, rhs, lhs_label, rhs_label):
    lhs, rhs = set(lhs), set(rhs)
    ok = lhs == rhs
    detail = f"{len(lhs)} rays on both sides" if ok else (
        f"{lhs_label} has {len(lhs)}, {rhs_label} has {len(rhs)}; separating: "
        + ", ".join(format_ray(r) for r in sorted(lhs ^ rhs)[:4])
    )
    report.add(item, ok, detail)


def identity_suite() -> SuiteReport:
    """Check the six meet/join identities and the two strictness examples."""
    report = SuiteReport("identities")
    start = time.perf_counter()
    rays = lambda text: extreme_rays(hrep(text))  # noqa: E731
    p_rows = p_criteria()
    for x, y, z in (("A", "B", "C"), ("B", "C", "A"), ("C", "A", "B")):
        left = join_rays(rays(f"{x}^{y}"), rays(f"{x}^{z}"))
        right = extreme_rays(hrep_from_criteria(tuple(catalog(x)) + p_rows))
        _compare(report, f"({x}^{y})v({x}^{z}) = {x}^P", left, right, "join", "meet")
    for x, y, z in (("A", "B", "C"), ("B", "C", "A"), ("C", "A", "B")):
        left = rays(f"({x}v{y})^({x}v{z})")
        right = join_rays(rays(x), rays("A^(BvC)"), rays("B^(AvC)"), rays("C^(AvB)"))
        _compare(report, f"({x}v{y})^({x}v{z}) = {x}vQ", left, right, "meet", "join")
    rho1 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0))
    rho2 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 1, 0, 0))
    from .cones import member

    ok1 = member(rho1, "A").holds and member(rho1, "Bv(A^C)").holds and not member(rho1, "(A^B)v(A^C)").holds
    report.add("rho1 in A^(Bv(C^A)) but not in (A^B)v(A^C)", ok1)
    ok2 = member(rho2, "A").holds and member(rho2, "Cv(A^B)").holds and not member(rho2, "(A^B)v(A^C)").holds
    report.add("rho2 in A^(Cv(A^B)) but not in (A^B)v(A^C)", ok2)
    report.seconds = time.perf_counter() - start
    return report


def inclusion_check(cone_rays: dict | None = None) -> list:
    """Arrows of the diagram whose smaller cone has a ray outside the larger one."""
    cone_rays = cone_rays or {c: extreme_rays(hrep(c)) for c in all_cones()}
    bad = []
    for src, dst in arrows():
        h = hrep(dst)
        for r in cone_rays[src]:
            if not h.contains(r):
                bad.append((src, dst, r))
    return bad
