"""Verification suites beyond the GHZ-diagonal enumeration checks.

Each suite returns a :class:`~x3ent.ghzpoly.SuiteReport`; :func:`run_suite`
maps the command-line suite names onto them.
"""
from __future__ import annotations

import itertools
import time

import numpy as np

from . import fixtures
from .cones import member
from .ghzpoly import (
    SuiteReport,
    candidate_sets,
    extremality_suite,
    format_ray,
    ghz_pairing,
    identity_suite,
    table2_suite,
    verify_extreme,
)
from .ineq import W1, W2, W3, W4, W4a, W4b, evaluate, parse_ineq
from .lattice import all_cones
from .sampling import random_member
from .witness import implies
from .xcore import pair

# -- redundancy -----------------------------------------------------------------

# pairs whose W1 inequalities force the rest of the (A°^B°)v(A°^C°) criteria
IMPLIED_BY_W1_PAIR = (W3(), W2(1, 2), W2(1, 3), W2(2, 4), W2(3, 4), W4(1, 4), W4(2, 3))

NON_IMPLICATIONS = (
    ((W3(),), W1(1, 4)),
    ((W1(1, 4), W1(2, 3)), W1(1, 2)),
    ((W1(1, 4), W1(2, 3)), W4a(1, 2)),
    ((W2(1, 4), W2(2, 3), W3()), W1(1, 4)),
)


def _names(ineqs) -> str:
    return ", ".join(q.name for q in ineqs)


def _profile_str(p) -> str:
    fmt = lambda v: " ".join(str(x) for x in v)  # noqa: E731
    return f"r=({fmt(p.c)}), |u|=({fmt(p.m)})"


def w4b_sources(i: int, j: int, part: int) -> list:
    """All (W1, W4a) pairs from the catalog that force form ``part`` of W4b[i,j]."""
    found = []
    for w1, w4a in itertools.product((W1(1, 4), W1(2, 3)), (W4a(1, 2), W4a(1, 3), W4a(2, 4), W4a(3, 4))):
        if implies((w1, w4a), W4b(i, j), part=part).holds:
            found.append((w1, w4a))
    return found


def redundancy_suite() -> SuiteReport:
    report = SuiteReport("redundancy")
    start = time.perf_counter()
    base = (W1(1, 4), W1(2, 3))
    for claim in IMPLIED_BY_W1_PAIR:
        res = implies(base, claim)
        report.add(f"{{{_names(base)}}} => {claim.name}", res.holds,
                   "" if res.holds else "counterexample " + _profile_str(res.counterexample))
    for i, j in ((1, 2), (1, 3), (2, 4), (3, 4)):
        for part in (0, 1):
            srcs = w4b_sources(i, j, part)
            detail = "; ".join("{" + _names(s) + "}" for s in srcs) if srcs else "no W1 + W4a pair suffices"
            report.add(f"W4b[{i},{j}] form {part + 1} from one W1 and one W4a", bool(srcs), detail)
    res = implies((W1(2, 3), W4a(1, 3)), W4b(1, 2), part=0)
    report.add("{W1[2,3], W4a[1,3]} => W4b[1,2] form 1", res.holds)
    for i, j in itertools.combinations(range(1, 5), 2):
        res = implies((W1(i, j),), W4a(i, j))
        report.add(f"W1[{i},{j}] => W4a[{i},{j}]", res.holds)
    for assumed, claim in NON_IMPLICATIONS:
        res = implies(assumed, claim)
        ok = not res.holds and res.counterexample is not None
        detail = _profile_str(res.counterexample) if res.counterexample is not None else "implication holds"
        report.add(f"{{{_names(assumed)}}} does not imply {claim.name}", ok, detail)
    report.seconds = time.perf_counter() - start
    return report


# -- duality ------------------------------------------------------------------------


def duality_pairs() -> tuple:
    """Every primal cone with its dual cone."""
    return tuple((c, c.polar()) for c in all_cones())


def duality_suite(samples: int = 100, seed: int = 0, closure: bool = True) -> SuiteReport:
    """Random criteria-passing (state, witness) pairs never pair negatively.

    With ``closure`` the extremality witnesses of every tabulated cone are
    also paired against that cone's rays.
    """
    report = SuiteReport("duality")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    for c, d in duality_pairs():
        worst = None
        for _ in range(samples):
            x = random_member(rng, c)
            w = random_member(rng, d)
            v = pair(w, x)
            if worst is None or v < worst:
                worst = v
        report.add(f"{c.name} vs {d.name}: {samples} pairs", worst >= 0, f"smallest pairing {worst}")
    if closure:
        for cs in candidate_sets():
            bad = []
            for ray in cs.rays:
                w = verify_extreme(ray, cs.cone, cs.rays).witness
                if w is None or any(ghz_pairing(w, r) < 0 for r in cs.rays):
                    bad.append(format_ray(ray))
            report.add(f"{cs.cone.name}: extremality witnesses lie in the dual", not bad, ", ".join(bad))
    report.seconds = time.perf_counter() - start
    return report


# -- fixtures -----------------------------------------------------------------------


def fixture_suite() -> SuiteReport:
    report = SuiteReport("fixtures")
    start = time.perf_counter()
    for f in fixtures.FIXTURES.values():
        x = f.payload
        for name in f.members:
            report.add(f"{f.name} in {name}", member(x, name).holds)
        for name in f.non_members:
            report.add(f"{f.name} not in {name}", not member(x, name).holds)
        for kind, ray, expected in f.facts:
            if kind == "pair":
                got = 2 * ghz_pairing(x, ray)
                report.add(f"{f.name} pairs to {expected} with {format_ray(ray)}", got == expected, f"got {got}")
            elif kind == "slack":
                got = evaluate(parse_ineq(ray), x).slack
                report.add(f"{f.name}: {ray} slack {expected}", got == expected, f"got {got}")
    report.seconds = time.perf_counter() - start
    return report


SUITES = {
    "table2": table2_suite,
    "extremality": extremality_suite,
    "identities": identity_suite,
    "redundancy": redundancy_suite,
    "duality": duality_suite,
    "fixtures": fixture_suite,
}


def run_suite(name: str) -> list:
    """Reports for suite ``name`` (``all`` runs every suite in a fixed order)."""
    if name == "all":
        return [fn() for fn in SUITES.values()]
    try:
        return [SUITES[name]()]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all") from None


__all__ = [
    "IMPLIED_BY_W1_PAIR",
    "NON_IMPLICATIONS",
    "SUITES",
    "duality_pairs",
    "duality_suite",
    "fixture_suite",
    "redundancy_suite",
    "run_suite",
    "w4b_sources",
]
