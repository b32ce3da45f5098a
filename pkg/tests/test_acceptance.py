"""Acceptance criteria, one test each.

Every test records a single ``[PASS]``/``[FAIL]`` line (shown in the
pytest terminal summary and printed when run as a script).  Tolerances are
pinned here and nowhere else.
"""
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from x3ent.cones import batch_holds, lattice_profile, margins_batch, member
from x3ent.ghzpoly import extremality_suite, hrep, identity_suite, table2_suite
from x3ent.lattice import all_cones, arrows
from x3ent.sampling import (
    batch_party_action,
    batch_row,
    float_batch,
    float_profiles,
    integer_profiles,
    integer_states,
    member_profiles,
    pair_batch,
    random_generic_state,
    random_member,
    random_state,
    realize_batch,
)
from x3ent.suites import redundancy_suite
from x3ent.witness import certify
from x3ent.xcore import group_elements, make_ghz, make_xstate, party_action

FLOAT_EPS = 1e-9            # float-mode pairing tolerance, relative to the pairing scale
TABLE2_SECONDS = 60.0
IDENTITY_SECONDS = 120.0
DUALITY_SAMPLES = 10_000    # per (cone, dual cone) pair
COMPLETENESS_SAMPLES = 1_000  # per cone
CONSISTENCY_SAMPLES = 100_000
GHZ_SAMPLES = 10_000
SEED = 20240611

CONES = all_cones(False)
DUALS = all_cones(True)


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_table2_reproduction():
    report = table2_suite()
    counts = [c["found"] for c in report.checks]
    ok = report.ok and counts == [20, 28, 36, 84, 12, 20, 52, 20, 28] and report.seconds < TABLE2_SECONDS
    detail = f"counts {counts} in {report.seconds:.1f}s (limit {TABLE2_SECONDS:.0f}s)"
    assert record(1, "tabulated extreme-ray counts", ok, detail), report.summary()


def test_criterion_2_extremality_certificates():
    report = extremality_suite()
    rays = sum(int(c["item"].split(": ")[1].split()[0]) for c in report.checks if "rays witnessed" in c["item"])
    pairs = sum(1 for c in report.checks if "witness X(" in c["item"] and c["ok"])
    detail = f"{rays} tabulated rays witnessed, {pairs}/9 listed witness pairs re-verified"
    assert record(2, "extremality witnesses", report.ok, detail), report.summary()


def test_criterion_3_modularity_counterexamples():
    rho1 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0))
    rho2 = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 1, 0, 0))
    checks = [
        rho1.exact and rho2.exact,
        member(rho1, "A").holds,
        member(rho1, "Bv(C^A)").holds,
        not member(rho1, "(A^B)v(A^C)").holds,
        member(rho2, "A").holds,
        member(rho2, "Cv(B^A)").holds,
        not member(rho2, "(A^B)v(A^C)").holds,
    ]
    detail = (f"rho1 slack in (A^B)v(A^C) = {member(rho1, '(A^B)v(A^C)').slack}, "
              f"rho2 slack = {member(rho2, '(A^B)v(A^C)').slack}; {sum(checks)}/7 checks")
    assert record(3, "modularity counterexamples", all(checks), detail)


def test_criterion_4_lattice_identities():
    report = identity_suite()
    ok = report.ok and report.seconds < IDENTITY_SECONDS
    n_id = sum(1 for c in report.checks if "=" in c["item"] and c["ok"])
    detail = f"{n_id}/6 identities as ray-set equalities, strictness examples ok, {report.seconds:.1f}s"
    assert record(4, "lattice identities", ok, detail), report.summary()


def test_criterion_5_redundancy():
    report = redundancy_suite()
    negatives = [c for c in report.checks if "does not imply" in c["item"]]
    positives = [c for c in report.checks if "does not imply" not in c["item"]]
    ok = report.ok and len(negatives) >= 3
    detail = (f"{sum(c['ok'] for c in positives)}/{len(positives)} implications true, "
              f"{sum(c['ok'] for c in negatives)}/{len(negatives)} non-implications with counterexamples")
    assert record(5, "redundancy claims", ok, detail), report.summary()


def test_criterion_6_duality():
    rng = np.random.default_rng(SEED)
    exact_bad = float_bad = worst_case_bad = 0
    worst_float = 0.0
    for c in CONES:
        d = c.polar()
        cm = member_profiles(rng, c, DUALITY_SAMPLES)
        wm = member_profiles(rng, d, DUALITY_SAMPLES)
        # every sample passes its criteria (exact integer evaluation)
        assert (margins_batch(*cm)[:, CONES.index(c)] >= 0).all()
        assert (margins_batch(*wm, dual=True)[:, DUALS.index(d)] >= 0).all()
        x = realize_batch(*cm, rng)
        w = realize_batch(*wm, rng, witness=True)
        exact = pair_batch(w, x)
        exact_bad += int(sum(1 for v in exact if v < 0))
        # the least favorable realization of the same magnitudes pairs to 2 sum(r c - |u| m)
        worst = 2 * ((wm[0] * cm[0]).sum(axis=1) - (wm[1] * cm[1]).sum(axis=1))
        worst_case_bad += int((worst < 0).sum())
        # float mode: the same matrices in floating point
        fx = {k: np.asarray(v, float) for k, v in x.items() if k != "witness"}
        fw = {k: np.asarray(v, float) for k, v in w.items() if k != "witness"}
        terms = np.concatenate([fw["a"] * fx["a"], fw["b"] * fx["b"],
                                2 * fw["z_re"] * fx["z_re"], -2 * fw["z_im"] * fx["z_im"]], axis=1)
        scale = np.maximum(np.abs(terms).sum(axis=1), 1.0)
        rel = terms.sum(axis=1) / scale
        worst_float = min(worst_float, float(rel.min()))
        float_bad += int((rel < -FLOAT_EPS).sum())
    ok = exact_bad == 0 and worst_case_bad == 0 and float_bad == 0
    detail = (f"{len(CONES)} pairs x {DUALITY_SAMPLES}: exact violations {exact_bad}, "
              f"least-favorable-phase violations {worst_case_bad}, float violations {float_bad} "
              f"(min relative pairing {worst_float:.2e}, tolerance -{FLOAT_EPS:g})")
    assert record(6, "duality", ok, detail)


def test_criterion_7_certification_completeness():
    rng = np.random.default_rng(SEED + 7)
    disagree = unverified = certified = 0
    start = time.perf_counter()
    for c in CONES:
        for k in range(COMPLETENESS_SAMPLES):
            kind = k % 3
            if kind == 0:
                x = random_generic_state(rng)
            elif kind == 1:
                x = random_state(rng)
            else:
                x = random_member(rng, c, boundary_prob=0.5)
            cert = certify(x, c)
            inside = member(x, c).holds
            if (cert is None) != inside:
                disagree += 1
            if cert is not None:
                certified += 1
                if not (cert.verified and cert.recheck() and cert.value < 0):
                    unverified += 1
    total = len(CONES) * COMPLETENESS_SAMPLES
    ok = disagree == 0 and unverified == 0
    detail = (f"{total} states, {certified} certified outside, {total - certified} members, "
              f"{disagree} disagreements, {unverified} failed re-checks, {time.perf_counter() - start:.0f}s")
    assert record(7, "certification completeness", ok, detail)


def test_criterion_8_consistency_and_symmetry():
    rng = np.random.default_rng(SEED + 8)
    idx = {c: k for k, c in enumerate(CONES)}
    arrow_idx = [(idx[s], idx[d]) for s, d in arrows()]

    # exact integer batch
    batch = integer_states(rng, CONSISTENCY_SAMPLES)
    c, m = integer_profiles(batch)
    holds = margins_batch(c, m) >= 0
    mono_bad = sum(int((holds[:, s] & ~holds[:, d]).sum()) for s, d in arrow_idx)
    cov_bad = 0
    for g in group_elements():
        gc, gm = integer_profiles(batch_party_action(batch, g))
        gh = margins_batch(gc, gm) >= 0
        mapping = g.atom_map()
        for cone in CONES:
            cov_bad += int((holds[:, idx[cone]] != gh[:, idx[cone.permuted(mapping)]]).sum())

    # float batch, same verdict rule as float-mode classification
    fb = float_batch(rng, CONSISTENCY_SAMPLES)
    fc, fm = float_profiles(fb)
    fh = batch_holds(margins_batch(fc, fm), fc, fm)
    fmono_bad = sum(int((fh[:, s] & ~fh[:, d]).sum()) for s, d in arrow_idx)

    # scalar path agrees with the batch path on a subset
    scalar_bad = 0
    elems = group_elements()
    for k in rng.choice(CONSISTENCY_SAMPLES, 1000, replace=False):
        x = batch_row(batch, int(k))
        lp = lattice_profile(x)
        scalar_bad += sum(lp.margins[cone].holds != bool(holds[k, idx[cone]]) for cone in CONES)
        g = elems[int(rng.integers(48))]
        y = lattice_profile(party_action(x, g))
        mapping = g.atom_map()
        scalar_bad += sum(lp.margins[cone].holds != y.margins[cone.permuted(mapping)].holds for cone in CONES)

    # criteria path vs H-representation path on GHZ-diagonal states
    a = rng.integers(0, 7, (GHZ_SAMPLES, 4))
    z = np.floor(rng.random((GHZ_SAMPLES, 4)) * (2 * a + 1)).astype(np.int64) - a
    vec = np.concatenate([a, z], axis=1)
    hrep_bad = 0
    for cone in CONES:
        rows = np.array(hrep(cone).rows, dtype=np.int64)
        by_hrep = (vec @ rows.T >= 0).all(axis=1)
        by_criteria = np.array([member(make_ghz([int(v) for v in a[k]], [int(v) for v in z[k]]), cone).holds
                                for k in range(GHZ_SAMPLES)])
        hrep_bad += int((by_hrep != by_criteria).sum())

    ok = mono_bad == fmono_bad == cov_bad == scalar_bad == hrep_bad == 0
    detail = (f"{CONSISTENCY_SAMPLES} exact states: monotonicity violations {mono_bad}, covariance "
              f"violations {cov_bad} over 48 group elements; {CONSISTENCY_SAMPLES} float states: "
              f"monotonicity violations {fmono_bad}; scalar cross-check mismatches {scalar_bad}; "
              f"{GHZ_SAMPLES} GHZ states: criteria vs H-representation mismatches {hrep_bad}")
    assert record(8, "consistency and symmetry", ok, detail)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
