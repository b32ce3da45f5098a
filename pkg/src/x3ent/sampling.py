"""Random states and witnesses for property checks.

Rational magnitudes are produced on purpose: with ``a_i = c_i q_i``,
``b_i = c_i / q_i`` and ``z_i`` on a rational point of the unit circle,
``sqrt(a_i b_i)`` and ``|z_i|`` stay rational and exact checks stay cheap.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cones import catalog
from .lattice import as_cone
from .xcore import N, WitnessX, XState, index_table

_TRIPLES = ((1, 0, 1), (0, 1, 1), (3, 4, 5), (4, 3, 5), (5, 12, 13), (12, 5, 13), (8, 15, 17), (7, 24, 25))


def _rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def rational(rng, lo: int = 0, hi: int = 6, den: int = 4) -> Fraction:
    d = int(rng.integers(1, den + 1))
    return Fraction(int(rng.integers(lo * d, hi * d + 1)), d)


def unit_phase(rng) -> tuple:
    """Random rational point ``(cos, sin)`` on the unit circle."""
    x, y, h = _TRIPLES[int(rng.integers(len(_TRIPLES)))]
    sx = -1 if rng.random() < 0.5 else 1
    sy = -1 if rng.random() < 0.5 else 1
    return Fraction(sx * x, h), Fraction(sy * y, h)


def realize(c, m, rng, witness: bool = False):
    """An X-shaped matrix with magnitude profile exactly ``(c, m)``."""
    a, b, zr, zi = [], [], [], []
    for i in range(N):
        ci = Fraction(c[i])
        if ci == 0:
            # keep one side possibly nonzero so degenerate indices occur
            side = rational(rng, 0, 3) if rng.random() < 0.3 else Fraction(0)
            if rng.random() < 0.5:
                a.append(side), b.append(Fraction(0))
            else:
                a.append(Fraction(0)), b.append(side)
        else:
            q = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
            a.append(ci * q)
            b.append(ci / q)
        cos, sin = unit_phase(rng)
        zr.append(Fraction(m[i]) * cos)
        zi.append(Fraction(m[i]) * sin)
    cls = WitnessX if witness else XState
    return cls(tuple(a), tuple(b), tuple(zr), tuple(zi), True)


def random_profile(rng, zero_prob: float = 0.15) -> tuple:
    """Random rational ``(c, m)`` with ``m_i <= c_i``."""
    c, m = [], []
    for _ in range(N):
        ci = Fraction(0) if rng.random() < zero_prob else rational(rng, 0, 6)
        mi = Fraction(0) if rng.random() < zero_prob else ci * rational(rng, 0, 1, 6)
        c.append(ci)
        m.append(mi)
    return c, m


def random_state(rng) -> XState:
    """Random psd X-state with rational magnitude profile."""
    c, m = random_profile(_rng(rng))
    return realize(c, m, _rng(rng))


def random_generic_state(rng) -> XState:
    """Random psd X-state with rational entries (magnitudes usually irrational)."""
    rng = _rng(rng)
    a = [rational(rng, 0, 5) for _ in range(N)]
    b = [rational(rng, 0, 5) for _ in range(N)]
    zr, zi = [], []
    for i in range(N):
        x, y = rational(rng, -3, 3), rational(rng, -3, 3)
        w = x * x + y * y
        bound = a[i] * b[i]
        if w > bound:
            # shrink by a rational factor t with t^2 w <= bound
            t = Fraction(int(np.floor(float((bound / w) ** 0.5) * 64)), 64) if w else Fraction(0)
            while t * t * w > bound:
                t -= Fraction(1, 64)
            x, y = x * t, y * t
        zr.append(x)
        zi.append(y)
    return XState(tuple(a), tuple(b), tuple(zr), tuple(zi), True)


def random_float_state(rng) -> XState:
    rng = _rng(rng)
    a = rng.exponential(1.0, N)
    b = rng.exponential(1.0, N)
    r = np.sqrt(a * b) * rng.random(N)
    th = rng.uniform(0, 2 * np.pi, N)
    return XState(tuple(map(float, a)), tuple(map(float, b)), tuple(map(float, r * np.cos(th))),
                  tuple(map(float, r * np.sin(th))), False)


def _max_scale(rows, c, m, psd: bool) -> Fraction | None:
    """Largest ``lam`` with every form nonnegative at ``(c, lam * m)``."""
    lam = None
    forms = list(rows)
    if psd:
        forms += [tuple(int(k == i) for k in range(N)) + tuple(-int(k == i) for k in range(N)) for i in range(N)]
    for row in forms:
        pc = sum(p * x for p, x in zip(row[:N], c))
        qm = -sum(q * x for q, x in zip(row[N:], m))
        if qm > 0:
            bound = pc / qm
            lam = bound if lam is None or bound < lam else lam
    return lam


def random_member(rng, cone, boundary_prob: float = 0.25):
    """Random element of ``cone`` (state for primal, witness for dual cones).

    A random direction ``m`` is scaled to a random fraction of the largest
    admissible scale, hitting the boundary with probability ``boundary_prob``.
    """
    rng = _rng(rng)
    c_id = as_cone(cone)
    rows = [r for q in catalog(c_id) for r in q.rows()]
    while True:
        c = [Fraction(0) if rng.random() < 0.15 else rational(rng, 0, 6) for _ in range(N)]
        m = [Fraction(0) if rng.random() < 0.2 else rational(rng, 0, 6) for _ in range(N)]
        if not c_id.dual:
            m = [x if ci else Fraction(0) for x, ci in zip(m, c)]
        lam = _max_scale(rows, c, m, psd=not c_id.dual)
        if lam is None:
            lam = Fraction(1)
        elif lam < 0:
            continue
        if rng.random() >= boundary_prob:
            lam = lam * Fraction(int(rng.integers(0, 16)), 16)
        mm = [lam * x for x in m]
        return realize(c, mm, rng, witness=c_id.dual)


# -- integer batches ------------------------------------------------------------


def integer_states(rng, n: int, zero_prob: float = 0.1) -> dict:
    """``n`` random psd X-states with integer entries and integer magnitudes.

    ``a = g h^2``, ``b = g k^2`` so ``sqrt(a b) = g h k``; ``z`` is an integer
    multiple of a Pythagorean direction with ``|z| <= sqrt(a b)``.
    """
    rng = _rng(rng)
    g = rng.integers(0, 5, (n, N))
    h = rng.integers(1, 4, (n, N))
    k = rng.integers(1, 4, (n, N))
    g[rng.random((n, N)) < zero_prob] = 0
    a, b = g * h * h, g * k * k
    c = g * h * k
    trip = np.array(_TRIPLES)
    pick = trip[rng.integers(0, len(_TRIPLES), (n, N))]
    hyp = pick[..., 2]
    mult = np.floor(rng.random((n, N)) * (c // hyp + 1)).astype(np.int64)
    mult[rng.random((n, N)) < zero_prob] = 0
    sx = np.where(rng.random((n, N)) < 0.5, -1, 1)
    sy = np.where(rng.random((n, N)) < 0.5, -1, 1)
    return {
        "a": a.astype(np.int64),
        "b": b.astype(np.int64),
        "z_re": (sx * mult * pick[..., 0]).astype(np.int64),
        "z_im": (sy * mult * pick[..., 1]).astype(np.int64),
    }


def _isqrt_exact(x: np.ndarray) -> np.ndarray:
    r = np.rint(np.sqrt(x.astype(float))).astype(np.int64)
    if not np.array_equal(r * r, x):
        raise ValueError("entries are not perfect squares")
    return r


def integer_profiles(batch: dict) -> tuple:
    """Exact integer ``(c, m)`` of an integer batch."""
    c = _isqrt_exact(batch["a"] * batch["b"])
    m = _isqrt_exact(batch["z_re"] ** 2 + batch["z_im"] ** 2)
    return c, m


def batch_party_action(batch: dict, g) -> dict:
    """Apply a party operation to every state of a batch (same index table as scalars)."""
    out = {key: np.empty_like(v) for key, v in batch.items()}
    for target, (src, swapped) in enumerate(index_table(g)):
        if swapped:
            out["a"][:, target] = batch["b"][:, src]
            out["b"][:, target] = batch["a"][:, src]
            out["z_im"][:, target] = -batch["z_im"][:, src]
        else:
            out["a"][:, target] = batch["a"][:, src]
            out["b"][:, target] = batch["b"][:, src]
            out["z_im"][:, target] = batch["z_im"][:, src]
        out["z_re"][:, target] = batch["z_re"][:, src]
    return out


def batch_row(batch: dict, k: int) -> XState:
    """The ``k``-th state of a batch as an exact :class:`XState`."""
    vals = [tuple(Fraction(int(v)) for v in batch[key][k]) for key in ("a", "b", "z_re", "z_im")]
    return XState(*vals, True)


def float_batch(rng, n: int) -> dict:
    rng = _rng(rng)
    a = rng.exponential(1.0, (n, N))
    b = rng.exponential(1.0, (n, N))
    r = np.sqrt(a * b) * rng.random((n, N))
    th = rng.uniform(0, 2 * np.pi, (n, N))
    return {"a": a, "b": b, "z_re": r * np.cos(th), "z_im": r * np.sin(th)}


def float_profiles(batch: dict) -> tuple:
    return np.sqrt(batch["a"] * batch["b"]), np.hypot(batch["z_re"], batch["z_im"])


# -- vectorized cone members ------------------------------------------------------

# common multiple of the hypotenuses in _TRIPLES and of the split factors 1..3
_REALIZE_SCALE = 6 * 5525


def _cone_rows(cone) -> np.ndarray:
    c_id = as_cone(cone)
    rows = [r for q in catalog(c_id) for r in q.rows()]
    if not c_id.dual:
        rows += [tuple(int(k == i) for k in range(N)) + tuple(-int(k == i) for k in range(N)) for i in range(N)]
    return np.array(rows, dtype=np.int64)


def member_profiles(rng, cone, n: int, boundary_prob: float = 0.25) -> tuple:
    """``n`` integer magnitude profiles ``(c, m)`` inside ``cone``.

    Same recipe as :func:`random_member`: a random direction ``m`` is scaled
    by ``k/16`` of the largest admissible factor ``P/Q``, and the profile is
    cleared of denominators as ``(16 Q c, k P m)``.
    """
    rng = _rng(rng)
    c_id = as_cone(cone)
    rows = _cone_rows(c_id)
    c = rng.integers(0, 7, (n, N))
    c[rng.random((n, N)) < 0.15] = 0
    m = rng.integers(0, 7, (n, N))
    m[rng.random((n, N)) < 0.2] = 0
    if not c_id.dual:
        m[c == 0] = 0
    pc = c @ rows[:, :N].T
    qm = -(m @ rows[:, N:].T)
    ratio = np.where(qm > 0, pc / np.where(qm > 0, qm, 1), np.inf)
    best = ratio.argmin(axis=1)
    idx = np.arange(n)
    bounded = np.isfinite(ratio[idx, best])
    p = np.where(bounded, pc[idx, best], 1)
    q = np.where(bounded, qm[idx, best], 1)
    k = rng.integers(0, 17, n)
    k[rng.random(n) < boundary_prob] = 16
    g = np.gcd(p * k, 16 * q)
    g[g == 0] = 1
    return c * (16 * q // g)[:, None], m * (k * p // g)[:, None]


def realize_batch(c, m, rng, witness: bool = False) -> dict:
    """Integer X-matrices (Python ints) whose profile is ``L * (c, m)``.

    ``L`` is a fixed common multiple, so membership is unchanged.  Indices
    with ``c_i = 0`` get one random nonzero diagonal side.
    """
    rng = _rng(rng)
    n = c.shape[0]
    L = _REALIZE_SCALE
    c = c.astype(object) * L
    m = m.astype(object)
    h = rng.integers(1, 4, (n, N)).astype(object)
    k = rng.integers(1, 4, (n, N)).astype(object)
    a = c * h // k
    b = c * k // h
    side = rng.integers(0, 4, (n, N)).astype(object) * L
    left = rng.random((n, N)) < 0.5
    zero = c == 0
    a = np.where(zero & left, side, a)
    b = np.where(zero & ~left, side, b)
    trip = np.array(_TRIPLES, dtype=object)
    pick = trip[rng.integers(0, len(_TRIPLES), (n, N))]
    unit = m * (L // pick[..., 2])
    sx = np.where(rng.random((n, N)) < 0.5, -1, 1).astype(object)
    sy = np.where(rng.random((n, N)) < 0.5, -1, 1).astype(object)
    return {"a": a, "b": b, "z_re": sx * unit * pick[..., 0], "z_im": sy * unit * pick[..., 1], "witness": witness}


def pair_batch(w: dict, x: dict) -> np.ndarray:
    """Row-wise pairing ``sum s a + t b + 2 Re(u z)`` of two batches."""
    total = w["a"] * x["a"] + w["b"] * x["b"] + 2 * (w["z_re"] * x["z_re"] - w["z_im"] * x["z_im"])
    return total.sum(axis=1)


def batch_matrix(batch: dict, k: int):
    """The ``k``-th entry of a realized batch as an exact state or witness."""
    vals = [tuple(Fraction(int(v)) for v in batch[key][k]) for key in ("a", "b", "z_re", "z_im")]
    return (WitnessX if batch.get("witness") else XState)(*vals, True)
