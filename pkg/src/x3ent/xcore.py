"""X-shaped three-qubit matrices.

An X-shaped 8x8 self-adjoint matrix is written ``X(a, b, z)``: ``a_i`` is the
diagonal entry ``(i, i)``, ``b_i`` the diagonal entry ``(9-i, 9-i)`` and
``z_i`` the anti-diagonal entry ``(i, 9-i)`` (1-based, basis ordered
``|ABC>`` with A the most significant bit).  States ``X(a, b, z)`` and
witnesses ``X(s, t, u)`` share the same layout.

Entries are ``Fraction`` in exact mode and ``float`` in float mode; complex
anti-diagonal entries are stored as separate real/imaginary tuples so that
exact mode never touches binary floating point.
"""
from __future__ import annotations

import itertools
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import exact_sqrt, is_rational_input, to_float, to_fraction

N = 4
DIM = 8


@dataclass(frozen=True)
class XMatrix:
    """Common storage for X-shaped matrices."""

    a: tuple
    b: tuple
    z_re: tuple
    z_im: tuple
    exact: bool = True

    @property
    def z(self) -> tuple:
        return tuple(complex(float(r), float(i)) for r, i in zip(self.z_re, self.z_im))

    def abs2(self, i: int):
        """``|z_i|**2`` (0-based ``i``), exact in exact mode."""
        return self.z_re[i] ** 2 + self.z_im[i] ** 2

    def to_dense(self) -> "DenseHermitian8":
        dtype = object if self.exact else float
        zero = Fraction(0) if self.exact else 0.0
        re = np.full((DIM, DIM), zero, dtype=dtype)
        im = np.full((DIM, DIM), zero, dtype=dtype)
        for i in range(N):
            j = DIM - 1 - i
            re[i, i] = self.a[i]
            re[j, j] = self.b[i]
            re[i, j] = self.z_re[i]
            im[i, j] = self.z_im[i]
            re[j, i] = self.z_re[i]
            im[j, i] = -self.z_im[i]
        return DenseHermitian8(re, im, self.exact)

    def to_complex(self) -> np.ndarray:
        return self.to_dense().to_complex()

    def _replace(self, a, b, z_re, z_im):
        return type(self)(tuple(a), tuple(b), tuple(z_re), tuple(z_im), self.exact)


@dataclass(frozen=True, repr=False)
class XState(XMatrix):
    """X-shaped state ``X(a, b, z)``; non-psd input is allowed and flagged."""

    @property
    def psd(self) -> bool:
        zero = 0
        for i in range(N):
            if self.a[i] < zero or self.b[i] < zero:
                return False
            if self.a[i] * self.b[i] < self.abs2(i):
                return False
        return True

    def __repr__(self):
        return f"XState(a={_fmt(self.a)}, b={_fmt(self.b)}, z={_fmt_z(self)})"


@dataclass(frozen=True, repr=False)
class WitnessX(XMatrix):
    """X-shaped witness ``X(s, t, u)``, with radii ``r_i = sqrt(s_i t_i)``."""

    @property
    def s(self) -> tuple:
        return self.a

    @property
    def t(self) -> tuple:
        return self.b

    @property
    def u(self) -> tuple:
        return self.z

    @property
    def r(self) -> tuple:
        return radii(self)

    def __repr__(self):
        return f"WitnessX(s={_fmt(self.a)}, t={_fmt(self.b)}, u={_fmt_z(self)})"


def _fmt(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _fmt_z(x: XMatrix) -> str:
    out = []
    for r, i in zip(x.z_re, x.z_im):
        out.append(str(r) if i == 0 else f"{r}{'+' if i >= 0 else '-'}{abs(i)}i")
    return "(" + ", ".join(out) + ")"


@dataclass(frozen=True)
class GhzDiagonal:
    """GHZ-diagonal matrix ``X(a, a, z)`` with real ``z``."""

    a: tuple
    z: tuple
    exact: bool = True

    def vector(self) -> tuple:
        return tuple(self.a) + tuple(self.z)

    def as_state(self) -> XState:
        zero = Fraction(0) if self.exact else 0.0
        return XState(tuple(self.a), tuple(self.a), tuple(self.z), (zero,) * N, self.exact)

    def as_witness(self) -> WitnessX:
        zero = Fraction(0) if self.exact else 0.0
        return WitnessX(tuple(self.a), tuple(self.a), tuple(self.z), (zero,) * N, self.exact)

    def __str__(self):
        return "X(" + " ".join(str(v) for v in self.a) + " / " + " ".join(str(v) for v in self.z) + ")"


@dataclass(frozen=True)
class DenseHermitian8:
    """Dense 8x8 self-adjoint matrix as real and imaginary parts."""

    re: np.ndarray
    im: np.ndarray
    exact: bool = False

    def __post_init__(self):
        if self.re.shape != (DIM, DIM) or self.im.shape != (DIM, DIM):
            raise ValueError("dense input must be 8x8")

    @classmethod
    def from_complex(cls, m) -> "DenseHermitian8":
        m = np.asarray(m, dtype=complex)
        if m.shape != (DIM, DIM):
            raise ValueError("dense input must be 8x8")
        if not np.all(np.isfinite(m)):
            raise ValueError("non-finite entry in dense matrix")
        return cls(m.real.copy(), m.imag.copy(), False)

    @classmethod
    def from_pairs(cls, rows, exact: bool | None = None) -> "DenseHermitian8":
        """Build from an 8x8 nested list of ``[re, im]`` pairs (or plain reals)."""
        if len(rows) != DIM or any(len(row) != DIM for row in rows):
            raise ValueError("dense input must be 8x8")
        pairs = [[_as_pair(v) for v in row] for row in rows]
        if exact is None:
            exact = all(is_rational_input(p) for row in pairs for pair in row for p in pair)
        conv = to_fraction if exact else to_float
        re = np.empty((DIM, DIM), dtype=object if exact else float)
        im = np.empty((DIM, DIM), dtype=object if exact else float)
        for i in range(DIM):
            for j in range(DIM):
                re[i, j] = conv(pairs[i][j][0])
                im[i, j] = conv(pairs[i][j][1])
        return cls(re, im, exact)

    def to_complex(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)

    def is_self_adjoint(self, tol: float = 1e-12) -> bool:
        if self.exact:
            return bool(np.all(self.re == self.re.T) and np.all(self.im == -self.im.T))
        scale = max(1.0, float(np.max(np.abs(self.re))), float(np.max(np.abs(self.im))))
        return bool(
            np.max(np.abs(self.re - self.re.T)) <= tol * scale
            and np.max(np.abs(self.im + self.im.T)) <= tol * scale
        )


def _as_pair(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex entry must be [re, im], got {v!r}")
        return v[0], v[1]
    if isinstance(v, complex):
        return v.real, v.imag
    return v, 0


def _split_complex(v):
    """Return ``(re, im)`` for a complex-like input entry."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex entry must be [re, im], got {v!r}")
        return v[0], v[1]
    if isinstance(v, complex):
        return v.real, v.imag
    if isinstance(v, (numbers.Real, str)) and not isinstance(v, bool):
        return v, 0
    raise TypeError(f"unsupported complex entry {v!r}")


def _build(cls, a, b, z, exact):
    a, b, z = list(a), list(b), list(z)
    if len(a) != N or len(b) != N or len(z) != N:
        raise ValueError("X-shaped matrices take exactly 4 entries per parameter")
    zs = [_split_complex(v) for v in z]
    raw = a + b + [p for pair in zs for p in pair]
    if exact is None:
        exact = all(is_rational_input(v) for v in raw)
    conv = to_fraction if exact else to_float
    return cls(
        tuple(conv(v) for v in a),
        tuple(conv(v) for v in b),
        tuple(conv(re) for re, _ in zs),
        tuple(conv(im) for _, im in zs),
        bool(exact),
    )


def make_xstate(a, b, z, exact: bool | None = None) -> XState:
    """Build ``X(a, b, z)``.

    ``exact=None`` picks exact mode when every entry is rational (ints,
    fractions, ``"p/q"`` strings) and float mode otherwise.  Complex entries
    may be Python complex numbers or ``(re, im)`` pairs.
    """
    return _build(XState, a, b, z, exact)


def make_witness(s, t, u, exact: bool | None = None) -> WitnessX:
    return _build(WitnessX, s, t, u, exact)


def make_ghz(a, z, exact: bool | None = None) -> GhzDiagonal:
    a, z = list(a), list(z)
    if len(a) != N or len(z) != N:
        raise ValueError("GHZ-diagonal matrices take 4 diagonal and 4 anti-diagonal entries")
    if exact is None:
        exact = all(is_rational_input(v) for v in a + z)
    conv = to_fraction if exact else to_float
    return GhzDiagonal(tuple(conv(v) for v in a), tuple(conv(v) for v in z), bool(exact))


def xpart(m: DenseHermitian8, as_witness: bool = False) -> XMatrix:
    """Keep the diagonal and anti-diagonal of a dense self-adjoint matrix."""
    if not isinstance(m, DenseHermitian8):
        m = DenseHermitian8.from_complex(m)
    if not m.is_self_adjoint():
        raise ValueError("xpart requires a self-adjoint matrix")
    cls = WitnessX if as_witness else XState
    a = tuple(m.re[i, i] for i in range(N))
    b = tuple(m.re[DIM - 1 - i, DIM - 1 - i] for i in range(N))
    z_re = tuple(m.re[i, DIM - 1 - i] for i in range(N))
    z_im = tuple(m.im[i, DIM - 1 - i] for i in range(N))
    if not m.exact:
        a, b, z_re, z_im = (tuple(float(v) for v in t) for t in (a, b, z_re, z_im))
    return cls(a, b, z_re, z_im, m.exact)


def ghz_sym(m) -> GhzDiagonal:
    """Average with the all-party flip: ``X((a+b)/2, (a+b)/2, Re z)``."""
    if isinstance(m, GhzDiagonal):
        return m
    if isinstance(m, DenseHermitian8) or isinstance(m, np.ndarray):
        m = xpart(m)
    half = Fraction(1, 2) if m.exact else 0.5
    a = tuple((x + y) * half for x, y in zip(m.a, m.b))
    return GhzDiagonal(a, tuple(m.z_re), m.exact)


def flip(w: XMatrix) -> XMatrix:
    """``U W U*`` for U the bit flip on all three parties: ``X(t, s, conj u)``."""
    return w._replace(w.b, w.a, w.z_re, tuple(-v for v in w.z_im))


def _as_x(m, cls):
    if isinstance(m, GhzDiagonal):
        return m.as_witness() if cls is WitnessX else m.as_state()
    return m


def pair(w, rho):
    """Bilinear pairing ``Tr(W rho^T) = sum_i s_i a_i + t_i b_i + 2 Re(u_i z_i)``."""
    w = _as_x(w, WitnessX)
    rho = _as_x(rho, XState)
    total = 0
    for i in range(N):
        total += w.a[i] * rho.a[i] + w.b[i] * rho.b[i]
        total += 2 * (w.z_re[i] * rho.z_re[i] - w.z_im[i] * rho.z_im[i])
    return total


def dense_pair(w: DenseHermitian8, rho: DenseHermitian8):
    """``sum_ij W_ij rho_ij`` for dense self-adjoint matrices (real part)."""
    total = w.re * rho.re - w.im * rho.im
    return total.sum()


# -- symmetry group ---------------------------------------------------------

ATOMS = ("A", "B", "C")


@dataclass(frozen=True)
class PartyOp:
    """Element of the 48-element group generated by party permutations and bit flips.

    The unitary first flips the bits marked in ``flips`` and then moves the
    qubit of party ``k`` to slot ``perm[k]``.
    """

    perm: tuple = (0, 1, 2)
    flips: tuple = (False, False, False)

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2] or len(self.flips) != 3:
            raise ValueError(f"unsupported group element {self!r}")

    def basis_map(self) -> tuple:
        out = []
        for k in range(DIM):
            bits = [(k >> (2 - j)) & 1 for j in range(3)]
            bits = [b ^ int(f) for b, f in zip(bits, self.flips)]
            new = [0, 0, 0]
            for j in range(3):
                new[self.perm[j]] = bits[j]
            out.append(new[0] * 4 + new[1] * 2 + new[2])
        return tuple(out)

    def unitary(self) -> np.ndarray:
        u = np.zeros((DIM, DIM))
        for k, image in enumerate(self.basis_map()):
            u[image, k] = 1.0
        return u

    def __matmul__(self, other: "PartyOp") -> "PartyOp":
        """Composition: ``(g @ h)`` acts as ``h`` first, then ``g``."""
        g, h = self.basis_map(), other.basis_map()
        return _element_by_map()[tuple(g[h[k]] for k in range(DIM))]

    def inverse(self) -> "PartyOp":
        mp = self.basis_map()
        inv = [0] * DIM
        for k, image in enumerate(mp):
            inv[image] = k
        return _element_by_map()[tuple(inv)]

    def atom_map(self) -> dict:
        """Where each bi-separability atom goes: party k's cut becomes slot perm[k]'s."""
        return {ATOMS[k]: ATOMS[self.perm[k]] for k in range(3)}


IDENTITY = PartyOp()


def swap(p: str, q: str) -> PartyOp:
    i, j = ATOMS.index(p), ATOMS.index(q)
    perm = [0, 1, 2]
    perm[i], perm[j] = perm[j], perm[i]
    return PartyOp(tuple(perm))


def bit_flip(*parties: str) -> PartyOp:
    return PartyOp(flips=tuple(a in parties for a in ATOMS))


FLIP_ALL = bit_flip("A", "B", "C")


@lru_cache(maxsize=None)
def group_elements() -> tuple:
    return tuple(
        PartyOp(perm, flips)
        for perm in itertools.permutations(range(3))
        for flips in itertools.product((False, True), repeat=3)
    )


@lru_cache(maxsize=None)
def _element_by_map() -> dict:
    return {g.basis_map(): g for g in group_elements()}


@lru_cache(maxsize=None)
def index_table(g: PartyOp) -> tuple:
    """For each target index ``i'`` the pair ``(source i, swapped)``, 0-based.

    Derived by conjugating a marker X-matrix with the dense unitary: a
    swapped source means ``a``/``b`` trade places and ``z`` is conjugated.
    """
    marker = XState(
        tuple(float(1 + i) for i in range(N)),
        tuple(float(11 + i) for i in range(N)),
        tuple(float(101 + i) for i in range(N)),
        tuple(float(1001 + i) for i in range(N)),
        False,
    )
    u = g.unitary()
    conj = u @ marker.to_complex() @ u.conj().T
    image = xpart(DenseHermitian8.from_complex(conj))
    table = []
    for i in range(N):
        src = int(round(image.a[i]))
        if 1 <= src <= N:
            entry = (src - 1, False)
        elif 11 <= src <= 10 + N:
            entry = (src - 11, True)
        else:
            raise AssertionError("party action does not preserve X-shape")
        # consistency of the anti-diagonal with the diagonal read-off
        expect_im = 1001 + entry[0]
        if int(round(image.z_re[i])) != 101 + entry[0] or int(round(abs(image.z_im[i]))) != expect_im:
            raise AssertionError("inconsistent index table")
        if (image.z_im[i] < 0) != entry[1]:
            raise AssertionError("inconsistent conjugation flag")
        table.append(entry)
    return tuple(table)


def index_permutation(g: PartyOp) -> tuple:
    """0-based map ``i -> i'`` of the pair indices (ignores a/b swaps)."""
    perm = [0] * N
    for target, (src, _) in enumerate(index_table(g)):
        perm[src] = target
    return tuple(perm)


def party_action(x: XMatrix, g: PartyOp) -> XMatrix:
    """``U_g X U_g*`` computed through the derived index table."""
    if not isinstance(g, PartyOp):
        raise TypeError(f"unsupported group element {g!r}")
    table = index_table(g)
    a, b, zr, zi = [], [], [], []
    for src, swapped in table:
        if swapped:
            a.append(x.b[src])
            b.append(x.a[src])
            zr.append(x.z_re[src])
            zi.append(-x.z_im[src])
        else:
            a.append(x.a[src])
            b.append(x.b[src])
            zr.append(x.z_re[src])
            zi.append(x.z_im[src])
    return x._replace(a, b, zr, zi)


# -- magnitude profile --------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """Magnitude data ``c_i = sqrt(a_i b_i)``, ``m_i = |z_i|``.

    For witnesses the same container holds ``r_i = sqrt(s_i t_i)`` and ``|u_i|``.
    """

    c: tuple
    m: tuple
    exact: bool = True

    def scale(self) -> float:
        return max(float(sum(self.c)), float(sum(self.m)), 1.0)


def profile(x: XMatrix) -> Profile:
    """Magnitude profile; exact mode keeps square roots exact."""
    if isinstance(x, GhzDiagonal):
        x = x.as_state()
    c, m = [], []
    for i in range(N):
        if x.a[i] < 0 or x.b[i] < 0:
            raise ValueError(f"negative diagonal entry at index {i + 1}")
        prod = x.a[i] * x.b[i]
        if x.exact:
            c.append(exact_sqrt(prod))
            m.append(exact_sqrt(x.abs2(i)))
        else:
            c.append(math.sqrt(prod))
            m.append(math.hypot(x.z_re[i], x.z_im[i]))
    return Profile(tuple(c), tuple(m), x.exact)


def radii(w: XMatrix) -> tuple:
    return profile(w).c
