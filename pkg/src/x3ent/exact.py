"""Exact number handling.

Two things live here: parsing of user numbers into ``Fraction`` (or
``float`` in float mode), and :class:`Surd`, an exact real of the form
``q0 + q1*sqrt(n1) + ... + qk*sqrt(nk)`` with rational ``q`` and integer
radicands.  Surds are what ``sqrt(a_i b_i)`` and ``|z_i|`` become in exact
mode; their sign is decided soundly by interval refinement.
"""
from __future__ import annotations

import math
import numbers
import os
from fractions import Fraction

from gmpy2 import is_square, isqrt, mpq, mpz

DEFAULT_TOLERANCE = 1e-9

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def tolerance() -> float:
    """Relative tolerance used by float-mode verdicts (``X3ENT_PRECISION`` overrides)."""
    value = os.environ.get("X3ENT_PRECISION")
    if value is None:
        return DEFAULT_TOLERANCE
    try:
        eps = float(value)
    except ValueError:
        raise ValueError(f"X3ENT_PRECISION must be a number, got {value!r}") from None
    if not (eps >= 0 and math.isfinite(eps)):
        raise ValueError(f"X3ENT_PRECISION must be finite and nonnegative, got {value!r}")
    return eps


def is_rational_input(x) -> bool:
    """True for values that parse to an exact rational (ints, fractions, strings)."""
    if isinstance(x, bool):
        return False
    return isinstance(x, (numbers.Rational, str)) or type(x).__name__ == "mpq"


def to_fraction(x) -> Fraction:
    """Convert ``x`` to a ``Fraction``.

    Strings may be ``"p/q"``, integers or decimals.  Floats convert exactly
    (their binary value), non-finite values are rejected.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse {x!r} as a rational number") from None
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite entry {x!r}")
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, numbers.Real):
        return to_fraction(float(x))
    raise TypeError(f"unsupported number {x!r}")


def to_float(x) -> float:
    if isinstance(x, str):
        x = to_fraction(x)
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    v = float(x)
    if not math.isfinite(v):
        raise ValueError(f"non-finite entry {x!r}")
    return v


def as_fraction(q) -> Fraction:
    """``mpq``/``int``/``Fraction`` to ``Fraction`` (no parsing)."""
    if isinstance(q, Fraction):
        return q
    return Fraction(int(q.numerator), int(q.denominator))


def fraction_str(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _reduce_radicand(n: int) -> tuple[int, int]:
    """Write n = k**2 * m with small square factors pulled out; returns (k, m)."""
    k = 1
    for p in _SMALL_PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    if is_square(n):
        k *= int(isqrt(n))
        n = 1
    return k, n


class Surd:
    """Exact real ``sum_k q_k * sqrt(n_k)``.

    Radicands are kept pairwise independent (``n_i * n_j`` never a perfect
    square), so by linear independence of square roots of distinct
    squarefree integers a Surd with any irrational term is nonzero.  Results
    that turn out rational are returned as ``Fraction``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms):
        self._terms = terms  # dict: radicand (int > 1) -> nonzero mpq

    # -- construction -----------------------------------------------------
    @staticmethod
    def sqrt(q):
        """Exact square root of a nonnegative rational: Fraction or Surd."""
        q = mpq(q) if not isinstance(q, Fraction) else mpq(q.numerator, q.denominator)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return Fraction(0)
        num, den = int(q.numerator), int(q.denominator)
        k, n = _reduce_radicand(num * den)
        coef = mpq(k, den)
        if n == 1:
            return as_fraction(coef)
        return Surd({n: coef})

    @staticmethod
    def _build(rational, terms):
        terms = {n: c for n, c in terms.items() if c != 0}
        if not terms:
            return as_fraction(rational)
        if rational != 0:
            terms[1] = mpq(rational)
        return Surd(terms)

    def _split(self):
        rational = self._terms.get(1, mpq(0))
        return rational, {n: c for n, c in self._terms.items() if n != 1}

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _merge(rational, terms, other, sign):
        if isinstance(other, Surd):
            o_rat, o_terms = other._split()
            rational = rational + sign * o_rat
            for n, c in o_terms.items():
                c = sign * c
                if n in terms:
                    terms[n] += c
                    continue
                for k in terms:
                    prod = k * n
                    if is_square(prod):
                        # sqrt(n) = isqrt(k n) / k * sqrt(k)
                        terms[k] += c * mpq(int(isqrt(prod)), k)
                        break
                else:
                    terms[n] = c
            return rational, terms
        return rational + sign * _as_mpq(other), terms

    def __add__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        rational, terms = self._split()
        return Surd._build(*Surd._merge(rational, dict(terms), other, 1))

    __radd__ = __add__

    def __sub__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        rational, terms = self._split()
        return Surd._build(*Surd._merge(rational, dict(terms), other, -1))

    def __rsub__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return (-self) + other

    def __neg__(self):
        return Surd({n: -c for n, c in self._terms.items()})

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __mul__(self, other):
        if isinstance(other, Surd):
            raise TypeError("Surd products are not supported")
        if not _is_exact_operand(other):
            return NotImplemented
        q = _as_mpq(other)
        if q == 0:
            return Fraction(0)
        return Surd({n: c * q for n, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd) or not _is_exact_operand(other):
            return NotImplemented
        q = _as_mpq(other)
        return Surd({n: c / q for n, c in self._terms.items()})

    # -- order ------------------------------------------------------------
    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval of width O(2**-bits) containing the value."""
        scale = mpz(1) << bits
        lo = hi = mpq(0)
        for n, c in self._terms.items():
            if n == 1:
                lo += c
                hi += c
                continue
            root = isqrt(mpz(n) << (2 * bits))
            r_lo = mpq(root, scale)
            r_hi = mpq(root + 1, scale)
            if c > 0:
                lo += c * r_lo
                hi += c * r_hi
            else:
                lo += c * r_hi
                hi += c * r_lo
        return as_fraction(lo), as_fraction(hi)

    def sign(self) -> int:
        # float fast path; exact refinement when too close to call
        total = 0.0
        mag = 0.0
        for n, c in self._terms.items():
            v = float(c) * math.sqrt(n)
            total += v
            mag += abs(v)
        if abs(total) > 1e-9 * mag and math.isfinite(total):
            return 1 if total > 0 else -1
        bits = 64
        while True:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Surd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not _is_exact_operand(other):
            return NotImplemented
        return self._cmp(other) == 0

    __hash__ = None

    def __float__(self):
        return float(sum(float(c) * math.sqrt(n) for n, c in self._terms.items()))

    def __bool__(self):
        return True  # irrational, hence nonzero

    def __str__(self):
        parts = []
        for n in sorted(self._terms):
            c = as_fraction(self._terms[n])
            if n == 1:
                parts.append(fraction_str(c))
            elif c == 1:
                parts.append(f"sqrt({n})")
            elif c == -1:
                parts.append(f"-sqrt({n})")
            else:
                parts.append(f"{fraction_str(c)}*sqrt({n})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Surd({self})"


def _is_exact_operand(x) -> bool:
    return isinstance(x, (Surd, int, Fraction)) and not isinstance(x, bool) or type(x).__name__ == "mpq"


def _as_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def exact_sqrt(q):
    """Square root of a nonnegative rational, as ``Fraction`` when rational."""
    return Surd.sqrt(q)


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def exact_str(x) -> str:
    """Exact rendering: ``"p/q"`` for rationals, radical form for surds."""
    if isinstance(x, Surd):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return fraction_str(x)
