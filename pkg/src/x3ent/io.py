"""JSON formats for states, witnesses, profiles and ray sets.

States are ``{"a": [...4], "b": [...4], "z": [[re, im] x 4]}`` and dense
matrices ``{"matrix": 8x8 [re, im]}``.  Numbers are decimal floats or
rational strings ``"p/q"``; exact values are always written as strings so
a rational-mode round trip is bit-exact.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .exact import Surd, exact_str, fraction_str
from .xcore import DenseHermitian8, GhzDiagonal, WitnessX, XState, make_ghz, make_witness, make_xstate


class InputError(ValueError):
    """Malformed JSON input."""


def number_out(v):
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, Surd):
        return str(v)
    return fraction_str(v)


def _z_pairs(x):
    return [[number_out(r), number_out(i)] for r, i in zip(x.z_re, x.z_im)]


def state_to_dict(x: XState) -> dict:
    return {"a": [number_out(v) for v in x.a], "b": [number_out(v) for v in x.b], "z": _z_pairs(x)}


def witness_to_dict(w: WitnessX) -> dict:
    return {"s": [number_out(v) for v in w.a], "t": [number_out(v) for v in w.b], "u": _z_pairs(w)}


def ghz_to_dict(g: GhzDiagonal) -> dict:
    return {"ghz": {"a": [number_out(v) for v in g.a], "z": [number_out(v) for v in g.z]}}


def dense_to_dict(m: DenseHermitian8) -> dict:
    conv = number_out if m.exact else float
    return {"matrix": [[[conv(m.re[i, j]), conv(m.im[i, j])] for j in range(8)] for i in range(8)]}


def _check_number(v):
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise InputError(f"expected a number or rational string, got {v!r}")
    return v


def _complex_entry(v):
    if isinstance(v, list):
        if len(v) != 2:
            raise InputError(f"complex entries are [re, im] pairs, got {v!r}")
        return (_check_number(v[0]), _check_number(v[1]))
    return (_check_number(v), 0)


def _vec(d, key, n=4):
    v = d.get(key)
    if not isinstance(v, list) or len(v) != n:
        raise InputError(f"field {key!r} must be a list of {n} entries")
    return v


def parse_object(d: dict, exact: bool | None = None):
    """Build a state, witness, GHZ-diagonal matrix or dense matrix from a JSON object."""
    if not isinstance(d, dict):
        raise InputError("top-level JSON value must be an object")
    try:
        if "matrix" in d:
            rows = d["matrix"]
            if not isinstance(rows, list) or len(rows) != 8 or any(not isinstance(r, list) or len(r) != 8 for r in rows):
                raise InputError("'matrix' must be an 8x8 array of [re, im] pairs")
            pairs = [[_complex_entry(v) for v in row] for row in rows]
            m = DenseHermitian8.from_pairs(pairs, exact)
            if not m.is_self_adjoint():
                raise InputError("dense matrix is not self-adjoint")
            return m
        if "ghz" in d:
            g = d["ghz"]
            return make_ghz([_check_number(v) for v in _vec(g, "a")], [_check_number(v) for v in _vec(g, "z")], exact)
        if "s" in d:
            return make_witness(
                [_check_number(v) for v in _vec(d, "s")],
                [_check_number(v) for v in _vec(d, "t")],
                [_complex_entry(v) for v in _vec(d, "u")],
                exact,
            )
        return make_xstate(
            [_check_number(v) for v in _vec(d, "a")],
            [_check_number(v) for v in _vec(d, "b")],
            [_complex_entry(v) for v in _vec(d, "z")],
            exact,
        )
    except InputError:
        raise
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def loads(text: str, exact: bool | None = None):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return parse_object(d, exact)


def load(path: str, exact: bool | None = None):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), exact)


def to_dict(x) -> dict:
    if isinstance(x, WitnessX):
        return witness_to_dict(x)
    if isinstance(x, XState):
        return state_to_dict(x)
    if isinstance(x, GhzDiagonal):
        return ghz_to_dict(x)
    if isinstance(x, DenseHermitian8):
        return dense_to_dict(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x, **kw) -> str:
    return json.dumps(to_dict(x), **kw)


def slack_out(v):
    if isinstance(v, (float, np.floating)):
        return float(v)
    return exact_str(v)


def profile_to_dict(lp) -> dict:
    """JSON form of a lattice profile (cone names, verdicts, slacks, flags)."""
    return {
        "psd": lp.psd,
        "exact": lp.exact,
        "necessary_only": lp.necessary_only,
        "minimal": [c.name for c in lp.minimal],
        "cones": [
            {"cone": c.name, "member": bool(m.holds), "slack": slack_out(m.slack)}
            for c, m in lp.margins.items()
        ],
    }


def parse_slack(v):
    """Inverse of :func:`slack_out` for rational and float slacks."""
    if isinstance(v, float):
        return v
    try:
        return Fraction(v)
    except ValueError:
        return v  # radical form stays textual


def rays_to_dict(cone, rays) -> dict:
    return {"cone": cone.name, "count": len(rays), "rays": [{"a": list(r[:4]), "z": list(r[4:])} for r in rays]}
