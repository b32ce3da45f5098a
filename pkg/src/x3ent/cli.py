"""Command line: ``x3ent classify|certify|enumerate|verify|fixtures``.

Exit codes are 0 on success, 1 when a verification check fails and 2 for
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

from . import fixtures
from .cones import NonPsdWarning, lattice_profile
from .exact import exact_str
from .ghzpoly import extreme_rays, format_ray, hrep
from .io import InputError, load, loads, profile_to_dict, rays_to_dict, to_dict
from .lattice import CanonicalizationError, as_cone
from .suites import SUITES, run_suite
from .witness import certificate_to_dict, certify
from .xcore import DenseHermitian8, WitnessX, xpart

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(spec: str, exact):
    """``spec`` is a fixture name, a JSON file path, or ``-`` for stdin."""
    if spec in fixtures.FIXTURES and not os.path.exists(spec):
        x = fixtures.get(spec).payload
        if exact is not None:
            x = loads(json.dumps(to_dict(x)), exact)
        return x
    try:
        if spec == "-":
            return loads(sys.stdin.read(), exact)
        return load(spec, exact)
    except OSError as exc:
        raise UsageError(f"cannot read {spec!r}: {exc.strerror}") from None
    except InputError as exc:
        raise UsageError(f"{spec}: {exc}") from None


def _cone(text: str, primal_only: bool = True):
    try:
        c = as_cone(text)
    except CanonicalizationError as exc:
        raise UsageError(f"bad cone expression {text!r}: {exc}") from None
    if primal_only and c.dual:
        raise UsageError(f"{c.name} is a dual cone; this command takes a primal cone")
    return c


def _emit(payload, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _profile_text(lp) -> str:
    lines = []
    flags = []
    if lp.necessary_only:
        flags.append("dense input: verdicts use the X-part and are necessary conditions only")
    if not lp.psd:
        flags.append("input is not positive semidefinite")
    lines += [f"note: {f}" for f in flags]
    width = max(len(c.name) for c in lp.margins)
    for c, m in lp.margins.items():
        verdict = "member" if m.holds else "outside"
        lines.append(f"{c.name:<{width}}  {verdict:<7}  slack {exact_str(m.slack) if m.exact else f'{m.slack:.6g}'}")
    lines.append("minimal cones: " + (", ".join(c.name for c in lp.minimal) or "none"))
    return "\n".join(lines)


def cmd_classify(args) -> int:
    x = _read_input(args.file, args.exact)
    if isinstance(x, WitnessX):
        raise UsageError("classify takes a state, not a witness")
    lp = lattice_profile(x)
    _emit(profile_to_dict(lp), _profile_text(lp), args.format)
    return EXIT_OK


def cmd_certify(args) -> int:
    c = _cone(args.cone)
    x = _read_input(args.file, True)
    if isinstance(x, WitnessX):
        raise UsageError("certify takes a state, not a witness")
    dense = isinstance(x, DenseHermitian8)
    if dense:
        x = xpart(x)
    try:
        cert = certify(x, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cert is None:
        verdict = {"cone": c.name, "member": True}
        if dense:
            verdict["necessary_only"] = True
        _emit(verdict, "member", args.format)
        return EXIT_OK
    if not cert.recheck():
        print(f"certificate for {c.name} failed re-verification", file=sys.stderr)
        return EXIT_FAIL
    payload = certificate_to_dict(cert)
    w = cert.witness
    text = "\n".join([
        f"outside {c.name}",
        f"witness in {cert.dual_cone.name}: {w}",
        f"pairing {exact_str(cert.value)}",
    ])
    if args.format == "json" or args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    c = _cone(args.cone)
    rays = extreme_rays(hrep(c))
    text = "\n".join([f"{c.name}: {len(rays)} extreme rays (GHZ-diagonal restriction)"]
                     + [format_ray(r) for r in rays])
    _emit(rays_to_dict(c, rays), text, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite)
    payload = {"ok": all(r.ok for r in reports), "suites": [r.to_dict() for r in reports]}
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, default=str)
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n\n".join(r.summary() for r in reports))
    for r in reports:
        for f in r.failures():
            print(f"FAILED {r.name}: {f['item']}" + (f" ({f['detail']})" if f["detail"] else ""), file=sys.stderr)
    return EXIT_OK if payload["ok"] else EXIT_FAIL


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for f in fixtures.FIXTURES.values():
            print(f"{f.name:<12} {f.note}")
        return EXIT_OK
    if not args.name:
        raise UsageError("fixtures show needs a fixture name")
    try:
        f = fixtures.get(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    payload = to_dict(f.payload)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"{f.name}: {f.note}")
        print(json.dumps(payload))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="x3ent", description="Partial separability of three-qubit X-shaped matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("classify", help="membership of a state in every primal cone")
    sp.add_argument("file", help="JSON file, '-' for stdin, or a fixture name")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_const", const=True, default=None)
    mode.add_argument("--float", dest="exact", action="store_const", const=False)
    fmt(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("certify", help="witness proving a state lies outside a cone")
    sp.add_argument("file")
    sp.add_argument("--cone", required=True)
    sp.add_argument("--json", action="store_true", help="same as --format json")
    fmt(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("enumerate", help="extreme rays of a cone restricted to GHZ-diagonal matrices")
    sp.add_argument("--cone", required=True)
    sp.add_argument("--ghz", action="store_true", default=True,
                    help="GHZ-diagonal restriction (the only one available; accepted for clarity)")
    fmt(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    sp.add_argument("--report", help="also write the JSON report to this path")
    fmt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fixtures", help="list or show the built-in example inputs")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    fmt(sp)
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonPsdWarning)
            return args.func(args)
    except UsageError as exc:
        print(f"x3ent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["build_parser", "main"]
