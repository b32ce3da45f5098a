"""Named example inputs with the facts they are expected to satisfy."""
from __future__ import annotations

from dataclasses import dataclass

from .xcore import make_ghz, make_witness, make_xstate


@dataclass(frozen=True)
class Fixture:
    name: str
    payload: object
    note: str
    members: tuple = ()
    non_members: tuple = ()
    facts: tuple = ()


FIXTURES = {
    f.name: f
    for f in (
        Fixture(
            "rho1",
            make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0)),
            "member of A and of Bv(A^C), outside (A^B)v(A^C): S4[1,3|2,3] fails with slack -1",
            members=("A", "Bv(A^C)", "A^(BvC)"),
            non_members=("(A^B)v(A^C)",),
            facts=(("slack", "S1[1,4]", 0), ("slack", "S4[1,3|2,3]", -1)),
        ),
        Fixture(
            "rho2",
            make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 1, 0, 0)),
            "member of A and of Cv(A^B), outside (A^B)v(A^C): S4[1,2|2,3] fails",
            members=("A", "Cv(A^B)", "A^(BvC)"),
            non_members=("(A^B)v(A^C)",),
        ),
        Fixture(
            "ghz-ones",
            make_ghz((1, 1, 1, 1), (1, 1, 1, 1)),
            "GHZ-diagonal X(1 1 1 1 / 1 1 1 1): an extreme ray of A^B^C, hence in every cone",
            members=("A^B^C", "AvBvC"),
        ),
        Fixture(
            "s3-violator",
            make_ghz((1, 1, 1, 1), (4, 0, 0, 0)),
            "X(1 1 1 1 / 4 0 0 0): S3 fails (3 < 4); not positive semidefinite",
            non_members=("AvBvC",),
            facts=(("slack", "S3", -1),),
        ),
        Fixture(
            "ghz",
            make_ghz((1, 0, 0, 0), (1, 0, 0, 0)),
            "the GHZ projector X(1 0 0 0 / 1 0 0 0): outside every cone, including AvBvC",
            non_members=("AvBvC",),
        ),
        Fixture(
            "zero",
            make_xstate((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
            "zero matrix: member of every cone with slack 0",
            members=("A^B^C",),
        ),
        Fixture(
            "diag-e1",
            make_xstate((1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
            "diagonal state |000><000|: member of every cone",
            members=("A^B^C",),
        ),
        Fixture(
            "witness-a",
            make_ghz((0, 1, 1, 1), (0, 0, 0, 0)),
            "witness X(0 1 1 1 / 0 0 0 0): pairs to 0 with X(1 0 0 0 / 0 0 0 0) and to 6 with X(1 1 1 1 / 1 1 1 1)",
            facts=(("pair", (1, 0, 0, 0, 0, 0, 0, 0), 0), ("pair", (1, 1, 1, 1, 1, 1, 1, 1), 6)),
        ),
        Fixture(
            "witness-b",
            make_ghz((1, 1, 2, 1), (-2, 0, 0, -2)),
            "witness X(1 1 2 1 / -2 0 0 -2): vanishes on X(1 2 0 1 / 1 0 0 1); W4a[3,4] slack 3",
            facts=(("pair", (1, 2, 0, 1, 1, 0, 0, 1), 0), ("slack", "W4a[3,4]", 3)),
        ),
        Fixture(
            "w3-not-w1",
            make_witness((0, 1, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1)),
            "witness with r=(0,1,1,0), |u|=(1,0,0,1): W3 holds, W1[1,4] fails with slack -2",
            facts=(("slack", "W3", 0), ("slack", "W1[1,4]", -2)),
        ),
    )
}


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
