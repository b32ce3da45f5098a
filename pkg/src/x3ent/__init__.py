"""Partial separability of three-qubit X-shaped matrices.

Membership of X-states in the 23 cones generated by the three
bi-separability cones under meet and join, witnesses certifying
non-membership, and exact extreme-ray enumeration on GHZ-diagonal
matrices.
"""
from .cones import LatticeProfile, Membership, NonPsdWarning, catalog, lattice_profile, member
from .exact import Surd, tolerance
from .ghzpoly import extreme_rays, hrep, verify_extreme
from .ineq import S1, S2, S3, S4, W1, W2, W3, W4, Ineq, W4a, W4b, evaluate, parse_ineq
from .lattice import ConeId, all_cones, arrows, canonicalize
from .witness import Certificate, certify, implies
from .xcore import (
    DenseHermitian8,
    GhzDiagonal,
    PartyOp,
    WitnessX,
    XState,
    group_elements,
    make_ghz,
    make_witness,
    make_xstate,
    pair,
    party_action,
    profile,
    xpart,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "ConeId", "DenseHermitian8", "GhzDiagonal", "Ineq", "LatticeProfile", "Membership",
    "NonPsdWarning", "PartyOp", "S1", "S2", "S3", "S4", "Surd", "W1", "W2", "W3", "W4", "W4a", "W4b",
    "WitnessX", "XState", "all_cones", "arrows", "canonicalize", "catalog", "certify", "evaluate",
    "extreme_rays", "group_elements", "hrep", "implies", "lattice_profile", "make_ghz", "make_witness",
    "make_xstate", "member", "pair", "parse_ineq", "party_action", "profile", "tolerance",
    "verify_extreme", "xpart",
]
