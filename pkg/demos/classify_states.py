"""
Classifying X-states
====================

Membership of a three-qubit X-state in every cone of the lattice, with
the smallest cones it belongs to.
"""
from x3ent import lattice_profile, make_xstate, member

# a state is given by its diagonal halves a, b and anti-diagonal z
rho = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0))

profile = lattice_profile(rho)
for cone, m in profile.margins.items():
    print(f"{cone.name:<14} {'member' if m.holds else 'outside':<8} slack {m.slack}")
print("minimal cones:", ", ".join(c.name for c in profile.minimal))

# this state lies in A and in Bv(A^C) but not in (A^B)v(A^C)
print(member(rho, "A").holds, member(rho, "Bv(A^C)").holds, member(rho, "(A^B)v(A^C)").holds)

# floats switch to tolerance-based verdicts
rho_f = make_xstate((0.2, 0.1, 0.1, 0.2), (0.2, 0.1, 0.1, 0.2), (0.2, 0.0, 0.1, 0.0))
m = member(rho_f, "(A^B)v(A^C)")
print(m.holds, m.margin.slack, m.failing)
