"""
Certificates of non-membership
==============================

A state outside a cone is separated from it by a witness from the dual
cone.  The witness is rational and the negative pairing is exact.
"""
from x3ent import certify, make_ghz, make_xstate, member, pair

rho = make_xstate((2, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 0))
cert = certify(rho, "(A^B)v(A^C)")
print("witness cone:", cert.dual_cone.name)
print("witness:", cert.witness)
print("pairing:", pair(cert.witness, rho))

# the witness passes every criterion of its cone
print(member(cert.witness, cert.dual_cone).holds, cert.recheck())

# members get no certificate
print(certify(rho, "A"))

# irrational magnitude profiles are handled exactly
sigma = make_xstate((3, 2, 1, 3), (3, 1, 2, 1), (2, (1, 1), 0, 1))
for cone in ("A^B^C", "A", "AvB", "AvBvC"):
    c = certify(sigma, cone)
    print(cone, "member" if c is None else f"outside, pairing {c.value}")
