"""
Lattice identities and redundant criteria
=========================================

Ray-set comparisons show which lattice identities hold on GHZ-diagonal
matrices, and exact linear programs decide which criteria follow from
others.
"""
from x3ent import W1, W3, W4a, implies
from x3ent.ghzpoly import identity_suite
from x3ent.suites import redundancy_suite

print(identity_suite().summary())

# W1[1,4] and W1[2,3] together force W3
print(implies((W1(1, 4), W1(2, 3)), W3()).holds)

# W3 alone does not force W1[1,4]; the counterexample is a magnitude profile
res = implies((W3(),), W1(1, 4))
print(res.holds, res.counterexample)

print(implies((W1(1, 2),), W4a(1, 2)).holds)
print(redundancy_suite().summary())
