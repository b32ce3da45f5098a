"""
Extreme rays on GHZ-diagonal matrices
=====================================

Restricted to GHZ-diagonal matrices each cone is a polyhedral cone in
eight real coordinates.  Its extreme rays are enumerated exactly and each
one comes with a witness proving it is extreme.
"""
from x3ent import extreme_rays, hrep, verify_extreme
from x3ent.ghzpoly import format_ray

for name in ("A^B^C", "A^B", "A", "AvB", "AvBvC", "A^(BvC)", "(A^B)v(A^C)", "(AvB)^(AvC)", "Av(B^C)"):
    rays = extreme_rays(hrep(name))
    print(f"{name:<14} {len(rays):>3} extreme rays")

rays = extreme_rays(hrep("A^(BvC)"))
for ray in rays[:5]:
    print(format_ray(ray))

# a ray is extreme when some dual witness vanishes on it and on nothing larger
check = verify_extreme(rays[0], "A^(BvC)", rays)
print(check.witness)
