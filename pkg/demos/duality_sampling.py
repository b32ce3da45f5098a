"""
Sampling cone and dual cone
===========================

Random members of a cone pair nonnegatively with random members of its
dual cone.  The vectorized sampler keeps everything in exact integers.
"""
import numpy as np

from x3ent import all_cones
from x3ent.sampling import member_profiles, pair_batch, realize_batch

rng = np.random.default_rng(0)
for cone in all_cones()[:6]:
    dual = cone.polar()
    states = realize_batch(*member_profiles(rng, cone, 2000), rng)
    witnesses = realize_batch(*member_profiles(rng, dual, 2000), rng, witness=True)
    values = pair_batch(witnesses, states)
    print(f"{cone.name:<12} vs {dual.name:<14} smallest pairing {min(values)}")
