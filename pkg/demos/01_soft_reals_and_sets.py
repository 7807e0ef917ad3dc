"""
Soft reals and soft sets
========================

A soft set assigns a subset of a universe to every parameter.  A soft real
assigns one real number to every parameter, and two soft reals are compared
parameter by parameter.
"""
from softnorm import (
    ParameterSet, SoftPoint, SoftReal, absolute_soft_set, sr_add, sr_compare,
    ss_from_points, ss_to_points,
)

E = ParameterSet(["morning", "evening"])

# Soft reals add componentwise
r = SoftReal(E, [1.0, 2.0])
s = SoftReal(E, [3.0, 4.0])
print("r + s =", sr_add(r, s).to_dict())

# The order is pointwise, so crossing values are incomparable
print("(1,2) vs (2,3):", sr_compare(r, SoftReal(E, [2.0, 3.0])).name)
print("(1,3) vs (2,2):", sr_compare(SoftReal(E, [1.0, 3.0]), SoftReal(E, [2.0, 2.0])).name)

# A soft set breaks down into soft points (element, parameter) and back
universe = {"x", "y", "z"}
pts = [SoftPoint("x", "morning"), SoftPoint("z", "morning"), SoftPoint("y", "evening")]
soft = ss_from_points(pts, E, universe)
print("assignment:", soft.to_dict()["assignment"])
print("points:", [(p.element, p.param) for p in ss_to_points(soft)])
assert ss_from_points(ss_to_points(soft), E, universe) == soft

# The absolute soft set takes the whole universe at every parameter
full = absolute_soft_set(E, universe)
print("absolute soft set has", len(ss_to_points(full)), "points")
