"""
The soft vector space
=====================

A soft vector pairs a vector x in R^n with a real parameter e.  Addition and
scaling act on both parts, so the lift (x, e) -> (x_1, ..., x_n, e) turns the
soft vectors into ordinary vectors of R^(n+1).
"""
import numpy as np

from softnorm import (
    SoftVector, independence_diagnostic, sv_is_independent, sv_lincomb, sv_scale,
    sv_span_contains,
)

u = SoftVector([1, 0], 1)
v = SoftVector([0, 1], 1)
print("u + v =", (u + v).to_dict())
print("-2 * ((3,4), 2) =", sv_scale(-2, SoftVector([3, 4], 2)).to_dict())
print("lincomb(1, 1) =", sv_lincomb([1, 1], [u, v]).to_dict())

# Independence is decided on the lifted vectors
w = u + v
print("{u, v} independent:", sv_is_independent([u, v]))
print("{u, v, u+v} independent:", sv_is_independent([u, v, w]))

# The x parts alone can mislead in both directions
a, b = SoftVector([1], 0), SoftVector([1], 1)
diag = independence_diagnostic([a, b])
print("x parts independent:", diag["base_independent"], "| soft vectors independent:",
      diag["independent"])
print("singular values:", np.round(diag["singular_values"], 4))

# Span membership solves a least-squares problem on the lifts
basis = [SoftVector([1, 0], 1)]
print("((2,0),2) in span:", sv_span_contains(basis, SoftVector([2, 0], 2)))
print("((2,0),0) in span:", sv_span_contains(basis, SoftVector([2, 0], 0)))
