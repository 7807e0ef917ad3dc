"""
Soft norms and metrics
======================

The canonical soft norm is |e| + ||x||_p.  It induces a metric
d(u, v) = ||u - v||, and that metric recovers the norm as d(v, 0).  The
verifiers below sample inputs, including planted edge cases, and report
every axiom that breaks.
"""
from softnorm import (
    CanonicalSoftNorm, InducedMetric, SoftVector, SoftVectorSampler, canonical_norm,
    norm_from_metric, verify_metric_axioms, verify_metric_norm_compatibility,
    verify_norm_axioms,
)
from softnorm.controls import bounded_metric, squared_norm

v = SoftVector([3, 4], 2)
print("||((3,4),2)|| for p = 1, 2, inf:",
      [canonical_norm(v, p) for p in (1, 2, "inf")])

norm = CanonicalSoftNorm(2)
metric = InducedMetric(norm)
print("d(((1,0),0), ((0,0),1)) =", metric(SoftVector([1, 0], 0), SoftVector([0, 0], 1)))
print("norm recovered from the metric:", norm_from_metric(metric)(v))

sampler = SoftVectorSampler(dim=3)
print(verify_norm_axioms(norm, sampler, 20_000).to_text())
print(verify_metric_axioms(metric, sampler, 20_000).to_text())
print(verify_metric_norm_compatibility(metric, sampler, 20_000).to_text())

# Squaring breaks homogeneity and the triangle inequality
report = verify_norm_axioms(squared_norm(2), sampler, 2_000)
print(report.to_text())
print("triangle witness:",
      next(cx for cx in report.counterexamples if cx["check"] == "N3-triangle"))

# d / (1 + d) is still a metric but no longer scales with its arguments
report = verify_metric_norm_compatibility(bounded_metric(metric), sampler, 2_000)
print(report.to_text())
