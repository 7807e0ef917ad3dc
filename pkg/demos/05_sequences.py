"""
Convergence and Cauchy diagnostics
==================================

Limits cannot be decided from finitely many terms, so the diagnostics only
speak about indices 1..horizon.  A verdict names the first index from which
every later term (or pair of terms) stays strictly within eps.
"""
import numpy as np

from softnorm import (
    CanonicalSoftNorm, SoftVector, alternating_sequence, check_convergent_implies_cauchy,
    geometric_sequence, harmonic_sequence, lipschitz_continuity_check, random_operator,
    seq_converges_to, seq_is_cauchy, sv_zero,
)

norm = CanonicalSoftNorm(2)
zero = sv_zero(2)

# v_k = ((1/k, 0), 1/k) has norm 2/k, which drops below 0.01 after k = 200
harm = harmonic_sequence(zero, SoftVector([1, 0], 1))
print("harmonic converges:", seq_converges_to(harm, zero, norm, 0.01, 1000))
print("harmonic Cauchy:   ", seq_is_cauchy(harm, norm, 0.01, 1000))

# Flipping between two points never settles
alt = alternating_sequence(zero, SoftVector([1, 0], 0))
print("alternating:", seq_converges_to(alt, zero, norm, 0.5, 1000),
      seq_is_cauchy(alt, norm, 0.5, 1000))

# Convergence within eps/2 forces the Cauchy property within eps, no later
geo = geometric_sequence(SoftVector([1, 2], -1), SoftVector([3, 0], 1), -0.8)
report = check_convergent_implies_cauchy(geo, geo.declared_limit, norm, [0.1, 0.01, 0.001],
                                         10_000)
print(report.to_text())

# A bounded operator maps the sequence to one converging to the image of the limit
T = random_operator(np.random.default_rng(1), 2)
print(lipschitz_continuity_check(T, norm, norm, harm, eps=0.01, horizon=5000).to_text())
