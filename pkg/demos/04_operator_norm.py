"""
Soft linear operators and their norms
=====================================

Every linear map of soft vectors is a block matrix acting on the lift:
``[[A, b], [c^T, lam]]``.  Its norm is the largest ratio ||T v|| / ||v||.
For small lifted dimensions a dense direction grid gives a reference value;
the multistart hill climber scales to higher dimensions.
"""
import numpy as np

from softnorm import (
    CanonicalSoftNorm, SoftLinearOperator, SoftVectorSampler, certified_op_norm,
    escalate_op_norm, nilpotent_operator, op_compose, op_norm, op_norm_ratio_check, op_power,
    random_operator, verify_bounded, verify_submultiplicative,
)
from softnorm.opnorm import OpNormConfig

norm = CanonicalSoftNorm(2)
rng = np.random.default_rng(0)

# A projection onto the first coordinate has norm 1, attained on the x axis
P = SoftLinearOperator(A=[[1, 0], [0, 0]], b=[0, 0], c=[0, 0], lam=0)
res = certified_op_norm(P, norm)
print("projection:", res.to_dict())

# For a random operator, compare the estimate against the grid reference
T = random_operator(rng, 2)
res = certified_op_norm(T, norm)
print(f"random T: ||T|| ~ {res.value:.6f}, gap to grid {res.certificate_gap:.2e}")

# The estimate is an honest bound on sampled ratios, and half of it is not
sampler = SoftVectorSampler(2)
print(verify_bounded(T, res.value, norm, norm, sampler, 20_000).to_text())
half = verify_bounded(T, res.value / 2, norm, norm, sampler, 100, witnesses=[res.maximizer])
print(half.to_text())

# A deliberately cheap estimate is beaten by samples; escalation absorbs them
big = random_operator(np.random.default_rng(1), 6)
cheap = OpNormConfig(starts=1, iterations=1, random_directions=0)
rough = op_norm(big, norm, cfg=cheap)
print(op_norm_ratio_check(big, norm, norm, rough, SoftVectorSampler(6), 20_000).to_text())
result, report = escalate_op_norm(big, norm, norm, SoftVectorSampler(6), 20_000, cfg=cheap)
print(f"cheap estimate {rough.value:.4f}, after escalation {result.value:.4f},",
      "ratio check passed:", report.passed)

# Composition and powers
S = random_operator(rng, 2)
print(verify_submultiplicative(S, T, norm).to_text())
print("||S o T|| =", op_norm(op_compose(S, T), norm).value)
N = nilpotent_operator(rng, 2)
print("nilpotent cube is zero:", op_power(N, 3).is_zero())
