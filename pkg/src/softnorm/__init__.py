"""Soft normed linear spaces: soft reals, soft vectors, soft norms and operators."""
from .core import (
    Comparison, ParameterSet, SoftPoint, SoftReal, SoftSet, SoftStructureError,
    absolute_soft_set, null_soft_set, sr_add, sr_compare, sr_le, ss_from_points, ss_to_points,
)
from .vectors import (
    SoftVector, independence_diagnostic, lift_matrix, sv_add, sv_is_independent,
    sv_lincomb, sv_neg, sv_scale, sv_span_contains, sv_zero,
)
from .norms import (
    CanonicalSoftNorm, FunctionMetric, FunctionNorm, InducedMetric, SoftMetric, SoftNorm,
    canonical_norm, induced_metric, norm_from_metric, verify_metric_axioms,
    verify_metric_norm_compatibility, verify_norm_axioms,
)
from .report import VerificationReport
from .sampling import SoftVectorSampler
from .operators import (
    SoftLinearOperator, check_linearity, nilpotent_operator, op_add, op_apply, op_compose,
    op_power, op_scale, random_operator, verify_bounded,
)
from .sequences import (
    SoftVectorSequence, Verdict, alternating_sequence, check_convergent_implies_cauchy,
    constant_sequence, geometric_sequence, harmonic_sequence, seq_converges_to, seq_is_cauchy,
    sequence_from_spec,
)
from .opnorm import (
    OpNormConfig, OpNormResult, certified_op_norm, escalate_op_norm, grid_op_norm,
    multistart_op_norm,
    lipschitz_continuity_check, op_norm, op_norm_ratio_check, verify_opnorm_axioms,
    verify_power_bound, verify_submultiplicative,
)

__version__ = "0.1.0"
