"""Deliberately broken norms and metrics used as negative controls."""
from __future__ import annotations

import numpy as np

from .norms import CanonicalSoftNorm, FunctionMetric, FunctionNorm, SoftMetric, SoftNorm


def no_abs_norm() -> SoftNorm:
    """``v -> e``: negative for negative parameters."""
    return FunctionNorm(lambda v: v.e, batch=lambda rows: rows[:, -1], name="no-abs")


def squared_norm(p=2) -> SoftNorm:
    """``(|e| + ||x||_p)^2``: breaks the triangle inequality and homogeneity."""
    base = CanonicalSoftNorm(p)
    return FunctionNorm(lambda v: base(v) ** 2,
                        batch=lambda rows: base.evaluate(rows) ** 2, name="squared")


def squared_metric(norm: SoftNorm) -> SoftMetric:
    return FunctionMetric(lambda u, v: norm(u - v) ** 2,
                          batch=lambda U, V: norm.evaluate(U - V) ** 2,
                          name=f"squared[{norm.name}]")


def bounded_metric(metric: SoftMetric) -> SoftMetric:
    """``d / (1 + d)``: a genuine metric that is not homogeneous."""
    def batch(U, V):
        d = metric.evaluate(U, V)
        return d / (1.0 + d)
    return FunctionMetric(lambda u, v: metric(u, v) / (1.0 + metric(u, v)),
                          batch=batch, name=f"bounded[{metric.name}]")


def discrete_metric() -> SoftMetric:
    def batch(U, V):
        return np.any(U != V, axis=1).astype(float)
    return FunctionMetric(lambda u, v: float(u != v), batch=batch, name="discrete")


def signed_parameter_metric() -> SoftMetric:
    """``u.e - v.e``: negative and antisymmetric."""
    return FunctionMetric(lambda u, v: u.e - v.e,
                          batch=lambda U, V: U[:, -1] - V[:, -1], name="signed-parameter")
