"""Soft norms, soft metrics and their axiom verifiers.

Norms and metrics expose two entry points: a scalar call on
:class:`SoftVector` values and a vectorised ``evaluate`` on lifted rows.
User-supplied callables are wrapped by :class:`FunctionNorm` and
:class:`FunctionMetric`, which fall back to a Python loop unless a batched
version is provided.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .core import SoftStructureError
from .report import Tally, VerificationReport, suite_rng
from .sampling import SoftVectorSampler
from .vectors import SoftVector, sv_add, sv_neg, sv_zero


def _parse_p(p) -> float:
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return math.inf
        p = float(p)
    p = float(p)
    if math.isnan(p) or p < 1:
        raise SoftStructureError(f"norm exponent must lie in [1, inf], got {p}")
    return p


def _as_rows(lifted) -> np.ndarray:
    rows = np.asarray(lifted, dtype=float)
    if rows.ndim == 1:
        rows = rows[None, :]
    return rows


class SoftNorm:
    """Base class: subclasses define ``__call__`` and may vectorise ``evaluate``."""

    dim: int | None = None
    name = "norm"

    def __call__(self, v: SoftVector) -> float:
        raise NotImplementedError

    def evaluate(self, lifted) -> np.ndarray:
        rows = _as_rows(lifted)
        return np.array([self(SoftVector.from_lift(r)) for r in rows], dtype=float)

    def pairwise(self, P, Q) -> np.ndarray:
        """Matrix of ``norm(P[i] - Q[j])`` for lifted rows ``P`` and ``Q``."""
        P, Q = _as_rows(P), _as_rows(Q)
        diff = P[:, None, :] - Q[None, :, :]
        return self.evaluate(diff.reshape(-1, P.shape[1])).reshape(P.shape[0], Q.shape[0])

    def _check_dim(self, n: int) -> None:
        if self.dim is not None and n != self.dim:
            raise SoftStructureError(f"norm expects dimension {self.dim}, got {n}")


def _scaled_pnorm(x: np.ndarray, p: float) -> np.ndarray:
    """Row-wise p-norm that survives entries near the underflow/overflow limits."""
    with np.errstate(over="ignore", under="ignore"):
        out = np.linalg.norm(x, ord=p, axis=1)
    if math.isinf(p):
        return out
    # rows at extreme magnitude are redone after rescaling by their largest entry
    risky = np.flatnonzero(~((out > 1e-150) & (out < 1e150)))
    if risky.size:
        rows = x[risky]
        peak = np.max(np.abs(rows), axis=1) if rows.shape[1] else np.zeros(risky.size)
        safe = np.where(peak > 0, peak, 1.0)
        out[risky] = peak * np.linalg.norm(rows / safe[:, None], ord=p, axis=1)
    return out


class CanonicalSoftNorm(SoftNorm):
    """``|e| + ||x||_p``; works in any dimension unless ``dim`` is fixed."""

    def __init__(self, p=2, dim: int | None = None):
        self.p = _parse_p(p)
        self.dim = dim
        self.name = ("canonical(p=inf)" if math.isinf(self.p)
                     else f"canonical(p={self.p:g})")

    def __call__(self, v: SoftVector) -> float:
        self._check_dim(v.dim)
        return float(self.evaluate(v.lift()[None, :])[0])

    def evaluate(self, lifted) -> np.ndarray:
        rows = _as_rows(lifted)
        self._check_dim(rows.shape[1] - 1)
        return np.abs(rows[:, -1]) + _scaled_pnorm(rows[:, :-1], self.p)

    def pairwise(self, P, Q) -> np.ndarray:
        # column at a time: avoids the (|P|, |Q|, d) temporary
        P, Q = _as_rows(P), _as_rows(Q)
        self._check_dim(P.shape[1] - 1)
        Pt, Qt = np.ascontiguousarray(P.T), np.ascontiguousarray(Q.T)
        acc = None
        for col in range(P.shape[1] - 1):
            dc = np.subtract.outer(Pt[col], Qt[col])
            if self.p == 2:
                dc *= dc
            elif self.p == math.inf:
                np.abs(dc, out=dc)
                acc = dc if acc is None else np.maximum(acc, dc, out=acc)
                continue
            else:
                np.abs(dc, out=dc)
                if self.p != 1:
                    dc **= self.p
            acc = dc if acc is None else np.add(acc, dc, out=acc)
        if acc is None:
            acc = np.zeros((P.shape[0], Q.shape[0]))
        elif self.p == 2:
            np.sqrt(acc, out=acc)
        elif self.p not in (1, math.inf):
            acc **= 1.0 / self.p
        acc += np.abs(np.subtract.outer(Pt[-1], Qt[-1]))
        return acc

    def __repr__(self) -> str:
        return f"CanonicalSoftNorm(p={self.p!r}, dim={self.dim!r})"


def canonical_norm(v: SoftVector, p=2) -> float:
    return CanonicalSoftNorm(p)(v)


class FunctionNorm(SoftNorm):
    def __init__(self, func: Callable[[SoftVector], float], batch=None,
                 dim: int | None = None, name: str = "function-norm"):
        self.func = func
        self.batch = batch
        self.dim = dim
        self.name = name

    def __call__(self, v: SoftVector) -> float:
        self._check_dim(v.dim)
        return float(self.func(v))

    def evaluate(self, lifted) -> np.ndarray:
        if self.batch is None:
            return super().evaluate(lifted)
        rows = _as_rows(lifted)
        self._check_dim(rows.shape[1] - 1)
        return np.asarray(self.batch(rows), dtype=float)


class SoftMetric:
    dim: int | None = None
    name = "metric"

    def __call__(self, u: SoftVector, v: SoftVector) -> float:
        raise NotImplementedError

    def evaluate(self, lifted_u, lifted_v) -> np.ndarray:
        U, V = _as_rows(lifted_u), _as_rows(lifted_v)
        return np.array([self(SoftVector.from_lift(a), SoftVector.from_lift(b))
                         for a, b in zip(U, V)], dtype=float)


class InducedMetric(SoftMetric):
    """``d(u, v) = ||u - v||`` for a soft norm."""

    def __init__(self, norm: SoftNorm):
        self.norm = norm
        self.dim = norm.dim
        self.name = f"induced[{norm.name}]"

    def __call__(self, u: SoftVector, v: SoftVector) -> float:
        return self.norm(sv_add(u, sv_neg(v)))

    def evaluate(self, lifted_u, lifted_v) -> np.ndarray:
        U, V = _as_rows(lifted_u), _as_rows(lifted_v)
        if U.shape[1] != V.shape[1]:
            raise SoftStructureError("dimension mismatch")
        return self.norm.evaluate(U - V)


def induced_metric(norm: SoftNorm, u: SoftVector, v: SoftVector) -> float:
    return InducedMetric(norm)(u, v)


class FunctionMetric(SoftMetric):
    def __init__(self, func: Callable[[SoftVector, SoftVector], float], batch=None,
                 dim: int | None = None, name: str = "function-metric"):
        self.func = func
        self.batch = batch
        self.dim = dim
        self.name = name

    def __call__(self, u: SoftVector, v: SoftVector) -> float:
        if u.dim != v.dim:
            raise SoftStructureError("dimension mismatch")
        return float(self.func(u, v))

    def evaluate(self, lifted_u, lifted_v) -> np.ndarray:
        if self.batch is None:
            return super().evaluate(lifted_u, lifted_v)
        return np.asarray(self.batch(_as_rows(lifted_u), _as_rows(lifted_v)), dtype=float)


class MetricNorm(SoftNorm):
    """The candidate norm ``v -> d(v, 0)`` read off a metric."""

    def __init__(self, metric: SoftMetric):
        self.metric = metric
        self.dim = metric.dim
        self.name = f"from-metric[{metric.name}]"

    def __call__(self, v: SoftVector) -> float:
        self._check_dim(v.dim)
        return self.metric(v, sv_zero(v.dim))

    def evaluate(self, lifted) -> np.ndarray:
        rows = _as_rows(lifted)
        return self.metric.evaluate(rows, np.zeros_like(rows))


def norm_from_metric(metric: SoftMetric) -> SoftNorm:
    return MetricNorm(metric)


# -- verifiers ---------------------------------------------------------------

def _describe(**arrays):
    def describe(j: int) -> dict:
        out = {}
        for key, arr in arrays.items():
            arr = np.asarray(arr)
            if arr.ndim == 2:
                out[key] = SoftVector.from_lift(arr[j]).to_dict()
            else:
                out[key] = float(arr[j])
        return out
    return describe


def _check_run(n_samples: int, tol: float) -> None:
    if n_samples < 1:
        raise SoftStructureError("n_samples must be >= 1")
    if not tol > 0:
        raise SoftStructureError("tolerance must be positive")


def verify_norm_axioms(norm: SoftNorm, sampler: SoftVectorSampler, n_samples: int,
                       tol: float = 1e-9, seed: int = 0) -> VerificationReport:
    """Sample-check nonnegativity/definiteness, absolute homogeneity and the triangle inequality."""
    _check_run(n_samples, tol)
    suite = "norm-axioms"
    rng = suite_rng(seed, suite)
    u, v = sampler.pairs(rng, n_samples)
    r = sampler.scalars(rng, n_samples)
    tally = Tally(suite, n_samples, tol, seed)

    nu, nv = norm.evaluate(u), norm.evaluate(v)
    n_sum = norm.evaluate(u + v)
    n_scaled = norm.evaluate(r[:, None] * u)
    n_zero = norm.evaluate(np.zeros((1, sampler.lifted_dim)))

    tally.check("N1-nonnegative", -nu, describe=_describe(v=u))
    tally.check("N1-zero", np.abs(n_zero), index=0)
    tally.check("N2-homogeneity", np.abs(n_scaled - np.abs(r) * nu), 1.0 + np.abs(nu),
                describe=_describe(v=u, r=r))
    tally.check("N3-triangle", n_sum - nu - nv, describe=_describe(u=u, v=v))
    return tally.report()


def verify_metric_axioms(metric: SoftMetric, sampler: SoftVectorSampler, n_samples: int,
                         tol: float = 1e-9, seed: int = 0) -> VerificationReport:
    """Sample-check M1-M4.

    Identity of indiscernibles is checked as ``d(v, v) <= tol``; the converse
    is only spot-checked on distinct near-coincident pairs, where a zero
    distance counts as a violation of size equal to the pair's separation.
    """
    _check_run(n_samples, tol)
    suite = "metric-axioms"
    rng = suite_rng(seed, suite)
    x, y, z = sampler.triples(rng, n_samples)
    a, b = sampler.near_pairs(rng, n_samples)
    tally = Tally(suite, n_samples, tol, seed)

    dxy = metric.evaluate(x, y)
    dyx = metric.evaluate(y, x)
    dyz = metric.evaluate(y, z)
    dxz = metric.evaluate(x, z)
    dxx = metric.evaluate(x, x)
    dab = metric.evaluate(a, b)
    separation = np.max(np.abs(a - b), axis=1)

    tally.check("M1-nonnegative", -dxy, describe=_describe(u=x, v=y))
    tally.check("M2-self-distance", np.abs(dxx), describe=_describe(v=x))
    tally.check("M2-distinct-positive", np.where(dab > 0, 0.0, separation),
                describe=_describe(u=a, v=b))
    tally.check("M3-symmetry", np.abs(dxy - dyx), describe=_describe(u=x, v=y))
    tally.check("M4-triangle", dxz - dxy - dyz, describe=_describe(x=x, y=y, z=z))
    return tally.report()


def verify_metric_norm_compatibility(metric: SoftMetric, sampler: SoftVectorSampler,
                                     n_samples: int, tol: float = 1e-9,
                                     seed: int = 0) -> VerificationReport:
    """Translation invariance and absolute homogeneity of a metric.

    A metric passing both is the metric induced by ``norm_from_metric(metric)``.
    """
    _check_run(n_samples, tol)
    suite = "metric-norm-compatibility"
    rng = suite_rng(seed, suite)
    u, v, w = sampler.triples(rng, n_samples)
    r = sampler.scalars(rng, n_samples)
    tally = Tally(suite, n_samples, tol, seed)

    duv = metric.evaluate(u, v)
    shifted = metric.evaluate(u + w, v + w)
    scaled = metric.evaluate(r[:, None] * u, r[:, None] * v)

    tally.check("translation-invariance", np.abs(shifted - duv), 1.0 + np.abs(duv),
                describe=_describe(u=u, v=v, w=w))
    tally.check("homogeneity", np.abs(scaled - np.abs(r) * duv), 1.0 + np.abs(r) * np.abs(duv),
                describe=_describe(u=u, v=v, r=r))
    return tally.report()
