"""Soft linear operators as block maps on R^n (+) R.

Under the lift, an additive and homogeneous map SV(R^n) -> SV(R^m) is a
linear map R^(n+1) -> R^(m+1), i.e. a block matrix::

    [ A  b ]      T(x_e) = (A x + e b)_(<c, x> + lam e)
    [ c' lam]
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .core import SoftStructureError
from .norms import CanonicalSoftNorm, SoftNorm
from .report import Tally, VerificationReport, suite_rng
from .sampling import SoftVectorSampler
from .vectors import SoftVector


@dataclass(frozen=True, eq=False)
class SoftLinearOperator:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lam: float

    def __post_init__(self):
        A = np.array(self.A, dtype=float, ndmin=2)
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise SoftStructureError("A must be a non-empty m x n matrix")
        m, n = A.shape
        b = np.array(self.b, dtype=float).reshape(-1)
        c = np.array(self.c, dtype=float).reshape(-1)
        if b.size != m or c.size != n:
            raise SoftStructureError(
                f"block shapes disagree: A is {m}x{n}, b has {b.size}, c has {c.size}")
        lam = float(self.lam)
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))
                and np.all(np.isfinite(c)) and math.isfinite(lam)):
            raise SoftStructureError("operator entries must be finite")
        for arr in (A, b, c):
            arr.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "lam", lam)

    @property
    def in_dim(self) -> int:
        return self.A.shape[1]

    @property
    def out_dim(self) -> int:
        return self.A.shape[0]

    @property
    def lifted(self) -> np.ndarray:
        """The (m+1) x (n+1) block matrix acting on lifted vectors."""
        top = np.column_stack([self.A, self.b])
        bottom = np.append(self.c, self.lam)
        return np.vstack([top, bottom])

    @classmethod
    def from_lifted(cls, M) -> SoftLinearOperator:
        M = np.asarray(M, dtype=float)
        if M.ndim != 2 or M.shape[0] < 2 or M.shape[1] < 2:
            raise SoftStructureError("lifted matrix must be at least 2 x 2")
        return cls(M[:-1, :-1], M[:-1, -1], M[-1, :-1], M[-1, -1])

    @classmethod
    def identity(cls, n: int) -> SoftLinearOperator:
        return cls.from_lifted(np.eye(n + 1))

    @classmethod
    def zero(cls, m: int, n: int | None = None) -> SoftLinearOperator:
        n = m if n is None else n
        return cls.from_lifted(np.zeros((m + 1, n + 1)))

    def is_zero(self) -> bool:
        return not np.any(self.lifted)

    def apply_lifted(self, rows) -> np.ndarray:
        rows = np.asarray(rows, dtype=float)
        return rows @ self.lifted.T

    def __call__(self, v: SoftVector) -> SoftVector:
        return op_apply(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SoftLinearOperator):
            return NotImplemented
        return np.array_equal(self.lifted, other.lifted)

    def __hash__(self) -> int:
        return hash(self.lifted.tobytes())

    def to_dict(self) -> dict:
        return {"A": self.A.tolist(), "b": self.b.tolist(), "c": self.c.tolist(),
                "lam": self.lam}

    @classmethod
    def from_dict(cls, data: Mapping) -> SoftLinearOperator:
        try:
            return cls(data["A"], data["b"], data["c"], data["lam"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SoftStructureError):
                raise
            raise SoftStructureError(f"malformed operator: {exc}") from exc


def op_apply(T: SoftLinearOperator, v: SoftVector) -> SoftVector:
    if v.dim != T.in_dim:
        raise SoftStructureError(f"operator expects dimension {T.in_dim}, got {v.dim}")
    return SoftVector(T.A @ v.x + v.e * T.b, float(T.c @ v.x) + T.lam * v.e)


def op_compose(S: SoftLinearOperator, T: SoftLinearOperator) -> SoftLinearOperator:
    """``S o T``: apply ``T`` first."""
    if S.in_dim != T.out_dim:
        raise SoftStructureError(f"cannot compose: S takes {S.in_dim}, T gives {T.out_dim}")
    return SoftLinearOperator.from_lifted(S.lifted @ T.lifted)


def op_power(T: SoftLinearOperator, k: int) -> SoftLinearOperator:
    if T.in_dim != T.out_dim:
        raise SoftStructureError("powers need a square operator")
    if k < 1:
        raise SoftStructureError("power must be >= 1")
    return SoftLinearOperator.from_lifted(np.linalg.matrix_power(T.lifted, k))


def op_add(S: SoftLinearOperator, T: SoftLinearOperator) -> SoftLinearOperator:
    if (S.in_dim, S.out_dim) != (T.in_dim, T.out_dim):
        raise SoftStructureError("operators have different shapes")
    return SoftLinearOperator.from_lifted(S.lifted + T.lifted)


def op_scale(r: float, T: SoftLinearOperator) -> SoftLinearOperator:
    r = float(r)
    if not math.isfinite(r):
        raise SoftStructureError("scalar must be finite")
    return SoftLinearOperator.from_lifted(r * T.lifted)


def random_operator(rng: np.random.Generator, out_dim: int, in_dim: int | None = None,
                    scale: float = 1.0) -> SoftLinearOperator:
    in_dim = out_dim if in_dim is None else in_dim
    return SoftLinearOperator.from_lifted(
        rng.standard_normal((out_dim + 1, in_dim + 1)) * scale)


def nilpotent_operator(rng: np.random.Generator, n: int) -> SoftLinearOperator:
    """Random operator whose lifted matrix is strictly upper triangular."""
    M = np.triu(rng.standard_normal((n + 1, n + 1)), k=1)
    return SoftLinearOperator.from_lifted(M)


# -- black-box checks -------------------------------------------------------------

def check_linearity(f: Callable[[SoftVector], SoftVector], sampler: SoftVectorSampler,
                    n_samples: int, tol: float = 1e-9, seed: int = 0,
                    norm: SoftNorm | None = None) -> VerificationReport:
    """Sample-check additivity and homogeneity of an arbitrary soft-vector map."""
    suite = "linearity"
    norm = norm or CanonicalSoftNorm(2)
    rng = suite_rng(seed, suite)
    U, V = sampler.pairs(rng, n_samples)
    r = sampler.scalars(rng, n_samples)
    tally = Tally(suite, n_samples, tol, seed)

    add_excess = np.empty(n_samples)
    add_scale = np.empty(n_samples)
    hom_excess = np.empty(n_samples)
    hom_scale = np.empty(n_samples)
    for i in range(n_samples):
        u, v = SoftVector.from_lift(U[i]), SoftVector.from_lift(V[i])
        fu, fv = f(u), f(v)
        add_excess[i] = norm(f(u + v) - fu - fv)
        add_scale[i] = 1.0 + norm(fu) + norm(fv)
        hom_excess[i] = norm(f(r[i] * u) - r[i] * fu)
        hom_scale[i] = 1.0 + abs(r[i]) * norm(fu)

    def describe(j):
        return {"u": SoftVector.from_lift(U[j]).to_dict(),
                "v": SoftVector.from_lift(V[j]).to_dict(), "r": float(r[j])}

    tally.check("L1-additivity", add_excess, add_scale, describe=describe)
    tally.check("L2-homogeneity", hom_excess, hom_scale, describe=describe)
    return tally.report()


def verify_bounded(T: SoftLinearOperator, M: float, norm_in: SoftNorm, norm_out: SoftNorm,
                   sampler: SoftVectorSampler, n_samples: int, tol: float = 1e-6,
                   seed: int = 0, witnesses=None) -> VerificationReport:
    """Check ``||T v|| <= M ||v|| + tol`` on samples (and optional witness points)."""
    if M < 0:
        raise SoftStructureError("bound M must be nonnegative")
    suite = "bounded"
    rng = suite_rng(seed, suite)
    V = sampler.vectors(rng, n_samples)
    if witnesses is not None:
        W = np.atleast_2d(np.asarray(
            [w.lift() if isinstance(w, SoftVector) else w for w in witnesses], dtype=float))
        V = np.vstack([W, V])
    tally = Tally(suite, V.shape[0], tol, seed)
    excess = norm_out.evaluate(T.apply_lifted(V)) - M * norm_in.evaluate(V)
    tally.check("bounded", excess,
                describe=lambda j: {"v": SoftVector.from_lift(V[j]).to_dict(), "M": float(M)})
    return tally.report()
