"""The soft vector space SV(X) over X = R^n with real parameters.

A soft vector ``x_e`` is stored as the pair ``(x, e)``.  Addition and scaling
act on both parts at once::

    x_e + y_f = (x + y)_(e + f)        r . x_e = (r x)_(r e)

so the map ``(x, e) -> (x_1, ..., x_n, e)`` ("lift") is a linear isomorphism
onto R^(n+1).  Rank questions are answered in the lifted space.
"""
from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .core import SoftStructureError

DEFAULT_RANK_TOL = 1e-10


class SoftVector:
    """Immutable soft vector ``x_e`` with ``x`` in R^n and parameter ``e``."""

    __slots__ = ("_x", "_e")

    def __init__(self, x, e: float = 0.0):
        arr = np.array(x, dtype=float).reshape(-1)
        if arr.size < 1:
            raise SoftStructureError("soft vectors need dimension n >= 1")
        e = float(e)
        if not (np.all(np.isfinite(arr)) and math.isfinite(e)):
            raise SoftStructureError("soft vector components must be finite")
        arr.flags.writeable = False
        self._x = arr
        self._e = e

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def e(self) -> float:
        return self._e

    @property
    def dim(self) -> int:
        return self._x.size

    def lift(self) -> np.ndarray:
        return np.append(self._x, self._e)

    @classmethod
    def from_lift(cls, row) -> SoftVector:
        row = np.asarray(row, dtype=float).reshape(-1)
        if row.size < 2:
            raise SoftStructureError("lifted vector needs at least two entries")
        return cls(row[:-1], row[-1])

    def __add__(self, other: SoftVector) -> SoftVector:
        return sv_add(self, other)

    def __sub__(self, other: SoftVector) -> SoftVector:
        return sv_add(self, sv_neg(other))

    def __neg__(self) -> SoftVector:
        return sv_neg(self)

    def __rmul__(self, r: float) -> SoftVector:
        return sv_scale(r, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SoftVector):
            return NotImplemented
        return self._e == other._e and np.array_equal(self._x, other._x)

    def __hash__(self) -> int:
        return hash((tuple(self._x.tolist()), self._e))

    def __repr__(self) -> str:
        return f"SoftVector(x={self._x.tolist()}, e={self._e!r})"

    def to_dict(self) -> dict:
        return {"x": [float(v) for v in self._x], "e": self._e}

    @classmethod
    def from_dict(cls, data: Mapping) -> SoftVector:
        try:
            return cls(data["x"], data["e"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SoftStructureError):
                raise
            raise SoftStructureError(f"malformed soft vector: {exc}") from exc


def _check_dims(*vs: SoftVector) -> int:
    dims = {v.dim for v in vs}
    if len(dims) != 1:
        raise SoftStructureError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def _check_scalar(r) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise SoftStructureError("soft scalar must be finite")
    return r


def sv_add(u: SoftVector, v: SoftVector) -> SoftVector:
    _check_dims(u, v)
    return SoftVector(u.x + v.x, u.e + v.e)


def sv_scale(r: float, v: SoftVector) -> SoftVector:
    r = _check_scalar(r)
    return SoftVector(r * v.x, r * v.e)


def sv_zero(n: int) -> SoftVector:
    if n < 1:
        raise SoftStructureError("dimension must be >= 1")
    return SoftVector(np.zeros(n), 0.0)


def sv_neg(v: SoftVector) -> SoftVector:
    return SoftVector(-v.x, -v.e)


def sv_lincomb(coeffs: Sequence[float], vecs: Sequence[SoftVector]) -> SoftVector:
    if len(coeffs) != len(vecs) or not vecs:
        raise SoftStructureError("need equally many (>= 1) coefficients and vectors")
    _check_dims(*vecs)
    out = sv_scale(coeffs[0], vecs[0])
    for r, v in zip(coeffs[1:], vecs[1:]):
        out = sv_add(out, sv_scale(r, v))
    return out


def lift_matrix(vecs: Sequence[SoftVector]) -> np.ndarray:
    """Stack lifted vectors as the columns of an (n+1) x k matrix."""
    if not vecs:
        raise SoftStructureError("empty list of soft vectors")
    _check_dims(*vecs)
    return np.column_stack([v.lift() for v in vecs])


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not tol > 0:
        raise SoftStructureError("tolerance must be positive")
    return tol


def numerical_rank(matrix: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> tuple[int, np.ndarray]:
    """Rank counting singular values above ``tol`` times the largest one."""
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0, sv
    return int(np.sum(sv > tol * sv[0])), sv


def sv_is_independent(vecs: Sequence[SoftVector], tol: float = DEFAULT_RANK_TOL) -> bool:
    """True iff only the trivial combination of ``vecs`` is the zero soft vector."""
    tol = _check_tol(tol)
    mat = lift_matrix(vecs)
    k = mat.shape[1]
    if k > mat.shape[0]:
        return False
    rank, _ = numerical_rank(mat, tol)
    return rank == k


def independence_diagnostic(vecs: Sequence[SoftVector], tol: float = DEFAULT_RANK_TOL) -> dict:
    """Rank details for a list of soft vectors.

    ``base_independent`` reports whether the ``x`` parts alone are independent
    in R^n.  That is sufficient, not necessary, for the soft vectors to be
    independent: ``((0,), 1)`` and ``((0,), 2)`` are dependent, while
    ``((1,), 0)`` and ``((1,), 1)`` are independent although their ``x`` parts
    are not.
    """
    tol = _check_tol(tol)
    mat = lift_matrix(vecs)
    k = mat.shape[1]
    rank, sv = numerical_rank(mat, tol)
    base_rank, _ = numerical_rank(mat[:-1], tol)
    return {
        "count": k,
        "dim": mat.shape[0] - 1,
        "independent": k <= mat.shape[0] and rank == k,
        "rank": rank,
        "singular_values": [float(s) for s in sv],
        "base_rank": base_rank,
        "base_independent": base_rank == k,
    }


def sv_span_contains(basis: Sequence[SoftVector], v: SoftVector,
                     tol: float = DEFAULT_RANK_TOL) -> bool:
    """Whether ``v`` lies (within ``tol``, Euclidean) in the span of ``basis``."""
    tol = _check_tol(tol)
    target = v.lift()
    if not basis:
        return bool(np.linalg.norm(target) <= tol)
    _check_dims(v, *basis)
    mat = lift_matrix(basis)
    coef, *_ = np.linalg.lstsq(mat, target, rcond=None)
    return bool(np.linalg.norm(mat @ coef - target) <= tol)
