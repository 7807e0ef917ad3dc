"""Finite-horizon convergence and Cauchy diagnostics for soft vector sequences.

Verdicts only speak about indices ``1 .. horizon``.  A witness window must
contain at least two indices (when the horizon allows it); otherwise every
sequence would be trivially "Cauchy from the last index on".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .core import SoftStructureError
from .norms import SoftNorm
from .report import Tally, VerificationReport
from .vectors import SoftVector

ROW_BLOCK = 64


@dataclass(frozen=True)
class Verdict:
    kind: str  # CONVERGED_AT, CAUCHY_AT or NOT_WITHIN_HORIZON
    index: int | None = None

    @property
    def holds(self) -> bool:
        return self.kind != "NOT_WITHIN_HORIZON"

    def to_dict(self) -> dict:
        return {"verdict": self.kind, "index": self.index}


NOT_WITHIN_HORIZON = Verdict("NOT_WITHIN_HORIZON")


@dataclass(frozen=True, eq=False)
class SoftVectorSequence:
    """Index ``k >= 1`` mapped to a soft vector by a pure ``generator``.

    ``batch`` optionally maps an integer array of indices to lifted rows in one
    call; it must agree with ``generator``.
    """

    generator: Callable[[int], SoftVector]
    dim: int
    declared_limit: SoftVector | None = None
    batch: Callable[[np.ndarray], np.ndarray] | None = None
    kind: str = "custom"

    def __call__(self, k: int) -> SoftVector:
        if k < 1:
            raise SoftStructureError("sequence indices start at 1")
        return self.generator(k)

    def lifted(self, horizon: int) -> np.ndarray:
        """Rows ``k = 1 .. horizon`` in lifted form."""
        ks = np.arange(1, horizon + 1)
        if self.batch is not None:
            rows = np.asarray(self.batch(ks), dtype=float)
        else:
            rows = np.array([self.generator(int(k)).lift() for k in ks])
        if rows.shape != (horizon, self.dim + 1):
            raise SoftStructureError(
                f"sequence produced shape {rows.shape}, expected {(horizon, self.dim + 1)}")
        return rows

    def map(self, f) -> SoftVectorSequence:
        """Image sequence ``k -> f(v_k)``; soft linear operators map in batch."""
        limit = None if self.declared_limit is None else f(self.declared_limit)
        batch = None
        if hasattr(f, "apply_lifted") and self.batch is not None:
            inner = self.batch
            batch = lambda ks: f.apply_lifted(inner(ks))  # noqa: E731
        gen = self.generator
        out_dim = getattr(f, "out_dim", self.dim)
        return SoftVectorSequence(lambda k: f(gen(k)), out_dim, limit, batch,
                                  f"image[{self.kind}]")


def _weights(base: SoftVector, direction: SoftVector, coef: Callable[[np.ndarray], np.ndarray]):
    if base.dim != direction.dim:
        raise SoftStructureError("base and direction dimensions differ")
    b, w = base.lift(), direction.lift()

    def batch(ks):
        return b[None, :] + coef(np.asarray(ks, dtype=float))[:, None] * w[None, :]

    def gen(k):
        return SoftVector.from_lift(batch(np.array([k]))[0])

    return gen, batch


def constant_sequence(v: SoftVector) -> SoftVectorSequence:
    b = v.lift()
    return SoftVectorSequence(lambda k: v, v.dim, v,
                              lambda ks: np.tile(b, (len(ks), 1)), "constant")


def geometric_sequence(base: SoftVector, direction: SoftVector, rho: float) -> SoftVectorSequence:
    """``base + rho^k * direction`` with ``|rho| < 1``."""
    rho = float(rho)
    if not abs(rho) < 1:
        raise SoftStructureError("geometric sequences need |rho| < 1")
    gen, batch = _weights(base, direction, lambda ks: rho ** ks)
    return SoftVectorSequence(gen, base.dim, base, batch, "geometric")


def harmonic_sequence(base: SoftVector, direction: SoftVector) -> SoftVectorSequence:
    """``base + direction / k``."""
    gen, batch = _weights(base, direction, lambda ks: 1.0 / ks)
    return SoftVectorSequence(gen, base.dim, base, batch, "harmonic")


def alternating_sequence(base: SoftVector, direction: SoftVector) -> SoftVectorSequence:
    """``base + (-1)^k * direction``; no limit unless ``direction`` is zero."""
    gen, batch = _weights(base, direction, lambda ks: np.where(ks % 2 == 0, 1.0, -1.0))
    limit = base if not np.any(direction.lift()) else None
    return SoftVectorSequence(gen, base.dim, limit, batch, "alternating")


SEQUENCE_KINDS = ("constant", "geometric", "harmonic", "alternating")


def sequence_from_spec(spec: Mapping) -> SoftVectorSequence:
    """Build a built-in sequence from its JSON form."""
    try:
        kind = spec["kind"]
        base = SoftVector.from_dict(spec["base"])
    except (KeyError, TypeError) as exc:
        raise SoftStructureError(f"malformed sequence spec: {exc}") from exc
    if kind not in SEQUENCE_KINDS:
        raise SoftStructureError(f"unknown sequence kind {kind!r}")
    if kind == "constant":
        return constant_sequence(base)
    try:
        direction = SoftVector.from_dict(spec["direction"])
    except (KeyError, TypeError) as exc:
        raise SoftStructureError(f"sequence kind {kind!r} needs a direction") from exc
    if kind == "geometric":
        try:
            return geometric_sequence(base, direction, float(spec["rho"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SoftStructureError):
                raise
            raise SoftStructureError("geometric sequence needs a numeric rho") from exc
    if kind == "harmonic":
        return harmonic_sequence(base, direction)
    return alternating_sequence(base, direction)


def _check(eps: float, horizon: int) -> None:
    if not eps > 0:
        raise SoftStructureError("eps must be positive")
    if horizon < 1:
        raise SoftStructureError("horizon must be >= 1")


def _min_window(horizon: int) -> int:
    return min(2, horizon)


def seq_converges_to(seq: SoftVectorSequence, limit: SoftVector, norm: SoftNorm,
                     eps: float, horizon: int) -> Verdict:
    """Smallest ``k0`` with ``||v_k - limit|| < eps`` for every ``k0 <= k <= horizon``."""
    _check(eps, horizon)
    if limit.dim != seq.dim:
        raise SoftStructureError("limit dimension differs from the sequence")
    dist = norm.evaluate(seq.lifted(horizon) - limit.lift())
    bad = np.flatnonzero(~(dist < eps))
    k0 = 1 if bad.size == 0 else int(bad[-1]) + 2
    if horizon - k0 + 1 < _min_window(horizon):
        return NOT_WITHIN_HORIZON
    return Verdict("CONVERGED_AT", k0)


def _unique_last(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows and the last index at which each occurs."""
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    last = np.full(uniq.shape[0], -1)
    np.maximum.at(last, inverse, np.arange(rows.shape[0]))
    return uniq, last


def tail_diameters(seq: SoftVectorSequence, norm: SoftNorm, horizon: int,
                   stop_at: float | None = None) -> np.ndarray:
    """``D[i] = max_{i < j <= horizon} ||v_i - v_j||`` for 0-based ``i``.

    Every pair is evaluated (duplicate points collapsed, which changes no
    maximum).  With ``stop_at`` the scan runs from the tail and stops after the
    first block containing a value ``>= stop_at``; unscanned entries are NaN.
    """
    L = seq.lifted(horizon)
    uniq, last = _unique_last(L)
    D = np.full(horizon, np.nan)
    D[-1] = 0.0
    hi = horizon - 1
    while hi > 0:
        lo = max(0, hi - ROW_BLOCK)
        block = L[lo:hi]
        far = uniq[last >= hi]  # occurs after every row of the block
        near_sel = (last > lo) & (last < hi)
        best = np.full(hi - lo, -np.inf)
        if far.shape[0]:
            best = np.max(norm.pairwise(block, far), axis=1)
        if np.any(near_sel):
            dist = norm.pairwise(block, uniq[near_sel])
            mask = last[near_sel][None, :] > np.arange(lo, hi)[:, None]
            best = np.maximum(best, np.max(np.where(mask, dist, -np.inf), axis=1))
        best[np.isnan(best)] = np.inf
        D[lo:hi] = best
        if stop_at is not None and np.any(~(best < stop_at)):
            break
        hi = lo
    return D


def seq_is_cauchy(seq: SoftVectorSequence, norm: SoftNorm, eps: float, horizon: int) -> Verdict:
    """Smallest ``m`` with ``||v_i - v_j|| < eps`` for all ``m <= i, j <= horizon``."""
    _check(eps, horizon)
    return cauchy_verdict(tail_diameters(seq, norm, horizon, stop_at=eps), eps)


def cauchy_verdict(D: np.ndarray, eps: float) -> Verdict:
    """Cauchy verdict from a (possibly partial) :func:`tail_diameters` profile."""
    horizon = D.size
    bad = np.flatnonzero(~(D < eps) & ~np.isnan(D))
    m = 1 if bad.size == 0 else int(bad[-1]) + 2
    if horizon - m + 1 < _min_window(horizon):
        return NOT_WITHIN_HORIZON
    return Verdict("CAUCHY_AT", m)


def check_convergent_implies_cauchy(seq: SoftVectorSequence, limit: SoftVector, norm: SoftNorm,
                                    eps, horizon: int) -> VerificationReport:
    """Convergence within ``eps/2`` from ``k0`` must give Cauchy within ``eps`` from ``m <= k0``.

    ``eps`` may be a single value or a list; each value is one sample and the
    pairwise scan is shared between them.  Sequences that do not converge
    within the horizon pass vacuously.
    """
    eps_list = [float(e) for e in np.atleast_1d(eps)]
    for e in eps_list:
        _check(e, horizon)
    tally = Tally("convergent-implies-cauchy", len(eps_list), 0.0, 0)
    D = None
    for idx, e in enumerate(eps_list):
        conv = seq_converges_to(seq, limit, norm, e / 2, horizon)
        if not conv.holds:
            continue
        if D is None:
            D = tail_diameters(seq, norm, horizon)
        cauchy = cauchy_verdict(D, e)
        ok = cauchy.holds and cauchy.index <= conv.index
        tally.check("convergent-implies-cauchy", 0.0 if ok else 1.0, index=idx,
                    describe=lambda j, conv=conv, cauchy=cauchy, e=e: {
                        "convergence": conv.to_dict(), "cauchy": cauchy.to_dict(),
                        "eps": e, "horizon": horizon})
    return tally.report()
