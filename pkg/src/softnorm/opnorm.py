"""Operator norm estimation and the operator-norm theorem suites.

The norm of a soft linear operator is the supremum of ``||T v|| / ||v||``
over nonzero ``v``.  The ratio is invariant under positive scaling and, for
norms satisfying absolute homogeneity, under ``v -> -v``, so it is enough to
search directions on a half sphere of the lifted space.

Two estimators are provided:

* ``grid``: exhaustive latitude/longitude grid of directions (lifted dimension
  2 or 3 only).  The parameter axis is the pole, so the equator ``e = 0`` and
  the poles ``x = 0`` are hit exactly; for the canonical norms these are where
  maximisers live.
* ``multistart``: compass-and-random hill climbing from the best points of a
  coarse grid plus random starts, with geometric step decay.

Both return lower bounds of the supremum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from .core import SoftStructureError
from .norms import SoftNorm
from .operators import SoftLinearOperator, op_add, op_compose, op_power, op_scale
from .report import Tally, VerificationReport, suite_rng
from .sampling import SoftVectorSampler
from .sequences import SoftVectorSequence, seq_converges_to
from .vectors import SoftVector

GRID_CHUNK = 400_000
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OpNormConfig:
    method: str = "multistart"
    grid_resolution: float = 1e-3
    seed_resolution: float = 0.05
    starts: int = 16
    iterations: int = 200
    step: float = 0.1
    decay: float = 0.5
    step_floor: float = 1e-7
    random_directions: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("multistart", "grid"):
            raise SoftStructureError(f"unknown method {self.method!r}")
        if self.starts < 1 or self.iterations < 1 or self.random_directions < 0:
            raise SoftStructureError("starts and iterations must be >= 1")
        if not (0 < self.grid_resolution < 1 and 0 < self.seed_resolution < 1):
            raise SoftStructureError("grid resolutions must lie in (0, 1)")
        if not (self.step > 0 and 0 < self.decay < 1 and 0 < self.step_floor <= self.step):
            raise SoftStructureError("invalid step schedule")

    def escalated(self, factor: int = 2) -> OpNormConfig:
        return replace(self, starts=self.starts * factor, iterations=self.iterations * factor)


@dataclass(frozen=True)
class OpNormResult:
    value: float
    maximizer: SoftVector
    method: str
    iterations: int
    certificate_gap: float | None = None

    def to_dict(self) -> dict:
        gap = self.certificate_gap
        return {"value": float(self.value), "maximizer": self.maximizer.to_dict(),
                "method": self.method, "iterations": int(self.iterations),
                "certificate_gap": None if gap is None else float(gap)}


def _ratios(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
            rows: np.ndarray) -> np.ndarray:
    num = norm_out.evaluate(T.apply_lifted(rows))
    den = norm_in.evaluate(rows)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    return np.where(np.isfinite(out), out, -np.inf)


def _snap(dirs: np.ndarray) -> np.ndarray:
    # cos(pi/2) and friends leave ~1e-16 residue; keep axis directions exact
    dirs[np.abs(dirs) < 1e-15] = 0.0
    return dirs


def half_sphere_grid(d: int, resolution: float):
    """Yield chunks of unit directions covering the half sphere ``e >= 0``.

    Every point of the half sphere is within ``resolution`` radians of a grid
    direction.  The last coordinate is the parameter.
    """
    if d == 2:
        count = int(math.ceil(math.pi / resolution))
        count += count % 2  # keeps theta = pi/2, the pole, on the grid
        theta = math.pi * np.arange(count) / count
        yield _snap(np.column_stack([np.cos(theta), np.sin(theta)]))
        return
    if d != 3:
        raise SoftStructureError("grid covers lifted dimensions 2 and 3 only")
    rings = int(math.ceil((math.pi / 2) / resolution))
    phis = np.linspace(0.0, math.pi / 2, rings + 1)
    buf: list[np.ndarray] = []
    size = 0
    for phi in phis:
        count = max(4, 4 * int(math.ceil(2 * math.pi * math.cos(phi) / resolution / 4)))
        if phi == phis[-1]:
            count = 1
        theta = 2 * math.pi * np.arange(count) / count
        cphi = math.cos(phi)
        ring = np.column_stack([cphi * np.cos(theta), cphi * np.sin(theta),
                                np.full(count, math.sin(phi))])
        buf.append(_snap(ring))
        size += count
        if size >= GRID_CHUNK:
            yield np.vstack(buf)
            buf, size = [], 0
    if buf:
        yield np.vstack(buf)


def _finish(T, norm_in, norm_out, direction, method, iterations, gap=None) -> OpNormResult:
    direction = np.asarray(direction, dtype=float)
    scale = float(norm_in.evaluate(direction)[0])
    unit = SoftVector.from_lift(direction / scale)
    value = float(norm_out.evaluate(T.apply_lifted(unit.lift()))[0])
    return OpNormResult(value, unit, method, iterations, gap)


def _check_dims(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm) -> None:
    if norm_in.dim is not None and norm_in.dim != T.in_dim:
        raise SoftStructureError("input norm dimension does not match the operator")
    if norm_out.dim is not None and norm_out.dim != T.out_dim:
        raise SoftStructureError("output norm dimension does not match the operator")


def grid_op_norm(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
                 resolution: float = 1e-3) -> OpNormResult:
    """Brute-force maximum of the norm ratio over a direction grid."""
    _check_dims(T, norm_in, norm_out)
    d = T.in_dim + 1
    best_val, best_dir, evaluated = -np.inf, None, 0
    for chunk in half_sphere_grid(d, resolution):
        vals = _ratios(T, norm_in, norm_out, chunk)
        evaluated += chunk.shape[0]
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val, best_dir = vals[j], chunk[j]
    return _finish(T, norm_in, norm_out, best_dir, "grid", evaluated)


def _compass_directions(d: int) -> np.ndarray:
    eye = np.eye(d)
    dirs = [eye, -eye]
    for i, j in combinations(range(d), 2):
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                v = np.zeros(d)
                v[i], v[j] = si, sj
                dirs.append(v[None, :] / math.sqrt(2))
    return np.vstack(dirs)


def _seed_directions(d: int, resolution: float) -> np.ndarray:
    if d <= 3:
        return np.vstack(list(half_sphere_grid(d, resolution)))
    return _compass_directions(d)


def _lex_smaller(a: np.ndarray, b: np.ndarray) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return False


def multistart_op_norm(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
                       cfg: OpNormConfig = OpNormConfig(), extra_starts=None) -> OpNormResult:
    """Multi-start derivative-free ascent of the norm ratio.

    Start ``i`` draws its random trial directions from its own stream
    ``(cfg.seed, i)``, so raising ``starts`` or ``iterations`` never lowers
    the estimate.  ``extra_starts`` (lifted rows or soft vectors) are added as
    further starting points.
    """
    _check_dims(T, norm_in, norm_out)
    d = T.in_dim + 1
    seeds = _seed_directions(d, cfg.seed_resolution)
    seed_vals = _ratios(T, norm_in, norm_out, seeds)
    n_grid = min((cfg.starts + 1) // 2, seeds.shape[0])
    order = np.argsort(-seed_vals, kind="stable")[:n_grid]
    starts = [seeds[order]]
    for i in range(n_grid, cfg.starts):
        starts.append(np.random.default_rng([cfg.seed, i]).standard_normal((1, d)))
    if extra_starts is not None:
        extra = [s.lift() if isinstance(s, SoftVector) else np.asarray(s, float)
                 for s in extra_starts]
        if extra:
            starts.append(np.atleast_2d(np.vstack(extra)))
    V = np.vstack(starts)
    n_starts = V.shape[0]
    V = V / norm_in.evaluate(V)[:, None]
    F = _ratios(T, norm_in, norm_out, V)

    compass = _compass_directions(d)
    R = cfg.random_directions
    noise = np.empty((n_starts, cfg.iterations, R, d))
    for i in range(n_starts):
        noise[i] = np.random.default_rng([cfg.seed, i, 1]).standard_normal((cfg.iterations, R, d))
    if R:
        noise /= np.linalg.norm(noise, axis=-1, keepdims=True)

    H = np.full(n_starts, cfg.step)
    total = 0
    for t in range(cfg.iterations):
        active = np.flatnonzero(H >= cfg.step_floor)
        if active.size == 0:
            break
        total += active.size
        trial = np.concatenate(
            [np.broadcast_to(compass, (active.size,) + compass.shape), noise[active, t]], axis=1)
        cand = V[active, None, :] + H[active, None, None] * trial
        k = cand.shape[1]
        vals = _ratios(T, norm_in, norm_out, cand.reshape(-1, d)).reshape(active.size, k)
        best = np.argmax(vals, axis=1)
        best_vals = vals[np.arange(active.size), best]
        better = best_vals > F[active]
        up = active[better]
        if up.size:
            moved = cand[better, best[better]]
            V[up] = moved / norm_in.evaluate(moved)[:, None]
            F[up] = best_vals[better]
        H[active[~better]] *= cfg.decay

    top = np.max(F)
    winner = None
    for i in range(n_starts):
        if F[i] >= top - TIE_TOL * max(1.0, abs(top)):
            if winner is None or _lex_smaller(V[i], V[winner]):
                winner = i
    return _finish(T, norm_in, norm_out, V[winner], "multistart", total)


def op_norm(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm | None = None,
            cfg: OpNormConfig = OpNormConfig(), extra_starts=None) -> OpNormResult:
    """Estimate ``||T||``; a lower bound of the true supremum."""
    norm_out = norm_in if norm_out is None else norm_out
    if cfg.method == "grid":
        if T.in_dim + 1 > 3:
            raise SoftStructureError("grid method needs lifted input dimension <= 3")
        return grid_op_norm(T, norm_in, norm_out, cfg.grid_resolution)
    return multistart_op_norm(T, norm_in, norm_out, cfg, extra_starts)


def certified_op_norm(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm | None = None,
                      cfg: OpNormConfig = OpNormConfig(), oracle_resolution: float = 1e-3
                      ) -> OpNormResult:
    """Multistart estimate with ``certificate_gap = oracle - estimate`` from the grid."""
    norm_out = norm_in if norm_out is None else norm_out
    est = multistart_op_norm(T, norm_in, norm_out, cfg)
    if T.in_dim + 1 > 3:
        return est
    oracle = grid_op_norm(T, norm_in, norm_out, oracle_resolution)
    return replace(est, certificate_gap=oracle.value - est.value)


# -- suites --------------------------------------------------------------------------

def op_norm_ratio_check(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
                        result: OpNormResult, sampler: SoftVectorSampler, n_samples: int,
                        tol: float = 1e-6, seed: int = 0) -> VerificationReport:
    """No sampled ratio may beat the estimate, and the maximiser must attain it."""
    suite = "opnorm-ratio"
    rng = suite_rng(seed, suite)
    V = sampler.nonzero_vectors(rng, n_samples)
    tally = Tally(suite, n_samples, tol, seed)
    ratios = _ratios(T, norm_in, norm_out, V)
    tally.check("sup-bound", ratios - result.value,
                describe=lambda j: {"v": SoftVector.from_lift(V[j]).to_dict(),
                                    "ratio": float(ratios[j]), "estimate": result.value})
    at_max = _ratios(T, norm_in, norm_out, result.maximizer.lift()[None, :])
    tally.check("maximizer-attains", np.abs(at_max - result.value), index=0,
                describe=lambda j: {"ratio": float(at_max[0]), "estimate": result.value})
    return tally.report()


def escalate_op_norm(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
                     sampler: SoftVectorSampler, n_samples: int, tol: float = 1e-6,
                     cfg: OpNormConfig = OpNormConfig(), seed: int = 0, max_rounds: int = 4
                     ) -> tuple[OpNormResult, VerificationReport]:
    """Re-run the estimator with more effort until the ratio check passes.

    Every sample that beat the previous estimate becomes an extra start, so
    the next estimate is at least as large as any ratio seen so far.
    """
    result = op_norm(T, norm_in, norm_out, cfg)
    report = op_norm_ratio_check(T, norm_in, norm_out, result, sampler, n_samples, tol, seed)
    extra: list = []
    for _ in range(max_rounds):
        if report.passed:
            break
        extra += [SoftVector.from_dict(cx["v"]) for cx in report.counterexamples if "v" in cx]
        cfg = cfg.escalated()
        result = multistart_op_norm(T, norm_in, norm_out, cfg, extra_starts=extra)
        report = op_norm_ratio_check(T, norm_in, norm_out, result, sampler, n_samples, tol, seed)
    return result, report


def _rel_excess(left: float, right: float) -> float:
    if right > 0:
        return (left - right) / right
    return 0.0 if left <= 0 else math.inf


def verify_opnorm_axioms(ops, norm: SoftNorm, cfg: OpNormConfig = OpNormConfig(),
                         tol: float = 1e-6, scalars=(-2.0, -1.0, 0.5, 3.0),
                         pairs=None) -> VerificationReport:
    """Estimated operator norms against nonnegativity, definiteness, scaling and triangle.

    ``pairs`` lists index pairs of same-shape operators for the triangle check;
    by default every same-shape pair is used.
    """
    suite = "opnorm-axioms"
    ops = list(ops)
    values = [op_norm(T, norm, norm, cfg).value for T in ops]
    if pairs is None:
        pairs = [(i, j) for i, j in combinations(range(len(ops)), 2)
                 if (ops[i].in_dim, ops[i].out_dim) == (ops[j].in_dim, ops[j].out_dim)]
    tally = Tally(suite, len(ops), tol, cfg.seed)
    vals = np.array(values)
    tally.check("N1-nonnegative", -vals, describe=lambda j: {"operator": ops[j].to_dict()})
    zero_flags = np.array([T.is_zero() for T in ops])
    # a zero operator needs norm <= tol; a nonzero one needs norm > tol
    definite = np.where(zero_flags, vals, np.where(vals > tol, 0.0, 2 * tol))
    tally.check("N1-definite", definite, describe=lambda j: {"operator": ops[j].to_dict()})
    for r in scalars:
        scaled = np.array([op_norm(op_scale(r, T), norm, norm, cfg).value for T in ops])
        tally.check(f"N2-scale[{r:g}]", np.abs(scaled - abs(r) * vals), 1.0 + vals,
                    describe=lambda j, r=r, scaled=scaled: {
                        "operator": ops[j].to_dict(), "r": r, "scaled_norm": float(scaled[j])})
    if pairs:
        sums = np.array([op_norm(op_add(ops[i], ops[j]), norm, norm, cfg).value
                         for i, j in pairs])
        lhs_i = np.array([i for i, _ in pairs])
        rhs = np.array([vals[i] + vals[j] for i, j in pairs])
        tally.check("N3-triangle", sums - rhs, index=lhs_i,
                    describe=lambda k: {"pair": list(pairs[k]), "sum_norm": float(sums[k]),
                                        "bound": float(rhs[k])})
    return tally.report()


def _stable_norm(T, norm, cfg, tol, rounds: int = 3) -> float:
    """Escalate effort until the estimate stops moving (relative ``tol``)."""
    value = op_norm(T, norm, norm, cfg).value
    for _ in range(rounds):
        cfg = cfg.escalated()
        new = op_norm(T, norm, norm, cfg).value
        moved = new - value
        value = max(value, new)
        if moved <= tol * max(value, 1e-300):
            break
    return value


def verify_submultiplicative(S: SoftLinearOperator, T: SoftLinearOperator, norm: SoftNorm,
                             cfg: OpNormConfig = OpNormConfig(), tol: float = 1e-6
                             ) -> VerificationReport:
    """``||S o T|| <= ||S|| ||T||`` with the composed norm estimated directly."""
    tally = Tally("submultiplicative", 1, tol, cfg.seed)
    left = _stable_norm(op_compose(S, T), norm, cfg, tol)
    right = op_norm(S, norm, norm, cfg).value * op_norm(T, norm, norm, cfg).value
    tally.check("submultiplicative", _rel_excess(left, right),
                describe=lambda j: {"composed_norm": left, "product_bound": right})
    return tally.report()


def verify_power_bound(T: SoftLinearOperator, n_max: int, norm: SoftNorm,
                       cfg: OpNormConfig = OpNormConfig(), tol: float = 1e-6
                       ) -> VerificationReport:
    """``||T^k|| <= ||T||^k`` for ``k = 2 .. n_max``."""
    if n_max < 2:
        raise SoftStructureError("n_max must be >= 2")
    base = op_norm(T, norm, norm, cfg).value
    ks = list(range(2, n_max + 1))
    lefts = [_stable_norm(op_power(T, k), norm, cfg, tol) for k in ks]
    tally = Tally("power-bound", len(ks), tol, cfg.seed)
    excess = [_rel_excess(left, base ** k) for left, k in zip(lefts, ks)]
    tally.check("power-bound", excess,
                describe=lambda j: {"k": ks[j], "power_norm": lefts[j], "bound": base ** ks[j]})
    return tally.report()


def lipschitz_continuity_check(T: SoftLinearOperator, norm_in: SoftNorm, norm_out: SoftNorm,
                               seq: SoftVectorSequence, tol: float = 1e-6, eps: float = 1e-2,
                               horizon: int = 1000, bound: float | None = None,
                               cfg: OpNormConfig = OpNormConfig()) -> VerificationReport:
    """Images of a convergent sequence stay Lipschitz-close and converge.

    Checks ``||T v_k - T v_0|| <= ||T|| ||v_k - v_0|| + tol`` along the
    sequence, and that when the sequence gets within ``eps`` of its limit by
    index ``k0``, the image gets within ``eps * (||T|| + 1)`` of ``T v_0`` no
    later than ``k0``.
    """
    if seq.declared_limit is None:
        raise SoftStructureError("sequence has no declared limit")
    if bound is None:
        bound = op_norm(T, norm_in, norm_out, cfg).value
    limit = seq.declared_limit
    L = seq.lifted(horizon)
    diffs = L - limit.lift()
    lhs = norm_out.evaluate(T.apply_lifted(diffs))
    rhs = bound * norm_in.evaluate(diffs)
    tally = Tally("lipschitz-continuity", horizon, tol, 0)
    tally.check("lipschitz", lhs - rhs, index=np.arange(1, horizon + 1),
                describe=lambda j: {"k": j + 1, "image_distance": float(lhs[j]),
                                    "bound": float(rhs[j])})

    verdict = seq_converges_to(seq, limit, norm_in, eps, horizon)
    if verdict.holds:
        image = seq.map(T)
        img_verdict = seq_converges_to(image, T(limit), norm_out, eps * (bound + 1.0), horizon)
        ok = img_verdict.holds and img_verdict.index <= verdict.index
        tally.check("image-converges", 0.0 if ok else 1.0, index=0,
                    describe=lambda j: {"input": verdict.to_dict(), "image": img_verdict.to_dict()})
    return tally.report()

