"""Acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line; the lines are also
collected into the pytest terminal summary.  Run this file directly with
``python tests/test_acceptance.py`` to get just the twelve lines.
"""
import itertools
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

import conftest
from oracles import exact_rank
from softnorm import (
    CanonicalSoftNorm, InducedMetric, ParameterSet, SoftSet, SoftVector, SoftVectorSampler,
    alternating_sequence, check_convergent_implies_cauchy, constant_sequence,
    geometric_sequence, grid_op_norm, harmonic_sequence, lipschitz_continuity_check,
    nilpotent_operator, norm_from_metric, op_norm, op_norm_ratio_check, op_power,
    random_operator, seq_converges_to, ss_from_points, ss_to_points, sv_is_independent,
    verify_bounded, verify_metric_axioms, verify_metric_norm_compatibility,
    verify_norm_axioms, verify_opnorm_axioms, verify_power_bound, verify_submultiplicative,
)
from softnorm.controls import bounded_metric

PS = (1, 2, math.inf)
DIMS = (1, 2, 4, 8)
BIG = 100_000
SV = SoftVector


def _p_name(p):
    return "inf" if math.isinf(p) else str(p)


def _lifted_dims(rng):
    """Random (out_dim, in_dim) with both lifted dimensions at most 3."""
    return int(rng.integers(1, 3)), int(rng.integers(1, 3))


# -- criteria ---------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for p, n in itertools.product(PS, DIMS):
        r = verify_norm_axioms(CanonicalSoftNorm(p), SoftVectorSampler(n), BIG, tol=1e-9)
        worst = max(worst, r.max_violation)
        if not r.passed:
            bad.append((_p_name(p), n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    return ok, f"12 runs x 1e5 samples, failing {bad}, max violation {worst:.2e}, {elapsed:.1f}s"


def criterion_2():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for p, n in itertools.product(PS, DIMS):
        r = verify_metric_axioms(InducedMetric(CanonicalSoftNorm(p)), SoftVectorSampler(n), BIG,
                                 tol=1e-9)
        worst = max(worst, r.max_violation)
        if not r.passed:
            bad.append((_p_name(p), n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    return ok, f"12 runs x 1e5 samples, failing {bad}, max violation {worst:.2e}, {elapsed:.1f}s"


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    for p, n in itertools.product(PS, DIMS):
        metric = InducedMetric(CanonicalSoftNorm(p))
        if not verify_metric_norm_compatibility(metric, SoftVectorSampler(n), BIG,
                                                tol=1e-9).passed:
            bad.append((_p_name(p), n))
    control = verify_metric_norm_compatibility(bounded_metric(InducedMetric(CanonicalSoftNorm(2))),
                                               SoftVectorSampler(2), BIG, tol=1e-9)
    hom = sum(cx["check"] == "homogeneity" for cx in control.counterexamples)
    elapsed = time.perf_counter() - t0
    ok = not bad and hom >= 1 and elapsed < 30
    return ok, (f"induced metrics failing {bad}; bounded control: {control.violations} "
                f"violations, {hom} homogeneity witnesses listed; {elapsed:.1f}s")


def criterion_4():
    rng = np.random.default_rng(4)
    worst = 0.0
    for p in PS:
        norm = CanonicalSoftNorm(p)
        recovered = norm_from_metric(InducedMetric(norm))
        rows = rng.standard_normal((10_000, 4)) * rng.uniform(0.01, 100, (10_000, 1))
        worst = max(worst, float(np.max(np.abs(recovered.evaluate(rows) - norm.evaluate(rows)))))
    return worst <= 1e-12, f"3 x 1e4 points, max |difference| {worst:.2e}"


def criterion_5():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    norm = CanonicalSoftNorm(2)
    worst_rel, ratio_fail, worst_excess = 0.0, 0, 0.0
    for i in range(100):
        m, n = _lifted_dims(rng)
        T = random_operator(rng, m, n)
        est = op_norm(T, norm)
        oracle = grid_op_norm(T, norm, norm, 1e-3)
        worst_rel = max(worst_rel, abs(est.value - oracle.value) / max(oracle.value, 1e-300))
        r = op_norm_ratio_check(T, norm, norm, est, SoftVectorSampler(n), BIG, tol=1e-6, seed=i)
        ratio_fail += not r.passed
        worst_excess = max(worst_excess, r.max_violation)
    elapsed = time.perf_counter() - t0
    ok = worst_rel <= 1e-3 and ratio_fail == 0 and elapsed < 300
    return ok, (f"100 operators, max relative gap to grid {worst_rel:.2e}, "
                f"ratio-check failures {ratio_fail} (max excess {worst_excess:.2e}), "
                f"{elapsed:.1f}s")


def _convergent_sequences(rng, n):
    base, direction = (SV.from_lift(r) for r in rng.standard_normal((2, n + 1)))
    return [constant_sequence(base),
            geometric_sequence(base, direction, float(rng.uniform(-0.9, 0.9))),
            harmonic_sequence(base, direction),
            alternating_sequence(base, SV.from_lift(np.zeros(n + 1)))]


def criterion_6():
    rng = np.random.default_rng(6)
    norm = CanonicalSoftNorm(2)
    bounded_fail = lip_fail = not_converged = 0
    for i in range(20):
        m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        T = random_operator(rng, m, n)
        est = op_norm(T, norm)
        r = verify_bounded(T, est.value, norm, norm, SoftVectorSampler(n), BIG, tol=1e-6, seed=i,
                           witnesses=[est.maximizer])
        bounded_fail += not r.passed
        for seq in _convergent_sequences(rng, n):
            # the input must itself converge, or the image check would be vacuous
            not_converged += not seq_converges_to(seq, seq.declared_limit, norm, 1e-2,
                                                  10_000).holds
            lip = lipschitz_continuity_check(T, norm, norm, seq, tol=1e-6, eps=1e-2,
                                             horizon=10_000, bound=est.value)
            lip_fail += not lip.passed
    ok = bounded_fail == lip_fail == not_converged == 0
    return ok, (f"20 operators: bounded failures {bounded_fail}; 80 sequences: "
                f"Lipschitz/image failures {lip_fail}, inputs not converged {not_converged}")


def criterion_7():
    rng = np.random.default_rng(7)
    ops = []
    for _ in range(200):
        m, n = _lifted_dims(rng)
        ops += [random_operator(rng, m, n), random_operator(rng, m, n)]
    pairs = [(2 * i, 2 * i + 1) for i in range(200)]
    r = verify_opnorm_axioms(ops, CanonicalSoftNorm(2), tol=1e-6, pairs=pairs)
    return r.passed, f"400 operators / 200 pairs, {r.violations} violations, max {r.max_violation:.2e}"


def criterion_8():
    rng = np.random.default_rng(8)
    norm = CanonicalSoftNorm(2)
    sub_fail = 0
    for _ in range(1000):
        m, k, n = (int(x) for x in rng.integers(1, 3, size=3))
        S, T = random_operator(rng, m, k), random_operator(rng, k, n)
        sub_fail += not verify_submultiplicative(S, T, norm, tol=1e-6).passed
    pow_fail = 0
    for _ in range(100):
        T = random_operator(rng, int(rng.integers(1, 3)))
        pow_fail += not verify_power_bound(T, 5, norm, tol=1e-6).passed
    nil_bad = 0
    for n in (1, 2):
        for _ in range(5):
            N = nilpotent_operator(rng, n)
            for k in range(n + 2, n + 5):
                P = op_power(N, k)
                nil_bad += not (P.is_zero() and op_norm(P, norm).value == 0.0)
    ok = sub_fail == pow_fail == nil_bad == 0
    return ok, (f"submultiplicative failures {sub_fail}/1000, power-bound failures "
                f"{pow_fail}/100, nonzero nilpotent powers {nil_bad}/30")


def criterion_9():
    rng = np.random.default_rng(9)
    norm = CanonicalSoftNorm(2)
    fails, vacuous = 0, 0
    kinds = ("constant", "geometric", "harmonic")
    for i in range(100):
        n = int(rng.integers(1, 4))
        base, direction = (SV.from_lift(r) for r in rng.standard_normal((2, n + 1)))
        kind = kinds[i % 3]
        if kind == "constant":
            seq = constant_sequence(base)
        elif kind == "geometric":
            seq = geometric_sequence(base, direction, float(rng.uniform(-0.95, 0.95)))
        else:
            seq = harmonic_sequence(base, direction)
        r = check_convergent_implies_cauchy(seq, seq.declared_limit, norm,
                                            [1e-1, 1e-2, 1e-3], 10_000)
        fails += not r.passed
        vacuous += sum(not seq_converges_to(seq, seq.declared_limit, norm, e / 2, 10_000).holds
                       for e in (1e-1, 1e-2, 1e-3))
    return fails == 0, (f"100 sequences x 3 eps, {fails} failures, "
                        f"{vacuous} eps cases without convergence (vacuous)")


def _independence_instances():
    """All 1-dim instances with up to two vectors, then seeded random draws to 10^4."""
    values = range(-3, 4)
    for k in (1, 2):
        for flat in itertools.product(values, repeat=2 * k):
            yield np.array(flat).reshape(k, 2)
    rng = np.random.default_rng(10)
    count = 49 + 49 ** 2
    while count < 10_000:
        n, k = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        vecs = rng.integers(-3, 4, size=(k, n + 1))
        if k >= 2 and rng.random() < 0.3:
            # plant a dependence: last vector an integer combination of the others
            coef = rng.integers(-1, 2, size=k - 1)
            vecs[-1] = np.clip(coef @ vecs[:-1], -3, 3)
        yield vecs
        count += 1


def criterion_10():
    disagree, total, dependent = 0, 0, 0
    for rows in _independence_instances():
        vecs = [SV.from_lift(r) for r in rows]
        exact = exact_rank([list(map(int, r)) for r in rows]) == len(rows)
        dependent += not exact
        disagree += sv_is_independent(vecs) != exact
        total += 1
    return disagree == 0, f"{total} instances ({dependent} dependent), {disagree} disagreements"


def _soft_set_cases():
    pool, labels = ("x", "y", "z"), ("a", "b")
    for u in range(len(pool) + 1):
        for universe in itertools.combinations(pool, u):
            subsets = [frozenset(c) for k in range(u + 1)
                       for c in itertools.combinations(universe, k)]
            for e in (1, 2):
                for params in itertools.combinations(labels, e):
                    E = ParameterSet(params)
                    for choice in itertools.product(subsets, repeat=e):
                        yield SoftSet(E, frozenset(universe), dict(zip(params, choice)))


def criterion_11():
    total = failures = 0
    for s in _soft_set_cases():
        total += 1
        failures += ss_from_points(ss_to_points(s), s.params, s.universe) != s
    return failures == 0, f"{total} soft sets enumerated, {failures} round-trip failures"


def _cli(tmp, *argv):
    out = tmp / "out.json"
    proc = subprocess.run([sys.executable, "-m", "softnorm", *argv, "--out", str(out)],
                          capture_output=True, text=True)
    return proc.returncode, out.read_bytes() if out.exists() else b""


def criterion_12(tmp):
    files = {
        "op": {"A": [[1, 0], [0, 0]], "b": [0, 0], "c": [0, 0], "lam": 0},
        "vecs": [{"x": [1, 0], "e": 0}, {"x": [0, 1], "e": 0}, {"x": [1, 1], "e": 1}],
        "seq": {"kind": "harmonic", "base": {"x": [0, 0], "e": 0},
                "direction": {"x": [1, 0], "e": 1}},
    }
    paths = {}
    for name, obj in files.items():
        paths[name] = tmp / f"{name}.json"
        paths[name].write_text(json.dumps(obj))
    bad = tmp / "bad.json"
    bad.write_text("{oops")
    commands = [
        ["verify", "--norm", "canonical", "--samples", "5000", "--seed", "3"],
        ["verify", "--operator", str(paths["op"]), "--samples", "2000", "--seed", "3"],
        ["opnorm", str(paths["op"]), "--oracle", "--seed", "3"],
        ["indep", str(paths["vecs"])],
        ["sequence", str(paths["seq"]), "--eps", "0.01", "--horizon", "1000"],
    ]
    nondeterministic = []
    for argv in commands:
        (c1, o1), (c2, o2) = _cli(tmp, *argv), _cli(tmp, *argv)
        if c1 != c2 or o1 != o2 or not o1:
            nondeterministic.append(argv[0])
    codes = (_cli(tmp, "verify", "--norm", "canonical", "--samples", "1000")[0],
             _cli(tmp, "verify", "--norm", "squared", "--samples", "1000")[0],
             _cli(tmp, "opnorm", str(bad))[0])
    ok = not nondeterministic and codes == (0, 1, 2)
    return ok, (f"{len(commands)} commands run twice, non-identical {nondeterministic}; "
                f"exit codes pass/control/malformed = {codes}")


TITLES = {
    1: "norm axioms", 2: "metric axioms", 3: "norm-metric compatibility",
    4: "norm-metric round trip", 5: "operator norm estimate", 6: "boundedness and continuity",
    7: "operator norm axioms", 8: "submultiplicativity and powers",
    9: "convergent implies Cauchy", 10: "independence oracle", 11: "soft point round trip",
    12: "CLI determinism and exit codes",
}


def _line(n, ok, detail):
    return f"criterion {n:2d} {'PASS' if ok else 'FAIL'} {TITLES[n]}: {detail}"


def _record(n, ok, detail):
    line = _line(n, ok, detail)
    conftest.ACCEPTANCE_LINES.append((n, line))
    print(line)
    assert ok, line


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n):
    _record(n, *globals()[f"criterion_{n}"]())


@pytest.mark.slow
def test_criterion_12(tmp_path):
    _record(12, *criterion_12(tmp_path))


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    results = []
    for n in range(1, 13):
        if n == 12:
            with tempfile.TemporaryDirectory() as d:
                ok, detail = criterion_12(Path(d))
        else:
            ok, detail = globals()[f"criterion_{n}"]()
        print(_line(n, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
