import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from softnorm import (
    CanonicalSoftNorm, SoftStructureError, SoftVector, SoftVectorSequence, alternating_sequence,
    check_convergent_implies_cauchy, constant_sequence, geometric_sequence, harmonic_sequence,
    seq_converges_to, seq_is_cauchy, sequence_from_spec, sv_zero,
)
from softnorm.sequences import tail_diameters

SV = SoftVector
CANON = CanonicalSoftNorm(2)


def naive_cauchy_index(rows, eps):
    """Brute-force smallest m with every pair in m..horizon closer than eps."""
    horizon = len(rows)
    dist = np.array([[CANON(SV.from_lift(a - b)) for b in rows] for a in rows])
    for m in range(1, horizon):
        if np.all(dist[m - 1:, m - 1:] < eps):
            return m
    return None


def test_convergence_examples():
    v = SV([1, -1], 3)
    assert seq_converges_to(constant_sequence(v), v, CANON, 0.01, 1000).index == 1
    harm = harmonic_sequence(sv_zero(2), SV([1, 0], 1))
    verdict = seq_converges_to(harm, sv_zero(2), CANON, 0.01, 1000)
    # ||v_k|| = 2/k < 0.01 exactly when k > 200
    assert verdict.kind == "CONVERGED_AT" and verdict.index == 201
    alt = alternating_sequence(sv_zero(2), SV([1, 0], 0))
    assert not seq_converges_to(alt, sv_zero(2), CANON, 0.5, 1000).holds


def test_eps_comparison_is_strict():
    seq = constant_sequence(SV([1], 0))
    assert not seq_converges_to(seq, sv_zero(1), CANON, 1.0, 10).holds
    assert seq_converges_to(seq, sv_zero(1), CANON, 1.0000001, 10).holds


def test_cauchy_examples():
    assert seq_is_cauchy(constant_sequence(SV([2], 1)), CANON, 0.01, 100).index == 1
    harm = harmonic_sequence(sv_zero(2), SV([1, 0], 0))
    verdict = seq_is_cauchy(harm, CANON, 0.01, 1000)
    # max pair distance from i on is 1/i - 1/1000 < 0.01 exactly when i >= 91
    assert verdict.kind == "CAUCHY_AT" and verdict.index == 91 <= 101
    linear = SoftVectorSequence(lambda k: SV([k, 0], 0), 2)
    assert not seq_is_cauchy(linear, CANON, 0.5, 1000).holds


def test_cauchy_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(20):
        base, direction = (SV.from_lift(r) for r in rng.standard_normal((2, 3)))
        seq = geometric_sequence(base, direction, float(rng.uniform(-0.95, 0.95)))
        eps = float(rng.choice([0.5, 0.1, 0.01]))
        verdict = seq_is_cauchy(seq, CANON, eps, 80)
        assert verdict.index == naive_cauchy_index(seq.lifted(80), eps)


def test_tail_diameters_match_brute_force():
    seq = alternating_sequence(SV([1, 0], 0), SV([0, 1], 2))
    rows = seq.lifted(200)
    D = tail_diameters(seq, CANON, 200)
    for i in (0, 63, 64, 150, 198, 199):
        expected = max((CANON(SV.from_lift(rows[i] - rows[j])) for j in range(i + 1, 200)),
                       default=0.0)
        assert D[i] == pytest.approx(expected, rel=1e-15)


def test_window_needs_two_indices():
    seq = SoftVectorSequence(lambda k: SV([float(k)], 0), 1)
    assert not seq_converges_to(seq, SV([10.0], 0), CANON, 0.5, 10).holds
    assert not seq_is_cauchy(seq, CANON, 0.5, 10).holds
    single = constant_sequence(SV([1.0], 0))
    assert seq_is_cauchy(single, CANON, 0.5, 1).index == 1


def test_implication_examples():
    harm = harmonic_sequence(sv_zero(2), SV([1, 0], 1))
    assert check_convergent_implies_cauchy(harm, sv_zero(2), CANON, 0.01, 1000).passed
    v = SV([1, 2], 3)
    assert check_convergent_implies_cauchy(constant_sequence(v), v, CANON, 0.01, 100).passed
    alt = alternating_sequence(sv_zero(2), SV([1, 0], 0))
    report = check_convergent_implies_cauchy(alt, sv_zero(2), CANON, 0.01, 100)
    assert report.passed and report.samples == 1


def test_implication_reports_wrong_limit_as_vacuous():
    harm = harmonic_sequence(sv_zero(1), SV([1], 0))
    report = check_convergent_implies_cauchy(harm, SV([5], 0), CANON, [0.1, 0.01], 500)
    assert report.passed


def test_monotone_in_horizon():
    harm = harmonic_sequence(SV([1, 1], 0), SV([1, -1], 2))
    limit = SV([1, 1], 0)
    previous = None
    for horizon in (300, 600, 1200, 2400):
        verdict = seq_converges_to(harm, limit, CANON, 0.02, horizon)
        assert verdict.holds
        if previous is not None:
            assert verdict.index == previous.index
        previous = verdict


def test_deterministic():
    seq = geometric_sequence(SV([1, 2], 0), SV([3, 0], 1), -0.7)
    assert seq_is_cauchy(seq, CANON, 0.01, 500) == seq_is_cauchy(seq, CANON, 0.01, 500)


def test_sequence_specs():
    base = {"x": [1, 2], "e": 0}
    seq = sequence_from_spec({"kind": "geometric", "base": base,
                              "direction": {"x": [1, 0], "e": 1}, "rho": 0.5})
    assert seq(1) == SV([1.5, 2], 0.5)
    assert seq.declared_limit == SV([1, 2], 0)
    assert sequence_from_spec({"kind": "constant", "base": base})(7) == SV([1, 2], 0)
    for bad in ({"kind": "spiral", "base": base}, {"kind": "harmonic", "base": base},
                {"kind": "geometric", "base": base, "direction": base, "rho": 1.5},
                {"base": base}):
        with pytest.raises(SoftStructureError):
            sequence_from_spec(bad)


def test_batch_agrees_with_generator():
    rng = np.random.default_rng(1)
    base, direction = (SV.from_lift(r) for r in rng.standard_normal((2, 3)))
    for seq in (geometric_sequence(base, direction, 0.3), harmonic_sequence(base, direction),
                alternating_sequence(base, direction), constant_sequence(base)):
        rows = seq.lifted(30)
        for k in (1, 2, 17, 30):
            np.testing.assert_allclose(rows[k - 1], seq(k).lift(), rtol=1e-15, atol=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.99, 0.99), st.sampled_from([0.1, 0.01, 0.001]),
       st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_convergence_at_half_eps_gives_cauchy(rho, eps, coords):
    seq = geometric_sequence(SV(coords[:1], coords[1]), SV(coords[2:3], coords[3]), rho)
    conv = seq_converges_to(seq, seq.declared_limit, CANON, eps / 2, 400)
    if conv.holds:
        cauchy = seq_is_cauchy(seq, CANON, eps, 400)
        assert cauchy.holds and cauchy.index <= conv.index
