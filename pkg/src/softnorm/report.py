"""Verification reports shared by every axiom and theorem suite."""
from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

MAX_COUNTEREXAMPLES = 10


def _finite_or_none(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return _finite_or_none(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


@dataclass
class VerificationReport:
    """Outcome of a property suite.

    ``max_violation`` is the largest excess over all checks, each excess
    already divided by the scale its tolerance is relative to, and floored at
    zero.  A check fails when its scaled excess exceeds ``tolerance``, so
    ``violations == 0`` exactly when ``max_violation <= tolerance``.
    """

    suite: str
    samples: int
    violations: int
    max_violation: float
    tolerance: float
    seed: int
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return _clean({
            "suite": self.suite,
            "samples": int(self.samples),
            "violations": int(self.violations),
            "max_violation": float(self.max_violation),
            "tolerance": float(self.tolerance),
            "seed": int(self.seed),
            "counterexamples": list(self.counterexamples[:MAX_COUNTEREXAMPLES]),
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (f"[{status}] {self.suite}: {self.samples} samples, "
                f"{self.violations} violations, max violation {self.max_violation:.3g} "
                f"(tol {self.tolerance:g}, seed {self.seed})")
        for cx in self.counterexamples[:3]:
            line += f"\n    {cx.get('check', '?')} at sample {cx.get('index', '?')}"
        return line


REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "samples", "violations", "max_violation", "tolerance",
                 "seed", "counterexamples"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "samples": {"type": "integer", "minimum": 0},
        "violations": {"type": "integer", "minimum": 0},
        "max_violation": {"type": ["number", "null"]},
        "tolerance": {"type": "number"},
        "seed": {"type": "integer"},
        "counterexamples": {"type": "array", "maxItems": MAX_COUNTEREXAMPLES},
    },
}


def suite_rng(seed: int, suite: str) -> np.random.Generator:
    """Generator for one suite, derived from the run seed and the suite name."""
    return np.random.default_rng([int(seed), zlib.crc32(suite.encode())])


class Tally:
    """Accumulates vectorised checks into a :class:`VerificationReport`."""

    def __init__(self, suite: str, samples: int, tol: float, seed: int = 0):
        self.suite = suite
        self.samples = int(samples)
        self.tol = float(tol)
        self.seed = int(seed)
        self.violations = 0
        self.max_violation = 0.0
        self._failures: list[tuple[int, int, dict]] = []
        self._order = 0

    def check(self, name: str, excess, scale=1.0,
              describe: Callable[[int], dict] | None = None,
              index=None) -> None:
        """Record ``excess / scale`` per sample; NaN counts as an infinite excess."""
        excess = np.atleast_1d(np.asarray(excess, dtype=float))
        scaled = excess / np.broadcast_to(np.asarray(scale, dtype=float), excess.shape)
        scaled = np.where(np.isnan(scaled), np.inf, scaled)
        if index is None:
            index = np.arange(scaled.size)
        index = np.broadcast_to(np.asarray(index), scaled.shape)
        if scaled.size:
            self.max_violation = max(self.max_violation, float(np.max(scaled)))
        bad = np.flatnonzero(scaled > self.tol)
        self.violations += bad.size
        order = self._order
        self._order += 1
        for j in bad[:MAX_COUNTEREXAMPLES]:
            entry = {"check": name, "index": int(index[j]), "excess": float(scaled[j])}
            if describe is not None:
                entry.update(describe(int(j)))
            self._failures.append((int(index[j]), order, entry))

    def report(self) -> VerificationReport:
        self._failures.sort(key=lambda t: (t[0], t[1]))
        return VerificationReport(
            suite=self.suite, samples=self.samples, violations=self.violations,
            max_violation=max(self.max_violation, 0.0), tolerance=self.tol,
            seed=self.seed,
            counterexamples=[f[2] for f in self._failures[:MAX_COUNTEREXAMPLES]])
