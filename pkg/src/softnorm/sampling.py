"""Seeded samplers of lifted soft vectors for the property suites.

Samples are rows of an array of shape ``(k, n + 1)``; the last column is the
parameter ``e``.  Besides Gaussian draws the samplers plant the zero vector,
signed axis vectors, duplicated pairs and collinear triples, which random
draws would almost never produce.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SoftStructureError

SPECIAL_SCALARS = (0.0, 1.0, -1.0, 2.0, -0.5)
DUPLICATE_EVERY = 7
COLLINEAR_EVERY = 5


@dataclass(frozen=True)
class SoftVectorSampler:
    """I.i.d. normal components times ``radius``, plus planted edge cases.

    ``center`` (a lifted vector) shifts every Gaussian draw, which gives a
    local sampler around a point of interest; planted cases stay unshifted.
    """

    dim: int
    radius: float = 1.0
    special: bool = True
    center: tuple | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise SoftStructureError("sampler dimension must be >= 1")
        if not self.radius > 0:
            raise SoftStructureError("sampler radius must be positive")
        if self.center is not None and len(self.center) != self.dim + 1:
            raise SoftStructureError("center must be a lifted vector of length dim + 1")

    @property
    def lifted_dim(self) -> int:
        return self.dim + 1

    def special_vectors(self) -> np.ndarray:
        d = self.lifted_dim
        eye = np.eye(d) * self.radius
        return np.vstack([np.zeros((1, d)), eye, -eye])

    def vectors(self, rng: np.random.Generator, k: int) -> np.ndarray:
        out = rng.standard_normal((k, self.lifted_dim)) * self.radius
        if self.center is not None:
            out += np.asarray(self.center, dtype=float)
        if self.special:
            sp = self.special_vectors()
            m = min(k, sp.shape[0])
            out[:m] = sp[:m]
        return out

    def nonzero_vectors(self, rng: np.random.Generator, k: int) -> np.ndarray:
        out = self.vectors(rng, k)
        zero = ~np.any(out, axis=1)
        out[zero] = np.eye(self.lifted_dim)[0] * self.radius
        return out

    def scalars(self, rng: np.random.Generator, k: int) -> np.ndarray:
        out = rng.standard_normal(k) * 2.0
        if self.special:
            m = min(k, len(SPECIAL_SCALARS))
            out[:m] = SPECIAL_SCALARS[:m]
        return out

    def pairs(self, rng: np.random.Generator, k: int) -> tuple[np.ndarray, np.ndarray]:
        u = self.vectors(rng, k)
        v = rng.standard_normal((k, self.lifted_dim)) * self.radius
        if self.center is not None:
            v += np.asarray(self.center, dtype=float)
        if self.special:
            dup = np.arange(k) % DUPLICATE_EVERY == 3
            v[dup] = u[dup]
        return u, v

    def triples(self, rng: np.random.Generator, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x, z = self.pairs(rng, k)
        y = rng.standard_normal((k, self.lifted_dim)) * self.radius
        if self.center is not None:
            y += np.asarray(self.center, dtype=float)
        if self.special:
            idx = np.arange(k)
            t = rng.uniform(0.0, 1.0, size=k)[:, None]
            collinear = idx % COLLINEAR_EVERY == 1
            y[collinear] = ((1 - t) * x + t * z)[collinear]
            same = idx % COLLINEAR_EVERY == 2
            y[same] = x[same]
        return x, y, z

    def near_pairs(self, rng: np.random.Generator, k: int, scale: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
        """Distinct pairs separated by roughly ``scale`` (for identity-of-indiscernibles)."""
        u = self.vectors(rng, k)
        delta = rng.standard_normal(u.shape) * scale
        delta[~np.any(delta, axis=1)] = scale
        return u, u + delta
