"""Independent reference computations used to freeze expected values.

Nothing here imports the package's numerical routines.
"""
from fractions import Fraction
import math

import numpy as np


def exact_rank(columns):
    """Rank of a matrix given as a list of integer/rational columns (Gaussian elimination over Q)."""
    if not columns:
        return 0
    rows = [[Fraction(col[i]) for col in columns] for i in range(len(columns[0]))]
    rank = 0
    ncols = len(columns)
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def exact_solve_in_span(columns, target):
    """Whether ``target`` is a rational combination of ``columns``."""
    return exact_rank(columns) == exact_rank(list(columns) + [target])


def canonical_norm_p2(x, e):
    return abs(e) + math.sqrt(sum(v * v for v in x))


def canonical_opnorm_p2(M, n_angles=200_000):
    """Operator norm of a lifted matrix for |e| + ||x||_2 on both sides.

    The unit ball of |e| + ||x||_2 is the convex hull of (0, +-1) and the unit
    sphere of x with e = 0, and the ratio's supremum is a maximum of a convex
    function over that ball, so it is attained at one of those extreme points.
    For n <= 2 the x-sphere is swept by angle.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[1] - 1

    def out_norm(rows):
        return np.abs(rows[:, -1]) + np.sqrt(np.sum(rows[:, :-1] ** 2, axis=1))

    pole = np.zeros((1, n + 1))
    pole[0, -1] = 1.0
    best = out_norm(pole @ M.T)[0]
    if n == 1:
        xs = np.array([[1.0, 0.0]])
    elif n == 2:
        t = np.linspace(0.0, math.pi, n_angles, endpoint=False)
        xs = np.column_stack([np.cos(t), np.sin(t), np.zeros_like(t)])
    else:
        raise ValueError("oracle sweeps n <= 2 only")
    return max(best, float(np.max(out_norm(xs @ M.T))))
