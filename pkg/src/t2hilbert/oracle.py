"""Independent brute-force checks.

``invariant_dimension`` counts weight-zero monomials of the cotangent lift by
dynamic programming; ``perturbation_gamma`` evaluates the Laurent-coefficient
formulas at perturbed real matrices in high precision and extrapolates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .weights import WeightMatrix

__all__ = [
    "OracleSeries",
    "invariant_dimension",
    "oracle_series",
    "off_shell_counts",
    "PerturbationEstimate",
    "perturbation_gamma",
    "gamma0_expression",
    "gamma2_first_expression",
]


@dataclass(frozen=True)
class OracleSeries:
    degree: int
    off_shell: tuple[int, ...]
    on_shell: tuple[int, ...]
    truncated: bool = True

    def to_json(self) -> dict:
        return {"degree": self.degree, "off_shell": list(self.off_shell),
                "on_shell": list(self.on_shell), "truncated": self.truncated}


def off_shell_counts(A: WeightMatrix, D: int) -> list[int]:
    """Number of weight-zero monomials of each degree 0..D in x_i, y_i, where
    x_i has weight a_i and y_i has weight -a_i."""
    if D < 0:
        return []
    radius = D * max(1, max(abs(v) for v in A.top + A.bottom))
    size = 2 * radius + 1
    dtype = np.int64 if 2 * A.n + D < 60 else object
    table = np.zeros((D + 1, size, size), dtype=dtype)
    table[0, radius, radius] = 1
    weights = []
    for a, b in A.columns():
        weights += [(a, b), (-a, -b)]
    for a, b in weights:
        # multiply by 1 / (1 - t z^w): table[k] += shift(table[k-1], w)
        src_x = slice(max(0, -a), size - max(0, a))
        dst_x = slice(max(0, a), size - max(0, -a))
        src_y = slice(max(0, -b), size - max(0, b))
        dst_y = slice(max(0, b), size - max(0, -b))
        for k in range(1, D + 1):
            table[k, dst_x, dst_y] += table[k - 1, src_x, src_y]
    return [int(table[k, radius, radius]) for k in range(D + 1)]


def invariant_dimension(A: WeightMatrix, d: int) -> int:
    return off_shell_counts(A, d)[d]


def oracle_series(A: WeightMatrix, D: int) -> OracleSeries:
    off = off_shell_counts(A, D)
    on = []
    for k in range(D + 1):
        v = off[k]
        if k >= 2:
            v -= 2 * off[k - 2]
        if k >= 4:
            v += off[k - 4]
        on.append(v)
    return OracleSeries(D, tuple(off), tuple(on))


# ---------------------------------------------------------------------------
# perturbation estimates
# ---------------------------------------------------------------------------

def _minors(X: Sequence[Sequence]) -> list[list]:
    n = len(X[0])
    return [[X[0][i] * X[1][j] - X[1][i] * X[0][j] for j in range(n)] for i in range(n)]


def _positive_pairs(A: WeightMatrix):
    return [(i, j) for i in range(A.n) for j in range(A.n) if i != j and A.minor(i, j) > 0]


def gamma0_expression(A: WeightMatrix, X) -> mpmath.mpf:
    """Leading-coefficient sum evaluated at the real matrix X (pairs fixed by A)."""
    c = _minors(X)
    n = A.n
    total = mpmath.mpf(0)
    for i, j in _positive_pairs(A):
        den = mpmath.mpf(1)
        for k in range(n):
            if k not in (i, j):
                den *= (c[i][j] - c[i][k] - c[j][k]) * (c[i][j] + c[i][k] + c[j][k])
        total += c[i][j] ** (2 * n - 5) / den
    return total


def gamma2_first_expression(A: WeightMatrix, X) -> mpmath.mpf:
    c = _minors(X)
    n = A.n
    total = mpmath.mpf(0)
    for i, j in _positive_pairs(A):
        den = mpmath.mpf(12)
        for k in range(n):
            if k not in (i, j):
                den *= (c[i][j] - c[i][k] - c[j][k]) * (c[i][j] + c[i][k] + c[j][k])
        sq = sum((c[i][p] + c[j][p]) ** 2 for p in range(n) if p not in (i, j))
        total += -c[i][j] ** (2 * n - 7) * sq / den
    return total


_EXPRESSIONS = {
    "gamma0": gamma0_expression,
    "gamma2_first": gamma2_first_expression,
}


@dataclass(frozen=True)
class PerturbationEstimate:
    value: float
    spread: float
    residual: float
    samples: tuple[float, ...]


def perturbation_gamma(A: WeightMatrix, which: str = "gamma0", eps: float = 1e-3,
                       trials: int = 5, seed: int = 0, digits: int = 60) -> PerturbationEstimate:
    """Limit of a Laurent-coefficient formula as X -> A, estimated numerically.

    Each trial draws r in [-1, 1]^(2 x n), evaluates the formula at
    X = A * (1 + h r) for h = eps, eps/2, eps/4 and applies two rounds of
    Richardson extrapolation.  ``spread`` is the range over trials and
    ``residual`` the largest gap between the last two extrapolation levels.
    """
    expr = _EXPRESSIONS[which]
    rng = random.Random(seed)
    samples, residuals = [], []
    with mpmath.workdps(digits):
        for _ in range(trials):
            r = [[mpmath.mpf(rng.uniform(-1, 1)) for _ in range(A.n)] for _ in range(2)]

            def at(h):
                X = [[a * (1 + h * rr) for a, rr in zip(row, rrow)]
                     for row, rrow in zip(A.rows, r)]
                return expr(A, X)

            h = mpmath.mpf(eps)
            f1, f2, f4 = at(h), at(h / 2), at(h / 4)
            r1, r2 = 2 * f2 - f1, 2 * f4 - f2
            best = (4 * r2 - r1) / 3
            samples.append(float(best))
            residuals.append(float(abs(best - r2)))
    mean = sum(samples) / len(samples)
    return PerturbationEstimate(mean, max(samples) - min(samples), max(residuals), tuple(samples))
