"""Independent verification engines: matrix exponentials, Monte-Carlo covariance
estimation and grid-scan root bracketing.

These deliberately avoid the closed-form code paths they are used to check.
The random number stream is a Philox counter-based generator with Gaussian
variates from the Box-Muller pair transform, so estimates are reproducible
bit-for-bit across platforms for a given seed; sample batches are keyed by
(seed, batch index), which partitions the counter space deterministically.
"""

from __future__ import annotations

import warnings

import numpy as np

from .gaussian import QuadratureMap

__all__ = ["matexp", "mc_covariance", "bracket_roots"]

#: accuracy of matexp is only validated for ||A t|| up to this norm
MATEXP_NORM_LIMIT = 10.0

_MC_BATCH = 1 << 16


def matexp(a: np.ndarray, t: float) -> np.ndarray:
    """exp(A t) by scaling-and-squaring of the truncated Taylor series.

    Relative accuracy is about 1e-12 for ||A t||_inf <= 10; larger arguments
    trigger a RuntimeWarning because the error bound is no longer validated.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matexp needs a square matrix, got shape {a.shape}")
    b = a * t
    norm = np.abs(b).sum(axis=1).max() if b.size else 0.0
    if norm > MATEXP_NORM_LIMIT:
        warnings.warn(
            f"matexp argument norm {norm:.3g} exceeds validated range "
            f"{MATEXP_NORM_LIMIT}; accuracy may degrade",
            RuntimeWarning,
            stacklevel=2,
        )
    squarings = 0
    while norm > 0.25:
        norm /= 2.0
        squarings += 1
    b = b / (2.0 ** squarings)
    result = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 40):
        term = term @ b / k
        result = result + term
        if np.abs(term).max() <= 1e-18 * max(1.0, np.abs(result).max()):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def _standard_normals(count: int, seed: int, batch: int) -> np.ndarray:
    """Box-Muller normals from the (seed, batch)-keyed Philox stream."""
    rg = np.random.Generator(np.random.Philox(key=[seed, batch]))
    pairs = (count + 1) // 2
    u1 = 1.0 - rg.random(pairs)  # in (0, 1], keeps the log finite
    u2 = rg.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(2.0 * np.pi * u2)
    z[1::2] = radius * np.sin(2.0 * np.pi * u2)
    return z[:count]


def mc_covariance(qmap: QuadratureMap, n_samples: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample covariance of M x for standard-normal x, with standard errors.

    Returns ``(estimate, standard_errors)``, both 2N x 2N.  The estimator is
    the raw second moment (the mean is identically zero), so the expected
    value is M M^T.  Deterministic for a given seed.
    """
    if n_samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {n_samples}")
    d = 2 * qmap.n_modes
    m1 = np.zeros((d, d))
    m2 = np.zeros((d, d))
    remaining = n_samples
    batch = 0
    while remaining > 0:
        size = min(_MC_BATCH, remaining)
        x = _standard_normals(size * d, seed, batch).reshape(size, d)
        y = x @ qmap.mat.T
        prod = y[:, :, None] * y[:, None, :]
        m1 += prod.sum(axis=0)
        m2 += (prod * prod).sum(axis=0)
        remaining -= size
        batch += 1
    m1 /= n_samples
    m2 /= n_samples
    se = np.sqrt(np.maximum(m2 - m1 * m1, 0.0) / n_samples)
    return m1, se


def bracket_roots(f, lo: float, hi: float, steps: int) -> list[tuple[float, float]]:
    """All sign-change intervals of ``f`` sampled on ``steps`` grid points.

    An exact zero at a grid point yields the degenerate bracket (x, x).
    Brackets are returned in ascending order.
    """
    if steps < 2:
        raise ValueError(f"need at least 2 grid points, got {steps}")
    if not hi > lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    xs = np.linspace(lo, hi, steps)
    values = np.array([f(x) for x in xs], dtype=float)
    brackets: list[tuple[float, float]] = []
    for i, x in enumerate(xs):
        if values[i] == 0.0:
            brackets.append((float(x), float(x)))
        if i + 1 < len(xs) and values[i] * values[i + 1] < 0.0:
            brackets.append((float(x), float(xs[i + 1])))
    return brackets
