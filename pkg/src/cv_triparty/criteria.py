"""Entanglement, EPR-steering and key-rate criteria on Gaussian covariance matrices.

All bounds are fixed by the vacuum-variance-1 convention: the Duan-Simon sums
sit at 4, the Reid inferred-variance product at 1, and the 1SDI-QKD minimum
key rate at 0.  Violation flags use strict inequality, so a value exactly at
its bound reports not-violated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianState

__all__ = [
    "CriterionResult",
    "DegenerateInputError",
    "inferred_variance",
    "reid_product",
    "duan_simon",
    "vlf_pair",
    "vlf_trio",
    "wang_bound",
    "key_rate",
    "KEY_RATE_STEERING_THRESHOLD",
]

#: a positive key rate requires a Reid product below (2/e)^2
KEY_RATE_STEERING_THRESHOLD = (2.0 / math.e) ** 2


class DegenerateInputError(ValueError):
    """A reference quadrature has zero variance, so inference is undefined."""


@dataclass(frozen=True)
class CriterionResult:
    """A named criterion value together with its classical bound.

    ``violated`` is True when the value strictly beats the bound: below it for
    the inequality criteria, above zero for the key rate.  ``steered_mode``
    and ``steering_modes`` are populated for the directional criteria only.
    """

    name: str
    value: float
    bound: float
    violated: bool
    steered_mode: int | None = None
    steering_modes: tuple[int, ...] = ()


def _below_bound(name: str, value: float, bound: float,
                 steered: int | None = None, steering: tuple[int, ...] = ()) -> CriterionResult:
    return CriterionResult(
        name=name,
        value=float(value),
        bound=bound,
        violated=bool(value < bound),
        steered_mode=steered,
        steering_modes=steering,
    )


def inferred_variance(state: GaussianState, target: int, reference: int) -> float:
    """Optimal-linear-estimator inferred variance of one quadrature given another.

    ``target`` and ``reference`` are raw quadrature indices (0-based rows of
    the covariance matrix).  Returns V(t) - Cov(t, r)^2 / V(r), the residual
    variance of the best linear inference, which is the optimal choice for
    Gaussian states.
    """
    if target == reference:
        raise ValueError("target and reference quadratures must differ")
    v_ref = state.variance(reference)
    if v_ref <= 0.0:
        raise DegenerateInputError(
            f"reference quadrature {reference} has non-positive variance {v_ref}"
        )
    c = state.covariance(target, reference)
    return state.variance(target) - c * c / v_ref


def reid_product(state: GaussianState, steered: int, steerer: int) -> CriterionResult:
    """Reid EPR product for ``steered`` inferred from ``steerer`` (modes, 1-based).

    X is inferred from the steerer's X and Y from the steerer's Y, which is
    optimal for the X/Y-decoupled states this package produces.  Values below
    1 witness EPR-steering of the steered mode.
    """
    if steered == steerer:
        raise ValueError("steered and steerer modes must differ")
    vx = inferred_variance(state, state.x_index(steered), state.x_index(steerer))
    vy = inferred_variance(state, state.y_index(steered), state.y_index(steerer))
    return _below_bound(
        f"reid_{steered}|{steerer}", vx * vy, 1.0,
        steered=steered, steering=(steerer,),
    )


def duan_simon(state: GaussianState, i: int, j: int) -> tuple[CriterionResult, CriterionResult]:
    """Duan-Simon sums for modes i, j: (DS+, DS-), each bounded by 4.

    DS+ = V(X_i + X_j) + V(Y_i - Y_j) and DS- = V(X_i - X_j) + V(Y_i + Y_j),
    evaluated at unit gains.  Either falling below 4 demonstrates bipartite
    entanglement.
    """
    if i == j:
        raise ValueError("modes must differ")
    xi, xj = state.x_index(i), state.x_index(j)
    yi, yj = state.y_index(i), state.y_index(j)
    vxi, vxj, cx = state.variance(xi), state.variance(xj), state.covariance(xi, xj)
    vyi, vyj, cy = state.variance(yi), state.variance(yj), state.covariance(yi, yj)
    plus = (vxi + vxj + 2 * cx) + (vyi + vyj - 2 * cy)
    minus = (vxi + vxj - 2 * cx) + (vyi + vyj + 2 * cy)
    return (
        _below_bound(f"ds_plus_{i}{j}", plus, 4.0),
        _below_bound(f"ds_minus_{i}{j}", minus, 4.0),
    )


def vlf_pair(state: GaussianState, i: int, j: int, k: int) -> CriterionResult:
    """van Loock-Furusawa pairwise correlation with optimized third-mode gain.

    V_ij = V(X_i - X_j) + V(Y_i + Y_j + g_k Y_k), bound 4, with
    g_k = -[V(Y_k, Y_i) + V(Y_k, Y_j)] / V(Y_k).  Violation of any two of the
    three inequalities demonstrates genuine tripartite entanglement.
    """
    if len({i, j, k}) != 3:
        raise ValueError("modes i, j, k must be distinct")
    xi, xj = state.x_index(i), state.x_index(j)
    yi, yj, yk = state.y_index(i), state.y_index(j), state.y_index(k)
    v_yk = state.variance(yk)
    if v_yk <= 0.0:
        raise DegenerateInputError(f"V(Y_{k}) is non-positive, gain undefined")
    gain = -(state.covariance(yk, yi) + state.covariance(yk, yj)) / v_yk
    x_part = state.variance(xi) + state.variance(xj) - 2 * state.covariance(xi, xj)
    y_part = (
        state.variance(yi)
        + state.variance(yj)
        + gain * gain * v_yk
        + 2 * state.covariance(yi, yj)
        + 2 * gain * state.covariance(yi, yk)
        + 2 * gain * state.covariance(yj, yk)
    )
    return _below_bound(f"vlf_{i}{j}|{k}", x_part + y_part, 4.0)


def vlf_trio(state: GaussianState, i: int, j: int, k: int) -> CriterionResult:
    """van Loock-Furusawa three-mode correlation V_ijk, bound 4.

    V_ijk = V(X_i - (X_j + X_k)/sqrt(2)) + V(Y_i + (Y_j + Y_k)/sqrt(2));
    a single violation suffices to prove tripartite entanglement.
    """
    if len({i, j, k}) != 3:
        raise ValueError("modes i, j, k must be distinct")
    n = state.n_modes
    cx = np.zeros(2 * n)
    cy = np.zeros(2 * n)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    cx[state.x_index(i)] = 1.0
    cx[state.x_index(j)] = -inv_sqrt2
    cx[state.x_index(k)] = -inv_sqrt2
    cy[state.y_index(i)] = 1.0
    cy[state.y_index(j)] = inv_sqrt2
    cy[state.y_index(k)] = inv_sqrt2
    value = float(cx @ state.cov @ cx + cy @ state.cov @ cy)
    return _below_bound(f"vlf_{i}{j}{k}", value, 4.0)


def wang_bound(n_outputs: int, n_steering: int, r: float) -> float:
    """Steering bound for M modes steering one output of an N-mode splitter cascade.

    Returns
        E = [2(M+1)(N-M-1)(cosh 4r - 1) + N^2] / [2M(N-M)(cosh 4r - 1) + N^2]

    which falling below one witnesses EPR-steering.  For N=3 and M=1 the
    expression is identically 1: no single output of the fully symmetric
    three-mode network can steer another, whatever the squeezing.
    """
    n, m = n_outputs, n_steering
    if n < 2 or not 1 <= m <= n - 1:
        raise ValueError(f"need N >= 2 and 1 <= M <= N-1, got N={n}, M={m}")
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    c4 = math.cosh(4.0 * r) - 1.0
    return (2 * (m + 1) * (n - m - 1) * c4 + n * n) / (2 * m * (n - m) * c4 + n * n)


def key_rate(reid_value: float,
             steered: int | None = None, steerer: int | None = None) -> CriterionResult:
    """Minimum 1SDI-QKD key rate implied by a Reid product, in bits per symbol.

    K = log2(2 e^-1 / sqrt(reid_value)); positive K (the ``violated`` flag)
    means one-sided device-independent key distribution is possible, which
    requires reid_value < (2/e)^2.
    """
    if reid_value <= 0.0:
        raise ValueError(f"Reid product must be positive, got {reid_value}")
    value = math.log2(2.0 / math.e / math.sqrt(reid_value))
    name = "key_rate" if steered is None else f"key_{steered}|{steerer}"
    steering = () if steerer is None else (steerer,)
    return CriterionResult(
        name=name,
        value=value,
        bound=0.0,
        violated=bool(value > 0.0),
        steered_mode=steered,
        steering_modes=steering,
    )
