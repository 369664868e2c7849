"""Travelling-wave model of the asymmetric downconversion + sum-frequency system.

An undepleted classical pump drives downconversion into modes 1 and 3 with
rate kappa1 while sum-frequency generation exchanges modes 3 and 2 with rate
kappa2 (kappa1 > kappa2).  The quadrature equations of motion decouple into
X and Y sectors,

    dX1 = kappa1 X3,  dX2 = kappa2 X3,  dX3 = kappa1 X1 - kappa2 X2

with the Y sector mirrored in sign, and integrate in closed form using
zeta = sqrt(kappa1^2 - kappa2^2).

Two coefficient conventions are provided.  "canonical" is the exact solution
of the equations of motion above; it is symplectic for every interaction
strength.  "paper-literal" keeps the historically published coefficient set
in which the sinh terms are divided by zeta^2 instead of zeta and the mode-2
rows carry the kappa1 sinh coefficient; it is not symplectic away from zt=0
but is retained as a compatibility mode because the published key-rate
windows and steering-exclusivity statements track it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import criteria, oracle
from .gaussian import GaussianState, QuadratureMap, apply_map, vacuum_state

__all__ = [
    "CANONICAL",
    "PAPER_LITERAL",
    "AsymParams",
    "CoefficientSet",
    "coefficient_set",
    "tw_transform",
    "tw_state",
    "tw_steering",
    "key_window",
]

CANONICAL = "canonical"
PAPER_LITERAL = "paper-literal"
_MODES = (CANONICAL, PAPER_LITERAL)

#: key_window scans zt on [0, DEFAULT_ZT_MAX] with this step before bisecting
DEFAULT_ZT_MAX = 3.0
WINDOW_SCAN_STEP = 1e-3
WINDOW_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class AsymParams:
    """Couplings for the travelling-wave model; kappa1 sets the rate unit."""

    kappa1: float = 1.0
    kappa2: float = 0.6
    coefficient_mode: str = CANONICAL

    def __post_init__(self):
        if not self.kappa1 > self.kappa2 >= 0.0:
            raise ValueError(
                f"need kappa1 > kappa2 >= 0, got {self.kappa1}, {self.kappa2}"
            )
        if self.coefficient_mode not in _MODES:
            raise ValueError(
                f"coefficient_mode must be one of {_MODES}, got {self.coefficient_mode!r}"
            )

    @property
    def zeta(self) -> float:
        """Derived rate sqrt(kappa1^2 - kappa2^2) > 0."""
        return math.sqrt(self.kappa1 ** 2 - self.kappa2 ** 2)


@dataclass(frozen=True)
class CoefficientSet:
    """The six scalars of the closed-form quadrature solution at one zt."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    eta: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.eta)


def coefficient_set(params: AsymParams, zt: float) -> CoefficientSet:
    """Coefficients at dimensionless interaction strength zt = zeta * t.

    Canonical mode divides the sinh terms by zeta; paper-literal mode divides
    them by zeta^2 as printed in the original coefficient table.  Both reduce
    to (1, 0, 0, 1, 0, 1) at zt = 0.
    """
    if zt < 0:
        raise ValueError(f"zt must be >= 0, got {zt}")
    k1, k2 = params.kappa1, params.kappa2
    zeta = params.zeta
    zeta2 = zeta * zeta
    ch = math.cosh(zt)
    sh = math.sinh(zt)
    sinh_div = zeta2 if params.coefficient_mode == PAPER_LITERAL else zeta
    return CoefficientSet(
        alpha=(k1 * k1 * ch - k2 * k2) / zeta2,
        beta=k1 * k2 * (ch - 1.0) / zeta2,
        gamma=k1 * sh / sinh_div,
        delta=(k1 * k1 - k2 * k2 * ch) / zeta2,
        epsilon=k2 * sh / sinh_div,
        eta=ch,
    )


def tw_transform(params: AsymParams, zt: float) -> QuadratureMap:
    """The 6x6 quadrature map X(0), Y(0) -> X(zt), Y(zt).

    Canonical rows use the epsilon coefficient in the mode-2 rows, making the
    map the exponential of the equations of motion (hence symplectic); the
    paper-literal rows keep gamma there as printed.
    """
    c = coefficient_set(params, zt)
    literal = params.coefficient_mode == PAPER_LITERAL
    mode2_third = c.gamma if literal else c.epsilon
    mx = np.array([
        [c.alpha, -c.beta, c.gamma],
        [c.beta, c.delta, mode2_third],
        [c.gamma, -c.epsilon, c.eta],
    ])
    my = np.array([
        [c.alpha, c.beta, -c.gamma],
        [-c.beta, c.delta, mode2_third],
        [-c.gamma, -c.epsilon, c.eta],
    ])
    return QuadratureMap.from_blocks(mx, my, unitary=not literal)


def tw_state(params: AsymParams, zt: float) -> GaussianState:
    """State after interaction zt with vacuum inputs: cov = M M^T."""
    return apply_map(vacuum_state(3), tw_transform(params, zt))


def tw_steering(params: AsymParams, zt: float) -> tuple[float, float]:
    """Reid products (mode 1 steered by 3, mode 3 steered by 1).

    Computed from the state covariance rather than any transcribed closed
    form, so both coefficient modes are handled uniformly.
    """
    state = tw_state(params, zt)
    pi_13 = criteria.reid_product(state, 1, 3).value
    pi_31 = criteria.reid_product(state, 3, 1).value
    return pi_13, pi_31


def _key_rate_at(params: AsymParams, steered: int, steerer: int, zt: float) -> float:
    if zt == 0.0:
        return math.log2(2.0 / math.e)
    state = tw_state(params, zt)
    pi = criteria.reid_product(state, steered, steerer).value
    return criteria.key_rate(pi).value


def key_window(params: AsymParams, direction: tuple[int, int],
               zt_max: float = DEFAULT_ZT_MAX) -> tuple[float, float] | None:
    """Widest contiguous zt interval with a positive key rate, or None.

    ``direction`` is (steered, steerer), either (1, 3) or (3, 1).  The key
    rate K(zt) is scanned on a 1e-3-step grid over [0, zt_max]; each sign
    change is then bisected to an absolute zt tolerance of 1e-6.  A window
    still open at zt_max is truncated there.
    """
    if tuple(direction) not in ((1, 3), (3, 1)):
        raise ValueError(f"direction must be (1, 3) or (3, 1), got {direction}")
    steered, steerer = direction

    def f(zt: float) -> float:
        return _key_rate_at(params, steered, steerer, zt)

    n_points = int(round(zt_max / WINDOW_SCAN_STEP)) + 1
    edges = []
    for lo, hi in oracle.bracket_roots(f, 0.0, zt_max, n_points):
        edges.append(lo if lo == hi else _bisect(f, lo, hi))

    # assemble sign segments between roots and keep the widest positive one
    boundaries = [0.0] + sorted(set(edges)) + [zt_max]
    best: tuple[float, float] | None = None
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        if hi - lo <= 2 * WINDOW_ROOT_TOL:
            continue
        if f(0.5 * (lo + hi)) > 0.0:
            if best is None or (hi - lo) > (best[1] - best[0]):
                best = (lo, hi)
    return best


def _bisect(f, lo: float, hi: float) -> float:
    f_lo = f(lo)
    while hi - lo > WINDOW_ROOT_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
