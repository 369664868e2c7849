"""Fully symmetric tripartite state from three squeezed inputs on two beamsplitters.

The first input is squeezed in Y, the other two in X, all with the same
parameter r.  Beamsplitter 1 (reflectivity mu) mixes inputs 1 and 2; one of
its outputs is mixed with input 3 on beamsplitter 2 (reflectivity nu).  With
mu = 2/3 and nu = 1/2 the three outputs form the fully symmetric state whose
covariance matrix is invariant under any exchange of modes, and the output
operators are

    b1 = sqrt(1-mu) a1 + sqrt(mu) a2
    b2 = sqrt(mu(1-nu)) a1 - sqrt((1-mu)(1-nu)) a2 + sqrt(nu) a3
    b3 = sqrt(mu nu) a1 - sqrt(nu(1-mu)) a2 - sqrt(1-nu) a3

Closed forms for the criteria at the symmetric point are provided alongside
the state construction so the two routes can be cross-checked numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import criteria
from .gaussian import (
    GaussianState,
    QuadratureMap,
    apply_map,
    beamsplitter_map,
    squeezed_inputs,
)

__all__ = [
    "SymmetricParams",
    "ClosedForms",
    "build_symmetric_state",
    "closed_forms",
    "verify_consistency",
]

FULLY_SYMMETRIC_MU = 2.0 / 3.0
FULLY_SYMMETRIC_NU = 0.5


@dataclass(frozen=True)
class SymmetricParams:
    """Squeezing and beamsplitter reflectivities for the three-mode network."""

    r: float
    mu: float = FULLY_SYMMETRIC_MU
    nu: float = FULLY_SYMMETRIC_NU

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"squeezing parameter must be >= 0, got {self.r}")
        for name, value in (("mu", self.mu), ("nu", self.nu)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class ClosedForms:
    """Criterion values at the fully symmetric point as explicit functions of r."""

    ds_plus: float
    ds_minus: float
    v_inf: float
    reid_product: float
    v_ij: float
    v_ijk: float


def _port_orientation_flip(n_modes: int, modes: tuple[int, ...]) -> QuadratureMap:
    # pi phase on selected output ports (X and Y both flip sign); fixes the
    # output sign convention of the two-splitter cascade.
    diag = np.ones(n_modes)
    for m in modes:
        diag[m - 1] = -1.0
    block = np.diag(diag)
    return QuadratureMap.from_blocks(block, block)


def network_map(mu: float, nu: float) -> QuadratureMap:
    """The full two-beamsplitter network as a single quadrature map."""
    bs1 = beamsplitter_map(3, 1, 2, mu)
    bs2 = beamsplitter_map(3, 3, 2, nu)
    flip = _port_orientation_flip(3, (2, 3))
    mat = flip.mat @ bs2.mat @ bs1.mat
    return QuadratureMap(n_modes=3, mat=mat)


def build_symmetric_state(params: SymmetricParams) -> GaussianState:
    """Three-mode pure Gaussian state of the beamsplitter network."""
    inputs = squeezed_inputs([("y", params.r), ("x", params.r), ("x", params.r)])
    return apply_map(inputs, network_map(params.mu, params.nu))


def closed_forms(r: float) -> ClosedForms:
    """Evaluate the symmetric-point criterion formulas directly.

    ds_plus/ds_minus are 4 cosh r +/- (8/3) sinh r; the inferred variance is
    (3 cosh r + sinh r) / (2 + e^(2r)) with Reid product identically 1; the
    optimized pairwise correlation is (2 + 10 e^(2r)) / (e^r + 2 e^(3r)); and
    the three-mode correlation is 4 (cosh r - (2 sqrt 2 / 3) sinh r).
    """
    if r < 0:
        raise ValueError(f"squeezing parameter must be >= 0, got {r}")
    c, s = np.cosh(r), np.sinh(r)
    return ClosedForms(
        ds_plus=float(4.0 * c + 8.0 / 3.0 * s),
        ds_minus=float(4.0 * c - 8.0 / 3.0 * s),
        v_inf=float((3.0 * c + s) / (2.0 + np.exp(2.0 * r))),
        reid_product=1.0,
        v_ij=float((2.0 + 10.0 * np.exp(2.0 * r)) / (np.exp(r) + 2.0 * np.exp(3.0 * r))),
        v_ijk=float(4.0 * (c - 2.0 * np.sqrt(2.0) / 3.0 * s)),
    )


def verify_consistency(r_grid) -> float:
    """Max |numeric criterion - closed form| over a grid of r values.

    For each r the state is built through the beamsplitter network and the
    criteria module is evaluated on it; the result is compared against the
    closed forms, across all criteria and all mode assignments.
    """
    grid = list(r_grid)
    if not grid:
        raise ValueError("r grid must be non-empty")
    worst = 0.0
    for r in grid:
        state = build_symmetric_state(SymmetricParams(r=r))
        forms = closed_forms(r)
        for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            ds_plus, ds_minus = criteria.duan_simon(state, i, j)
            worst = max(worst, abs(ds_plus.value - forms.ds_plus))
            worst = max(worst, abs(ds_minus.value - forms.ds_minus))
            vx = criteria.inferred_variance(state, state.x_index(i), state.x_index(j))
            worst = max(worst, abs(vx - forms.v_inf))
            worst = max(worst, abs(criteria.reid_product(state, i, j).value - 1.0))
            worst = max(worst, abs(criteria.vlf_pair(state, i, j, k).value - forms.v_ij))
            worst = max(worst, abs(criteria.vlf_trio(state, i, j, k).value - forms.v_ijk))
    return worst
