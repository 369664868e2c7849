"""Below-threshold intracavity version of the asymmetric model.

With the nonlinear medium inside a driven cavity and the pump treated as an
undepleted classical field of intracavity amplitude epsilon/gamma0, the
signal-mode quadrature fluctuations obey a linear (Ornstein-Uhlenbeck)
Langevin equation per sector,

    dx = A x dt + sqrt(2 Gamma) dx_in,   Gamma = diag(gamma1, gamma2, gamma3)

whose drift A combines the travelling-wave couplings g_i = kappa_i
epsilon / gamma0 with the cavity decays.  The drift loses stability exactly
at the oscillation threshold

    epsilon_c = gamma0 sqrt(gamma1 gamma2 gamma3) / sqrt(kappa1^2 gamma2 - kappa2^2 gamma1)

which serves as a built-in consistency check on the construction.  Output
spectra follow from the input-output relations: the reflection transfer
matrix M(w) = sqrt(2 Gamma) (-iw I - A)^-1 sqrt(2 Gamma) - I maps vacuum
inputs to S_out(w) = M(w) M(w)^dagger, normalized so an empty cavity returns
the identity.  Frequencies are quoted in units of gamma1.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import criteria
from .criteria import CriterionResult
from .gaussian import GaussianState

__all__ = [
    "CavityParams",
    "CavitySystem",
    "PhysicalRegimeError",
    "AboveThresholdError",
    "NoThresholdError",
    "critical_pump",
    "build_system",
    "output_spectrum",
    "intracavity_spectrum",
    "stationary_covariance",
    "spectral_state",
    "spectral_criteria",
    "pump_sweep",
    "default_omega_grid",
    "ORDERED_PAIRS",
]

#: default analysis grid: omega in [-6, 6] in units of gamma1, 481 points
DEFAULT_OMEGA_RANGE = (-6.0, 6.0)
DEFAULT_OMEGA_POINTS = 481

ORDERED_PAIRS = ((1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))


class PhysicalRegimeError(RuntimeError):
    """Parameters describe a regime the below-threshold analysis cannot treat."""


class AboveThresholdError(PhysicalRegimeError):
    """Pump at or above the oscillation threshold."""


class NoThresholdError(PhysicalRegimeError):
    """kappa1^2 gamma2 <= kappa2^2 gamma1: no oscillation threshold exists."""


@dataclass(frozen=True)
class CavityParams:
    """Cavity decay rates, effective nonlinearities and pump amplitude.

    gamma1 is the natural frequency unit; gamma0 is the decay rate of the
    pump mode.  ``pump`` is the driving amplitude epsilon in absolute units
    (use ``from_pump_fraction`` to specify it as a fraction of threshold).
    """

    gamma0: float = 1.0
    gamma1: float = 1.0
    gamma2: float = 3.0
    gamma3: float = 1.0
    kappa1: float = 0.01
    kappa2: float = 0.006
    pump: float = 0.0

    def __post_init__(self):
        for name in ("gamma0", "gamma1", "gamma2", "gamma3"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.kappa1 <= 0 or self.kappa2 < 0:
            raise ValueError("need kappa1 > 0 and kappa2 >= 0")
        if self.pump < 0:
            raise ValueError(f"pump amplitude must be >= 0, got {self.pump}")

    @classmethod
    def from_pump_fraction(cls, fraction: float, **kwargs) -> "CavityParams":
        """Build params with the pump given as a fraction of epsilon_c."""
        base = cls(pump=0.0, **kwargs)
        return cls(pump=fraction * critical_pump(base), **kwargs)


@dataclass(frozen=True)
class CavitySystem:
    """Drift and noise matrices of the linearized intracavity dynamics."""

    drift_x: np.ndarray = field(repr=False)
    drift_y: np.ndarray = field(repr=False)
    noise_in: np.ndarray = field(repr=False)
    epsilon: float
    epsilon_c: float


def critical_pump(params: CavityParams) -> float:
    """Oscillation threshold pump amplitude epsilon_c."""
    denom = params.kappa1 ** 2 * params.gamma2 - params.kappa2 ** 2 * params.gamma1
    if denom <= 0:
        raise NoThresholdError(
            "kappa1^2 gamma2 must exceed kappa2^2 gamma1 for a threshold to exist"
        )
    return (
        params.gamma0
        * math.sqrt(params.gamma1 * params.gamma2 * params.gamma3)
        / math.sqrt(denom)
    )


def build_system(params: CavityParams) -> CavitySystem:
    """Assemble the drift and input-noise matrices for both sectors.

    With g_i = kappa_i epsilon / gamma0 the X-sector drift couples the
    downconversion pair (1, 3) with +g1 and the sum-frequency pair (2, 3)
    with +/-g2; the Y sector mirrors the travelling-wave sign pattern.
    The drift determinant vanishes exactly at epsilon = epsilon_c.
    """
    eps_c = critical_pump(params)
    g1 = params.kappa1 * params.pump / params.gamma0
    g2 = params.kappa2 * params.pump / params.gamma0
    c1, c2, c3 = params.gamma1, params.gamma2, params.gamma3
    drift_x = np.array([
        [-c1, 0.0, g1],
        [0.0, -c2, g2],
        [g1, -g2, -c3],
    ])
    drift_y = np.array([
        [-c1, 0.0, -g1],
        [0.0, -c2, g2],
        [-g1, -g2, -c3],
    ])
    noise_in = np.diag(np.sqrt([2.0 * c1, 2.0 * c2, 2.0 * c3]))
    return CavitySystem(
        drift_x=drift_x,
        drift_y=drift_y,
        noise_in=noise_in,
        epsilon=params.pump,
        epsilon_c=eps_c,
    )


def _require_below_threshold(system: CavitySystem):
    if system.epsilon >= system.epsilon_c:
        raise AboveThresholdError(
            f"pump {system.epsilon:.6g} is at or above threshold {system.epsilon_c:.6g}"
        )


def _transfer(system: CavitySystem, drift: np.ndarray, omega: float) -> np.ndarray:
    b = system.noise_in
    resolvent = np.linalg.solve(
        -1j * omega * np.eye(3) - drift, b.astype(complex)
    )
    return b @ resolvent - np.eye(3)


def output_spectrum(system: CavitySystem, omega: float) -> np.ndarray:
    """Output spectral matrix S_out(omega), 6x6 complex Hermitian PSD.

    Block diagonal in the X/Y split; the diagonal is 1 for an empty cavity.
    Raises AboveThresholdError at or above epsilon_c.
    """
    _require_below_threshold(system)
    s = np.zeros((6, 6), dtype=complex)
    for offset, drift in ((0, system.drift_x), (3, system.drift_y)):
        m = _transfer(system, drift, omega)
        s[offset:offset + 3, offset:offset + 3] = m @ m.conj().T
    return s


def intracavity_spectrum(system: CavitySystem, omega: float) -> np.ndarray:
    """Intracavity spectral matrix, 6x6 complex Hermitian.

    Integrating this over omega / (2 pi) recovers the stationary covariance
    of the Ornstein-Uhlenbeck process.
    """
    _require_below_threshold(system)
    s = np.zeros((6, 6), dtype=complex)
    d = system.noise_in @ system.noise_in  # diffusion 2 Gamma
    for offset, drift in ((0, system.drift_x), (3, system.drift_y)):
        r = np.linalg.inv(-1j * omega * np.eye(3) - drift)
        s[offset:offset + 3, offset:offset + 3] = r @ d @ r.conj().T
    return s


def stationary_covariance(system: CavitySystem) -> np.ndarray:
    """Stationary intracavity covariance: solves A V + V A^T + 2 Gamma = 0."""
    _require_below_threshold(system)
    d = system.noise_in @ system.noise_in
    v = np.zeros((6, 6))
    for offset, drift in ((0, system.drift_x), (3, system.drift_y)):
        v[offset:offset + 3, offset:offset + 3] = scipy.linalg.solve_continuous_lyapunov(
            drift, -d
        )
    return v


def spectral_state(system: CavitySystem, omega: float) -> GaussianState:
    """S_out(omega) packaged as a covariance matrix for the criteria module.

    The criteria use real linear combinations of the output quadratures, so
    the measurable part of the spectrum is the real (symmetric) part of the
    Hermitian spectral matrix.
    """
    return GaussianState(n_modes=3, cov=output_spectrum(system, omega).real)


def spectral_criteria(system: CavitySystem, omega: float) -> list[CriterionResult]:
    """All criteria evaluated on the output spectrum at one frequency.

    Returns, in fixed order: Reid products and key rates for every ordered
    mode pair, both Duan-Simon sums per unordered pair, and the pairwise and
    three-mode van Loock-Furusawa correlations.
    """
    state = spectral_state(system, omega)
    results: list[CriterionResult] = []
    for steered, steerer in ORDERED_PAIRS:
        pi = criteria.reid_product(state, steered, steerer)
        results.append(pi)
        results.append(criteria.key_rate(pi.value, steered=steered, steerer=steerer))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        results.extend(criteria.duan_simon(state, i, j))
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        results.append(criteria.vlf_pair(state, i, j, k))
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        results.append(criteria.vlf_trio(state, i, j, k))
    return results


def default_omega_grid() -> np.ndarray:
    lo, hi = DEFAULT_OMEGA_RANGE
    return np.linspace(lo, hi, DEFAULT_OMEGA_POINTS)


def pump_sweep(params: CavityParams, eps_fracs, omegas=None) -> list[dict[str, float]]:
    """Extremal-over-omega steering and key-rate values per pump fraction.

    For each epsilon/epsilon_c in ``eps_fracs`` (each must be < 1) the Reid
    product is minimized and the key rate maximized over the omega grid, for
    every ordered pair.  Rows are returned in ascending pump order with keys
    ``eps_frac``, ``pi_ij`` and ``k_ij``.
    """
    fracs = sorted(float(f) for f in eps_fracs)
    if any(f <= 0 or f >= 1 for f in fracs):
        raise ValueError("pump fractions must lie strictly between 0 and 1")
    if omegas is None:
        omegas = default_omega_grid()
    rows = []
    eps_c = critical_pump(params)
    for frac in fracs:
        system = build_system(dataclasses.replace(params, pump=frac * eps_c))
        best_pi = {pair: math.inf for pair in ORDERED_PAIRS}
        for omega in omegas:
            state = spectral_state(system, omega)
            for pair in ORDERED_PAIRS:
                value = criteria.reid_product(state, *pair).value
                best_pi[pair] = min(best_pi[pair], value)
        row: dict[str, float] = {"eps_frac": frac}
        for (i, j), pi in best_pi.items():
            row[f"pi_{i}{j}"] = pi
        for (i, j), pi in best_pi.items():
            row[f"k_{i}{j}"] = criteria.key_rate(pi).value
        rows.append(row)
    return rows
