"""Zero-mean Gaussian states and linear quadrature maps.

Conventions used throughout the package: quadratures X = a + a*, Y = -i(a - a*),
so the vacuum variance is 1 per quadrature and [X_i, Y_j] = 2i delta_ij.  A state
of N modes is stored as a 2N x 2N real covariance matrix with the X block first,
i.e. row/column order (X_1 .. X_N, Y_1 .. Y_N).  Modes are labelled 1..N in the
public API; raw quadrature indices are 0-based rows of the covariance matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GaussianState",
    "QuadratureMap",
    "SqueezingSpec",
    "symplectic_form",
    "vacuum_state",
    "squeezed_inputs",
    "beamsplitter_map",
    "apply_map",
    "is_symplectic",
    "combo_variance",
]

#: per-mode squeezing specification: ("x" | "y", r) with r >= 0
SqueezingSpec = list[tuple[str, float]]

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
UNCERTAINTY_SLACK = 1e-9


def symplectic_form(n_modes: int) -> np.ndarray:
    """Symplectic form Omega = [[0, I], [-I, 0]] in X-then-Y ordering.

    With this convention the commutators read [R_a, R_b] = 2i Omega_ab and a
    physical covariance matrix satisfies V + i Omega >= 0.
    """
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean N-mode Gaussian state, held as its quadrature covariance matrix.

    ``physical=True`` (the default) enforces the quantum uncertainty bound
    cov + i Omega >= 0 on construction.  Passing False relaxes this to plain
    positive semidefiniteness; the travelling-wave compatibility coefficients
    need it because their map is not symplectic.
    """

    n_modes: int
    cov: np.ndarray = field(repr=False)
    physical: bool = True

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        cov = np.asarray(self.cov, dtype=float)
        d = 2 * self.n_modes
        if cov.shape != (d, d):
            raise ValueError(f"covariance must be {d}x{d}, got {cov.shape}")
        if np.abs(cov - cov.T).max() > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        if self.physical:
            omega = symplectic_form(self.n_modes)
            lowest = np.linalg.eigvalsh(cov + 1j * omega).min()
        else:
            lowest = np.linalg.eigvalsh(cov).min()
        if lowest < -UNCERTAINTY_SLACK:
            kind = "the uncertainty bound" if self.physical else "positive semidefiniteness"
            raise ValueError(f"covariance violates {kind} (min eig {lowest:.3e})")
        object.__setattr__(self, "cov", cov)

    def x_index(self, mode: int) -> int:
        """Row index of quadrature X_mode (modes are 1-based)."""
        self._check_mode(mode)
        return mode - 1

    def y_index(self, mode: int) -> int:
        """Row index of quadrature Y_mode (modes are 1-based)."""
        self._check_mode(mode)
        return self.n_modes + mode - 1

    def variance(self, index: int) -> float:
        return float(self.cov[index, index])

    def covariance(self, index_a: int, index_b: int) -> float:
        return float(self.cov[index_a, index_b])

    def _check_mode(self, mode: int):
        if not 1 <= mode <= self.n_modes:
            raise ValueError(f"mode must be in 1..{self.n_modes}, got {mode}")


@dataclass(frozen=True)
class QuadratureMap:
    """Real linear map on the quadrature vector (X_1..X_N, Y_1..Y_N).

    ``unitary=True`` declares the map to represent unitary dynamics, in which
    case the symplectic condition M Omega M^T = Omega is enforced on
    construction.  All maps built in this package are block diagonal in the
    X/Y split because every model decouples the two sectors.
    """

    n_modes: int
    mat: np.ndarray = field(repr=False)
    unitary: bool = True

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        mat = np.asarray(self.mat, dtype=float)
        d = 2 * self.n_modes
        if mat.shape != (d, d):
            raise ValueError(f"map must be {d}x{d}, got {mat.shape}")
        object.__setattr__(self, "mat", mat)
        if self.unitary and not is_symplectic(self, SYMPLECTIC_TOL):
            raise ValueError("map flagged as unitary is not symplectic")

    @staticmethod
    def from_blocks(mx: np.ndarray, my: np.ndarray, unitary: bool = True) -> "QuadratureMap":
        """Assemble a map from its X-sector and Y-sector blocks."""
        mx = np.asarray(mx, dtype=float)
        my = np.asarray(my, dtype=float)
        if mx.shape != my.shape or mx.ndim != 2 or mx.shape[0] != mx.shape[1]:
            raise ValueError("blocks must be square and of equal shape")
        n = mx.shape[0]
        mat = np.zeros((2 * n, 2 * n))
        mat[:n, :n] = mx
        mat[n:, n:] = my
        return QuadratureMap(n_modes=n, mat=mat, unitary=unitary)

    @property
    def x_block(self) -> np.ndarray:
        n = self.n_modes
        return self.mat[:n, :n]

    @property
    def y_block(self) -> np.ndarray:
        n = self.n_modes
        return self.mat[n:, n:]


def vacuum_state(n_modes: int) -> GaussianState:
    """N-mode vacuum: identity covariance."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    return GaussianState(n_modes=n_modes, cov=np.eye(2 * n_modes))


def squeezed_inputs(spec) -> GaussianState:
    """Product of minimum-uncertainty squeezed vacua.

    ``spec`` lists one ``(axis, r)`` pair per mode, where ``axis`` is "x" or
    "y" (the squeezed quadrature) and ``r >= 0``.  The squeezed quadrature gets
    variance e^(-r) and its conjugate e^(+r), so each mode stays at the
    minimum-uncertainty product V(X) V(Y) = 1.
    """
    entries = list(spec)
    if not entries:
        raise ValueError("squeezing spec must cover at least one mode")
    n = len(entries)
    diag = np.ones(2 * n)
    for mode, (axis, r) in enumerate(entries):
        if r < 0:
            raise ValueError(f"squeezing parameter must be >= 0, got {r}")
        if axis not in ("x", "y"):
            raise ValueError(f"squeezed axis must be 'x' or 'y', got {axis!r}")
        if axis == "x":
            diag[mode] = np.exp(-r)
            diag[n + mode] = np.exp(r)
        else:
            diag[mode] = np.exp(r)
            diag[n + mode] = np.exp(-r)
    return GaussianState(n_modes=n, cov=np.diag(diag))


def beamsplitter_map(n_modes: int, mode_a: int, mode_b: int, reflectivity: float) -> QuadratureMap:
    """Beamsplitter of given reflectivity between two modes.

    Acts identically on both quadrature sectors as the rotation

        out_a = sqrt(1-R) in_a + sqrt(R) in_b
        out_b = -sqrt(R) in_a + sqrt(1-R) in_b

    so reflectivity 0 is the identity.  Swapping the argument order flips the
    sign of the rotation angle.
    """
    if not 0.0 <= reflectivity <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {reflectivity}")
    for m in (mode_a, mode_b):
        if not 1 <= m <= n_modes:
            raise ValueError(f"mode must be in 1..{n_modes}, got {m}")
    if mode_a == mode_b:
        raise ValueError("beamsplitter requires two distinct modes")
    t = np.sqrt(1.0 - reflectivity)
    s = np.sqrt(reflectivity)
    block = np.eye(n_modes)
    a, b = mode_a - 1, mode_b - 1
    block[a, a] = t
    block[a, b] = s
    block[b, a] = -s
    block[b, b] = t
    return QuadratureMap.from_blocks(block, block)


def apply_map(state: GaussianState, qmap: QuadratureMap) -> GaussianState:
    """Propagate a state through a linear map: V -> M V M^T.

    Symplectic maps preserve physicality; a map not flagged unitary yields a
    state validated only for positive semidefiniteness.
    """
    if qmap.n_modes != state.n_modes:
        raise ValueError(
            f"dimension mismatch: state has {state.n_modes} modes, map has {qmap.n_modes}"
        )
    cov = qmap.mat @ state.cov @ qmap.mat.T
    cov = 0.5 * (cov + cov.T)
    return GaussianState(
        n_modes=state.n_modes, cov=cov, physical=state.physical and qmap.unitary
    )


def is_symplectic(qmap: QuadratureMap, tol: float = SYMPLECTIC_TOL) -> bool:
    """Whether M Omega M^T = Omega holds entrywise within ``tol``."""
    omega = symplectic_form(qmap.n_modes)
    defect = qmap.mat @ omega @ qmap.mat.T - omega
    return bool(np.abs(defect).max() <= tol)


def combo_variance(state: GaussianState, coefficients) -> float:
    """Variance of the linear quadrature combination c . (X_1..X_N, Y_1..Y_N)."""
    c = np.asarray(coefficients, dtype=float)
    if c.shape != (2 * state.n_modes,):
        raise ValueError(
            f"expected {2 * state.n_modes} coefficients, got shape {c.shape}"
        )
    return float(c @ state.cov @ c)
