"""Static entanglement measures of two-qubit states."""
import math
from typing import Optional

import numpy as np
from scipy import linalg

from dicke_sim.errors import InvalidStateError
from dicke_sim.qstate.models import PureStateAngles, StateClass, TwoQubitState
from dicke_sim.qstate.states import make_pure, require_class

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
# Spin flip sigma_y (x) sigma_y; real in this basis
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real

# Eigenvalues in [-CLAMP_TOL, 0) are rounding noise and are set to zero
CLAMP_TOL = 1e-10


def _clamped_eigh(matrix: np.ndarray, clamp_tol: float = CLAMP_TOL):
    """Hermitian eigendecomposition with small negative eigenvalues zeroed."""
    try:
        values, vectors = linalg.eigh(0.5 * (matrix + matrix.conj().T))
    except linalg.LinAlgError as e:
        raise InvalidStateError(f"Eigendecomposition failed to converge: {e}") from e
    if values[0] < -clamp_tol:
        raise InvalidStateError(
            f"Matrix square root of a non-PSD matrix (eigenvalue {values[0]:.3e})")
    return np.clip(values, 0.0, None), vectors


def psd_sqrt(matrix: np.ndarray, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    values, vectors = _clamped_eigh(matrix, clamp_tol)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def spin_flip(rho: TwoQubitState) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    return SPIN_FLIP @ rho.elements.conj() @ SPIN_FLIP


def wootters_spectrum(rho: TwoQubitState) -> np.ndarray:
    """Eigenvalues of (sqrt(rho) rho~ sqrt(rho))^(1/2), descending.

    With rho = W W^dagger (W = V sqrt(p) from the eigendecomposition) these
    are the singular values of W^T (sigma_y x sigma_y) W. Working with
    singular values avoids taking square roots of near-zero eigenvalues,
    which would amplify rounding noise to ~1e-8.
    """
    clamp_tol = max(CLAMP_TOL, rho.tolerances.psd)
    values, vectors = _clamped_eigh(rho.elements, clamp_tol)
    w = vectors * np.sqrt(values)
    tau = w.T @ SPIN_FLIP @ w
    try:
        return linalg.svdvals(tau)
    except linalg.LinAlgError as e:
        raise InvalidStateError(f"Singular value decomposition failed: {e}") from e


def concurrence(rho: TwoQubitState) -> float:
    """Wootters concurrence max(0, 2 p_max - tr rho_hat), clipped to [0, 1]."""
    spectrum = wootters_spectrum(rho)
    value = 2.0 * spectrum[0] - float(np.sum(spectrum))
    return float(min(max(value, 0.0), 1.0))


def concurrence_single_excitation(rho: TwoQubitState) -> float:
    """Shortcut C = 2|rho23| valid for states without |11> amplitude."""
    require_class(rho, StateClass.CLASS12, StateClass.CLASS22,
                  operation="concurrence_single_excitation")
    return float(min(2.0 * abs(rho.rho23), 1.0))


def binary_entropy(p: float) -> float:
    """Shannon entropy (bits) of the distribution (p, 1 - p)."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def entropy_from_concurrence(c: float) -> float:
    """Entanglement of formation as the standard monotone function of C."""
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def reduced_state(rho: TwoQubitState, keep: str = 'A') -> np.ndarray:
    """Partial trace keeping subsystem ``'A'`` (first atom) or ``'B'``."""
    tensor = rho.elements.reshape(2, 2, 2, 2)
    if keep == 'A':
        return np.einsum('ijkj->ik', tensor)
    if keep == 'B':
        return np.einsum('jijk->ik', tensor)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def von_neumann_entropy(matrix: np.ndarray) -> float:
    """Entropy -tr(m log2 m) of a density matrix of any dimension."""
    values, _ = _clamped_eigh(matrix)
    values = values[values > 0.0]
    return float(-np.sum(values * np.log2(values)))


def pure_entanglement(angles: PureStateAngles) -> float:
    """Entropy of entanglement of the pure state: entropy of its reduced state."""
    value = von_neumann_entropy(reduced_state(make_pure(angles), keep='A'))
    return float(min(max(value, 0.0), 1.0))


def entanglement_of_formation(rho: TwoQubitState) -> float:
    """Entanglement of formation of rho from its Wootters concurrence."""
    return entropy_from_concurrence(concurrence(rho))


def linear_entropy(rho: TwoQubitState) -> float:
    """S_L = 1 - tr(rho^2); zero exactly on pure states."""
    m = rho.elements
    purity = float(np.real(np.sum(m * m.T)))
    return float(min(max(1.0 - purity, 0.0), 0.75))


def is_pure(rho: TwoQubitState, tol: Optional[float] = None) -> bool:
    if tol is None:
        tol = 1e-12
    return linear_entropy(rho) <= tol
