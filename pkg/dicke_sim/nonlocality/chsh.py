"""CHSH machinery: correlation matrix, Horodecki m(rho) and its shortcuts."""
import math
import logging
from typing import Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.optimize import minimize

from dicke_sim.nonlocality.models import BellSettings, CorrelationMatrix
from dicke_sim.qstate.measures import linear_entropy
from dicke_sim.qstate.models import StateClass, TwoQubitState
from dicke_sim.qstate.states import require_class
from dicke_sim.utils.helpers import unit_vector

logger = logging.getLogger(__name__)

# sigma_3 |1> = +|1>, with |1> the first basis vector
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_PRODUCTS = [[np.kron(sn, sm) for sm in PAULI] for sn in PAULI]

# Comparisons of m against the local bound 1
LOCAL_BOUND_TOL = 1e-12
COHERENCE_THRESHOLD = 1.0 / (2.0 * math.sqrt(2.0))


def correlation_matrix(rho: TwoQubitState) -> CorrelationMatrix:
    m = rho.elements
    t = np.array([
        [np.real(np.trace(m @ PAULI_PRODUCTS[n][k])) for k in range(3)]
        for n in range(3)
    ])
    return CorrelationMatrix(t)


def m_value(rho: TwoQubitState) -> float:
    """Sum of the two largest eigenvalues of T^T T."""
    u = linalg.eigvalsh(correlation_matrix(rho).gram)
    value = float(u[-1] + u[-2])
    return min(max(value, 0.0), 2.0)


def chsh_max(rho: TwoQubitState) -> float:
    """Maximal CHSH expectation over all Bell operators, 2 sqrt(m)."""
    return 2.0 * math.sqrt(m_value(rho))


def n_value(rho: TwoQubitState) -> float:
    """Nonlocality measure max(0, m - 1)."""
    return max(0.0, m_value(rho) - 1.0)


def _sigma_dot(vec: np.ndarray) -> np.ndarray:
    return vec[0] * PAULI[0] + vec[1] * PAULI[1] + vec[2] * PAULI[2]


def bell_operator(settings: BellSettings) -> np.ndarray:
    """a.s x (b + b').s + a'.s x (b - b').s"""
    return (np.kron(_sigma_dot(settings.a), _sigma_dot(settings.b + settings.b_prime))
            + np.kron(_sigma_dot(settings.a_prime), _sigma_dot(settings.b - settings.b_prime)))


def chsh_expectation(rho: TwoQubitState, settings: BellSettings) -> float:
    return float(np.real(np.trace(rho.elements @ bell_operator(settings))))


def _settings_from_angles(x: np.ndarray) -> BellSettings:
    return BellSettings(*(unit_vector(x[2 * i], x[2 * i + 1]) for i in range(4)))


def maximize_chsh(rho: TwoQubitState, restarts: int = 64,
                  seed: int = 0) -> Tuple[float, BellSettings]:
    """Random-restart local ascent of tr(rho B) over Bell settings.

    Returns the best expectation found and its settings. The Horodecki
    bound 2 sqrt(m) is the certified answer; this is an independent check.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    t = correlation_matrix(rho).t
    rng = np.random.default_rng(seed)

    def negative_expectation(x: np.ndarray) -> float:
        a, a_p, b, b_p = (unit_vector(x[2 * i], x[2 * i + 1]) for i in range(4))
        return -float(a @ t @ (b + b_p) + a_p @ t @ (b - b_p))

    best_value = -math.inf
    best_x: Optional[np.ndarray] = None
    for _ in range(restarts):
        x0 = rng.uniform(0.0, 2.0 * math.pi, size=8)
        result = minimize(negative_expectation, x0, method='BFGS',
                          options={'gtol': 1e-10})
        if -result.fun > best_value:
            best_value = -result.fun
            best_x = result.x

    settings = _settings_from_angles(best_x)
    value = chsh_expectation(rho, settings)
    logger.debug(f"CHSH ascent: best {value:.12f} after {restarts} restarts")
    return value, settings


def nonlocality_contrast_terms(rho: TwoQubitState) -> Tuple[float, float]:
    """The two arguments (2C^2, (1 - 2 rho44)^2 + C^2) of the Class22 m formula."""
    require_class(rho, StateClass.CLASS22, operation="nonlocality_contrast_terms")
    c = 2.0 * abs(rho.rho23)
    return 2.0 * c * c, (1.0 - 2.0 * rho.rho44) ** 2 + c * c


def m_class22(rho: TwoQubitState) -> float:
    return max(nonlocality_contrast_terms(rho))


def violates_chsh_class22(rho: TwoQubitState) -> bool:
    """|rho23| > 1/(2 sqrt 2) or rho22 rho33 > S_L/2, checked against m > 1."""
    m = m_class22(rho)
    rho22 = float(rho.elements[1, 1].real)
    rho33 = float(rho.elements[2, 2].real)
    coherence = abs(rho.rho23)
    # Each disjunct is m - 1 > 0 for one branch of the max, up to a factor
    coherence_branch = 8.0 * coherence * coherence - 1.0 > LOCAL_BOUND_TOL
    purity_branch = 4.0 * (rho22 * rho33 - 0.5 * linear_entropy(rho)) > LOCAL_BOUND_TOL
    violates = coherence_branch or purity_branch
    if violates != (m - 1.0 > LOCAL_BOUND_TOL):
        logger.warning(
            f"CHSH criterion disagrees with m = {m:.15g} "
            f"(coherence branch {coherence_branch}, purity branch {purity_branch})")
    return violates
