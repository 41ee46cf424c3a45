"""Constructors and classification of two-qubit states."""
import math
import logging
from typing import Optional

import numpy as np

from dicke_sim.errors import InvalidStateError, StateClassError
from dicke_sim.qstate.models import PureStateAngles, StateClass, Tolerances, TwoQubitState

logger = logging.getLogger(__name__)


def pure_vector(angles: PureStateAngles) -> np.ndarray:
    """State vector of the pure single-excitation family in the fixed basis."""
    return np.array([
        0.0,
        math.cos(angles.phi) * math.cos(angles.psi),
        math.sin(angles.phi) * math.cos(angles.psi) * np.exp(1j * angles.theta),
        math.sin(angles.psi) * np.exp(1j * angles.xi),
    ], dtype=complex)


def make_pure(angles: PureStateAngles) -> TwoQubitState:
    """Rank-one projector |Psi><Psi| for the given angles."""
    vec = pure_vector(angles)
    return TwoQubitState(np.outer(vec, vec.conj()))


def ground_state() -> TwoQubitState:
    """|00><00|, the unique stationary state of the decay."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = 1.0
    return TwoQubitState(rho)


def bell_state(sign: int = 1) -> TwoQubitState:
    """Projector on Psi(+/-) = (|10> +/- |01>)/sqrt(2)."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    vec = np.array([0.0, 1.0, float(sign), 0.0], dtype=complex) / math.sqrt(2)
    return TwoQubitState(np.outer(vec, vec.conj()))


def class12_state(rho22: float, rho33: float, rho44: float, rho23: complex,
                  rho24: complex = 0.0, rho34: complex = 0.0,
                  tolerances: Optional[Tolerances] = None) -> TwoQubitState:
    """Single-excitation state from its independent upper-triangle entries."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho22
    rho[2, 2] = rho33
    rho[3, 3] = rho44
    rho[1, 2] = rho23
    rho[2, 1] = np.conj(rho23)
    rho[1, 3] = rho24
    rho[3, 1] = np.conj(rho24)
    rho[2, 3] = rho34
    rho[3, 2] = np.conj(rho34)
    return TwoQubitState(rho, tolerances=tolerances)


def class22_state(rho22: float, rho33: float, rho44: float, rho23: complex,
                  tolerances: Optional[Tolerances] = None) -> TwoQubitState:
    """Single-excitation state without ground-state coherences."""
    return class12_state(rho22, rho33, rho44, rho23, tolerances=tolerances)


def classify(rho: TwoQubitState, tol: Optional[float] = None) -> StateClass:
    """Most specific class whose zero pattern holds within ``tol``."""
    if tol is None:
        tol = rho.tolerances.class_zero
    m = rho.elements
    if np.any(np.abs(m[0, :]) > tol) or np.any(np.abs(m[:, 0]) > tol):
        return StateClass.GENERAL
    if abs(m[1, 3]) <= tol and abs(m[2, 3]) <= tol:
        return StateClass.CLASS22
    return StateClass.CLASS12


def require_class(rho: TwoQubitState, *allowed: StateClass, operation: str = "operation") -> StateClass:
    """Classify ``rho`` and raise StateClassError unless it is in ``allowed``."""
    tag = classify(rho)
    if tag not in allowed:
        names = ", ".join(a.value for a in allowed)
        raise StateClassError(f"{operation} requires a state in {{{names}}}, got {tag.value}")
    return tag


def _random_psd_block(rng: np.random.Generator, dim: int) -> np.ndarray:
    ginibre = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    block = ginibre @ ginibre.conj().T
    return block / np.trace(block).real


def random_class12_state(rng: np.random.Generator) -> TwoQubitState:
    """Random full-rank state supported on span{|10>, |01>, |00>}."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1:, 1:] = _random_psd_block(rng, 3)
    return TwoQubitState(0.5 * (rho + rho.conj().T))


def random_class22_state(rng: np.random.Generator) -> TwoQubitState:
    """Random state with a 2x2 excited block and an independent ground weight."""
    ground = rng.uniform(0.0, 1.0)
    rho = np.zeros((4, 4), dtype=complex)
    rho[1:3, 1:3] = (1.0 - ground) * _random_psd_block(rng, 2)
    rho[3, 3] = ground
    rho = 0.5 * (rho + rho.conj().T)
    # Renormalize away the rounding of the product above
    rho /= np.trace(rho).real
    return TwoQubitState(rho)


def state_from_document(document: dict) -> TwoQubitState:
    """Build a state from the state-file schema (``angles`` or ``matrix``)."""
    if not isinstance(document, dict):
        raise InvalidStateError("State document must be a JSON object")
    if 'angles' in document:
        return make_pure(PureStateAngles.from_dict(document['angles']))
    if 'matrix' in document:
        return TwoQubitState.from_dict(document)
    raise InvalidStateError("State document needs an 'angles' or 'matrix' key")
