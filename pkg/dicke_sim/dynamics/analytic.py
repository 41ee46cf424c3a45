"""Closed-form evolution of single-excitation states.

For states without |11> amplitude the excited block {|10>, |01>} decays
under exp(-Gamma t / 2) with Gamma = [[gamma0, gamma], [gamma, gamma0]]. In the
Bell basis Psi+ decays at gamma0 + gamma, Psi- at gamma0 - gamma and their
coherence at gamma0, so every element is a sum of those three exponentials.
All formulas below use tau = gamma0*t and g = gamma/gamma0.
"""
import logging
from typing import Sequence, Tuple, Union

import numpy as np

from dicke_sim.dynamics.models import DecayParams, Trajectory
from dicke_sim.qstate.models import StateClass, TwoQubitState
from dicke_sim.qstate.states import ground_state, require_class

logger = logging.getLogger(__name__)

ArrayLike = Union[float, Sequence[float], np.ndarray]


def _check_times(tau: np.ndarray) -> None:
    if np.any(~np.isfinite(tau)) or np.any(tau < 0.0):
        raise ValueError("Evolution times must be finite and nonnegative")


def channel_decays(tau: np.ndarray, g: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """exp(-(1+g) tau), exp(-(1-g) tau) and exp(-tau) for the superradiant,
    subradiant and mixed channels. All exponents are nonpositive."""
    return np.exp(-(1.0 + g) * tau), np.exp(-(1.0 - g) * tau), np.exp(-tau)


def single_excitation_elements(rho0: np.ndarray, tau: ArrayLike, g: float) -> np.ndarray:
    """Matrices rho(tau) for a single-excitation ``rho0``, shape (len(tau), 4, 4).

    Every element is a combination of the channel decays with coefficients
    fixed at tau = 0, so no term grows with tau. Only the lower-right 3x3
    block is populated; the first row and column stay zero.
    """
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    _check_times(tau)

    rho23 = complex(rho0[1, 2])
    rho24 = complex(rho0[1, 3])
    rho34 = complex(rho0[2, 3])
    total = rho0[1, 1].real + rho0[2, 2].real
    diff = rho0[1, 1].real - rho0[2, 2].real
    # Populations of the symmetric and antisymmetric Bell pairs
    symmetric = 0.5 * total + rho23.real
    antisymmetric = 0.5 * total - rho23.real

    fast, slow, mixed = channel_decays(tau, g)
    fast_half, slow_half = np.exp(-0.5 * (1.0 + g) * tau), np.exp(-0.5 * (1.0 - g) * tau)
    bell_part = 0.5 * (symmetric * fast + antisymmetric * slow)

    out = np.zeros((tau.size, 4, 4), dtype=complex)
    out[:, 1, 1] = 0.5 * diff * mixed + bell_part
    out[:, 2, 2] = -0.5 * diff * mixed + bell_part
    out[:, 1, 2] = 0.5 * (symmetric * fast - antisymmetric * slow) + 1j * rho23.imag * mixed
    out[:, 1, 3] = 0.5 * (rho24 + rho34) * fast_half + 0.5 * (rho24 - rho34) * slow_half
    out[:, 2, 3] = 0.5 * (rho24 + rho34) * fast_half - 0.5 * (rho24 - rho34) * slow_half
    out[:, 3, 3] = 1.0 - (symmetric * fast + antisymmetric * slow)
    out[:, 2, 1] = np.conj(out[:, 1, 2])
    out[:, 3, 1] = np.conj(out[:, 1, 3])
    out[:, 3, 2] = np.conj(out[:, 2, 3])
    return out


def evolve_analytic(rho0: TwoQubitState, params: DecayParams, t: float) -> TwoQubitState:
    """Closed-form rho(t) for a Class12 or Class22 initial state.

    Raises:
        StateClassError: ``rho0`` has weight or coherence on |11>.
    """
    require_class(rho0, StateClass.CLASS12, StateClass.CLASS22, operation="evolve_analytic")
    if t == 0.0:
        return rho0
    matrix = single_excitation_elements(rho0.elements, params.scaled(t), params.g)[0]
    return TwoQubitState(matrix, tolerances=rho0.tolerances)


def analytic_trajectory(rho0: TwoQubitState, params: DecayParams,
                        times: Sequence[float]) -> Trajectory:
    """The closed form sampled at ``times`` (which must start at 0)."""
    require_class(rho0, StateClass.CLASS12, StateClass.CLASS22, operation="analytic_trajectory")
    times = [float(t) for t in times]
    tau = np.array([params.scaled(t) for t in times])
    stack = single_excitation_elements(rho0.elements, tau, params.g)
    states = [rho0 if t == 0.0 else TwoQubitState(m, tolerances=rho0.tolerances)
              for t, m in zip(times, stack)]
    return Trajectory(params=params, times=times, states=states, method="analytic")


def asymptotic_state(params: DecayParams) -> TwoQubitState:
    """The unique stationary state |00><00| for every g < 1."""
    return ground_state()
