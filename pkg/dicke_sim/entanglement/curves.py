"""Concurrence and excitation curves of decaying single-excitation states."""
import math
import logging
from typing import List, Sequence, Tuple

import numpy as np

from dicke_sim.dynamics.analytic import channel_decays, single_excitation_elements
from dicke_sim.dynamics.models import DecayParams
from dicke_sim.dynamics.propagate import uniform_times
from dicke_sim.qstate.models import PureStateAngles, StateClass, TwoQubitState
from dicke_sim.qstate.states import require_class

logger = logging.getLogger(__name__)


def concurrence_values(rho0: TwoQubitState, params: DecayParams,
                       times: Sequence[float]) -> np.ndarray:
    """C(rho(t)) = 2 |rho23(t)|, with rho23(t) split into its decay channels.

    2 rho23(t) = (1/2 tot + Re rho23) e^{-(1+g) tau} - (1/2 tot - Re rho23) e^{-(1-g) tau}
    + 2i Im rho23 e^{-tau}.
    """
    require_class(rho0, StateClass.CLASS12, StateClass.CLASS22, operation="concurrence_at")
    tau = np.asarray([params.scaled(float(t)) for t in np.atleast_1d(times)], dtype=float)
    if np.any(tau < 0.0):
        raise ValueError("Evolution times must be nonnegative")
    m = rho0.elements
    rho23 = complex(m[1, 2])
    total = m[1, 1].real + m[2, 2].real
    fast, slow, mixed = channel_decays(tau, params.g)
    doubled = ((0.5 * total + rho23.real) * fast - (0.5 * total - rho23.real) * slow
               + 2j * rho23.imag * mixed)
    return np.clip(np.abs(doubled), 0.0, 1.0)


def concurrence_at(rho0: TwoQubitState, params: DecayParams, t: float) -> float:
    """Closed-form concurrence of the evolved state at time ``t``."""
    return float(concurrence_values(rho0, params, [t])[0])


def concurrence_curve(rho0: TwoQubitState, params: DecayParams, t_end: float,
                      n_samples: int) -> List[Tuple[float, float]]:
    """(t, C) pairs on a uniform grid over [0, t_end]."""
    times = uniform_times(t_end, n_samples)
    return list(zip(times, (float(c) for c in concurrence_values(rho0, params, times))))


def pure_concurrence_at(angles: PureStateAngles, params: DecayParams, t: float) -> float:
    """Concurrence at ``t`` of the pure initial state given by ``angles``.

    cos^2(psi) exp(-tau) sqrt((sin 2phi cos theta cosh g tau - sinh g tau)^2
    + sin^2 2phi sin^2 theta), evaluated in decay-channel form; xi does not enter.
    """
    tau = params.scaled(t)
    if tau < 0.0:
        raise ValueError("Evolution times must be nonnegative")
    s = math.sin(2.0 * angles.phi)
    g = params.g
    s_cos = s * math.cos(angles.theta)
    real = 0.5 * (s_cos + 1.0) * math.exp(-(1.0 + g) * tau) + 0.5 * (s_cos - 1.0) * math.exp(-(1.0 - g) * tau)
    imag = s * math.sin(angles.theta) * math.exp(-tau)
    return min(1.0, math.cos(angles.psi) ** 2 * math.hypot(real, imag))


def excitation_values(rho0: TwoQubitState, params: DecayParams,
                      times: Sequence[float]) -> np.ndarray:
    """(1 - 2 rho44(t))^2 along the closed-form evolution."""
    require_class(rho0, StateClass.CLASS12, StateClass.CLASS22, operation="excitation_contrast")
    tau = [params.scaled(float(t)) for t in np.atleast_1d(times)]
    rho44 = single_excitation_elements(rho0.elements, tau, params.g)[:, 3, 3].real
    return (1.0 - 2.0 * rho44) ** 2


def excitation_contrast(rho0: TwoQubitState, params: DecayParams, t: float) -> float:
    """(1 - 2 rho44(t))^2, the population term of m for class-22 states."""
    return float(excitation_values(rho0, params, [t])[0])
