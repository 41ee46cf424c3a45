"""Lindblad generator of collective spontaneous emission and numeric propagators."""
import math
import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from dicke_sim.config import Config
from dicke_sim.dynamics.models import DecayParams, Trajectory, TrajectorySample
from dicke_sim.errors import IntegrationError, InvalidStateError
from dicke_sim.qstate.models import Tolerances, TwoQubitState

logger = logging.getLogger(__name__)

# sigma^- maps |1> (first basis vector) to |0>
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
LOWERING = (np.kron(SIGMA_MINUS, IDENTITY2), np.kron(IDENTITY2, SIGMA_MINUS))
RAISING = tuple(op.conj().T for op in LOWERING)

MatrixLike = Union[TwoQubitState, np.ndarray]


def _as_matrix(rho: MatrixLike) -> np.ndarray:
    return rho.elements if isinstance(rho, TwoQubitState) else np.asarray(rho, dtype=complex)


def rate_matrix(params: DecayParams) -> np.ndarray:
    """gamma_kl with gamma_AA = gamma_BB = gamma0 and gamma_AB = gamma_BA = gamma."""
    return np.array([[params.gamma0, params.gamma], [params.gamma, params.gamma0]])


def lindblad_rhs(rho: MatrixLike, params: DecayParams) -> np.ndarray:
    """L_D rho in physical time units (rates gamma0, gamma)."""
    m = _as_matrix(rho)
    rates = rate_matrix(params)
    out = np.zeros((4, 4), dtype=complex)
    for k in range(2):
        for l in range(2):
            gamma_kl = rates[k, l]
            if gamma_kl == 0.0:
                continue
            jump = RAISING[k] @ LOWERING[l]
            out += 0.5 * gamma_kl * (
                2.0 * LOWERING[k] @ m @ RAISING[l] - jump @ m - m @ jump
            )
    return out


def liouvillian(params: DecayParams, scale: float = 1.0) -> np.ndarray:
    """16x16 matrix of ``scale * L_D`` acting on row-major vectorized states."""
    columns = []
    for index in range(16):
        basis = np.zeros(16, dtype=complex)
        basis[index] = 1.0
        columns.append(lindblad_rhs(basis.reshape(4, 4), params).reshape(16))
    return scale * np.column_stack(columns)


def collective_rates(params: DecayParams) -> Tuple[float, float]:
    """Decay rates (gamma0 + gamma, gamma0 - gamma) of Psi+ and Psi-."""
    return params.gamma0 + params.gamma, params.gamma0 - params.gamma


def rk4_step(f: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step of an autonomous system."""
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_propagator(generator: np.ndarray, h: float) -> np.ndarray:
    """The RK4 step map of the linear system dy/dt = generator @ y.

    For a linear system one RK4 step is multiplication by a fixed matrix;
    applying the step to the identity builds it, so stepping a batch of
    states costs one matrix product.
    """
    return rk4_step(lambda y: generator @ y, np.eye(generator.shape[0], dtype=complex), h)


def default_step(params: DecayParams) -> float:
    """Configured RK4 step converted to API time units."""
    return params.api_time(Config.get_float("DICKE_RK4_STEP", 1e-3))


def _hermitize(stack: np.ndarray) -> np.ndarray:
    return 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))


def evolve_numeric_batch(
    initial: Sequence[MatrixLike],
    params: DecayParams,
    t_end: float,
    n_steps: int,
    sample_every: int = 1,
) -> Tuple[np.ndarray, np.ndarray]:
    """Integrate several initial states with the same fixed-step RK4 scheme.

    Returns:
        (times, states) with ``states`` of shape (n_samples, n_states, 4, 4),
        re-Hermitized. Samples are taken every ``sample_every`` steps and at
        the final step.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    sample_every = max(1, int(sample_every))

    h = t_end / n_steps
    step = rk4_propagator(liouvillian(params, params.generator_scale), h)
    y = np.column_stack([_as_matrix(rho).reshape(16) for rho in initial])

    sample_steps = list(range(0, n_steps + 1, sample_every))
    if sample_steps[-1] != n_steps:
        sample_steps.append(n_steps)

    samples = [y.copy()]
    current = 0
    for target in sample_steps[1:]:
        while current < target:
            y = step @ y
            current += 1
        samples.append(y.copy())

    times = np.array(sample_steps, dtype=float) * h
    stack = np.stack(samples)  # (n_samples, 16, n_states)
    states = np.transpose(stack, (0, 2, 1)).reshape(len(samples), y.shape[1], 4, 4)
    logger.debug(f"RK4: {n_steps} steps of {h:.3e} for {y.shape[1]} states, g={params.g}")
    return times, _hermitize(states)


def evolve_numeric(
    rho0: TwoQubitState,
    params: DecayParams,
    t_end: float,
    n_steps: Optional[int] = None,
    sample_every: int = 1,
    tolerances: Optional[Tolerances] = None,
) -> Trajectory:
    """Fixed-step RK4 integration of d rho/dt = L_D rho.

    Raises:
        IntegrationError: a sampled state violates the trajectory tolerances
            (typically a step too large for the decay rates).
    """
    if n_steps is None:
        n_steps = max(1, int(math.ceil(t_end / default_step(params) - 1e-9)))
    if tolerances is None:
        tolerances = Config.trajectory_tolerances()

    times, stack = evolve_numeric_batch([rho0], params, t_end, n_steps, sample_every)
    states: List[TwoQubitState] = []
    for t, matrix in zip(times, stack[:, 0]):
        try:
            states.append(TwoQubitState(matrix, tolerances=tolerances))
        except InvalidStateError as e:
            raise IntegrationError(
                f"RK4 left the state space at t={t:.6g} (step {t_end / n_steps:.3e}): {e}") from e
    return Trajectory(params=params, times=[float(t) for t in times], states=states, method="numeric")


def evolve_exact(rho0: TwoQubitState, params: DecayParams, t: float,
                 tolerances: Optional[Tolerances] = None) -> TwoQubitState:
    """exp(L t) applied to the vectorized state; valid for every initial state."""
    if t == 0.0:
        return rho0
    if tolerances is None:
        tolerances = Config.trajectory_tolerances()
    propagator = linalg.expm(liouvillian(params, params.generator_scale) * t)
    matrix = (propagator @ rho0.elements.reshape(16)).reshape(4, 4)
    return TwoQubitState(_hermitize(matrix), tolerances=tolerances)


def exact_trajectory(rho0: TwoQubitState, params: DecayParams,
                     times: Sequence[float]) -> Trajectory:
    states = [evolve_exact(rho0, params, float(t)) for t in times]
    return Trajectory(params=params, times=[float(t) for t in times], states=states, method="exact")
