"""Choice between the closed-form and the numeric propagator."""
import math
import logging
from typing import List, Tuple

import numpy as np

from dicke_sim.dynamics.analytic import analytic_trajectory
from dicke_sim.dynamics.lindblad import default_step, evolve_numeric
from dicke_sim.dynamics.models import DecayParams, Trajectory
from dicke_sim.qstate.models import TwoQubitState
from dicke_sim.qstate.states import classify

logger = logging.getLogger(__name__)

METHODS = ("auto", "analytic", "numeric")


def uniform_times(t_end: float, n_samples: int) -> List[float]:
    """``n_samples`` equally spaced times on [0, t_end]."""
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    return [float(t) for t in np.linspace(0.0, t_end, n_samples)]


def numeric_sampling(params: DecayParams, t_end: float, n_samples: int) -> Tuple[int, int]:
    """(n_steps, sample_every) so that RK4 output lands on ``n_samples`` uniform times
    with a step no larger than the configured one."""
    intervals = n_samples - 1
    per_interval = max(1, int(math.ceil((t_end / intervals) / default_step(params) - 1e-9)))
    return per_interval * intervals, per_interval


def evolve(rho0: TwoQubitState, params: DecayParams, t_end: float, n_samples: int,
           method: str = "auto") -> Trajectory:
    """Sample rho(t) on a uniform grid.

    ``auto`` uses the closed form for single-excitation states and RK4
    otherwise; the chosen path is recorded in ``Trajectory.method``.
    """
    if method not in METHODS:
        raise ValueError(f"Unknown propagation method {method!r}; expected one of {METHODS}")
    if method == "auto":
        method = "analytic" if classify(rho0).single_excitation else "numeric"
    logger.info(f"Propagating with the {method} path to t={t_end} ({n_samples} samples, g={params.g})")

    if method == "analytic":
        return analytic_trajectory(rho0, params, uniform_times(t_end, n_samples))
    uniform_times(t_end, n_samples)  # argument checks
    n_steps, sample_every = numeric_sampling(params, t_end, n_samples)
    return evolve_numeric(rho0, params, t_end, n_steps=n_steps, sample_every=sample_every)
