"""Times after which a decaying class-22 state stops violating CHSH.

A class-22 state violates some CHSH inequality iff |rho23| > 1/(2 sqrt 2) or
rho22 rho33 > S_L/2. Along the closed-form evolution each condition fails
at a crossing time; the later of the two is the nonlocality-loss time.
"""
import math
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from dicke_sim.config import Config
from dicke_sim.dynamics.analytic import single_excitation_elements
from dicke_sim.dynamics.models import DecayParams
from dicke_sim.dynamics.propagate import uniform_times
from dicke_sim.nonlocality.chsh import COHERENCE_THRESHOLD, LOCAL_BOUND_TOL, m_value, n_value
from dicke_sim.nonlocality.models import NonlocalityTimes
from dicke_sim.qstate.models import StateClass, TwoQubitState
from dicke_sim.qstate.states import require_class
from dicke_sim.utils.optimize import refine_root, search_grid, sign_changes

logger = logging.getLogger(__name__)

ROOT_TOL = 1e-12
VERIFY_POINTS = 1000
# n(rho) at or below this counts as local on the verification grid
LOCAL_TOL = 1e-9
# conditions are O(1); rounding residue below this is not a sign
NOISE_FLOOR = 1e-15


def search_horizon(params: DecayParams) -> float:
    """max(T, 40/(1 - g)) in API units; the subradiant tail grows like 1/(1 - g)."""
    base = Config.get_float("DICKE_SEARCH_T_END", 15.0)
    return params.api_time(max(base, 40.0 / (1.0 - params.g)))


def _evolved(rho0: TwoQubitState, params: DecayParams, times: Sequence[float]) -> np.ndarray:
    tau = [params.scaled(float(t)) for t in np.atleast_1d(times)]
    return single_excitation_elements(rho0.elements, tau, params.g)


def purity_condition(rho0: TwoQubitState, params: DecayParams,
                     times: Sequence[float]) -> np.ndarray:
    """rho22 rho33 - S_L/2 along the evolution; positive values grant nonlocality.

    S_L is expanded around rho44 = 1 - p, since 1 - tr(rho^2) cancels to
    zero once the excited populations drop below machine precision.
    """
    stack = _evolved(rho0, params, times)
    rho22 = stack[:, 1, 1].real
    rho33 = stack[:, 2, 2].real
    excited = rho22 + rho33
    coherences = np.abs(stack[:, 1, 2]) ** 2 + np.abs(stack[:, 1, 3]) ** 2 + np.abs(stack[:, 2, 3]) ** 2
    linear_entropy = excited * (2.0 - excited) - rho22 ** 2 - rho33 ** 2 - 2.0 * coherences
    return rho22 * rho33 - 0.5 * linear_entropy


def coherence_condition(rho0: TwoQubitState, params: DecayParams,
                        times: Sequence[float]) -> np.ndarray:
    """|rho23| - 1/(2 sqrt 2) along the evolution."""
    return np.abs(_evolved(rho0, params, times)[:, 1, 2]) - COHERENCE_THRESHOLD


def _last_downward_crossing(condition: Callable[[Sequence[float]], np.ndarray],
                            grid: np.ndarray, label: str, flags: List[str]) -> float:
    """Time after which ``condition`` stays nonpositive; 0 if it never is positive."""
    values = condition(grid)
    changes = sign_changes(grid, values, floor=NOISE_FLOOR)
    if len(changes) > 1:
        flags.append(f"multiple_crossings_{label}")
        logger.warning(f"{label}: condition changes sign {len(changes)} times on the search grid; "
                       f"using the last downward crossing")
    if values[-1] > NOISE_FLOOR:
        logger.warning(f"{label}: condition still positive at the search horizon t={grid[-1]:.6g}")
        flags.append(f"unresolved_{label}")
        return float(grid[-1])
    downward = [(a, b) for a, b, direction in changes if direction < 0]
    if not downward:
        return 0.0
    left, right = downward[-1]
    return refine_root(lambda t: float(condition([t])[0]) - NOISE_FLOOR, left, right, tol=ROOT_TOL)


def verify_local_after(rho0: TwoQubitState, params: DecayParams, t_start: float,
                       t_end: float, n_points: int = VERIFY_POINTS) -> Tuple[bool, float]:
    """Check n(rho(t)) = 0 with the full m on a grid over [t_start, t_end].

    Returns (ok, largest n seen).
    """
    if t_end <= t_start:
        return True, 0.0
    times = np.linspace(t_start, t_end, n_points)
    worst = 0.0
    for matrix in _evolved(rho0, params, times):
        state = TwoQubitState(matrix, tolerances=Config.trajectory_tolerances())
        worst = max(worst, m_value(state) - 1.0)
    return worst <= LOCAL_TOL, max(worst, 0.0)


def nonlocality_times(rho0: TwoQubitState, params: DecayParams,
                      t_end: Optional[float] = None) -> NonlocalityTimes:
    """t1, t2 and t_n = max(t1, t2) for a class-22 initial state.

    t1 is where rho22 rho33 - S_L/2 last turns nonpositive, t2 where |rho23|
    last falls to 1/(2 sqrt 2) (0 if it never exceeds it). Initially local
    states give zeros with the ``initially_local`` flag.
    """
    require_class(rho0, StateClass.CLASS22, operation="nonlocality_times")
    if t_end is None:
        t_end = search_horizon(params)
    flags: List[str] = []

    if m_value(rho0) - 1.0 <= LOCAL_BOUND_TOL:
        flags.append("initially_local")
        ok, worst = verify_local_after(rho0, params, 0.0, t_end)
        if not ok:
            logger.warning(f"Initially local state becomes nonlocal later (n up to {worst:.3e})")
        return NonlocalityTimes(flags=flags, verified_local_after_tn=ok)

    early = params.api_time(Config.get_float("DICKE_SEARCH_T_END", 15.0))
    n_grid = Config.get_int("DICKE_SEARCH_GRID", 10000)
    grid = np.union1d(search_grid(min(early, t_end), n_grid), search_grid(t_end, n_grid))

    t1 = _last_downward_crossing(
        lambda ts: purity_condition(rho0, params, ts), grid, "t1", flags)
    t2 = _last_downward_crossing(
        lambda ts: coherence_condition(rho0, params, ts), grid, "t2", flags)
    if t2 > 0.0 and t1 > t2:
        flags.append("ordering_reversed")
        logger.warning(f"t1={t1:.10g} exceeds t2={t2:.10g}; t_n is set by the purity condition")

    t_n = max(t1, t2)
    ok, worst = verify_local_after(rho0, params, t_n, t_end)
    if not ok:
        flags.append("not_local_after_tn")
        logger.warning(f"n(rho(t)) reaches {worst:.3e} after t_n={t_n:.10g}")
    logger.info(f"Nonlocality times: t1={t1:.10g}, t2={t2:.10g}, t_n={t_n:.10g}")
    return NonlocalityTimes(t1=t1, t2=t2, t_n=t_n, flags=flags, verified_local_after_tn=ok)


def nonlocality_curve(rho0: TwoQubitState, params: DecayParams, t_end: float,
                      n_samples: int) -> List[Tuple[float, float]]:
    """(t, n) pairs along the closed-form evolution on a uniform grid."""
    require_class(rho0, StateClass.CLASS22, operation="nonlocality_curve")
    times = uniform_times(t_end, n_samples)
    tolerances = Config.trajectory_tolerances()
    return [(t, n_value(TwoQubitState(m, tolerances=tolerances)))
            for t, m in zip(times, _evolved(rho0, params, times))]


def psi_pm_times(sign: int, params: DecayParams) -> NonlocalityTimes:
    """Closed forms for the Bell pairs Psi(+/-), which decay at rate gamma0 +/- gamma.

    t1 = ln(5/4) / rate and t2 = ln(2) / (2 rate).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    rate = 1.0 + sign * params.g
    t1 = params.api_time(math.log(1.25) / rate)
    t2 = params.api_time(math.log(2.0) / (2.0 * rate))
    flags = ["ordering_reversed"] if t1 > t2 else []
    return NonlocalityTimes(t1=t1, t2=t2, t_n=max(t1, t2), flags=flags)
