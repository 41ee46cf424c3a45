"""Seeded invariant and oracle-equivalence suites run by ``dicke-sim validate``."""
import math
import time
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from dicke_sim.config import Config
from dicke_sim.dynamics.analytic import single_excitation_elements
from dicke_sim.dynamics.lindblad import evolve_exact, evolve_numeric_batch
from dicke_sim.dynamics.models import DecayParams
from dicke_sim.entanglement.extrema import (
    extrema_single_excitation, extrema_theta_half_pi, extrema_theta_pi, numeric_critical_points,
)
from dicke_sim.nonlocality.chsh import m_class22, m_value, n_value, violates_chsh_class22
from dicke_sim.nonlocality.times import nonlocality_times, psi_pm_times
from dicke_sim.qstate.measures import concurrence, concurrence_single_excitation
from dicke_sim.qstate.models import PureStateAngles, TwoQubitState
from dicke_sim.qstate.states import (
    bell_state, classify, ground_state, make_pure, random_class12_state, random_class22_state,
)

logger = logging.getLogger(__name__)

ORACLE_G_VALUES = (0.0, 0.25, 0.5, 0.75, 0.9)

# (g, sample times, RK4 states of shape (samples, n_states, 4, 4), initial states)
OracleStack = Tuple[float, np.ndarray, np.ndarray, List[TwoQubitState]]


@dataclass
class SuiteResult:
    """Outcome of one invariant group: ``metric`` compared against ``threshold``."""

    name: str
    passed: bool
    metric: float = 0.0
    threshold: float = 0.0
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'metric': self.metric,
            'threshold': self.threshold,
            'detail': self.detail,
            'seconds': round(self.seconds, 3),
        }


def _numeric_stacks(rng: np.random.Generator, n_states: int) -> List[OracleStack]:
    initial = [random_class12_state(rng) for _ in range(n_states)]
    out = []
    for g in ORACLE_G_VALUES:
        params = DecayParams(g=g)
        times, stack = evolve_numeric_batch(initial, params, 10.0, n_steps=10000, sample_every=100)
        out.append((g, times, stack, initial))
    return out


def suite_oracle_equivalence(stacks: List[OracleStack]) -> SuiteResult:
    """Closed form against RK4 (step 1e-3) for random Class12 states on [0, 10]."""
    worst = 0.0
    for g, times, stack, initial in stacks:
        for i, rho0 in enumerate(initial):
            analytic = single_excitation_elements(rho0.elements, times, g)
            worst = max(worst, float(np.max(np.abs(analytic - stack[:, i]))))
    return SuiteResult("oracle_equivalence", worst <= 1e-6, worst, 1e-6,
                       f"{len(stacks[0][3])} states x g in {list(ORACLE_G_VALUES)}")


def suite_trajectory_hygiene(stacks: List[OracleStack]) -> SuiteResult:
    """Trace, Hermiticity, positivity and Class12 pattern along every RK4 sample."""
    trace_err = herm_err = class_err = 0.0
    min_eig = 1.0
    for _, _, stack, _ in stacks:
        trace_err = max(trace_err, float(np.max(np.abs(np.trace(stack, axis1=-2, axis2=-1) - 1.0))))
        herm_err = max(herm_err, float(np.max(np.abs(stack - np.conj(np.swapaxes(stack, -1, -2))))))
        min_eig = min(min_eig, float(np.min(np.linalg.eigvalsh(stack))))
        class_err = max(class_err, float(np.max(np.abs(stack[..., 0, :]))))
    passed = trace_err <= 1e-9 and herm_err <= 1e-12 and min_eig >= -1e-8 and class_err <= 1e-9
    return SuiteResult("trajectory_hygiene", passed, max(trace_err, class_err), 1e-9,
                       f"trace_err={trace_err:.3e} herm_err={herm_err:.3e} "
                       f"min_eig={min_eig:.3e} class_err={class_err:.3e}")


def suite_concurrence_shortcut(rng: np.random.Generator, n_states: int = 10000) -> SuiteResult:
    """2|rho23| against the full Wootters computation on random Class12 states."""
    worst = 0.0
    for _ in range(n_states):
        rho = random_class12_state(rng)
        worst = max(worst, abs(concurrence(rho) - concurrence_single_excitation(rho)))
    return SuiteResult("concurrence_shortcut", worst <= 1e-10, worst, 1e-10, f"{n_states} states")


def suite_single_excitation_extrema() -> SuiteResult:
    """Maximum of the |10> family against the oracle; C_max grows with g."""
    reports = [extrema_single_excitation(0.0, DecayParams(g=g)) for g in (0.5, 0.7, 0.9)]
    deviations = [r.deviation if r.deviation is not None else math.inf for r in reports]
    peaks = [r.c_max or 0.0 for r in reports]
    increasing = all(a < b for a, b in zip(peaks, peaks[1:]))
    spot = reports[0]
    spot_err = max(abs((spot.t_max or 0.0) - math.log(3.0)), abs((spot.c_max or 0.0) - 3.0 ** -1.5))
    worst = max(deviations + [spot_err])
    return SuiteResult("single_excitation_extrema", increasing and worst <= 1e-6, worst, 1e-6,
                       f"c_max={[round(p, 10) for p in peaks]}")


def suite_theta_pi_revival() -> SuiteResult:
    """Theta = pi: revival above the initial concurrence iff sin 2phi < g."""
    params = DecayParams(g=0.75)
    worst = 0.0
    ok = True
    for s in (0.1, 0.3, 0.5):
        report = extrema_theta_pi(0.5 * math.asin(s), params)
        ok = ok and bool(report.exceeds_initial) and report.numeric_check is not None
        worst = max(worst, report.deviation if report.deviation is not None else math.inf)
    monotone = extrema_theta_pi(0.5 * math.asin(0.8), params)
    ok = ok and monotone.monotone and not monotone.critical_points
    return SuiteResult("theta_pi_revival", ok and worst <= 1e-6, worst, 1e-6)


def _theta_pi_maximum(s: float, g: float) -> float:
    report = extrema_theta_pi(0.5 * math.asin(s), DecayParams(g=g))
    return report.c_max if report.c_max is not None else math.nan


def suite_revival_limits() -> SuiteResult:
    """Theta = pi maximum tends to (1 + s)/2 as g -> 1 and to g as s -> g."""
    gaps = [abs(_theta_pi_maximum(0.3, g) - 0.65) for g in (0.99, 0.999, 0.9999)]
    shrinking = all(a > b for a, b in zip(gaps, gaps[1:]))
    edge = abs(_theta_pi_maximum(0.75 - 1e-4, 0.75) - 0.75)
    passed = shrinking and gaps[1] <= 3e-3 and gaps[2] <= 5e-4 and edge <= 5e-3
    return SuiteResult("revival_limits", passed, gaps[1], 3e-3,
                       f"gaps={[f'{x:.3e}' for x in gaps]} edge={edge:.3e}")


def suite_theta_half_pi_profile() -> SuiteResult:
    """Theta = pi/2: one minimum then one maximum, or none when |sin 4phi| >= g."""
    params = DecayParams(g=0.75)
    report = extrema_theta_half_pi(math.pi / 20, params)
    kinds = [p.kind for p in report.critical_points]
    worst = 0.0
    for point in report.critical_points:
        closed = report.closed_point(point.kind)
        if closed is None:
            worst = math.inf
            continue
        worst = max(worst, abs(closed.t - point.t), abs(closed.value - point.value))
    flat = extrema_theta_half_pi(math.pi / 8, params)
    passed = kinds == ["min", "max"] and worst <= 1e-6 and flat.monotone and not flat.critical_points
    return SuiteResult("theta_half_pi_profile", passed, worst, 1e-6, f"kinds={kinds}")


def suite_chsh_criteria(rng: np.random.Generator, n_states: int = 10000) -> SuiteResult:
    """Class22 shortcut of m and the two-condition violation test against the full m."""
    worst = 0.0
    mismatches = 0
    for _ in range(n_states):
        rho = random_class22_state(rng)
        m = m_value(rho)
        worst = max(worst, abs(m_class22(rho) - m))
        if violates_chsh_class22(rho) != (m > 1.0 + 1e-12):
            mismatches += 1
    fixed = (abs(m_value(bell_state(1)) - 2.0) <= 1e-12 and abs(n_value(bell_state(1)) - 1.0) <= 1e-12
             and abs(m_value(ground_state()) - 1.0) <= 1e-12)
    return SuiteResult("chsh_criteria", worst <= 1e-10 and mismatches == 0 and fixed, worst, 1e-10,
                       f"{n_states} states, {mismatches} criterion mismatches")


def suite_psi_pm_times() -> SuiteResult:
    """Root-found t1, t2 for Psi(+/-) against their closed forms."""
    worst = 0.0
    verified = True
    for g in (0.25, 0.5, 0.75):
        params = DecayParams(g=g)
        for sign in (1, -1):
            found = nonlocality_times(bell_state(sign), params)
            expected = psi_pm_times(sign, params)
            worst = max(worst, abs(found.t1 - expected.t1), abs(found.t2 - expected.t2),
                        abs(found.t_n - expected.t2))
            verified = verified and found.verified_local_after_tn
    slow = nonlocality_times(bell_state(-1), DecayParams(g=0.99))
    passed = worst <= 1e-9 and verified and slow.t_n > 30.0
    return SuiteResult("psi_pm_times", passed, worst, 1e-9, f"t_n(psi-, g=0.99)={slow.t_n:.6g}")


def _is_non_increasing(values: np.ndarray, tol: float = 1e-9) -> bool:
    return bool(np.all(np.diff(values) <= tol))


def suite_nonlocality_contrast() -> SuiteResult:
    """n(rho(t)) decays monotonically while concurrence of a Theta = pi state revives."""
    params = DecayParams(g=0.7)
    times = np.linspace(0.0, 15.0, 1000)
    tolerances = Config.trajectory_tolerances()

    def n_curve(rho0: TwoQubitState) -> np.ndarray:
        stack = single_excitation_elements(rho0.elements, times, params.g)
        return np.array([n_value(TwoQubitState(m, tolerances=tolerances)) for m in stack])

    ok = True
    details = []
    for c0 in (0.3, 0.8, 0.9, 1.0):
        rho0 = make_pure(PureStateAngles(phi=0.5 * math.asin(c0), psi=0.0, theta=math.pi))
        n = n_curve(rho0)
        monotone = _is_non_increasing(n)
        reaches_zero = bool(n[-1] <= 1e-9)
        ok = ok and monotone and reaches_zero
        if c0 == 0.3:
            maxima = [p for p in numeric_critical_points(rho0, params) if p.kind == "max"]
            revives = bool(maxima) and max(p.value for p in maxima) > 0.3
            ok = ok and revives
            details.append(f"C(0.3) revives={revives}")
        details.append(f"C0={c0}: monotone={monotone}")
    return SuiteResult("nonlocality_contrast", ok, 0.0, 0.0, "; ".join(details))


def suite_input_state(rho0: TwoQubitState) -> SuiteResult:
    """Dual-path check of the configured state: closed form (or expm) against RK4."""
    params = DecayParams(g=0.5)
    times, stack = evolve_numeric_batch([rho0], params, 10.0, n_steps=10000, sample_every=100)
    if classify(rho0).single_excitation:
        reference = single_excitation_elements(rho0.elements, times, params.g)
        label = "analytic"
    else:
        reference = np.array([evolve_exact(rho0, params, float(t)).elements for t in times])
        label = "exact"
    worst = float(np.max(np.abs(reference - stack[:, 0])))
    return SuiteResult("input_state", worst <= 1e-6, worst, 1e-6, f"numeric vs {label}")


def run_suites(seed: int = 0, state: Optional[TwoQubitState] = None,
               n_states: int = 100) -> List[SuiteResult]:
    """Run every suite with a generator seeded by ``seed``."""
    rng = np.random.default_rng(seed)
    stacks = _numeric_stacks(rng, n_states)
    suites: List[Tuple[str, Callable[[], SuiteResult]]] = [
        ("oracle_equivalence", lambda: suite_oracle_equivalence(stacks)),
        ("trajectory_hygiene", lambda: suite_trajectory_hygiene(stacks)),
        ("concurrence_shortcut", lambda: suite_concurrence_shortcut(rng)),
        ("single_excitation_extrema", suite_single_excitation_extrema),
        ("theta_pi_revival", suite_theta_pi_revival),
        ("revival_limits", suite_revival_limits),
        ("theta_half_pi_profile", suite_theta_half_pi_profile),
        ("chsh_criteria", lambda: suite_chsh_criteria(rng)),
        ("psi_pm_times", suite_psi_pm_times),
        ("nonlocality_contrast", suite_nonlocality_contrast),
    ]
    if state is not None:
        suites.append(("input_state", lambda: suite_input_state(state)))

    results = []
    for name, suite in suites:
        started = time.monotonic()
        try:
            result = suite()
        except Exception as e:
            logger.exception(f"Suite {name} raised {type(e).__name__}: {e}")
            result = SuiteResult(name, False, detail=f"{type(e).__name__}: {e}")
        result.seconds = time.monotonic() - started
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"Suite {name}: {'PASS' if result.passed else 'FAIL'} "
                          f"(metric {result.metric:.3e}, threshold {result.threshold:.1e})")
        results.append(result)
    return results
