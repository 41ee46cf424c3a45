"""Critical times and extremal concurrences of decaying pure states.

The closed forms cover the families Theta = 0, pi, pi/2 of the pure
single-excitation state (and the one-excitation product states); each
closed-form report is cross-checked with a dense-grid plus golden-section
search over the closed-form concurrence curve. Inside this module times are
tau = gamma0*t and are converted to API units on output.
"""
import math
import logging
from typing import List, Optional

from scipy.optimize import brentq

from dicke_sim.config import Config
from dicke_sim.dynamics.models import DecayParams
from dicke_sim.entanglement.curves import concurrence_values
from dicke_sim.entanglement.models import CaseTag, CriticalPoint, ExtremumReport
from dicke_sim.qstate.models import PureStateAngles, StateClass, TwoQubitState
from dicke_sim.qstate.states import make_pure, require_class
from dicke_sim.utils.optimize import find_brackets, golden_section, search_grid

logger = logging.getLogger(__name__)

# Agreement required between closed forms and the oracle
CHECK_TOL = 1e-6
GOLDEN_TOL = 1e-10
# cos^2(psi) or sin(2 phi) below this count as zero
ZERO_WEIGHT = 1e-15
# sin(2 phi) within this of 1 is the maximally entangled case
DEGENERATE_TOL = 1e-12
ANGLE_TOL = 1e-12
ROOT_TOL = 1e-12


def search_horizon(params: DecayParams) -> float:
    """Default search horizon in API time units."""
    return params.api_time(Config.get_float("DICKE_SEARCH_T_END", 15.0))


def numeric_critical_points(rho0: TwoQubitState, params: DecayParams,
                            t_end: Optional[float] = None,
                            n_points: Optional[int] = None) -> List[CriticalPoint]:
    """All interior extrema of C(rho(t)) on [0, t_end], in time order."""
    if t_end is None:
        t_end = search_horizon(params)
    if n_points is None:
        n_points = Config.get_int("DICKE_SEARCH_GRID", 10000)

    grid = search_grid(t_end, n_points)
    values = concurrence_values(rho0, params, grid)

    def curve(t: float) -> float:
        return float(concurrence_values(rho0, params, [t])[0])

    points = []
    for bracket in find_brackets(grid, values):
        t = golden_section(curve, bracket.left, bracket.right, tol=GOLDEN_TOL,
                           maximize=bracket.kind == "max")
        points.append(CriticalPoint(bracket.kind, t, curve(t)))
    logger.debug(f"Oracle found {len(points)} interior extrema on [0, {t_end}]")
    return points


def _attach_check(report: ExtremumReport, rho0: TwoQubitState,
                  params: DecayParams) -> ExtremumReport:
    points = numeric_critical_points(rho0, params)
    report.critical_points = points

    if report.t_max is not None:
        kind, target = "max", report.t_max
    elif report.t_min is not None:
        kind, target = "min", report.t_min
    else:
        if points:
            logger.warning(f"{report.case_tag.value}: closed form is monotone but the oracle "
                           f"found {len(points)} interior extrema")
        return report

    candidates = [p for p in points if p.kind == kind]
    if not candidates:
        logger.warning(f"{report.case_tag.value}: oracle found no interior {kind} near t={target:.6g}")
        return report
    report.numeric_check = min(candidates, key=lambda p: abs(p.t - target))
    deviation = report.deviation
    if deviation is not None and deviation > CHECK_TOL:
        logger.warning(f"{report.case_tag.value}: closed form and oracle differ by {deviation:.3e}")
    return report


def _numeric_report(case_tag: CaseTag, points: List[CriticalPoint],
                    initial: float, closed_form: bool = False) -> ExtremumReport:
    """Report built from oracle points only.

    The maximum is the largest interior maximum; the minimum is the last
    interior minimum before it.
    """
    maxima = [p for p in points if p.kind == "max"]
    best = max(maxima, key=lambda p: p.value) if maxima else None
    minima = [p for p in points if p.kind == "min" and (best is None or p.t < best.t)]
    low = minima[-1] if minima else None
    return ExtremumReport(
        case_tag=case_tag,
        t_min=low.t if low else None,
        t_max=best.t if best else None,
        c_min=low.value if low else None,
        c_max=best.value if best else None,
        monotone=not points,
        numeric_check=best or low,
        initial_concurrence=initial,
        exceeds_initial=(best.value > initial) if best else False,
        closed_form=closed_form,
        critical_points=list(points),
    )


def _zero_report(case_tag: CaseTag) -> ExtremumReport:
    return ExtremumReport(case_tag=case_tag, c_max=0.0, monotone=True,
                          initial_concurrence=0.0, exceeds_initial=False)


def _revival_max(s: float, g: float, ratio: float) -> float:
    """g sqrt(1 - s^2) / sqrt(1 - g^2) * ratio^(-1/(2g)), shared by the Theta = 0 and pi maxima."""
    return g * math.sqrt(max(0.0, 1.0 - s * s)) / math.sqrt(1.0 - g * g) * ratio ** (-1.0 / (2.0 * g))


def extrema_single_excitation(psi: float, params: DecayParams) -> ExtremumReport:
    """Maximum of C(t) = cos^2(psi) exp(-tau) sinh(g tau) for the |10> (or |01>) family."""
    angles = PureStateAngles(phi=0.0, psi=psi)
    weight = math.cos(psi) ** 2
    g = params.g
    if g == 0.0 or weight <= ZERO_WEIGHT:
        # No photon exchange, or no excitation: concurrence stays zero
        return _attach_check(_zero_report(CaseTag.SINGLE_EXCITATION), make_pure(angles), params)

    ratio = (1.0 + g) / (1.0 - g)
    tau_max = math.log(ratio) / (2.0 * g)
    c_max = weight * (g / (1.0 - g)) * ratio ** (-(1.0 + g) / (2.0 * g))
    report = ExtremumReport(
        case_tag=CaseTag.SINGLE_EXCITATION,
        t_max=params.api_time(tau_max),
        c_max=c_max,
        monotone=False,
        initial_concurrence=0.0,
        exceeds_initial=c_max > 0.0,
    )
    return _attach_check(report, make_pure(angles), params)


def extrema_theta_zero(phi: float, params: DecayParams, psi: float = 0.0) -> ExtremumReport:
    """C(t) = cos^2(psi) exp(-tau) |sin 2phi cosh(g tau) - sinh(g tau)|.

    The curve reaches zero at t_min and revives to a maximum at t_max. For
    sin 2phi = 1 the zero is pushed to infinity and the decay is monotone.
    """
    angles = PureStateAngles(phi=phi, psi=psi, theta=0.0)
    rho0 = make_pure(angles)
    weight = math.cos(psi) ** 2
    s = math.sin(2.0 * phi)
    g = params.g
    initial = weight * s
    if weight <= ZERO_WEIGHT:
        return _attach_check(_zero_report(CaseTag.THETA_ZERO), rho0, params)
    if g == 0.0 or s >= 1.0 - DEGENERATE_TOL:
        report = ExtremumReport(case_tag=CaseTag.THETA_ZERO, monotone=True,
                                initial_concurrence=initial, exceeds_initial=False)
        if g > 0.0:
            report.flags.append("no_revival")
        return _attach_check(report, rho0, params)

    tau_min: Optional[float] = None
    if s > ZERO_WEIGHT:
        tau_min = math.log((1.0 + s) / (1.0 - s)) / (2.0 * g)
    ratio = (1.0 + s) * (1.0 + g) / ((1.0 - s) * (1.0 - g))
    tau_max = math.log(ratio) / (2.0 * g)
    c_max = weight * _revival_max(s, g, ratio)
    report = ExtremumReport(
        case_tag=CaseTag.THETA_ZERO,
        t_min=params.api_time(tau_min) if tau_min is not None else None,
        t_max=params.api_time(tau_max),
        c_min=0.0 if tau_min is not None else None,
        c_max=c_max,
        monotone=False,
        initial_concurrence=initial,
        exceeds_initial=c_max > initial,
    )
    return _attach_check(report, rho0, params)


def extrema_theta_pi(phi: float, params: DecayParams, psi: float = 0.0) -> ExtremumReport:
    """C(t) = cos^2(psi) exp(-tau) (sin 2phi cosh(g tau) + sinh(g tau)).

    A maximum exists iff sin 2phi < g, and then it exceeds the initial
    concurrence; otherwise the decay is monotone.
    """
    angles = PureStateAngles(phi=phi, psi=psi, theta=math.pi)
    rho0 = make_pure(angles)
    weight = math.cos(psi) ** 2
    s = math.sin(2.0 * phi)
    g = params.g
    initial = weight * s
    if weight <= ZERO_WEIGHT:
        return _attach_check(_zero_report(CaseTag.THETA_PI), rho0, params)
    if g == 0.0 or s >= g:
        report = ExtremumReport(case_tag=CaseTag.THETA_PI, monotone=True,
                                initial_concurrence=initial, exceeds_initial=False)
        return _attach_check(report, rho0, params)

    ratio = (1.0 - s) * (1.0 + g) / ((1.0 + s) * (1.0 - g))
    tau_max = math.log(ratio) / (2.0 * g)
    c_max = weight * _revival_max(s, g, ratio)
    report = ExtremumReport(
        case_tag=CaseTag.THETA_PI,
        t_max=params.api_time(tau_max),
        c_max=c_max,
        monotone=False,
        initial_concurrence=initial,
        exceeds_initial=c_max > initial,
    )
    return _attach_check(report, rho0, params)


def extrema_theta_half_pi(phi: float, params: DecayParams, psi: float = 0.0) -> ExtremumReport:
    """C(t) = cos^2(psi) exp(-tau) sqrt(sinh^2(g tau) + sin^2 2phi).

    Critical points solve (1 - g) x^2 - 2 cos(4phi) x + (1 + g) = 0 for
    x = exp(2 g tau), which has real roots iff |sin 4phi| <= g. Only roots
    with x > 1 lie at positive times; when the closed form yields none the
    report is taken from the oracle and flagged.
    """
    angles = PureStateAngles(phi=phi, psi=psi, theta=math.pi / 2)
    rho0 = make_pure(angles)
    weight = math.cos(psi) ** 2
    s = math.sin(2.0 * phi)
    g = params.g
    initial = weight * s
    if weight <= ZERO_WEIGHT:
        return _attach_check(_zero_report(CaseTag.THETA_HALF_PI), rho0, params)
    sin4 = math.sin(4.0 * phi)
    cos4 = math.cos(4.0 * phi)
    if g == 0.0 or abs(sin4) >= g:
        report = ExtremumReport(case_tag=CaseTag.THETA_HALF_PI, monotone=True,
                                initial_concurrence=initial, exceeds_initial=False)
        return _attach_check(report, rho0, params)

    disc = math.sqrt(g * g - sin4 * sin4)
    x_low = (cos4 - disc) / (1.0 - g)
    x_high = (cos4 + disc) / (1.0 - g)

    def critical_value(x: float, sign: float) -> float:
        radicand = (g * g * cos4 + sign * g * disc) / (2.0 * (1.0 - g * g))
        return weight * x ** (-1.0 / (2.0 * g)) * math.sqrt(max(0.0, radicand))

    if x_high <= 1.0:
        logger.warning(f"ThetaHalfPi: no critical point at positive time for phi={phi:.6g}, "
                       f"g={g}; using the numeric oracle")
        report = _numeric_report(CaseTag.THETA_HALF_PI, numeric_critical_points(rho0, params), initial)
        report.flags.append("numeric_fallback")
        return report

    tau_max = math.log(x_high) / (2.0 * g)
    c_max = critical_value(x_high, 1.0)
    tau_min: Optional[float] = None
    c_min: Optional[float] = None
    if x_low > 1.0 + ROOT_TOL:
        tau_min = math.log(x_low) / (2.0 * g)
        c_min = critical_value(x_low, -1.0)
    report = ExtremumReport(
        case_tag=CaseTag.THETA_HALF_PI,
        t_min=params.api_time(tau_min) if tau_min is not None else None,
        t_max=params.api_time(tau_max),
        c_min=c_min,
        c_max=c_max,
        monotone=False,
        initial_concurrence=initial,
        exceeds_initial=c_max > initial,
    )
    return _attach_check(report, rho0, params)


def extrema_numeric(rho0: TwoQubitState, params: DecayParams,
                    t_end: Optional[float] = None) -> ExtremumReport:
    """Oracle-only report for any single-excitation initial state."""
    require_class(rho0, StateClass.CLASS12, StateClass.CLASS22, operation="extrema_numeric")
    points = numeric_critical_points(rho0, params, t_end=t_end)
    initial = float(concurrence_values(rho0, params, [0.0])[0])
    return _numeric_report(CaseTag.GENERIC, points, initial)


def _is_angle(value: float, target: float) -> bool:
    return abs(value - target) <= ANGLE_TOL


def extrema_for_angles(angles: PureStateAngles, params: DecayParams) -> ExtremumReport:
    """Dispatch a pure initial state to the matching closed-form family.

    The Theta families scale by cos^2(psi), so psi is passed through;
    any other Theta goes to the numeric oracle.
    """
    s = math.sin(2.0 * angles.phi)
    if math.cos(angles.psi) ** 2 <= ZERO_WEIGHT or s <= ZERO_WEIGHT:
        return extrema_single_excitation(angles.psi, params)
    theta = angles.theta
    if _is_angle(theta, 0.0):
        return extrema_theta_zero(angles.phi, params, psi=angles.psi)
    if _is_angle(theta, math.pi):
        return extrema_theta_pi(angles.phi, params, psi=angles.psi)
    if _is_angle(theta, math.pi / 2) or _is_angle(theta, 3 * math.pi / 2):
        # C depends on theta only through sin^2(theta)
        return extrema_theta_half_pi(angles.phi, params, psi=angles.psi)
    logger.info(f"No closed form for theta={theta:.6g}; using the numeric oracle")
    return extrema_numeric(make_pure(angles), params)


def theta_zero_crossover(params: DecayParams) -> float:
    """phi in (0, pi/4) at which the Theta = 0 revival maximum equals sin 2phi.

    Below it the revived concurrence exceeds the initial one. Returns 0 when
    there is no revival (g = 0).
    """
    g = params.g
    if g == 0.0:
        return 0.0

    def excess(s: float) -> float:
        ratio = (1.0 + s) * (1.0 + g) / ((1.0 - s) * (1.0 - g))
        return _revival_max(s, g, ratio) - s

    s_star = brentq(excess, 1e-15, 1.0 - 1e-12, xtol=1e-14)
    return 0.5 * math.asin(s_star)
