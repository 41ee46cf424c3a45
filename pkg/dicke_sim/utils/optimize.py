"""Grid scans, golden-section refinement and sign-change root finding.

These are the numeric oracles behind the closed-form extremum and
nonlocality-time results: a dense grid locates candidate brackets, then each
bracket is refined independently.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

# Neighbouring grid values closer than this are treated as flat
FLAT_TOL = 1e-14


@dataclass(frozen=True)
class Bracket:
    """Grid interval [left, right] around an interior extremum candidate."""

    kind: str  # "min" or "max"
    left: float
    right: float


def golden_section(f: Callable[[float], float], a: float, b: float,
                   tol: float = 1e-10, maximize: bool = False) -> float:
    """Golden-section search for the extremum of a unimodal ``f`` on [a, b].

    Returns the abscissa of the minimum (or maximum when ``maximize``) to
    within ``tol``.
    """
    sign = -1.0 if maximize else 1.0

    def g(x: float) -> float:
        return sign * f(x)

    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = g(c)
    yd = g(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = g(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = g(d)

    if yc < yd:
        return 0.5 * (a + d)
    return 0.5 * (c + b)


def search_grid(t_end: float, n_points: int) -> np.ndarray:
    """Uniform grid on [0, t_end] densified geometrically near t = 0.

    Extrema that sit closer to the origin than one uniform step (e.g. a
    revival maximum for initial concurrence just below gamma/gamma0) would
    otherwise fall between the first two nodes.
    """
    uniform = np.linspace(0.0, t_end, n_points)
    step = t_end / (n_points - 1)
    near_zero = np.geomspace(step * 1e-7, step, 64)
    return np.unique(np.concatenate([uniform, near_zero]))


def find_brackets(times: Sequence[float], values: Sequence[float]) -> List[Bracket]:
    """Interior local extrema of sampled ``values``, as neighbour brackets."""
    v = np.asarray(values, dtype=float)
    t = np.asarray(times, dtype=float)
    brackets: List[Bracket] = []
    for i in range(1, len(v) - 1):
        left, mid, right = v[i - 1], v[i], v[i + 1]
        if max(abs(mid - left), abs(mid - right)) < FLAT_TOL:
            continue
        if mid >= left and mid > right:
            brackets.append(Bracket("max", float(t[i - 1]), float(t[i + 1])))
        elif mid <= left and mid < right:
            brackets.append(Bracket("min", float(t[i - 1]), float(t[i + 1])))
    return brackets


def sign_changes(times: Sequence[float], values: Sequence[float],
                 floor: float = 0.0) -> List[Tuple[float, float, int]]:
    """Grid intervals on which ``values`` crosses ``floor``.

    Values at or below ``floor`` count as nonpositive. Returns
    (left, right, direction) triples where direction is -1 for a
    positive-to-nonpositive change and +1 for the reverse.
    """
    v = np.asarray(values, dtype=float)
    t = np.asarray(times, dtype=float)
    positive = v > floor
    changes = []
    for i in np.flatnonzero(positive[:-1] != positive[1:]):
        direction = -1 if positive[i] else 1
        changes.append((float(t[i]), float(t[i + 1]), direction))
    return changes


def refine_root(f: Callable[[float], float], a: float, b: float,
                tol: float = 1e-12) -> float:
    """Bisection refinement of a sign change bracketed by [a, b]."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    return float(bisect(f, a, b, xtol=tol, maxiter=500))
