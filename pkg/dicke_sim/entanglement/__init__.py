"""
Concurrence evolution of single-excitation states and its critical points.
"""

from dicke_sim.entanglement.models import CaseTag, CriticalPoint, ExtremumReport
from dicke_sim.entanglement.curves import (
    concurrence_at, concurrence_curve, concurrence_values, excitation_contrast,
    excitation_values, pure_concurrence_at,
)
from dicke_sim.entanglement.extrema import (
    extrema_for_angles, extrema_numeric, extrema_single_excitation, extrema_theta_half_pi,
    extrema_theta_pi, extrema_theta_zero, numeric_critical_points, theta_zero_crossover,
)

__all__ = [
    'CaseTag', 'CriticalPoint', 'ExtremumReport',
    'concurrence_at', 'concurrence_curve', 'concurrence_values', 'excitation_contrast',
    'excitation_values', 'pure_concurrence_at',
    'extrema_for_angles', 'extrema_numeric', 'extrema_single_excitation', 'extrema_theta_half_pi',
    'extrema_theta_pi', 'extrema_theta_zero', 'numeric_critical_points', 'theta_zero_crossover',
]
