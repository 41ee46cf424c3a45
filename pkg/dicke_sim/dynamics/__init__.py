"""
Collective spontaneous emission of two two-level atoms.

The Lindblad generator, a fixed-step RK4 propagator, the matrix-exponential
propagator and the closed-form solution for single-excitation states.
"""

from dicke_sim.dynamics.models import DecayParams, Trajectory, TrajectorySample
from dicke_sim.dynamics.lindblad import (
    collective_rates, evolve_exact, evolve_numeric, evolve_numeric_batch,
    exact_trajectory, lindblad_rhs, liouvillian, rk4_step,
)
from dicke_sim.dynamics.analytic import (
    analytic_trajectory, asymptotic_state, evolve_analytic, single_excitation_elements,
)
from dicke_sim.dynamics.propagate import evolve, uniform_times

__all__ = [
    'DecayParams', 'Trajectory', 'TrajectorySample',
    'collective_rates', 'evolve_exact', 'evolve_numeric', 'evolve_numeric_batch',
    'exact_trajectory', 'lindblad_rhs', 'liouvillian', 'rk4_step',
    'analytic_trajectory', 'asymptotic_state', 'evolve_analytic', 'single_excitation_elements',
    'evolve', 'uniform_times',
]
