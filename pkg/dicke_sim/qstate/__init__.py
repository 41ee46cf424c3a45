"""
Two-qubit states in the basis |11>, |10>, |01>, |00>.

This package provides state construction and validation, the zero-pattern
classification and the static entanglement measures.
"""

from dicke_sim.qstate.models import PureStateAngles, StateClass, Tolerances, TwoQubitState
from dicke_sim.qstate.states import (
    bell_state, class12_state, class22_state, classify, ground_state, make_pure,
    random_class12_state, random_class22_state, require_class, state_from_document,
)
from dicke_sim.qstate.measures import (
    concurrence, concurrence_single_excitation, entanglement_of_formation,
    linear_entropy, pure_entanglement, reduced_state,
)

__all__ = [
    'PureStateAngles', 'StateClass', 'Tolerances', 'TwoQubitState',
    'bell_state', 'class12_state', 'class22_state', 'classify', 'ground_state',
    'make_pure', 'random_class12_state', 'random_class22_state', 'require_class',
    'state_from_document', 'concurrence', 'concurrence_single_excitation',
    'entanglement_of_formation', 'linear_entropy', 'pure_entanglement', 'reduced_state',
]
