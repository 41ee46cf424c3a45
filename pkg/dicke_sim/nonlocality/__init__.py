"""
Bell-CHSH nonlocality of two-qubit states and of their decay.
"""

from dicke_sim.nonlocality.models import BellSettings, CorrelationMatrix, NonlocalityTimes
from dicke_sim.nonlocality.chsh import (
    chsh_expectation, chsh_max, correlation_matrix, m_class22, m_value,
    maximize_chsh, n_value, nonlocality_contrast_terms, violates_chsh_class22,
)

__all__ = [
    'BellSettings', 'CorrelationMatrix', 'NonlocalityTimes',
    'chsh_expectation', 'chsh_max', 'correlation_matrix', 'm_class22', 'm_value',
    'maximize_chsh', 'n_value', 'nonlocality_contrast_terms', 'violates_chsh_class22',
]
