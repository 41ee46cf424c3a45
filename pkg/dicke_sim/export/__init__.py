"""
CSV and JSON rendering of simulation output.
"""

from dicke_sim.export.formatter import OutputFormatter, element_columns

__all__ = ['OutputFormatter', 'element_columns']
