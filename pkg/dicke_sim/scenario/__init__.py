"""
Scenario configuration for command-line runs.
"""

from dicke_sim.scenario.models import FORMATS, OUTPUTS, ScenarioConfig
from dicke_sim.scenario.loader import ScenarioLoader

__all__ = ['FORMATS', 'OUTPUTS', 'ScenarioConfig', 'ScenarioLoader']
