import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from dicke_sim.dynamics.models import DecayParams
from dicke_sim.errors import ScenarioError
from dicke_sim.qstate.models import PureStateAngles, TwoQubitState

OUTPUTS = ("trajectory", "concurrence", "nonlocality", "extrema", "tn", "validate")
FORMATS = ("csv", "json")


@dataclass
class ScenarioConfig:
    """One run of the simulator: initial state, decay parameters and outputs.

    ``angles`` is set when the state came from the pure-state angles, which
    lets ``extrema`` pick a closed-form family. ``sweep_g`` lists extra
    photon-exchange ratios run in order after ``g`` is replaced by each.
    """

    state: TwoQubitState
    angles: Optional[PureStateAngles] = None
    state_source: str = "angles"
    gamma0: float = 1.0
    g: float = 0.0
    t_end: float = 10.0
    n_samples: int = 1001
    outputs: List[str] = field(default_factory=lambda: ["trajectory"])
    format: str = "csv"
    seed: int = 0
    absolute_time: bool = False
    dual_path: bool = False
    sweep_g: List[float] = field(default_factory=list)

    def __post_init__(self):
        # DecayParams raises DomainError for gamma0 <= 0 or g outside [0, 1)
        for g in [self.g] + list(self.sweep_g):
            DecayParams(gamma0=self.gamma0, g=g)
        if not self.t_end > 0.0:
            raise ScenarioError(f"t_end must be positive, got {self.t_end}")
        if self.n_samples < 2:
            raise ScenarioError(f"n_samples must be >= 2, got {self.n_samples}")
        unknown = [o for o in self.outputs if o not in OUTPUTS]
        if unknown:
            raise ScenarioError(f"Unknown outputs {unknown}; expected a subset of {list(OUTPUTS)}")
        if self.format not in FORMATS:
            raise ScenarioError(f"format must be one of {list(FORMATS)}, got {self.format!r}")

    @property
    def params(self) -> DecayParams:
        return DecayParams(gamma0=self.gamma0, g=self.g, absolute_time=self.absolute_time)

    def runs(self) -> List['ScenarioConfig']:
        """This scenario, or one copy per swept g in input order."""
        if not self.sweep_g:
            return [self]
        return [dataclasses.replace(self, g=g, sweep_g=[]) for g in self.sweep_g]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'state': self.state.to_dict(),
            'angles': self.angles.to_dict() if self.angles else None,
            'state_source': self.state_source,
            'gamma0': self.gamma0,
            'g': self.g,
            't_end': self.t_end,
            'n_samples': self.n_samples,
            'outputs': list(self.outputs),
            'format': self.format,
            'seed': self.seed,
            'absolute_time': self.absolute_time,
            'dual_path': self.dual_path,
            'sweep_g': list(self.sweep_g),
        }
