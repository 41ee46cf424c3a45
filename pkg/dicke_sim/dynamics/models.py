import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from dicke_sim.errors import DomainError
from dicke_sim.qstate.measures import concurrence, linear_entropy
from dicke_sim.qstate.models import Tolerances, TwoQubitState
from dicke_sim.nonlocality.chsh import m_value


@dataclass(frozen=True)
class DecayParams:
    """Single-atom emission rate gamma0 and photon-exchange ratio g = gamma/gamma0.

    Times handed to the API are in units of 1/gamma0 (the gamma0*t axis)
    unless ``absolute_time`` is set, in which case they are raw times and
    gamma0 carries the units.
    """

    gamma0: float = 1.0
    g: float = 0.0
    absolute_time: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.gamma0) and self.gamma0 > 0.0):
            raise DomainError(f"gamma0 must be a positive rate, got {self.gamma0}")
        if not math.isfinite(self.g) or self.g < 0.0:
            raise DomainError(f"g must lie in [0, 1), got {self.g}")
        if self.g >= 1.0:
            raise DomainError(
                f"g = {self.g} >= 1 is the small-separation regime gamma = gamma0, "
                "which is not supported (closed forms need gamma < gamma0)")

    @property
    def gamma(self) -> float:
        return self.g * self.gamma0

    def scaled(self, t: float) -> float:
        """gamma0 * t for an API time ``t``."""
        return self.gamma0 * t if self.absolute_time else t

    def api_time(self, scaled_t: float) -> float:
        """Inverse of :meth:`scaled`."""
        return scaled_t / self.gamma0 if self.absolute_time else scaled_t

    @property
    def generator_scale(self) -> float:
        """d(physical time)/d(API time)."""
        return 1.0 if self.absolute_time else 1.0 / self.gamma0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DecayParams':
        return cls(
            gamma0=float(data.get('gamma0', 1.0)),
            g=float(data.get('g', 0.0)),
            absolute_time=bool(data.get('absolute_time', False)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {'gamma0': self.gamma0, 'g': self.g, 'absolute_time': self.absolute_time}


@dataclass(frozen=True)
class TrajectorySample:
    """Scalars derived from one sampled state."""

    t: float
    concurrence: float
    m: float
    n: float
    linear_entropy: float
    trace_error: float
    min_eigenvalue: float

    @classmethod
    def from_state(cls, t: float, state: TwoQubitState) -> 'TrajectorySample':
        m = m_value(state)
        return cls(
            t=float(t),
            concurrence=concurrence(state),
            m=m,
            n=max(0.0, m - 1.0),
            linear_entropy=linear_entropy(state),
            trace_error=state.trace_error,
            min_eigenvalue=state.min_eigenvalue,
        )

    def to_dict(self) -> Dict[str, float]:
        return {
            't': self.t,
            'C': self.concurrence,
            'm': self.m,
            'n': self.n,
            'S_L': self.linear_entropy,
            'trace_err': self.trace_error,
            'min_eig': self.min_eigenvalue,
        }


@dataclass
class Trajectory:
    """Time-sampled states with their derived scalars.

    ``method`` records the propagator ("analytic", "numeric" or "exact").
    """

    params: DecayParams
    times: List[float]
    states: List[TwoQubitState]
    samples: List[TrajectorySample] = field(default_factory=list)
    method: str = "numeric"

    def __post_init__(self):
        if not (len(self.times) == len(self.states)):
            raise ValueError("times and states must have equal length")
        if self.times and self.times[0] != 0.0:
            raise ValueError("Trajectory must start at t = 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("Trajectory times must be strictly increasing")
        if not self.samples:
            self.samples = [TrajectorySample.from_state(t, s) for t, s in zip(self.times, self.states)]
        elif len(self.samples) != len(self.times):
            raise ValueError("samples must align with times")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_state(self) -> TwoQubitState:
        return self.states[-1]

    def element_series(self, j: int, k: int) -> np.ndarray:
        """rho_jk(t) along the trajectory (1-based indices)."""
        return np.array([s.elements[j - 1, k - 1] for s in self.states])

    def max_trace_error(self) -> float:
        return max(s.trace_error for s in self.samples)

    def min_eigenvalue(self) -> float:
        return min(s.min_eigenvalue for s in self.samples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': self.params.to_dict(),
            'method': self.method,
            'times': list(self.times),
            'states': [s.to_dict() for s in self.states],
            'scalars': [s.to_dict() for s in self.samples],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any],
                  tolerances: Optional[Tolerances] = None) -> 'Trajectory':
        return cls(
            params=DecayParams.from_dict(data.get('params', {})),
            times=[float(t) for t in data.get('times', [])],
            states=[TwoQubitState.from_dict(s, tolerances=tolerances) for s in data.get('states', [])],
            method=data.get('method', 'numeric'),
        )
