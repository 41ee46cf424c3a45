from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class CaseTag(str, Enum):
    """Initial-state family an extremum analysis was carried out for."""

    SINGLE_EXCITATION = "SingleExcitation"
    THETA_ZERO = "ThetaZero"
    THETA_PI = "ThetaPi"
    THETA_HALF_PI = "ThetaHalfPi"
    GENERIC = "Generic"


@dataclass(frozen=True)
class CriticalPoint:
    """Interior extremum located by the grid and golden-section oracle."""

    kind: str  # "min" or "max"
    t: float
    value: float

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 't': self.t, 'value': self.value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CriticalPoint':
        return cls(kind=data['kind'], t=float(data['t']), value=float(data['value']))


@dataclass
class ExtremumReport:
    """Critical times and concurrences of one decaying initial state.

    Closed-form fields are ``t_min``/``c_min`` and ``t_max``/``c_max``;
    ``numeric_check`` is the oracle point matched to the reported maximum
    (or minimum when there is no maximum). ``closed_form`` is False when the
    values themselves come from the oracle.
    """

    case_tag: CaseTag
    t_min: Optional[float] = None
    t_max: Optional[float] = None
    c_min: Optional[float] = None
    c_max: Optional[float] = None
    monotone: bool = False
    numeric_check: Optional[CriticalPoint] = None
    initial_concurrence: float = 0.0
    exceeds_initial: Optional[bool] = None
    closed_form: bool = True
    critical_points: List[CriticalPoint] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.t_min is not None and self.t_max is not None and not self.t_min < self.t_max:
            raise ValueError(f"t_min={self.t_min} must precede t_max={self.t_max}")
        if self.c_min is not None and self.c_max is not None and self.c_min > self.c_max:
            raise ValueError(f"c_min={self.c_min} exceeds c_max={self.c_max}")
        for name in ('c_min', 'c_max'):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} is not a concurrence")

    def closed_point(self, kind: str) -> Optional[CriticalPoint]:
        t, value = (self.t_max, self.c_max) if kind == "max" else (self.t_min, self.c_min)
        if t is None or value is None:
            return None
        return CriticalPoint(kind, t, value)

    @property
    def deviation(self) -> Optional[float]:
        """Largest of |t| and |C| differences between closed form and oracle."""
        if self.numeric_check is None:
            return None
        closed = self.closed_point(self.numeric_check.kind)
        if closed is None:
            return None
        return max(abs(closed.t - self.numeric_check.t), abs(closed.value - self.numeric_check.value))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'case_tag': self.case_tag.value,
            't_min': self.t_min,
            't_max': self.t_max,
            'c_min': self.c_min,
            'c_max': self.c_max,
            'monotone': self.monotone,
            'numeric_check': self.numeric_check.to_dict() if self.numeric_check else None,
            'deviation': self.deviation,
            'initial_concurrence': self.initial_concurrence,
            'exceeds_initial': self.exceeds_initial,
            'closed_form': self.closed_form,
            'critical_points': [p.to_dict() for p in self.critical_points],
            'flags': list(self.flags),
        }
