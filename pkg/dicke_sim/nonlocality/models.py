from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from dicke_sim.errors import InvalidStateError

UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Real 3x3 matrix t_nm = tr(rho sigma_n x sigma_m)."""

    t: np.ndarray

    def __post_init__(self):
        t = np.array(self.t, dtype=float, copy=True)
        if t.shape != (3, 3):
            raise ValueError(f"Correlation matrix must be 3x3, got {t.shape}")
        t.setflags(write=False)
        object.__setattr__(self, 't', t)

    @property
    def gram(self) -> np.ndarray:
        """U = T^T T."""
        return self.t.T @ self.t

    def to_dict(self) -> Dict[str, Any]:
        return {'t': self.t.tolist()}


@dataclass(frozen=True, eq=False)
class BellSettings:
    """Measurement directions a, a', b, b' of a CHSH Bell operator."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ('a', 'a_prime', 'b', 'b_prime'):
            vec = np.array(getattr(self, name), dtype=float, copy=True)
            if vec.shape != (3,):
                raise InvalidStateError(f"Bell setting {name} must be a 3-vector")
            norm = float(np.linalg.norm(vec))
            if abs(norm - 1.0) > UNIT_NORM_TOL:
                raise InvalidStateError(f"Bell setting {name} is not a unit vector (norm {norm:.15g})")
            vec.setflags(write=False)
            object.__setattr__(self, name, vec)

    def to_dict(self) -> Dict[str, List[float]]:
        return {
            'a': self.a.tolist(),
            'a_prime': self.a_prime.tolist(),
            'b': self.b.tolist(),
            'b_prime': self.b_prime.tolist(),
        }


@dataclass
class NonlocalityTimes:
    """Times after which an evolving single-excitation state stops violating CHSH.

    t1 is where rho22*rho33 - S_L/2 turns negative, t2 where |rho23| falls
    below 1/(2 sqrt 2) and t_n = max(t1, t2).
    """

    t1: float = 0.0
    t2: float = 0.0
    t_n: float = 0.0
    flags: List[str] = field(default_factory=list)
    verified_local_after_tn: bool = False

    @property
    def initially_local(self) -> bool:
        return 'initially_local' in self.flags

    def to_dict(self) -> Dict[str, Any]:
        return {
            't1': self.t1,
            't2': self.t2,
            't_n': self.t_n,
            'flags': list(self.flags),
            'verified_local_after_tn': self.verified_local_after_tn,
        }
