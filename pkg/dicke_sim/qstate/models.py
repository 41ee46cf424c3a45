import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from scipy import linalg

from dicke_sim.errors import InvalidStateError
from dicke_sim.utils.helpers import complex_from_dict, complex_to_dict


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances for state validation and classification."""

    hermitian: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-10
    class_zero: float = 1e-12

    def to_dict(self) -> Dict[str, float]:
        return {
            'hermitian': self.hermitian,
            'trace': self.trace,
            'psd': self.psd,
            'class_zero': self.class_zero,
        }


class StateClass(str, Enum):
    """Zero-pattern classes of two-qubit density matrices.

    CLASS12 has a vanishing first row and column (no amplitude on |11>);
    CLASS22 additionally has rho24 = rho34 = 0.
    """

    GENERAL = "General"
    CLASS12 = "Class12"
    CLASS22 = "Class22"

    @property
    def single_excitation(self) -> bool:
        return self in (StateClass.CLASS12, StateClass.CLASS22)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Immutable, validated 4x4 density matrix in the basis |11>, |10>, |01>, |00>.

    Construction fails with InvalidStateError unless the matrix is Hermitian,
    has unit trace and is positive semidefinite within ``tolerances``. When
    no tolerances are given the configured defaults apply.
    """

    elements: np.ndarray
    tolerances: Optional[Tolerances] = field(default=None, repr=False)

    def __post_init__(self):
        tolerances = self.tolerances
        if tolerances is None:
            from dicke_sim.config import Config
            tolerances = Config.tolerances()
            object.__setattr__(self, 'tolerances', tolerances)

        matrix = np.array(self.elements, dtype=complex, copy=True)
        if matrix.shape != (4, 4):
            raise InvalidStateError(f"Density matrix must be 4x4, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise InvalidStateError("Density matrix contains non-finite entries")
        matrix.setflags(write=False)
        object.__setattr__(self, 'elements', matrix)
        self._validate(tolerances)

    def _validate(self, tol: Tolerances) -> None:
        herm = self.hermitian_error
        if herm > tol.hermitian:
            raise InvalidStateError(f"Density matrix is not Hermitian (deviation {herm:.3e})")

        trace_err = self.trace_error
        if trace_err > tol.trace:
            raise InvalidStateError(f"Density matrix trace differs from 1 by {trace_err:.3e}")

        min_eig = self.min_eigenvalue
        if min_eig < -tol.psd:
            raise InvalidStateError(
                f"Density matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")

        # positivity bounds the single-excitation coherence by the populations
        m = self.elements
        if np.all(np.abs(m[0, :]) <= tol.class_zero):
            bound = math.sqrt(max(m[1, 1].real, 0.0) * max(m[2, 2].real, 0.0))
            if abs(m[1, 2]) > bound + tol.psd:
                raise InvalidStateError(
                    f"|rho23| = {abs(m[1, 2]):.6g} exceeds sqrt(rho22*rho33) = {bound:.6g}")

    def element(self, j: int, k: int) -> complex:
        """Matrix element rho_jk with 1-based indices."""
        return complex(self.elements[j - 1, k - 1])

    @property
    def rho23(self) -> complex:
        return complex(self.elements[1, 2])

    @property
    def rho44(self) -> float:
        return float(self.elements[3, 3].real)

    @property
    def hermitian_error(self) -> float:
        m = self.elements
        return float(np.max(np.abs(m - m.conj().T)))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.elements))

    @property
    def trace_error(self) -> float:
        return abs(self.trace - 1.0)

    @property
    def eigenvalues(self) -> np.ndarray:
        m = self.elements
        return linalg.eigvalsh(0.5 * (m + m.conj().T))

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def allclose(self, other: 'TwoQubitState', atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.elements, other.elements, rtol=0.0, atol=atol))

    @classmethod
    def from_dict(cls, data: Dict[str, Any],
                  tolerances: Optional[Tolerances] = None) -> 'TwoQubitState':
        """Create a state from the ``{"matrix": [[{"re", "im"}, ...], ...]}`` schema."""
        rows = data.get('matrix')
        if not isinstance(rows, list) or len(rows) != 4:
            raise InvalidStateError("State 'matrix' must be a list of 4 rows")
        matrix = np.zeros((4, 4), dtype=complex)
        for j, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 4:
                raise InvalidStateError(f"State matrix row {j + 1} must have 4 entries")
            for k, entry in enumerate(row):
                try:
                    matrix[j, k] = complex_from_dict(entry)
                except (TypeError, ValueError) as e:
                    raise InvalidStateError(
                        f"Bad matrix entry at ({j + 1},{k + 1}): {entry!r}") from e
        return cls(matrix, tolerances=tolerances)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'matrix': [[complex_to_dict(v) for v in row] for row in self.elements]
        }


@dataclass(frozen=True)
class PureStateAngles:
    """Angles of the most general pure single-excitation state.

    Psi = cos(phi)cos(psi)|10> + sin(phi)cos(psi)e^{i theta}|01> + sin(psi)e^{i xi}|00>
    """

    phi: float
    psi: float
    theta: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        half_pi = math.pi / 2
        two_pi = 2 * math.pi
        for name, value, upper, closed in (
            ('phi', self.phi, half_pi, True),
            ('psi', self.psi, half_pi, True),
            ('theta', self.theta, two_pi, False),
            ('xi', self.xi, two_pi, False),
        ):
            if not math.isfinite(value):
                raise InvalidStateError(f"Angle {name} must be finite, got {value}")
            in_range = 0.0 <= value <= upper if closed else 0.0 <= value < upper
            if not in_range:
                bracket = ']' if closed else ')'
                raise InvalidStateError(
                    f"Angle {name}={value} outside [0, {upper:.6g}{bracket}")

    @property
    def initial_concurrence(self) -> float:
        return math.cos(self.psi) ** 2 * math.sin(2 * self.phi)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PureStateAngles':
        try:
            return cls(
                phi=float(data.get('phi', 0.0)),
                psi=float(data.get('psi', 0.0)),
                theta=float(data.get('theta', 0.0)),
                xi=float(data.get('xi', 0.0)),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidStateError):
                raise
            raise InvalidStateError(f"Bad angle specification: {data!r}") from e

    def to_dict(self) -> Dict[str, float]:
        return {'phi': self.phi, 'psi': self.psi, 'theta': self.theta, 'xi': self.xi}
