import hashlib
import json
from typing import Any, Dict, List, Union

import numpy as np


def compute_hash(data: Union[str, Dict[str, Any], List[Any]]) -> str:
    """Compute a hash of the given data.

    Args:
        data: Data to hash (string or JSON-serializable object)

    Returns:
        Hexadecimal hash string
    """
    if not isinstance(data, str):
        # Convert to a deterministic JSON string
        data = json.dumps(data, sort_keys=True)

    return hashlib.sha256(data.encode('utf-8')).hexdigest()


def unit_vector(theta: float, phi: float) -> np.ndarray:
    """Unit vector in R^3 from polar angle ``theta`` and azimuth ``phi``."""
    return np.array([
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ])


def complex_to_dict(value: complex) -> Dict[str, float]:
    """Encode a complex number as ``{"re": ..., "im": ...}``."""
    return {"re": float(np.real(value)), "im": float(np.imag(value))}


def complex_from_dict(data: Any) -> complex:
    """Decode ``{"re": ..., "im": ...}`` (or a bare real number)."""
    if isinstance(data, dict):
        return complex(float(data.get("re", 0.0)), float(data.get("im", 0.0)))
    return complex(float(data))
