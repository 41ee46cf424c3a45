import io
import json
import sys
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from dicke_sim.__version__ import __version__
from dicke_sim.dynamics.models import Trajectory

logger = logging.getLogger(__name__)

# 17 significant digits round-trip every double
FLOAT_FORMAT = '%.17g'
SCALAR_COLUMNS = ['C', 'm', 'n', 'S_L', 'trace_err', 'min_eig']


def element_columns() -> List[str]:
    """rho11_re, rho11_im, rho12_re, ... in row-major order."""
    return [f"rho{j}{k}_{part}" for j in range(1, 5) for k in range(1, 5) for part in ('re', 'im')]


class OutputFormatter:
    """Renders trajectories, curves and reports as deterministic CSV or JSON text.

    CSV output starts with ``# key: value`` metadata lines (no timestamps, so
    identical runs give identical bytes) followed by a single header row.
    """

    @staticmethod
    def metadata(method: str, config_hash: str, **extra: Any) -> Dict[str, Any]:
        meta: Dict[str, Any] = {'version': __version__, 'config_hash': config_hash, 'method': method}
        meta.update(extra)
        return meta

    @staticmethod
    def trajectory_frame(trajectory: Trajectory,
                         extra: Optional[Dict[str, Sequence[float]]] = None) -> pd.DataFrame:
        """One row per sample: t, the 16 complex elements, then the scalars."""
        stack = np.array([s.elements for s in trajectory.states]).reshape(len(trajectory), 16)
        parts = np.empty((len(trajectory), 32))
        parts[:, 0::2] = stack.real
        parts[:, 1::2] = stack.imag
        frame = pd.DataFrame(parts, columns=element_columns())
        frame.insert(0, 't', trajectory.times)
        scalars = pd.DataFrame([s.to_dict() for s in trajectory.samples])
        for column in SCALAR_COLUMNS:
            frame[column] = scalars[column].to_numpy()
        for name, values in (extra or {}).items():
            frame[name] = list(values)
        return frame

    @staticmethod
    def curves_frame(times: Sequence[float], columns: Dict[str, Sequence[float]]) -> pd.DataFrame:
        frame = pd.DataFrame({'t': list(times)})
        for name, values in columns.items():
            frame[name] = list(values)
        return frame

    @staticmethod
    def stack_frames(frames: Sequence[pd.DataFrame], key: str, values: Sequence[float]) -> pd.DataFrame:
        """Concatenate sweep frames in input order with a leading ``key`` column."""
        tagged = []
        for frame, value in zip(frames, values):
            frame = frame.copy()
            frame.insert(0, key, value)
            tagged.append(frame)
        return pd.concat(tagged, ignore_index=True)

    @staticmethod
    def to_csv(frame: pd.DataFrame, meta: Dict[str, Any]) -> str:
        buffer = io.StringIO()
        for key, value in meta.items():
            buffer.write(f"# {key}: {value}\n")
        frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return buffer.getvalue()

    @staticmethod
    def to_json(payload: Any, meta: Dict[str, Any]) -> str:
        return json.dumps({'metadata': meta, 'data': payload}, indent=2) + "\n"

    @staticmethod
    def write(text: str, out: Optional[str] = None) -> None:
        """Write to ``out`` or to stdout."""
        if out is None or out == '-':
            sys.stdout.write(text)
            return
        with open(out, 'w', newline='') as f:
            f.write(text)
        logger.info(f"Wrote {len(text)} bytes to {out}")
