import json
import math
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from dicke_sim.config import Config
from dicke_sim.errors import DickeError, InvalidStateError, ScenarioError
from dicke_sim.qstate.models import PureStateAngles, TwoQubitState
from dicke_sim.qstate.states import bell_state, ground_state, state_from_document
from dicke_sim.scenario.models import ScenarioConfig

logger = logging.getLogger(__name__)

ResolvedState = Tuple[TwoQubitState, Optional[PureStateAngles], str]


class ScenarioLoader:
    """Builds scenarios from YAML files, JSON state files and command-line flags.

    Flags given on the command line override the corresponding keys of a
    scenario file.
    """

    # Inline --state names and the pure-state angles they correspond to
    NAMED_STATES = {
        'psi+': (lambda: bell_state(1), PureStateAngles(phi=math.pi / 4, psi=0.0)),
        'psi-': (lambda: bell_state(-1), PureStateAngles(phi=math.pi / 4, psi=0.0, theta=math.pi)),
        'ground': (ground_state, PureStateAngles(phi=0.0, psi=math.pi / 2)),
    }

    def __init__(self):
        self.yaml = YAML(typ='safe')

    def load_file(self, path: Union[str, Path]) -> Dict[str, Any]:
        """Read a YAML scenario file into a plain dictionary."""
        path = Path(path)
        logger.debug(f"Loading scenario from {path}")
        try:
            with open(path, 'r') as f:
                data = self.yaml.load(f)
        except OSError as e:
            raise ScenarioError(f"Cannot read scenario file {path}: {e}") from e
        except YAMLError as e:
            raise ScenarioError(f"Invalid YAML in scenario file {path}: {e}") from e
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ScenarioError(f"Scenario file {path} must contain a mapping")
        return dict(data)

    def parse_state(self, value: Any) -> ResolvedState:
        """Resolve a state given as a name, inline JSON, a mapping or a file path.

        Returns:
            (state, angles or None, description of the source)
        """
        if isinstance(value, dict):
            return self._from_document(value, "inline")

        text = str(value).strip()
        named = self.NAMED_STATES.get(text.lower())
        if named is not None:
            factory, angles = named
            return factory(), angles, text.lower()

        if text.startswith('{'):
            try:
                document = json.loads(text)
            except json.JSONDecodeError as e:
                raise InvalidStateError(f"Inline state is not valid JSON: {e}") from e
            return self._from_document(document, "inline")

        path = Path(text)
        try:
            with open(path, 'r') as f:
                document = json.load(f)
        except OSError as e:
            raise InvalidStateError(f"Cannot read state file {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise InvalidStateError(f"State file {path} is not valid JSON: {e}") from e
        return self._from_document(document, str(path))

    @staticmethod
    def _from_document(document: Any, source: str) -> ResolvedState:
        state = state_from_document(document)
        angles = PureStateAngles.from_dict(document['angles']) if 'angles' in document else None
        return state, angles, source

    def resolve_state(self, args: Any, data: Dict[str, Any]) -> ResolvedState:
        """Initial state from --state, then angle flags, then the scenario file."""
        if getattr(args, 'state', None):
            return self.parse_state(args.state)

        flags = {name: getattr(args, name, None) for name in ('phi', 'psi', 'theta', 'xi')}
        if any(v is not None for v in flags.values()):
            angles = PureStateAngles.from_dict({k: v for k, v in flags.items() if v is not None})
            return self._from_document({'angles': angles.to_dict()}, "angles")

        if 'state' in data:
            return self.parse_state(data['state'])
        if 'angles' in data:
            return self._from_document({'angles': dict(data['angles'])}, "angles")
        raise ScenarioError(
            "No initial state given; use --state, --phi/--psi/--theta/--xi or a scenario file")

    def build(self, args: Any, outputs: Optional[List[str]] = None,
              default_format: str = 'csv') -> ScenarioConfig:
        """Merge a scenario file (``args.scenario``) with command-line flags."""
        scenario_path = getattr(args, 'scenario', None)
        data = self.load_file(scenario_path) if scenario_path else {}

        def pick(flag: str, key: str, default: Any) -> Any:
            value = getattr(args, flag, None)
            return value if value is not None else data.get(key, default)

        state, angles, source = self.resolve_state(args, data)
        sweep = data.get('sweep') or {}
        if not isinstance(sweep, dict):
            raise ScenarioError("'sweep' must be a mapping such as {g: [0.5, 0.7]}")

        try:
            return ScenarioConfig(
                state=state,
                angles=angles,
                state_source=source,
                gamma0=float(pick('gamma0', 'gamma0', 1.0)),
                g=float(pick('g', 'g', 0.0)),
                t_end=float(pick('t_end', 't_end', 10.0)),
                n_samples=int(pick('samples', 'n_samples', 1001)),
                outputs=list(outputs or data.get('outputs', ['trajectory'])),
                format=str(pick('format', 'format', default_format)),
                seed=int(pick('seed', 'seed', Config.get_int("DICKE_SEED", 0))),
                absolute_time=bool(getattr(args, 'absolute_time', False) or data.get('absolute_time', False)),
                dual_path=bool(getattr(args, 'validate', False) or data.get('validate', False)),
                sweep_g=[float(g) for g in sweep.get('g', [])],
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, DickeError):
                raise
            raise ScenarioError(f"Bad scenario value: {e}") from e
