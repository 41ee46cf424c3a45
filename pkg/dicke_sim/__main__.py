import sys
import argparse
import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from dicke_sim.__version__ import __version__
from dicke_sim.config import Config
from dicke_sim.dynamics.analytic import analytic_trajectory
from dicke_sim.dynamics.lindblad import exact_trajectory
from dicke_sim.dynamics.models import Trajectory
from dicke_sim.dynamics.propagate import evolve, uniform_times
from dicke_sim.entanglement.curves import concurrence_values, excitation_values
from dicke_sim.entanglement.extrema import extrema_for_angles, extrema_numeric
from dicke_sim.entanglement.models import ExtremumReport
from dicke_sim.errors import DomainError, IntegrationError, InvalidStateError, ScenarioError
from dicke_sim.export.formatter import OutputFormatter
from dicke_sim.nonlocality.times import nonlocality_times
from dicke_sim.qstate.measures import is_pure
from dicke_sim.qstate.models import StateClass
from dicke_sim.qstate.states import classify, require_class
from dicke_sim.scenario.loader import ScenarioLoader
from dicke_sim.scenario.models import ScenarioConfig
from dicke_sim.utils.helpers import compute_hash
from dicke_sim.utils.logging import setup_logging
from dicke_sim.validation import SuiteResult, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_DOMAIN = 3

# Dual-path agreement required with --validate
DUAL_PATH_TOL = 1e-6


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", type=str,
                        help="YAML scenario file; flags override its keys")
    parser.add_argument("--state", type=str,
                        help="Initial state: psi+, psi-, ground, inline JSON or a JSON state file")
    parser.add_argument("--phi", type=float, help="Pure-state angle phi in [0, pi/2]")
    parser.add_argument("--psi", type=float, help="Pure-state angle psi in [0, pi/2]")
    parser.add_argument("--theta", type=float, help="Relative phase theta in [0, 2pi)")
    parser.add_argument("--xi", type=float, help="Ground-state phase xi in [0, 2pi)")
    parser.add_argument("--gamma0", type=float, help="Single-atom emission rate (default 1)")
    parser.add_argument("--g", type=float, help="Photon-exchange ratio gamma/gamma0 in [0, 1)")
    parser.add_argument("--t-end", dest="t_end", type=float,
                        help="Final time, in units of 1/gamma0 unless --absolute-time")
    parser.add_argument("--samples", type=int, help="Number of output samples (>= 2)")
    parser.add_argument("--format", choices=["csv", "json"], help="Output format")
    parser.add_argument("--out", type=str, help="Output path (default stdout)")
    parser.add_argument("--seed", type=int, help="Seed of the randomized validation suites")
    parser.add_argument("--validate", action="store_true",
                        help="Also run the second propagator and report the deviation")
    parser.add_argument("--absolute-time", dest="absolute_time", action="store_true",
                        help="Interpret times as raw times instead of gamma0*t")


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="dicke-sim",
        description="Entanglement and CHSH nonlocality of two atoms decaying by collective spontaneous emission")
    parser.add_argument("--dump-config", action="store_true",
                        help="Print current configuration and exit")
    parser.add_argument("--version", action="store_true",
                        help="Show version information and exit")

    subparsers = parser.add_subparsers(dest="command")
    for name, help_text in (
        ("evolve", "Write the sampled trajectory rho(t) with C, m, n, S_L"),
        ("extrema", "Report critical times and extremal concurrences"),
        ("tn", "Report the times t1, t2, t_n at which CHSH violation is lost"),
        ("curves", "Write C, (1 - 2 rho44)^2, m and n on a uniform grid"),
        ("validate", "Run the seeded invariant and oracle suites"),
    ):
        _add_run_options(subparsers.add_parser(name, help=help_text))

    return parser.parse_args(args)


def _metadata(config: ScenarioConfig, method: str, **extra: Any) -> Dict[str, Any]:
    meta = OutputFormatter.metadata(
        method=method,
        config_hash=compute_hash(config.to_dict()),
        state=config.state_source,
        gamma0=config.gamma0,
        time_units="absolute" if config.absolute_time else "1/gamma0",
    )
    if not config.sweep_g:
        meta['g'] = config.g
    meta.update(extra)
    return meta


def _emit_frames(config: ScenarioConfig, frames: List[pd.DataFrame], payloads: List[Any],
                 meta: Dict[str, Any], out: Optional[str]) -> None:
    """Write one run, or a sweep in input order, as CSV or JSON."""
    if config.format == "json":
        payload = payloads if config.sweep_g else payloads[0]
        OutputFormatter.write(OutputFormatter.to_json(payload, meta), out)
        return
    frame = (OutputFormatter.stack_frames(frames, 'g', config.sweep_g)
             if config.sweep_g else frames[0])
    OutputFormatter.write(OutputFormatter.to_csv(frame, meta), out)


def _second_path(trajectory: Trajectory) -> Trajectory:
    """The independent propagator for a dual-path run."""
    rho0 = trajectory.states[0]
    if trajectory.method == "analytic":
        return evolve(rho0, trajectory.params, trajectory.times[-1], len(trajectory), method="numeric")
    return exact_trajectory(rho0, trajectory.params, trajectory.times)


def cmd_evolve(config: ScenarioConfig, out: Optional[str] = None) -> int:
    """Propagate the initial state and write the trajectory.

    Single-excitation states use the closed form, all others RK4. With
    ``dual_path`` the other propagator runs too and the per-row deviation
    is added as a ``dual_dev`` column.
    """
    frames, payloads = [], []
    methods = set()
    worst = 0.0
    for run in config.runs():
        trajectory = evolve(run.state, run.params, run.t_end, run.n_samples)
        methods.add(trajectory.method)
        extra = None
        payload = trajectory.to_dict()
        if run.dual_path:
            other = _second_path(trajectory)
            deviations = [float(np.max(np.abs(a.elements - b.elements)))
                          for a, b in zip(trajectory.states, other.states)]
            worst = max(worst, max(deviations))
            extra = {'dual_dev': deviations}
            payload['dual_path'] = {'method': other.method, 'deviation': deviations}
        frames.append(OutputFormatter.trajectory_frame(trajectory, extra))
        payloads.append(payload)

    meta_extra = {'dual_path_max_deviation': worst} if config.dual_path else {}
    meta = _metadata(config, "+".join(sorted(methods)), **meta_extra)
    _emit_frames(config, frames, payloads, meta, out)

    if config.dual_path and worst > DUAL_PATH_TOL:
        logger.error(f"Propagators disagree by {worst:.3e} (> {DUAL_PATH_TOL:.0e})")
        return EXIT_FAILURE
    return EXIT_OK


def _extrema_row(report: ExtremumReport) -> Dict[str, Any]:
    check = report.numeric_check
    return {
        'case_tag': report.case_tag.value,
        't_min': report.t_min,
        't_max': report.t_max,
        'c_min': report.c_min,
        'c_max': report.c_max,
        'monotone': report.monotone,
        'initial_concurrence': report.initial_concurrence,
        'exceeds_initial': report.exceeds_initial,
        'closed_form': report.closed_form,
        'check_t': check.t if check else None,
        'check_value': check.value if check else None,
        'deviation': report.deviation,
    }


def cmd_extrema(config: ScenarioConfig, out: Optional[str] = None) -> int:
    """Closed-form extremum report with the numeric cross-check attached.

    States given by angles are dispatched to their family; explicit
    matrices go to the numeric search.
    """
    frames, payloads = [], []
    for run in config.runs():
        if run.angles is not None:
            report = extrema_for_angles(run.angles, run.params)
        else:
            if not is_pure(run.state):
                logger.warning("Initial state is not pure; using the numeric extremum search")
            report = extrema_numeric(run.state, run.params)
        frames.append(pd.DataFrame([_extrema_row(report)]))
        payloads.append(report.to_dict())
    _emit_frames(config, frames, payloads, _metadata(config, "closed_form+oracle"), out)
    return EXIT_OK


def cmd_tn(config: ScenarioConfig, out: Optional[str] = None) -> int:
    """Nonlocality-loss times of a Class22 initial state."""
    frames, payloads = [], []
    for run in config.runs():
        times = nonlocality_times(run.state, run.params)
        payload = times.to_dict()
        frames.append(pd.DataFrame([{**payload, 'flags': ";".join(times.flags)}]))
        payloads.append(payload)
    _emit_frames(config, frames, payloads, _metadata(config, "analytic"), out)
    return EXIT_OK


def cmd_curves(config: ScenarioConfig, out: Optional[str] = None) -> int:
    """Concurrence, excitation contrast, m and n on a uniform grid."""
    frames, payloads = [], []
    for run in config.runs():
        require_class(run.state, StateClass.CLASS12, StateClass.CLASS22, operation="curves")
        times = uniform_times(run.t_end, run.n_samples)
        trajectory = analytic_trajectory(run.state, run.params, times)
        columns: Dict[str, List[float]] = {
            'C': concurrence_values(run.state, run.params, times).tolist(),
            'excitation': excitation_values(run.state, run.params, times).tolist(),
            'm': [s.m for s in trajectory.samples],
            'n': [s.n for s in trajectory.samples],
        }
        frames.append(OutputFormatter.curves_frame(times, columns))
        payloads.append({'t': times, **columns})
    _emit_frames(config, frames, payloads, _metadata(config, "analytic"), out)
    return EXIT_OK


def cmd_validate(seed: int, state_config: Optional[ScenarioConfig] = None,
                 input_failure: Optional[SuiteResult] = None, fmt: str = "json",
                 out: Optional[str] = None) -> int:
    """Run every suite; exit 1 if any fails."""
    state = state_config.state if state_config is not None else None
    results = run_suites(seed=seed, state=state)
    if input_failure is not None:
        results.append(input_failure)
    passed = all(r.passed for r in results)

    meta = OutputFormatter.metadata(method="validate", config_hash=compute_hash({'seed': seed}),
                                    seed=seed, passed=passed)
    if fmt == "csv":
        text = OutputFormatter.to_csv(pd.DataFrame([r.to_dict() for r in results]), meta)
    else:
        text = OutputFormatter.to_json([r.to_dict() for r in results], meta)
    OutputFormatter.write(text, out)
    return EXIT_OK if passed else EXIT_FAILURE


def _has_state_input(args: argparse.Namespace) -> bool:
    return bool(args.scenario or args.state) or any(
        getattr(args, name) is not None for name in ('phi', 'psi', 'theta', 'xi'))


def _run_validate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else Config.get_int("DICKE_SEED", 0)
    config = None
    failure = None
    if _has_state_input(args):
        try:
            config = ScenarioLoader().build(args, outputs=["validate"], default_format="json")
            seed = config.seed
        except InvalidStateError as e:
            logger.error(f"Input state rejected: {e}")
            failure = SuiteResult("input_state", False, detail=str(e))
    return cmd_validate(seed, config, failure, fmt=args.format or "json", out=args.out)


COMMANDS: Dict[str, Callable[[ScenarioConfig, Optional[str]], int]] = {
    "evolve": cmd_evolve,
    "extrema": cmd_extrema,
    "tn": cmd_tn,
    "curves": cmd_curves,
}
OUTPUTS = {
    "evolve": ["trajectory"],
    "extrema": ["extrema"],
    "tn": ["tn"],
    "curves": ["concurrence", "nonlocality"],
}
DEFAULT_FORMATS = {"evolve": "csv", "extrema": "json", "tn": "json", "curves": "csv"}


def run_command(args: argparse.Namespace) -> int:
    if args.command == "validate":
        return _run_validate(args)
    config = ScenarioLoader().build(args, outputs=OUTPUTS[args.command],
                                    default_format=DEFAULT_FORMATS[args.command])
    logger.info(f"Running {args.command} for state {config.state_source} "
                f"({classify(config.state).value}), g={config.g}")
    return COMMANDS[args.command](config, args.out)


def main(args: Optional[List[str]] = None) -> int:
    parsed_args = parse_args(args)

    if parsed_args.version:
        print(f"dicke-sim version {__version__}")
        return EXIT_OK

    setup_logging(Config.get("DICKE_LOG", "WARNING"), Config.get("DICKE_LOG_FILE"))
    logger.debug(f"Starting dicke-sim v{__version__}")

    if parsed_args.dump_config:
        Config.dump()
        return EXIT_OK

    if parsed_args.command is None:
        print("error: a subcommand is required (evolve, extrema, tn, curves, validate)", file=sys.stderr)
        return EXIT_BAD_INPUT

    try:
        return run_command(parsed_args)
    except DomainError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InvalidStateError, ScenarioError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except IntegrationError as e:
        logger.error(f"Integration failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
