"""Command-line entry point: ``pyfraxis <command> [options]``."""

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from ..data.persistence import PersistenceError, RunStorage
from ..errors import ConfigError, FraxisError
from ..models.run import RunRecord
from ..utils.logging import configure_logging
from .checks import run_checks
from .commands import cmd_expressibility, cmd_maxcut, cmd_optimize
from .config import (
    ExpressibilityConfig,
    MaxCutConfig,
    OptimizeConfig,
    VerifyConfig,
    build_config,
    load_config_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so errors map to exit code 2."""

    def error(self, message: str) -> Any:
        raise ConfigError(message)


def _add_common(parser: argparse.ArgumentParser, storable: bool = True) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--config", help="YAML file with config values")
    parser.add_argument("--seed", type=int, help="base seed (trial i uses seed + i)")
    if storable:
        parser.add_argument("--output", help="run name; the run is stored when given")
        parser.add_argument("--data-dir", help="run storage directory")
        parser.add_argument("--threads", type=int, help="trial pool size")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pyfraxis",
        description="Free-axis selection optimizers for parametrized quantum circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    optimize = sub.add_parser("optimize", help="run sequential optimizer trials")
    _add_common(optimize)
    optimize.add_argument("--ham", dest="hamiltonian", help="two-qubit-model, toy, heisenberg:..., file:<path>")
    optimize.add_argument("--ansatz", help="two-qubit, single, circuit-a:L=3, circuit-b:L=2, ..., file:<path>")
    optimize.add_argument("--method", help="rotosolve, rotoselect, pi-fraxis, theta-fraxis")
    optimize.add_argument("--trials", type=int)
    optimize.add_argument("--sweeps", type=int)
    optimize.add_argument("--tol", type=float, help="stop when a sweep improves less; <= 0 disables")
    optimize.add_argument("--theta", type=float, help="fixed angle for theta-fraxis")
    optimize.add_argument("--shots", type=int, help="shots per Pauli term (exact when omitted)")
    optimize.add_argument("--scheme", help="parameter-random or state-random axes")

    expr = sub.add_parser("expressibility", help="KL divergence from Haar fidelities")
    _add_common(expr)
    expr.add_argument("--ansatz")
    expr.add_argument("--sampler", help="rotosolve, rotoselect, fraxis-parameter, fraxis-state, haar")
    expr.add_argument("--samples", type=int)
    expr.add_argument("--bin-width", dest="bin_width", type=float)

    maxcut = sub.add_parser("maxcut", help="MaxCut via QUBO or quantum relaxation")
    _add_common(maxcut)
    maxcut.add_argument("--graph", help="petersen or file:<path>")
    maxcut.add_argument("--form", help="qubo or relax")
    maxcut.add_argument("--labels", help="labelling file for relax on custom graphs")
    maxcut.add_argument("--method")
    maxcut.add_argument("--trials", type=int)
    maxcut.add_argument("--sweeps", type=int)
    maxcut.add_argument("--scheme")

    verify = sub.add_parser("verify", help="run the self-check suites")
    _add_common(verify, storable=False)
    verify.add_argument("--instances", type=int)
    verify.add_argument(
        "--oracle-samples",
        dest="oracle_samples",
        type=int,
        help="random axes compared against each theta-Fraxis solve",
    )
    verify.add_argument("--perturb-r", dest="perturb_r", type=float, help=argparse.SUPPRESS)

    browse = sub.add_parser("browse", help="browse stored runs in the terminal")
    browse.add_argument("--data-dir", help="run storage directory")
    return parser


def _print_summary(record: RunRecord) -> None:
    print(json.dumps(record.summary, indent=2, sort_keys=True))


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "browse":
        from ..ui.app import PyfraxisApp

        PyfraxisApp(RunStorage(args.data_dir)).run()
        return EXIT_OK

    file_values = load_config_file(args.config) if args.config else {}
    overrides = vars(args)

    if args.command == "verify":
        config = build_config(VerifyConfig, file_values, overrides)
        results = run_checks(config)
        for result in results:
            status = "PASS" if result.passed else "FAIL"
            print(f"{status} {result.name} ({result.seconds:.2f}s): {result.detail}")
        return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED

    storage = RunStorage(args.data_dir) if args.output else None
    if args.command == "optimize":
        record = cmd_optimize(build_config(OptimizeConfig, file_values, overrides), storage, args.threads)
    elif args.command == "expressibility":
        record = cmd_expressibility(
            build_config(ExpressibilityConfig, file_values, overrides), storage, args.threads
        )
    else:
        record = cmd_maxcut(build_config(MaxCutConfig, file_values, overrides), storage, args.threads)
    _print_summary(record)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print(f"pyfraxis: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(getattr(args, "verbose", 0))
    try:
        return _dispatch(args)
    except (ConfigError, PersistenceError, FraxisError) as e:
        logger.error("%s", e)
        print(f"pyfraxis: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
