"""Command line (:mod:`solarmodel.cli`)
=====================================

``solarmodel <command> [options]`` with the commands:

- ``tables``: recompute a printed table (``--id 1..6``),
- ``profile``: tabulate u, M(r)/M, g, P, T and L on a grid,
- ``calibrate``: δ solving the mass constraint for a range of γ,
- ``fit``: polynomial or (δ, γ) fit of the solar density column,
- ``validate``: closed forms versus quadrature (JSON report).

The physical constants are the solar ones, overridden by the user
configuration (:mod:`solarmodel.util.userconfig`), then by a JSON file
given by the environment variable ``SOLARMODEL_CONSTANTS`` or, with
precedence, by ``--constants``. ``--mu`` is applied last.

Exit codes: 0 success, 1 usage or input error, 2 table cells out of
tolerance (or failed checks), 3 numerical failure.

.. autoclass:: RunConfig
   :members:

.. autofunction:: load_constants

.. autofunction:: make_parser

.. autofunction:: config_from_args

.. autofunction:: cmd_tables

.. autofunction:: cmd_profile

.. autofunction:: cmd_calibrate

.. autofunction:: cmd_fit

.. autofunction:: cmd_validate

.. autofunction:: main

"""

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from solarmodel._version import __version__
from solarmodel.calibrate import (
    PRINTED_MASS_TARGET,
    NoRootError,
    RankDeficiencyError,
    constraint_value,
    fit_model_params,
    fit_polynomial,
    mass_target_from_constants,
    solve_delta,
    sum_of_squares,
)
from solarmodel.density import ModelParams
from solarmodel.energy import EnergyParams, UnsupportedParameterError
from solarmodel.oracle import QuadratureError
from solarmodel.reference import ORDINATES, ReferenceDataError, density_reference
from solarmodel.specfun import DomainError, PrecisionError
from solarmodel.structure import SolarConstants, compute_profile
from solarmodel.tables import recompute_table
from solarmodel.util import config_logging, logger
from solarmodel.util.userconfig import constants_overrides
from solarmodel.validation import run_validation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_NUMERIC = 3

ENV_CONSTANTS = "SOLARMODEL_CONSTANTS"

COMMANDS = ("tables", "profile", "calibrate", "fit", "validate")

DEFAULT_PARAMS = ModelParams(1.28, 10)


class CommandLineError(ValueError):
    """Bad command line arguments or inputs."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandLineError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, checked."""

    command: str
    params: Optional[ModelParams] = None
    constants: SolarConstants = SolarConstants()
    constants_path: Optional[str] = None
    grid: Tuple[float, ...] = ()
    output_format: str = "csv"
    mu: Optional[float] = None
    table_id: Optional[int] = None
    eparams: Optional[EnergyParams] = None
    gamma_range: Tuple[int, int] = (2, 20)
    mass_target: Optional[float] = None
    degree: Optional[int] = None
    rel_tol: float = 1e-8
    quick: bool = False


def load_constants(path=None, mu=None):
    """Physical constants after applying all overrides.

    ``path`` (or the file named by ``SOLARMODEL_CONSTANTS``) is a JSON
    object whose keys are :class:`SolarConstants` field names.

    """
    constants = SolarConstants.from_mapping(
        constants_overrides(SolarConstants.field_names())
    )
    if path is None:
        path = os.environ.get(ENV_CONSTANTS) or None
    if path is not None:
        try:
            with open(path) as file:
                mapping = json.load(file)
        except (OSError, json.JSONDecodeError) as error:
            raise CommandLineError(
                f"cannot read constants file {path}: {error}"
            ) from error
        if not isinstance(mapping, dict):
            raise CommandLineError(f"{path}: expected a JSON object")
        try:
            constants = SolarConstants.from_mapping(mapping, constants)
        except ValueError as error:
            raise CommandLineError(f"{path}: {error}") from error
    if mu is not None:
        constants = constants.replace(mu=mu)
    return constants


def _add_common_arguments(parser):
    parser.add_argument("--delta", type=float, help="exponent δ of the law")
    parser.add_argument("--gamma", type=int, help="exponent γ of the law")
    parser.add_argument(
        "--constants", help="JSON file of physical constants (CGS)"
    )
    parser.add_argument("--mu", type=float, help="mean molecular weight")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        dest="output_format",
        help="output format",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log more (-v info, -vv debug) on standard error",
    )


def _add_target_arguments(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--target", type=float, help="value of the mass constraint"
    )
    group.add_argument(
        "--printed-target",
        action="store_true",
        help=f"use the rounded target {PRINTED_MASS_TARGET}",
    )


def _add_gamma_range_arguments(parser):
    parser.add_argument("--gamma-min", type=int, default=2)
    parser.add_argument("--gamma-max", type=int, default=20)


def make_parser():
    """Argument parser of the ``solarmodel`` command."""
    parser = _ArgumentParser(
        prog="solarmodel",
        description="Analytic model of the solar interior.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command")

    common = _ArgumentParser(add_help=False)
    _add_common_arguments(common)

    sub = subparsers.add_parser(
        "tables", parents=[common], help="recompute a printed table"
    )
    sub.add_argument("--id", type=int, dest="table_id", required=True)
    _add_target_arguments(sub)

    sub = subparsers.add_parser(
        "profile", parents=[common], help="tabulate the model"
    )
    grid = sub.add_mutually_exclusive_group()
    grid.add_argument("--grid", help="comma separated radius fractions")
    grid.add_argument(
        "--points",
        type=int,
        help="number of uniform points on [0, 1] (ends included)",
    )
    sub.add_argument("--n", type=int, help="density exponent of ε")
    sub.add_argument("--m", type=int, default=1, help="temperature exponent")
    sub.add_argument("--epsilon0", type=float, default=1.0, help="ε₀")

    sub = subparsers.add_parser(
        "calibrate", parents=[common], help="solve δ for a range of γ"
    )
    _add_gamma_range_arguments(sub)
    _add_target_arguments(sub)

    sub = subparsers.add_parser(
        "fit", parents=[common], help="fit the solar density column"
    )
    sub.add_argument("--degree", type=int, help="polynomial fit degree")
    _add_gamma_range_arguments(sub)
    _add_target_arguments(sub)

    sub = subparsers.add_parser(
        "validate", parents=[common], help="closed forms versus quadrature"
    )
    sub.add_argument("--rel-tol", type=float, default=1e-8)
    sub.add_argument("--quick", action="store_true", help="coarse grid")
    return parser


def _parse_grid(args):
    if getattr(args, "grid", None):
        try:
            values = [float(value) for value in args.grid.split(",")]
        except ValueError:
            raise CommandLineError(f"bad grid {args.grid!r}") from None
    elif getattr(args, "points", None) is not None:
        if args.points < 2:
            raise CommandLineError("--points has to be >= 2")
        values = list(np.linspace(0.0, 1.0, args.points))
    else:
        values = [0.0, *ORDINATES, 1.0]
    array = np.array(values)
    if np.any(~np.isfinite(array)) or np.any(array < 0) or np.any(array > 1):
        raise CommandLineError("grid values have to be in [0, 1]")
    if np.any(np.diff(array) <= 0):
        raise CommandLineError("grid values have to be strictly increasing")
    return tuple(float(value) for value in values)


def _params(args, default):
    if args.delta is None and args.gamma is None:
        return default
    if args.delta is None or args.gamma is None:
        raise CommandLineError("--delta and --gamma go together")
    try:
        return ModelParams(args.delta, args.gamma)
    except DomainError as error:
        raise CommandLineError(str(error)) from error


def _mass_target(args, constants):
    if getattr(args, "printed_target", False):
        return PRINTED_MASS_TARGET
    target = getattr(args, "target", None)
    if target is not None:
        return target
    return mass_target_from_constants(constants)


def config_from_args(args):
    """Check the parsed arguments and gather them in a :class:`RunConfig`."""
    command = args.command
    if command not in COMMANDS:
        raise CommandLineError(f"a command is required ({', '.join(COMMANDS)})")
    constants = load_constants(args.constants, args.mu)
    output_format = args.output_format
    if output_format is None:
        output_format = "json" if command == "validate" else "csv"

    kwargs = dict(
        command=command,
        constants=constants,
        constants_path=args.constants,
        output_format=output_format,
        mu=args.mu,
    )
    if command == "tables":
        if not 1 <= args.table_id <= 6:
            raise CommandLineError("--id has to be in 1..6")
        kwargs["table_id"] = args.table_id
        kwargs["params"] = _params(args, None)
        if args.target is not None or args.printed_target:
            kwargs["mass_target"] = _mass_target(args, constants)
    elif command == "profile":
        kwargs["params"] = _params(args, DEFAULT_PARAMS)
        kwargs["grid"] = _parse_grid(args)
        if args.n is not None:
            try:
                kwargs["eparams"] = EnergyParams(args.epsilon0, args.n, args.m)
            except DomainError as error:
                raise CommandLineError(str(error)) from error
    elif command in ("calibrate", "fit"):
        if args.gamma_min < 1 or args.gamma_max < args.gamma_min:
            raise CommandLineError("bad range of gamma")
        kwargs["gamma_range"] = (args.gamma_min, args.gamma_max)
        kwargs["mass_target"] = _mass_target(args, constants)
        if command == "fit":
            if args.degree is not None and args.degree < 0:
                raise CommandLineError("--degree has to be >= 0")
            kwargs["degree"] = args.degree
    else:
        if not args.rel_tol > 0:
            raise CommandLineError("--rel-tol has to be positive")
        kwargs["params"] = _params(args, None)
        kwargs["rel_tol"] = args.rel_tol
        kwargs["quick"] = args.quick
    return RunConfig(**kwargs)


def _format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return f"{value:.17g}"
    return str(value)


def write_csv(columns, records, file):
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_format_value(record[key]) for key in columns])


def write_json(obj, file):
    file.write(json.dumps(obj, sort_keys=True, indent=2))
    file.write("\n")


def cmd_tables(config, file=None):
    """Recompute a printed table; exit 2 if a cell is out of tolerance."""
    file = file or sys.stdout
    result = recompute_table(config.table_id, config.params, config.mass_target)
    if config.output_format == "json":
        write_json(result.as_dict(), file)
    else:
        file.write(f"# table {result.table_id}: {result.title}\n")
        if result.banner:
            file.write(f"# {result.banner}\n")
        write_csv(
            result.columns, [cell.as_dict() for cell in result.cells], file
        )
    if not result.matched:
        logger.error(
            "table %d: %d cells out of tolerance",
            result.table_id,
            len(result.mismatches),
        )
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_profile(config, file=None):
    """Tabulate the model on the grid."""
    file = file or sys.stdout
    profile = compute_profile(
        config.params, config.constants, config.grid, config.eparams
    )
    if config.output_format == "json":
        write_json(profile.as_dict(), file)
    else:
        write_csv(profile.columns, [row.as_dict() for row in profile.rows], file)
    return EXIT_OK


def cmd_calibrate(config, file=None):
    """δ solving the mass constraint for every γ of the range."""
    file = file or sys.stdout
    target = config.mass_target
    logger.info("mass constraint target: %.17g", target)
    records = []
    gamma_min, gamma_max = config.gamma_range
    for gamma in range(gamma_min, gamma_max + 1):
        delta = solve_delta(gamma, target)
        records.append(
            {
                "gamma": gamma,
                "delta": delta,
                "constraint": constraint_value(delta, gamma),
                "target": target,
            }
        )
    columns = ("gamma", "delta", "constraint", "target")
    if config.output_format == "json":
        write_json({"target": target, "rows": records}, file)
    else:
        write_csv(columns, records, file)
    return EXIT_OK


def cmd_fit(config, file=None):
    """Polynomial (``degree``) or (δ, γ) fit of the solar density column."""
    file = file or sys.stdout
    data = density_reference("sears")
    if config.degree is not None:
        model = fit_polynomial(data, config.degree)
        sse = sum_of_squares(model, data)
        records = [
            {"power": power, "coefficient": coef}
            for power, coef in enumerate(model.coefficients)
        ]
        if config.output_format == "json":
            write_json(
                {"coefficients": list(model.coefficients), "sse": sse}, file
            )
        else:
            write_csv(("power", "coefficient"), records, file)
        logger.info("polynomial fit: sse=%.6g", sse)
        return EXIT_OK

    report = fit_model_params(data, config.gamma_range, config.mass_target)
    records = [
        {
            "gamma": row.gamma,
            "delta": row.delta,
            "sse": row.sse,
            "selected": row.gamma == report.params.gamma,
        }
        for row in report.rows
    ]
    if config.output_format == "json":
        write_json(
            {
                "params": report.params.as_dict(),
                "mass_target": report.mass_target,
                "rows": records,
            },
            file,
        )
    else:
        write_csv(("gamma", "delta", "sse", "selected"), records, file)
    return EXIT_OK


def cmd_validate(config, file=None):
    """Closed forms versus quadrature; exit 2 if a check fails."""
    file = file or sys.stdout
    params_grid = None if config.params is None else (config.params,)
    report = run_validation(
        params_grid=params_grid, rel_tol=config.rel_tol, quick=config.quick
    )
    if config.output_format == "json":
        write_json(report, file)
    else:
        columns = (
            "name",
            "delta",
            "gamma",
            "n",
            "y",
            "closed_form",
            "reference",
            "error",
            "tolerance",
            "passed",
        )
        records = [
            dict(check, **check["params"]) for check in report["checks"]
        ]
        write_csv(columns, records, file)
    summary = report["summary"]
    logger.info(
        "%d checks, %d failures", summary["nb_checks"], summary["nb_failures"]
    )
    return EXIT_OK if summary["passed"] else EXIT_MISMATCH


_COMMAND_FUNCTIONS = {
    "tables": cmd_tables,
    "profile": cmd_profile,
    "calibrate": cmd_calibrate,
    "fit": cmd_fit,
    "validate": cmd_validate,
}


def main(argv=None, file=None):
    """Entry point of the ``solarmodel`` command; returns the exit code."""
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except CommandLineError as error:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"solarmodel: error: {error}\n")
        return EXIT_USAGE

    verbose = getattr(args, "verbose", 0)
    level = {0: "warning", 1: "info"}.get(verbose, "debug")
    config_logging(level)

    try:
        config = config_from_args(args)
    except (CommandLineError, ReferenceDataError, DomainError) as error:
        logger.error("%s", error)
        return EXIT_USAGE

    try:
        return _COMMAND_FUNCTIONS[config.command](config, file)
    except (ReferenceDataError, NoRootError, UnsupportedParameterError) as error:
        logger.error("%s", error)
        return EXIT_USAGE
    except (
        DomainError,
        PrecisionError,
        QuadratureError,
        RankDeficiencyError,
    ) as error:
        logger.error("numerical failure: %s", error)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
