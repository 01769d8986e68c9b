# -*- coding: utf-8 -*-
import functools
from dataclasses import dataclass, replace
from importlib.metadata import version
from pathlib import Path

import click
from click import ClickException
from tabulate import tabulate

from phasenoise import logger
from phasenoise.cli import render
from phasenoise.config import CONFIG
from phasenoise.errors import PhaseNoiseError, VerificationError
from phasenoise.extremal import (
    minimize_phase_noise,
    save_extremal,
    sidecar_path,
    sweep_extremal,
)
from phasenoise.factories import (
    ALIASES,
    FAMILIES,
    parse_range,
    parse_spec,
    parse_value,
    realize,
)
from phasenoise.noise import report, sweep
from phasenoise.verify import verify_identities
from phasenoise.witness import (
    chain_slacks,
    load_ensemble,
    mc_verify_classical,
    witness,
)

TABULAR_COMMANDS = ("sweep", "mc-classical", "extremal")


class CommandError(ClickException):
    """
    a ClickException carrying the exit code of the error it wraps
    """

    def __init__(self, message, exit_code=1):
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class RunConfig:
    command: str
    output_format: str
    output_path: str
    seed: int
    precision: int
    tail_tol: float
    max_dim: int
    workers: int

    @property
    def defaults(self):
        return {"tail_tol": self.tail_tol, "max_dim": self.max_dim}

    def emit(self, text):
        if self.output_path is None:
            click.echo(text, nl=False)
            return

        output_path = Path(self.output_path)
        if output_path.parent and not output_path.parent.exists():
            output_path.parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, "w", encoding="utf8") as output:
            output.write(text)

        logger.debug(f"wrote {output_path}")

    def emit_json(self, document):
        self.emit(render.to_json(document, self.precision))

    def emit_csv(self, columns, rows):
        self.emit(render.to_csv(columns, rows, self.precision))


def common_options(func):
    """
    options every analysis command takes
    """
    options = [
        click.option(
            "-o",
            "--output",
            default=None,
            help="write the result to this file instead of stdout",
        ),
        click.option(
            "-f",
            "--format",
            "output_format",
            type=click.Choice(["json", "csv"]),
            default="json",
            help="output format, csv is only available for tabular commands "
            "(sweep, mc-classical, extremal). default: json",
        ),
        click.option(
            "--seed",
            type=click.IntRange(0, 2**64 - 1),
            default=None,
            help="master seed (unsigned 64-bit), default: PHASENOISE_SEED",
        ),
        click.option(
            "--tail-tol",
            type=float,
            default=None,
            help="Poisson tail probability dropped when truncating coherent "
            "states, default: PHASENOISE_TAIL_TOL",
        ),
        click.option(
            "--max-dim",
            type=click.IntRange(min=1),
            default=None,
            help="largest Fock dimension for coherent states, "
            "default: PHASENOISE_MAX_DIM",
        ),
        click.option(
            "--precision",
            type=click.IntRange(1, 17),
            default=None,
            help="significant digits for floats, default: 17",
        ),
        click.option(
            "-w",
            "--workers",
            type=click.IntRange(min=1),
            default=None,
            help="number of worker processes, default: PHASENOISE_WORKERS",
        ),
        click.option(
            "-l",
            "--logging-level",
            default="INFO",
            help="set logging level to one of debug, warn or info (default)",
        ),
    ]

    for option in reversed(options):
        func = option(func)

    return func


def command(name):
    """
    set up logging and CONFIG for an analysis command, translate library
    errors into exit codes and restore CONFIG once the command is done
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(
            output,
            output_format,
            seed,
            tail_tol,
            max_dim,
            precision,
            workers,
            logging_level,
            **kwargs,
        ):
            logger.init_logging(logging_level.upper())

            if output_format == "csv" and name not in TABULAR_COMMANDS:
                raise click.UsageError(
                    f"csv output is not available for {name}, "
                    f"only for {', '.join(TABULAR_COMMANDS)}"
                )

            CONFIG.snapshot(name)
            try:
                overrides = {
                    "PHASENOISE_SEED": seed,
                    "PHASENOISE_TAIL_TOL": tail_tol,
                    "PHASENOISE_MAX_DIM": max_dim,
                    "PHASENOISE_PRECISION": precision,
                    "PHASENOISE_WORKERS": workers,
                }
                CONFIG.update(
                    **{k: v for k, v in overrides.items() if v is not None}
                )

                config = RunConfig(
                    command=name,
                    output_format=output_format,
                    output_path=output,
                    seed=CONFIG.int("PHASENOISE_SEED"),
                    precision=CONFIG.int("PHASENOISE_PRECISION"),
                    tail_tol=CONFIG.float("PHASENOISE_TAIL_TOL"),
                    max_dim=CONFIG.int("PHASENOISE_MAX_DIM"),
                    workers=CONFIG.int("PHASENOISE_WORKERS"),
                )

                return func(config, **kwargs)

            except PhaseNoiseError as e:
                raise CommandError(str(e), exit_code=e.exit_code)

            finally:
                CONFIG.restore(with_pop=True)

        return common_options(wrapper)

    return decorator


@click.group()
@click.version_option(version("phasenoise"), message="%(version)s")
def main():
    """
    phase noise, uncertainty relations and nonclassicality of single-mode
    states
    """
    pass


@main.command("report")
@click.option(
    "-s",
    "--state",
    "state_spec",
    default=None,
    help="state to report on, ie number:n=5, coherent:alpha=2+1i, "
    "tps:n0=10, triangle:n0=100, file:state.json",
)
@click.option(
    "-e",
    "--ensemble",
    "ensemble_path",
    default=None,
    help="coherent ensemble document to evaluate the classical bound on",
)
@command("report")
def report_command(config, state_spec, ensemble_path):
    """
    moments, uncertainty relations and the classical bound of one state
    """
    if (state_spec is None) == (ensemble_path is None):
        raise click.UsageError("exactly one of --state or --ensemble is required")

    if ensemble_path is not None:
        ensemble = load_ensemble(ensemble_path)
        document = render.ensemble_report_document(
            ensemble_path,
            ensemble,
            witness(ensemble, config.tail_tol, config.max_dim),
            chain_slacks(ensemble, config.tail_tol, config.max_dim),
        )
        config.emit_json(document)
        return

    spec = parse_spec(state_spec)
    state = realize(spec, config.defaults)
    document = render.state_report_document(
        spec, state, report(state), witness(state)
    )
    config.emit_json(document)


def _sweep_arguments(family, values):
    """
    split the parameter options into the swept parameter, its values and the
    fixed parameters
    """
    definitions = FAMILIES[family]
    given = {key: text for key, text in values.items() if text is not None}

    unknown = [key for key in given if key not in definitions]
    if unknown:
        raise click.UsageError(
            f"family {family} has no parameter {', '.join(unknown)}, "
            f"expected {', '.join(definitions)}"
        )

    ranges = [key for key, text in given.items() if ":" in text]

    if len(ranges) > 1:
        raise click.UsageError(
            f"only one parameter can be swept, got ranges for {', '.join(ranges)}"
        )

    if ranges:
        parameter = ranges[0]
    elif len(given) == 1:
        parameter = next(iter(given))
    else:
        raise click.UsageError(
            "give the swept parameter as a start:step:end range"
        )

    kind = definitions[parameter][0]
    if kind not in ("int", "float", "complex"):
        raise click.UsageError(f"parameter {parameter} cannot be swept")

    swept = parse_range(given[parameter], "int" if kind == "int" else "float")

    fixed = {}
    for key, text in given.items():
        if key == parameter:
            continue

        try:
            fixed[key] = parse_value(definitions[key][0], text)
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint=f"--{key}")

    return parameter, swept, fixed


@main.command("sweep")
@click.option(
    "--family",
    required=True,
    help=f"state family to sweep, one of {', '.join(sorted(ALIASES))}",
)
@click.option("--n", "n", default=None, help="photon number (number states)")
@click.option("--n0", default=None, help="top level (tps / triangle states)")
@click.option("--alpha", default=None, help="coherent amplitude")
@click.option("--theta", default=None, help="phase of a truncated phase state")
@click.option("--dim", default=None, help="dimension of a number state")
@command("sweep")
def sweep_command(config, family, **values):
    """
    report on a family of states as one parameter runs over start:step:end
    """
    name = ALIASES.get(family.lower())
    if name is None:
        raise click.BadParameter(
            f'unknown family "{family}", expected one of '
            f"{', '.join(sorted(ALIASES))}",
            param_hint="--family",
        )

    parameter, swept, fixed = _sweep_arguments(name, values)
    points = sweep(
        name,
        parameter,
        swept,
        params=fixed,
        defaults=config.defaults,
        workers=config.workers,
    )

    failed = [point for point in points if not point.ok]
    if failed:
        logger.warning(
            f"{len(failed)} of {len(points)} sweep points could not be evaluated"
        )

    if config.output_format == "csv":
        config.emit_csv(render.SWEEP_COLUMNS, render.sweep_rows(points))
    else:
        config.emit_json(render.sweep_document(name, parameter, points))


@main.command("mc-classical")
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=1000,
    help="number of random classical ensembles, default: 1000",
)
@click.option(
    "--max-components",
    type=click.IntRange(min=1),
    default=None,
    help="largest number of coherent components per ensemble, "
    "default: PHASENOISE_MC_MAX_COMPONENTS",
)
@click.option(
    "--max-alpha",
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help="radius of the disk amplitudes are drawn from, "
    "default: PHASENOISE_MC_MAX_ALPHA",
)
@click.option(
    "--dump",
    default=None,
    help="also write the per-sample records as CSV to this file",
)
@command("mc-classical")
def mc_classical_command(config, samples, max_components, max_alpha, dump):
    """
    check the classical phase-noise bound on random coherent ensembles
    """
    summary = mc_verify_classical(
        config.seed,
        samples,
        max_components=max_components,
        max_alpha=max_alpha,
        tail_tol=config.tail_tol,
        max_dim=config.max_dim,
        workers=config.workers,
    )

    if dump is not None:
        dump_config = replace(config, output_path=dump)
        dump_config.emit_csv(render.MC_COLUMNS, render.mc_rows(summary))

    if config.output_format == "csv":
        config.emit_csv(render.MC_COLUMNS, render.mc_rows(summary))
    else:
        config.emit_json(render.mc_document(summary))

    if summary.violations or summary.chain_violations:
        raise VerificationError(
            f"{summary.violations} samples violate the classical bound and "
            f"{summary.chain_violations} violate an intermediate step"
        )


@main.command("extremal")
@click.option(
    "--mean-n",
    "mean_n",
    required=True,
    help="target mean photon number, or a start:step:end range of targets",
)
@click.option(
    "--dim",
    type=click.IntRange(min=1),
    required=True,
    help="number of Fock levels to search over",
)
@click.option(
    "--tol",
    type=float,
    default=None,
    help="relative tolerance on the mean photon number, "
    "default: PHASENOISE_EXTREMAL_TOL",
)
@click.option(
    "--save",
    default=None,
    help="save the extremal state (and a .extremal.json record) to this file",
)
@command("extremal")
def extremal_command(config, mean_n, dim, tol, save):
    """
    search the state of least phase noise at a fixed mean photon number
    """
    targets = parse_range(mean_n, "float")

    if len(targets) == 1 and config.output_format == "json":
        result = minimize_phase_noise(targets[0], dim, tol=tol)

        if save is not None:
            save_extremal(result, save, precision=config.precision)
            logger.info(f"saved extremal state to {save} and {sidecar_path(save)}")

        config.emit_json(render.extremal_document(result))
        return

    if save is not None:
        raise click.UsageError("--save needs a single --mean-n target and json output")

    results = sweep_extremal(targets, dim, tol=tol, workers=config.workers)

    if config.output_format == "csv":
        config.emit_csv(render.EXTREMAL_COLUMNS, render.extremal_rows(results))
    else:
        config.emit_json(render.extremal_sweep_document(dim, results))


@main.command("verify-identities")
@click.option(
    "--trials",
    type=click.IntRange(min=1),
    default=1000,
    help="number of random states, default: 1000",
)
@click.option(
    "--ensemble-trials",
    type=click.IntRange(min=1),
    default=None,
    help="number of random coherent ensembles, default: trials / 100",
)
@command("verify-identities")
def verify_identities_command(config, trials, ensemble_trials):
    """
    check the uncertainty identities and inequalities on random states
    """
    identity_report = verify_identities(
        trials,
        config.seed,
        ensemble_trials=ensemble_trials,
        workers=config.workers,
    )
    config.emit_json(render.identity_document(identity_report))

    if not identity_report.passed:
        names = ", ".join(check.name for check in identity_report.failures)
        raise VerificationError(f"identity checks failed: {names}")


@main.command()
def vars():
    """
    print the configuration variables and their defaults
    """
    variables = []
    variables.append(["Name", "Description", "Default"])

    variables.extend(
        [
            [name, definition["description"], definition["default"]]
            for name, definition in CONFIG.defined_variables.items()
        ]
    )

    print(tabulate(variables, tablefmt="fancy_grid"))
