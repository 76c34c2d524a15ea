# -*- coding: utf-8 -*-
"""The ``gradedfields`` command.

::

    gradedfields --config run.toml verify --suite brst --format json
    gradedfields eval "scomm(field(scalar, a, x), conj(scalar, a, y))"
    gradedfields list-identities
    gradedfields dump-lattice

``verify`` exits with status 0 exactly when every selected check passes.
"""

__all__ = ["main"]

import json
import logging
import sys
from pathlib import Path
from typing import Any

import click
import numpy as np

from gradedfields import __version__
from gradedfields.config import SUITE_NAMES, RunConfig, select_suites
from gradedfields.exceptions import ConfigError, ExpressionSyntaxError, GradedFieldsError, UnknownSuiteError
from gradedfields.expression import POINTS, Evaluator
from gradedfields.graded import GradedExpr
from gradedfields.oracle import OracleSpace, represent
from gradedfields.suites import SUITES, run_verify

logger = logging.getLogger(__name__)

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _load(path: str | None) -> RunConfig:
    try:
        return RunConfig.from_file(path) if path else RunConfig()
    except (ConfigError, UnknownSuiteError) as error:
        raise click.ClickException(str(error)) from None


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="TOML or JSON run file.")
@click.option("-v", "--verbose", count=True, help="Log progress; repeat for debug output.")
@click.version_option(__version__)
@click.pass_context
def main(ctx: click.Context, config_path: str | None, verbose: int) -> None:
    """Verify and evaluate identities of graded field operators."""
    logging.basicConfig(level=_LEVELS[min(verbose, 2)], format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = _load(config_path)


@main.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(SUITE_NAMES), help="Run only these suites.")
@click.option("--seed", type=int, help="Seed of the randomized checks.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
@click.option("--oracle", type=click.Choice(["on", "off"]), help="Enable or disable the Fock-space oracle.")
@click.option("--timing", is_flag=True, help="Record the time spent on each identity.")
@click.option("--output", type=click.Path(dir_okay=False), help="Also write the report to this file.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Suites run concurrently.")
@click.option("--verbose-report", is_flag=True, help="Show the detail of passing identities too.")
@click.pass_obj
def verify(
    config: RunConfig,
    suites: tuple[str, ...],
    seed: int | None,
    fmt: str,
    oracle: str | None,
    timing: bool,  # noqa: FBT001
    output: str | None,
    jobs: int,
    verbose_report: bool,  # noqa: FBT001
) -> None:
    """Run the verification suites."""
    config = select_suites(config, suites).with_overrides(
        seed=seed,
        oracle_enabled=None if oracle is None else oracle == "on",
        timing=timing or None,
        output=output,
    )
    report = run_verify(config, jobs=jobs)
    rendered = report.to_json() if fmt == "json" else report.to_text(verbose=verbose_report)
    click.echo(rendered)
    if config.output:
        Path(config.output).write_text(report.to_json() + "\n", encoding="utf-8")
        logger.info("Report written to %s", config.output)
    sys.exit(0 if report.passed else 1)


def _caret(text: str, offset: int) -> str:
    return f"{text}\n{' ' * offset}^"


@main.command(name="eval")
@click.argument("expression")
@click.option("--matrix", is_flag=True, help="Also print the truncated Fock-space matrix at the origin.")
@click.pass_obj
def eval_expr(config: RunConfig, expression: str, matrix: bool) -> None:  # noqa: FBT001
    """Evaluate EXPRESSION and print its canonical form."""
    try:
        evaluator = Evaluator(config.lattice(), config.lie_data(), xi=config.gauge_parameter())
        value = evaluator.evaluate_text(expression)
    except ExpressionSyntaxError as error:
        click.echo(_caret(expression, error.offset), err=True)
        raise click.ClickException(str(error)) from None
    except GradedFieldsError as error:
        raise click.ClickException(str(error.args[0] if error.args else error)) from None
    for line in evaluator.render(value):
        click.echo(line)
    if matrix and isinstance(value, GradedExpr):
        space = OracleSpace.for_expressions(value, n_max=config.n_max, dim_cap=config.dim_cap)
        bindings = {f"{point}{j}": 0.0 for point in POINTS for j in range(4)}
        dense = represent(value, space, bindings).toarray()
        click.echo(np.array2string(dense, precision=6, suppress_small=True, max_line_width=120))


@main.command(name="list-identities")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True)
def list_identities(fmt: str) -> None:
    """List the identity families of every suite with their anchors."""
    if fmt == "json":
        data: dict[str, Any] = {
            name: {"description": SUITES[name].description, "identities": dict(SUITES[name].catalogue)}
            for name in SUITE_NAMES
        }
        click.echo(json.dumps(data, indent=2))
        return
    for name in SUITE_NAMES:
        definition = SUITES[name]
        click.echo(f"{name}: {definition.description}")
        for title, anchor in definition.catalogue.items():
            click.echo(f"  {title} [{anchor}]")


@main.command(name="dump-lattice")
@click.option("--symmetric", is_flag=True, help="Close the lattice under p -> -p first.")
@click.pass_obj
def dump_lattice(config: RunConfig, symmetric: bool) -> None:  # noqa: FBT001
    """Print the configured modes and their energies per sector."""
    lattice = config.lattice()
    if symmetric:
        lattice = lattice.symmetrized()
    click.echo(json.dumps(lattice.describe(), indent=2))
