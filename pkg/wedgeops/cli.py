"""Command line entry point: ``wedgeops paper-examples | suite | poc``.

Exit status is 0 when every check passes, 1 when one fails and 2 for bad input.
"""
from __future__ import annotations

import json
import logging
import sys

import click
from pydantic import ValidationError

from . import settings
from .checks import Report, RunConfig, run_suite, run_worked_examples
from .exceptions import WedgeOpsError
from .operators import poc_basis
from .serializers import read_series, series_to_dict

LOGGER = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_BAD_INPUT)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text)
        return
    try:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    except OSError as exc:
        _fail_input(f"cannot write {out}: {exc}")


def _finish(report: Report, as_json: bool, out: str | None) -> None:
    _emit(report.to_json() if as_json else report.to_text(), out)
    failed = [check.check_id for check in report.checks if check.status == "fail"]
    if failed:
        LOGGER.warning("%d check(s) failed: %s", len(failed), ", ".join(failed))
        sys.exit(EXIT_FAILED)


def _load_symbols(paths):
    symbols = []
    for path in paths:
        try:
            xi = read_series(path)
        except WedgeOpsError as exc:
            _fail_input(str(exc))
        if not xi.is_analytic:
            _fail_input(f"{path}: symbol has negative frequencies and is not analytic")
        symbols.append(xi)
    return symbols


output_format = click.option(
    "--json/--text", "as_json", default=True, show_default=True, help="Report format."
)
output_file = click.option("--out", type=click.Path(dir_okay=False), help="Write the report to a file.")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool) -> None:
    """Exterior powers, pointwise wedge products and creation operators on Hardy spaces."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command("paper-examples")
@output_format
@output_file
def paper_examples(as_json: bool, out: str | None) -> None:
    """Run the built-in worked examples."""
    _finish(run_worked_examples(), as_json, out)


@cli.command()
@click.option("--dim", type=int, default=3, show_default=True)
@click.option("--degree", type=int, default=6, show_default=True)
@click.option("--grade", type=int, default=3, show_default=True)
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=settings.DEFAULT_SEED, envvar="WEDGEOPS_SEED", show_default=True)
@click.option("--tol", type=float, default=None, help="Override every check's tolerance.")
@click.option("--xi", "xi_files", multiple=True, help="JSON series file; repeatable.")
@output_format
@output_file
def suite(dim, degree, grade, trials, seed, tol, xi_files, as_json, out) -> None:
    """Run every registered property check with seeded randomness."""
    try:
        cfg = RunConfig(
            dim=dim, degree=degree, grade=grade, trials=trials, seed=seed, tol=tol, xi_files=list(xi_files)
        )
    except ValidationError as exc:
        _fail_input(str(exc))
    _load_symbols(cfg.xi_files)
    LOGGER.info("suite d=%d N=%d p=%d trials=%d seed=%d", dim, degree, grade, trials, seed)
    _finish(run_suite(cfg), as_json, out)


@cli.command()
@click.option("--xi", "xi_files", multiple=True, required=True, help="JSON series file; repeatable.")
@click.option("--degree", type=int, default=4, show_default=True)
@click.option("--tol", type=float, default=settings.NULLSPACE_RTOL, show_default=True)
@output_file
def poc(xi_files, degree, tol, out) -> None:
    """Print an orthonormal basis of the pointwise orthogonal complement in H^2_degree."""
    if not 0 <= degree <= settings.MAX_SYMBOL_DEGREE or tol <= 0:
        _fail_input(f"--degree must be in [0, {settings.MAX_SYMBOL_DEGREE}] and --tol > 0")
    symbols = _load_symbols(xi_files)
    try:
        basis = poc_basis(symbols, degree, tol)
    except WedgeOpsError as exc:
        _fail_input(str(exc))
    payload = {
        "degenerate": basis.degenerate,
        "degree": degree,
        "dimension": basis.dimension,
        "basis": [series_to_dict(h) for h in basis.elements()],
    }
    _emit(json.dumps(payload, sort_keys=True), out)


def main() -> None:
    cli()
