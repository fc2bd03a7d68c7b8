"""
Command-line interface for polymix.

Every sub-command builds a JobConfig and hands it to `run`, which returns an exit code and the text
to print. Reports go to stdout; errors and log records go to stderr, so `--json` output can be piped.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

import click
from pydantic import BaseModel, ValidationError

from polymix.catalog import UnknownCatalogEntryError, catalog_entries, lookup, parse_catalog_name
from polymix.coset_enumeration import EnumerationOverflow
from polymix.models import CatalogListing, JobConfig, Presentation, ReproductionReport, TorusMapParams
from polymix.oracle import OracleBudgetExceeded, oracle_report
from polymix.presentation_io import format_presentation, read_presentation, write_presentation
from polymix.rotation import RotationSystem, classify
from polymix.settings import settings
from polymix.svc.criteria import chirality_criteria
from polymix.svc.mixer import mix, mix_report, self_dual_mix
from polymix.svc.reproduction import DEFAULT_PAIRS, reproduce_torus_family
from polymix.svc.validation import ExperimentalEntryError, validate_torus_map
from polymix.validators import validate_torus_pair

logger = logging.getLogger("polymix")

ERROR_PREFIX = "Error: "


def setup_logging() -> None:
    """
    Send polymix log records to stderr. Quiet (warnings only) unless POLYMIX_DEBUG is set.
    """
    if logger.handlers:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if settings.DEBUG else logging.WARNING)


def load_presentation(source: str) -> Presentation:
    """A presentation file path, or a catalog name such as {3,6}(1,2)."""
    path = Path(source)
    if path.is_file():
        return read_presentation(path)
    try:
        return lookup(source)
    except UnknownCatalogEntryError:
        raise UnknownCatalogEntryError(f"{source!r} is neither a presentation file nor a catalog entry")


def load_system(source: str, limit: int) -> RotationSystem:
    return RotationSystem.from_presentation(load_presentation(source), limit)


def format_for_display(report: BaseModel) -> str:
    if isinstance(report, ReproductionReport):
        return format_reproduction_for_display(report)
    if isinstance(report, CatalogListing):
        return "\n".join(
            f"{entry.name}: rank {entry.rank}, {entry.provenance}" + (" (experimental)" if entry.experimental else "")
            for entry in report.entries
        )
    report_dict = report.model_dump()
    return "\n".join(sorted([f"{key}: {value}" for key, value in report_dict.items()]))


def format_reproduction_for_display(report: ReproductionReport) -> str:
    lines = []
    for row in report.rows:
        header = f"(b, c) = ({row.b}, {row.c}), m = {row.m}: {row.status}"
        lines.append(header + (f" ({row.reason})" if row.reason else ""))
        for check in row.checks:
            mark = "ok" if check.ok else "FAIL"
            lines.append(f"  [{mark}] {check.tag}: expected {check.expected}, got {check.actual}")
    lines.append("passed" if report.passed else "failed")
    return "\n".join(lines)


def _render(report: BaseModel, config: JobConfig) -> str:
    if config.output_format == "json":
        return report.model_dump_json(indent=2)
    return format_for_display(report)


def _dispatch(config: JobConfig) -> tuple[int, str]:
    limit = config.coset_limit
    if config.command == "catalog":
        return 0, _render(CatalogListing(entries=catalog_entries()), config)
    if config.command == "emit":
        assert config.name is not None
        presentation = lookup(config.name)
        if config.out is not None:
            write_presentation(presentation, config.out)
        if config.output_format == "json":
            return 0, presentation.model_dump_json(indent=2)
        return 0, format_presentation(presentation).rstrip("\n")
    if config.command == "validate":
        assert config.name is not None
        params = parse_catalog_name(config.name)
        if not isinstance(params, TorusMapParams):
            raise ValueError(f"{config.name!r} is not a torus map")
        presentation = validate_torus_map(params, limit)
        if config.output_format == "json":
            return 0, presentation.model_dump_json(indent=2)
        return 0, format_presentation(presentation).rstrip("\n")
    if config.command == "reproduce":
        report = reproduce_torus_family(config.pairs or DEFAULT_PAIRS, limit)
        return (0 if report.passed else 1), _render(report, config)

    systems = [load_system(source, limit) for source in config.inputs]
    if config.command == "classify":
        return 0, _render(classify(systems[0]), config)
    if config.command == "mix":
        return 0, _render(mix_report(mix(systems[0], systems[1], limit)), config)
    if config.command == "selfdual":
        return 0, _render(mix_report(self_dual_mix(systems[0], config.variant, limit)), config)
    if config.command == "criteria":
        return 0, _render(chirality_criteria(systems[0], config.exhaustive, limit), config)
    return 0, _render(oracle_report(systems[0], config.oracle_budget), config)


def run(config: JobConfig) -> tuple[int, str]:
    """
    Exit 0 on success, 2 when an enumeration overflows, 1 for invalid input and failed reproduction
    rows. Error text starts with "Error: ".
    """
    try:
        return _dispatch(config)
    except EnumerationOverflow as e:
        logger.error(f"{config.command} overflowed: {e}")
        return 2, f"{ERROR_PREFIX}EnumerationOverflow: {e}"
    except (ValueError, OSError, OracleBudgetExceeded, ExperimentalEntryError) as e:
        logger.error(f"{config.command} failed: {e}")
        return 1, f"{ERROR_PREFIX}{e}"


def _execute(ctx: click.Context, command: str, as_json: bool, **fields) -> None:
    options = ctx.obj
    try:
        config = JobConfig(
            command=command,
            coset_limit=options["limit"] if options["limit"] is not None else settings.COSET_LIMIT,
            oracle_budget=options["budget"] if options["budget"] is not None else settings.ORACLE_BUDGET,
            output_format="json" if (as_json or options["json"]) else "table",
            **fields,
        )
    except ValidationError as e:
        click.echo(f"{ERROR_PREFIX}{e}", err=True)
        ctx.exit(1)
    code, text = run(config)
    click.echo(text, err=text.startswith(ERROR_PREFIX))
    ctx.exit(code)


def _parse_pairs(ctx: click.Context, param: click.Parameter, values: tuple[str, ...]) -> list[tuple[int, int]]:
    try:
        return [validate_torus_pair(value) for value in values]
    except ValueError as e:
        raise click.BadParameter(str(e))


json_option = click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON")


@click.group()
@click.option("--limit", type=int, default=None, help="Max cosets per enumeration and max mix size")
@click.option("--budget", type=int, default=None, help="Max group order accepted by the oracle")
@click.option("--json", "as_json", is_flag=True, help="Emit reports as JSON")
@click.pass_context
def cli(ctx: click.Context, limit: Optional[int], budget: Optional[int], as_json: bool):
    """
    Construct and classify self-dual chiral polytopes.

    Presentation arguments are file paths or catalog names such as "{3,6}(1,2)" or "{4,3,3}".
    """
    setup_logging()
    ctx.ensure_object(dict)
    ctx.obj.update(limit=limit, budget=budget, json=as_json)
    logger.debug(f"polymix invoked: {' '.join(sys.argv)}")


@cli.command()
@json_option
@click.pass_context
def catalog(ctx: click.Context, as_json: bool):
    """
    List the named presentations.
    """
    _execute(ctx, "catalog", as_json)


@cli.command()
@click.option("--name", required=True, help='Catalog name, e.g. "{3,6}(1,2)"')
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write the presentation here")
@json_option
@click.pass_context
def emit(ctx: click.Context, name: str, out: Optional[Path], as_json: bool):
    """
    Print (or write) a catalog presentation in the text file format.
    """
    _execute(ctx, "emit", as_json, name=name, out=out)


@cli.command("classify")
@click.option("--pres", required=True, help="Presentation file or catalog name")
@json_option
@click.pass_context
def classify_command(ctx: click.Context, pres: str, as_json: bool):
    """
    Order, type, polytopality, regularity and self-duality of a presented rotation group.
    """
    _execute(ctx, "classify", as_json, inputs=[pres])


@cli.command("mix")
@click.argument("first")
@click.argument("second")
@json_option
@click.pass_context
def mix_command(ctx: click.Context, first: str, second: str, as_json: bool):
    """
    Mix two rotation groups and classify the result.
    """
    _execute(ctx, "mix", as_json, inputs=[first, second])


@cli.command()
@click.argument("pres")
@click.option("--variant", type=click.Choice(["proper", "improper"]), default="proper", show_default=True)
@json_option
@click.pass_context
def selfdual(ctx: click.Context, pres: str, variant: str, as_json: bool):
    """
    Mix a rotation group with its dual (proper) or mirrored dual (improper).
    """
    _execute(ctx, "selfdual", as_json, inputs=[pres], variant=variant)


@cli.command()
@click.argument("pres")
@click.option("--exhaustive", is_flag=True, help="Evaluate every criterion instead of stopping at the first that fires")
@json_option
@click.pass_context
def criteria(ctx: click.Context, pres: str, exhaustive: bool, as_json: bool):
    """
    Chirality criteria for the mix of a chiral polytope with its dual.
    """
    _execute(ctx, "criteria", as_json, inputs=[pres], exhaustive=exhaustive)


@cli.command()
@click.argument("pres")
@json_option
@click.pass_context
def oracle(ctx: click.Context, pres: str, as_json: bool):
    """
    Check the polytope axioms directly on the face poset.
    """
    _execute(ctx, "oracle", as_json, inputs=[pres])


@cli.command()
@click.option("--pair", "pairs", multiple=True, callback=_parse_pairs, help="A (b, c) pair such as 1,2; repeatable")
@json_option
@click.pass_context
def reproduce(ctx: click.Context, pairs: list[tuple[int, int]], as_json: bool):
    """
    Recompute every number of the chiral torus map family and compare with the closed forms.
    """
    _execute(ctx, "reproduce", as_json, pairs=pairs)


@cli.command()
@click.option("--name", required=True, help='Torus map name, e.g. "{4,4}(1,2)"')
@json_option
@click.pass_context
def validate(ctx: click.Context, name: str, as_json: bool):
    """
    Check a torus map presentation against the lattice construction.
    """
    _execute(ctx, "validate", as_json, name=name)


if __name__ == "__main__":
    cli()
