"""
Command-line front end.

    python main.py --instance fixtures/example2.json matroid dual bases
    python main.py --instance fixtures/example2.json verify --export out.zip
    python main.py gen 5 2 7

stdout carries only results, so two runs on the same input are byte-identical;
logs go to stderr.
"""

import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

import click

import settings
from approximation import lower_approximation, upper_approximation
from exceptions import CapExceededError, InternalMismatchError, RoughMatroidError
from induced_matroid import (
    contraction_pair,
    dual_rank_closed_form,
    induced_dual,
    induced_primal,
    primal_rank_closed_form,
)
from instances import (
    document_to_partition,
    load_instance,
    partition_to_document,
    print_instance,
    random_partition,
)
from matroid_engine import bases, circuits, lifted_family, rank
from models import Partition, SetFamily
from report_export import EMPTY_SET, render_report, report_as_json, write_report_export
from schemas import InstanceDocument
from verification import verify_all

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class CliState:
    instance_path: Optional[str]
    as_json: bool
    cap: Optional[int]

    def document(self) -> InstanceDocument:
        if self.instance_path is None:
            raise click.UsageError("this command needs --instance PATH")
        return load_instance(self.instance_path)

    def partition(self) -> Partition:
        return document_to_partition(self.document())


class RoughMatroidGroup(click.Group):
    """Maps toolkit errors to `error: ...` on stderr and their exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except RoughMatroidError as exc:
            logger.debug("[CLI] %s", type(exc).__name__)
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)


# ============ OUTPUT HELPERS ============


def _emit_family(state: CliState, p: Partition, family: SetFamily) -> None:
    labels = [p.universe.labels(mask) for mask in family.masks]
    if state.as_json:
        click.echo(json.dumps(labels, ensure_ascii=False))
        return
    for names in labels:
        click.echo(" ".join(names) if names else EMPTY_SET)


def _require_listing_cap(p: Partition, cap: Optional[int]) -> None:
    limit = settings.resolve_cap(cap, settings.MAX_GROUND_SIZE)
    if p.size > limit:
        raise CapExceededError(p.size, limit, "matroid listing")


def _family(m, what: str) -> SetFamily:
    if what == "independents":
        return m.independents
    if what == "bases":
        return bases(m)
    return circuits(m)


WHICH = click.Choice(["primal", "dual"])
WHAT = click.Choice(["independents", "bases", "circuits"])


# ============ COMMANDS ============


@click.group(cls=RoughMatroidGroup)
@click.option(
    "--instance",
    "instance_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Instance document (JSON with universe and blocks).",
)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--cap", type=int, default=None, help="Override the universe-size cap.")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Logging level for stderr (default from ROUGHMAT_LOG_LEVEL).",
)
@click.pass_context
def cli(ctx, instance_path, as_json, cap, log_level):
    """Rough-set approximation operators and their induced matroids."""
    logging.basicConfig(
        level=(log_level or settings.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    ctx.obj = CliState(instance_path, as_json, cap)


@cli.command()
@click.argument("which", type=click.Choice(["lower", "upper"]))
@click.argument("names", nargs=-1)
@click.pass_obj
def approx(state: CliState, which, names):
    """Lower or upper approximation of the set NAMES."""
    p = state.partition()
    x = p.universe.subset(names)
    result = lower_approximation(p, x) if which == "lower" else upper_approximation(p, x)
    labels = p.universe.labels(result)
    if state.as_json:
        click.echo(json.dumps(labels, ensure_ascii=False))
    else:
        click.echo(" ".join(labels))


@cli.command()
@click.argument("which", type=WHICH)
@click.argument("what", type=WHAT)
@click.pass_obj
def matroid(state: CliState, which, what):
    """List the independents, bases or circuits of M(R) or its dual."""
    p = state.partition()
    _require_listing_cap(p, state.cap)
    m = induced_primal(p).matroid if which == "primal" else induced_dual(p).matroid
    _emit_family(state, p, _family(m, what))


@cli.command("rank")
@click.argument("which", type=WHICH)
@click.argument("names", nargs=-1)
@click.pass_obj
def rank_command(state: CliState, which, names):
    """Rank of NAMES in M(R) or its dual, checked against the block formula."""
    p = state.partition()
    _require_listing_cap(p, state.cap)
    x = p.universe.subset(names)
    if which == "primal":
        value, closed = rank(induced_primal(p).matroid, x), primal_rank_closed_form(p, x)
    else:
        value, closed = rank(induced_dual(p).matroid, x), dual_rank_closed_form(p, x)
    if value != closed:
        raise InternalMismatchError(
            f"{which} rank {value} disagrees with the closed form {closed}"
        )
    click.echo(json.dumps(value) if state.as_json else str(value))


@cli.command()
@click.argument("element")
@click.argument("mode", type=click.Choice(["point", "class"]))
@click.argument("what", type=WHAT)
@click.pass_obj
def contract(state: CliState, element, mode, what):
    """Families of the dual contracted by {ELEMENT} or by its class."""
    p = state.partition()
    x = p.universe.index(element)
    point, whole = contraction_pair(p, x, state.cap)
    minor = point if mode == "point" else whole
    _emit_family(state, p, lifted_family(minor, _family(minor, what)))


@cli.command()
@click.option(
    "--export",
    "export_path",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Also write a zip with CSV/JSON results.",
)
@click.pass_context
def verify(ctx, export_path):
    """Run every check on the instance; exit status 1 if any fails."""
    state: CliState = ctx.obj
    p = state.partition()
    report = verify_all(p, cap=state.cap)
    if export_path:
        write_report_export(report, partition_to_document(p), export_path)
    click.echo(report_as_json(report) if state.as_json else render_report(report), nl=False)
    if not report.passed:
        ctx.exit(1)


@cli.command()
@click.argument("n", type=int)
@click.argument("blocks", type=int)
@click.argument("seed", type=int)
@click.pass_obj
def gen(state: CliState, n, blocks, seed):
    """Print a seeded random instance of N elements in BLOCKS blocks."""
    p = random_partition(n, seed, blocks, cap=state.cap)
    click.echo(print_instance(partition_to_document(p)), nl=False)


if __name__ == "__main__":
    cli()
