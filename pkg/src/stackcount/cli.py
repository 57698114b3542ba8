"""CLI entry point for stackcount.

This module provides the Typer-based CLI with commands:
- stackcount sectors: Sectors, ages and raised ages of a stack
- stackcount invariants: a, b, rho, j_c and the predicted asymptotic
- stackcount thin-scan: Breaking and weakly breaking subgroups and twists
- stackcount kluners: The C_3 wr C_2 classification report
- stackcount comprehensive: c-comprehensiveness of a group
- stackcount count: Exact point counts N(B) on a sample grid
- stackcount fit: Fit N(B) ~ C B^alpha (log B)^beta to a count series

Exit codes:
- 0: Success
- 1: Domain error (invalid stack, raising function, config or input file)
- 2: Usage error

Results go to stdout as text, JSON (--json) or CSV (--csv); logs go to stderr.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from datetime import datetime, timezone

UTC = timezone.utc
from enum import Enum, IntEnum
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Any

import typer
from pydantic import BaseModel, ValidationError

from stackcount import __version__
from stackcount.config import load_config
from stackcount.counting import (
    CountStrategy,
    HeightVariant,
    SeriesMeta,
    fit_exponents,
    geometric_samples,
    mu_count,
    read_series,
    wps_count,
    write_series,
)
from stackcount.counting.series import format_bound
from stackcount.errors import CountingError, InvariantError, StackcountError
from stackcount.galois import TwistDatum
from stackcount.groups import generate_group, parse_permutation
from stackcount.invariants import invariant_report
from stackcount.language import load_stack, parse_raising_spec
from stackcount.logging import configure_logging, get_logger
from stackcount.rational import format_fraction, to_fraction
from stackcount.sectors import BGStack, MuStack, WPSStack, sector_table
from stackcount.thin import is_comprehensive, kluners_report, thin_scan

if TYPE_CHECKING:
    from fractions import Fraction

    from stackcount.config.schema import Config
    from stackcount.sectors import RaisingFunction, StackDescriptor
    from stackcount.thin import ThinVerdict


class ExitCode(IntEnum):
    """CLI exit codes."""

    SUCCESS = 0
    DOMAIN_ERROR = 1
    USAGE_ERROR = 2


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


app = typer.Typer(
    name="stackcount",
    help="Sector calculus, Manin/Malle invariants and point counts for stacks over Q.",
    add_completion=False,
    no_args_is_help=True,
)

ConfigOption = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Path to configuration file."),
]
VerboseOption = Annotated[bool, typer.Option("--verbose", "-v", help="Enable debug logging.")]
LogJsonOption = Annotated[bool, typer.Option("--log-json", help="Render logs on stderr as JSON.")]
JsonOption = Annotated[bool, typer.Option("--json", help="Write the result as JSON.")]
CsvOption = Annotated[bool, typer.Option("--csv", help="Write the result as CSV.")]
NoMetaOption = Annotated[
    bool,
    typer.Option("--no-meta", help="Omit the generation timestamp and version from JSON output."),
]
StackOption = Annotated[
    str,
    typer.Option("--stack", "-s", help='Stack spec, e.g. "prod(wps(2,3), mu(2))".'),
]
RaisingOption = Annotated[
    str | None,
    typer.Option(
        "--raising",
        "-r",
        help="Raising spec, e.g. builtin:index, builtin:quasitoric, table:{1/2:1}, boxplus(...).",
    ),
]
OrderLimitOption = Annotated[
    int | None,
    typer.Option("--order-limit", min=1, help="Largest group order for subgroup enumeration."),
]


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"stackcount {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Annotated[
        bool | None,
        typer.Option(
            "--version",
            "-V",
            help="Show version and exit.",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
) -> None:
    """Sector calculus, Manin/Malle invariants and point counts for stacks over Q."""


# =============================================================================
# Shared helpers
# =============================================================================


@contextmanager
def _domain_errors() -> Iterator[None]:
    """Report domain errors in red on stderr and exit with code 1."""
    try:
        yield
    except (StackcountError, ValidationError, OSError) as e:
        typer.echo(typer.style(f"✗ {e}", fg=typer.colors.RED), err=True)
        raise typer.Exit(ExitCode.DOMAIN_ERROR) from e


def _setup(config: Path | None, verbose: bool, log_json: bool) -> Config:
    configure_logging(verbose=verbose, json_output=log_json)
    return load_config(config)


def _output_format(
    as_json: bool, as_csv: bool, default: OutputFormat = OutputFormat.TEXT
) -> OutputFormat:
    if as_json and as_csv:
        msg = "--json and --csv are mutually exclusive"
        raise typer.BadParameter(msg)
    if as_json:
        return OutputFormat.JSON
    if as_csv:
        return OutputFormat.CSV
    return default


def _meta(no_meta: bool) -> SeriesMeta | None:
    if no_meta:
        return None
    return SeriesMeta(generated_at=datetime.now(UTC), version=__version__)


def _emit_json(result: BaseModel, meta: SeriesMeta | None) -> None:
    payload: dict[str, Any] = result.model_dump(mode="json")
    if meta is not None:
        payload["meta"] = meta.model_dump(mode="json")
    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    typer.echo(buffer.getvalue(), nl=False)


def _emit_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    cells = [[str(h) for h in header], *[[_cell(v) for v in row] for row in rows]]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    for i, row in enumerate(cells):
        typer.echo("  ".join(v.ljust(w) for v, w in zip(row, widths, strict=True)).rstrip())
        if i == 0:
            typer.echo("  ".join("─" * w for w in widths))


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if hasattr(value, "denominator") and not isinstance(value, int | float):
        return format_fraction(value)
    return str(value)


def _raising(stack: StackDescriptor, spec: str | None) -> RaisingFunction:
    """Parse --raising, defaulting to index on bg and quasi-toric on wps."""
    if spec is None:
        if isinstance(stack, BGStack):
            spec = "builtin:index"
        elif isinstance(stack, WPSStack):
            spec = "builtin:quasitoric"
        else:
            msg = f"--raising is required for {stack.describe()}"
            raise typer.BadParameter(msg)
    return parse_raising_spec(spec, stack)


def _verdict_rows(verdicts: Sequence[ThinVerdict]) -> list[list[Any]]:
    return [
        [v.kind, v.source, v.order, v.mode, v.a_sub, v.b_sub, v.verdict] for v in verdicts
    ]


_VERDICT_HEADER = ["kind", "source", "order", "mode", "a_sub", "b_sub", "verdict"]


# =============================================================================
# Commands
# =============================================================================


@app.command()
def sectors(
    stack: StackOption,
    raising: RaisingOption = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """List sectors with age, and c, age_c and juniority when --raising is given."""
    fmt = _output_format(as_json, as_csv)
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        descriptor = load_stack(stack, closure_limit=cfg.groups.closure_limit)
        c = parse_raising_spec(raising, descriptor) if raising is not None else None
        table = sector_table(descriptor, c)

    header = ["sector", "twisted", "age", "c", "age_c", "junior"]
    rows = [[r.label, r.twisted, r.age, r.c, r.age_c, r.junior] for r in table.sectors]
    if fmt is OutputFormat.JSON:
        _emit_json(table, _meta(no_meta))
    elif fmt is OutputFormat.CSV:
        _emit_csv(header, [[_cell(v) for v in row] for row in rows])
    else:
        typer.echo(typer.style(table.stack, bold=True))
        typer.echo(f"dim {table.dim}, rho {table.rho}")
        if table.raising is not None:
            typer.echo(f"c = {table.raising}, j_c = {table.junior_count}")
        typer.echo()
        _emit_table(header, rows)
    raise typer.Exit(ExitCode.SUCCESS)


@app.command()
def invariants(
    stack: StackOption,
    raising: RaisingOption = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Compute a, b, rho, j_c, adequacy and the predicted asymptotic of (X, c)."""
    fmt = _output_format(as_json, as_csv)
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        descriptor = load_stack(stack, closure_limit=cfg.groups.closure_limit)
        report = invariant_report(descriptor, _raising(descriptor, raising))

    fields = report.model_dump(mode="json")
    if fmt is OutputFormat.JSON:
        _emit_json(report, _meta(no_meta))
    elif fmt is OutputFormat.CSV:
        _emit_csv(list(fields), [[_cell(v) for v in fields.values()]])
    else:
        typer.echo(typer.style(report.stack, bold=True))
        for key, value in fields.items():
            if key != "stack":
                typer.echo(f"  {key}: {_cell(value)}")
    raise typer.Exit(ExitCode.SUCCESS)


@app.command("thin-scan")
def thin_scan_command(
    stack: StackOption,
    raising: RaisingOption = None,
    order_limit: OrderLimitOption = None,
    twist_normal: Annotated[
        str | None,
        typer.Option(
            "--twist-normal",
            help='Generators of a constant subgroup to twist, separated by "|".',
        ),
    ] = None,
    twist_involution: Annotated[
        str | None,
        typer.Option(
            "--twist-involution",
            help="Permutation whose conjugation is the twisting involution.",
        ),
    ] = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Scan subgroups (and optionally twisted forms) for breaking thin maps."""
    fmt = _output_format(as_json, as_csv)
    if (twist_normal is None) != (twist_involution is None):
        msg = "--twist-normal and --twist-involution must be given together"
        raise typer.BadParameter(msg)
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        descriptor = load_stack(stack, closure_limit=cfg.groups.closure_limit)
        c = _raising(descriptor, raising)
        twist = None
        if twist_normal is not None and twist_involution is not None:
            twist = _twist_datum(
                descriptor, twist_normal, twist_involution, cfg.groups.closure_limit
            )
        report = thin_scan(
            c,
            order_limit=order_limit or cfg.groups.subgroup_order_limit,
            twist=twist,
        )

    verdicts = report.subgroup_verdicts + report.twist_verdicts
    if fmt is OutputFormat.JSON:
        _emit_json(report, _meta(no_meta))
    elif fmt is OutputFormat.CSV:
        _emit_csv(_VERDICT_HEADER, [[_cell(v) for v in row] for row in _verdict_rows(verdicts)])
    else:
        typer.echo(typer.style(report.stack, bold=True))
        a_text = format_fraction(report.a)
        typer.echo(f"(a, b) = ({a_text}, {report.b}); security: {report.security.value}")
        typer.echo()
        _emit_table(_VERDICT_HEADER, _verdict_rows(verdicts))
    raise typer.Exit(ExitCode.SUCCESS)


def _twist_datum(
    stack: StackDescriptor, normal: str, involution: str, closure_limit: int
) -> TwistDatum:
    if not isinstance(stack, BGStack):
        msg = f"twist scans need a bg stack, not {stack.describe()}"
        raise InvariantError(msg)
    degree = stack.group.degree
    gens = [parse_permutation(g, degree) for g in normal.split("|")]
    subgroup = generate_group(gens, degree=degree, limit=closure_limit)
    swap = parse_permutation(involution, degree)
    return TwistDatum.by_conjugation(subgroup, stack.group.exponent, swap)


@app.command()
def kluners(
    order_limit: OrderLimitOption = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Classify the thin maps of C_3 wr C_2 in S_6 with the index raising function."""
    fmt = _output_format(as_json, as_csv)
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        report = kluners_report(order_limit=order_limit or cfg.groups.subgroup_order_limit)

    verdicts = report.subgroup_verdicts + report.twist_verdicts
    if fmt is OutputFormat.JSON:
        _emit_json(report, _meta(no_meta))
        raise typer.Exit(ExitCode.SUCCESS)
    if fmt is OutputFormat.CSV:
        _emit_csv(_VERDICT_HEADER, [[_cell(v) for v in row] for row in _verdict_rows(verdicts)])
        raise typer.Exit(ExitCode.SUCCESS)

    comprehensive = report.comprehensive
    typer.echo(typer.style(f"G = {report.group}", bold=True))
    typer.echo(f"order {report.order}, exponent {report.exponent}")
    typer.echo(f"(a_G, b_G) = ({format_fraction(report.a)}, {report.b})")
    typer.echo()
    typer.echo(typer.style("Order-3 subgroups:", bold=True))
    _emit_table(_VERDICT_HEADER, _verdict_rows(report.order_three_verdicts))
    typer.echo()
    typer.echo(typer.style("Twisted forms of N:", bold=True))
    _emit_table(
        ["algebra", "mode", "a_sub", "b_sub", "verdict", "security"],
        [
            [r.algebra, r.mode, r.a_sub, r.b_sub, r.verdict, r.security]
            for r in report.classification
        ],
    )
    typer.echo()
    typer.echo(typer.style("Comprehensiveness:", bold=True))
    typer.echo(f"  comprehensive: {_cell(comprehensive.comprehensive)}")
    if comprehensive.witness is not None:
        typer.echo(f"  witness class: {{{', '.join(comprehensive.witness)}}}")
        typer.echo(f"  normal closure order: {comprehensive.witness_closure_order}")
    raise typer.Exit(ExitCode.SUCCESS)


@app.command()
def comprehensive(
    stack: StackOption,
    raising: RaisingOption = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Check that every minimal-c nontrivial class normally generates G."""
    fmt = _output_format(as_json, as_csv)
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        descriptor = load_stack(stack, closure_limit=cfg.groups.closure_limit)
        if not isinstance(descriptor, BGStack):
            msg = f"comprehensiveness needs a bg stack, not {descriptor.describe()}"
            raise InvariantError(msg)
        result = is_comprehensive(descriptor.group, _raising(descriptor, raising))

    if fmt is OutputFormat.JSON:
        _emit_json(result, _meta(no_meta))
    elif fmt is OutputFormat.CSV:
        _emit_csv(
            ["comprehensive", "group_order", "minimal_value", "witness", "witness_closure_order"],
            [
                [
                    _cell(result.comprehensive),
                    result.group_order,
                    format_fraction(result.minimal_value),
                    " ".join(result.witness or []),
                    _cell(result.witness_closure_order),
                ]
            ],
        )
    else:
        typer.echo(f"comprehensive: {_cell(result.comprehensive)}")
        typer.echo(f"minimal c: {format_fraction(result.minimal_value)}")
        for members in result.minimal_classes:
            typer.echo(f"  class {{{', '.join(members)}}}")
        if result.witness is not None:
            typer.echo(
                f"witness {{{', '.join(result.witness)}}} normally generates a subgroup "
                f"of order {result.witness_closure_order} < {result.group_order}"
            )
    raise typer.Exit(ExitCode.SUCCESS)


@app.command()
def count(
    family: Annotated[
        str, typer.Option("--family", "-f", help='Counted family: "mu(l)" or "wps(a0,...)".')
    ],
    b_max: Annotated[float, typer.Option("--b-max", min=1, help="Largest height bound.")],
    raising: RaisingOption = None,
    height: Annotated[
        HeightVariant | None,
        typer.Option("--height", help="Named height on wps families (default quasi_toric)."),
    ] = None,
    points: Annotated[
        int | None, typer.Option("--points", min=1, help="Number of sample bounds.")
    ] = None,
    ratio: Annotated[
        float | None, typer.Option("--ratio", help="Ratio between sample bounds.")
    ] = None,
    workers: Annotated[
        int | None, typer.Option("--workers", min=1, max=64, help="Worker processes.")
    ] = None,
    strategy: Annotated[
        CountStrategy,
        typer.Option("--strategy", help="wps enumeration: auto, box or profiles."),
    ] = CountStrategy.AUTO,
    output: Annotated[
        Path | None,
        typer.Option("--output", "-o", help="Write the series as CSV plus a JSON sidecar."),
    ] = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Count rational points of bounded height on mu(l) or a weighted projective stack."""
    fmt = _output_format(as_json, as_csv)
    if raising is not None and height is not None:
        msg = "--raising and --height are mutually exclusive"
        raise typer.BadParameter(msg)
    log = get_logger("stackcount.cli")
    with _domain_errors():
        cfg = _setup(config, verbose, log_json)
        settings = cfg.counting
        if workers is not None:
            settings = settings.model_copy(update={"workers": workers})
        descriptor = load_stack(family, closure_limit=cfg.groups.closure_limit)
        samples = geometric_samples(b_max, points or cfg.fit.points, ratio or cfg.fit.ratio)
        if isinstance(descriptor, MuStack):
            if height is not None:
                msg = "--height applies to wps families only"
                raise typer.BadParameter(msg)
            if raising is None:
                msg = "--raising is required for mu families"
                raise typer.BadParameter(msg)
            c = parse_raising_spec(raising, descriptor)
            series = mu_count(descriptor.l, c, samples, settings=settings)
        elif isinstance(descriptor, WPSStack):
            variant: HeightVariant | RaisingFunction = height or HeightVariant.QUASI_TORIC
            if raising is not None:
                variant = parse_raising_spec(raising, descriptor)
            series = wps_count(
                descriptor.weights, variant, samples, settings=settings, strategy=strategy
            )
        else:
            msg = f"count supports mu(l) and wps(...) families, not {descriptor.describe()}"
            raise CountingError(msg)
        series = series.model_copy(update={"meta": _meta(no_meta)})
        if output is not None:
            sidecar = write_series(series, output)
            log.info("series_written", csv=str(output), sidecar=str(sidecar))

    if fmt is OutputFormat.JSON:
        typer.echo(series.model_dump_json(indent=2))
    elif fmt is OutputFormat.CSV:
        typer.echo(series.to_csv(), nl=False)
    else:
        typer.echo(typer.style(f"{series.family}  c = {series.raising}", bold=True))
        _emit_table(["B", "N"], [[format_bound(s.b), s.n] for s in series.samples])
    raise typer.Exit(ExitCode.SUCCESS)


@app.command()
def fit(
    input_path: Annotated[
        Path,
        typer.Option("--input", "-i", help="Series CSV written by count (B,N columns)."),
    ],
    fix_alpha: Annotated[
        str | None,
        typer.Option("--fix-alpha", help="Hold alpha at this rational and fit C and beta only."),
    ] = None,
    as_json: JsonOption = False,
    as_csv: CsvOption = False,
    text: Annotated[bool, typer.Option("--text", help="Write the result as text.")] = False,
    no_meta: NoMetaOption = False,
    config: ConfigOption = None,
    verbose: VerboseOption = False,
    log_json: LogJsonOption = False,
) -> None:
    """Fit log N = log C + alpha log B + beta log log B; prints a FitResult as JSON by default.

    Only rows with B >= e^2 (about 7.389) enter the fit. Smaller rows are skipped
    with a fit_samples_dropped warning on stderr, and at least four rows must remain.
    """
    if text and (as_json or as_csv):
        msg = "--text cannot be combined with --json or --csv"
        raise typer.BadParameter(msg)
    fmt = OutputFormat.TEXT if text else _output_format(as_json, as_csv, default=OutputFormat.JSON)
    alpha: Fraction | None = None
    if fix_alpha is not None:
        try:
            alpha = to_fraction(fix_alpha)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--fix-alpha") from e
    with _domain_errors():
        _setup(config, verbose, log_json)
        result = fit_exponents(read_series(input_path), fix_alpha=alpha)

    if fmt is OutputFormat.JSON:
        _emit_json(result, _meta(no_meta))
    elif fmt is OutputFormat.CSV:
        fields = result.model_dump(mode="json")
        _emit_csv(list(fields), [[_cell(v) for v in fields.values()]])
    else:
        typer.echo(f"alpha = {result.alpha:.6f}, beta = {result.log_exponent:.6f}")
        typer.echo(f"C = {result.constant:.6g}, residual = {result.residual:.3g}")
        typer.echo(f"mode {result.mode.value}, {result.samples_used} samples")
    raise typer.Exit(ExitCode.SUCCESS)
