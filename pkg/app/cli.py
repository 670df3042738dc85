"""Command line for the char-2 Lie superalgebra engine."""

import json
from pathlib import Path
from typing import Annotated, List, Optional, get_args

import typer
from pydantic import BaseModel, ValidationError
from rich import box
from rich.console import Console
from rich.table import Table

from app.algebra.cartan import CartanSpec
from app.algebra.identify import FORMULAS
from app.algebra.presets import parse_preset_args
from app.algebra.series import SERIES
from app.core.exceptions import EXIT_COMPARISON_FAILURE, BaseEngineError, InvalidParams, SpecFileError
from app.dependencies.service_dependencies import ServiceProvider
from app.schemas.cartan import CartanSpecFile, OutputFormat, RunConfig, SpecSource, Variant
from app.schemas.forms import ExtendRequest, FormSpec
from app.schemas.prolong import PartialProlongRequest, ProlongReport, ProlongRequest
from app.services.cartan_service import resolve_spec_path

app = typer.Typer(
    name="lie2",
    help="Cartan-matrix Lie superalgebras, gradings and Cartan prolongs in characteristic 2",
    add_completion=False,
    rich_markup_mode="rich",
)

console = Console()
errors = Console(stderr=True)
services = ServiceProvider()

SpecArg = Annotated[Optional[str], typer.Argument(help="Spec file, or the stem of a shipped preset (sl3, wk3, o5)")]
MatrixOpt = Annotated[Optional[int], typer.Option("--matrix", "-m", help="Which Cartan matrix of a family")]
PresetOpt = Annotated[Optional[str], typer.Option("--preset", help="Preset family instead of a file (o_Pi, sl, oc)")]
ArgsOpt = Annotated[str, typer.Option("--args", help="Preset parameters, e.g. '5' or '2,2'")]
VariantOpt = Annotated[str, typer.Option("--variant", help="full | derived | core | center_quotient")]
FormatOpt = Annotated[str, typer.Option("--format", "-f", help="text | json")]


def _ints(text: Optional[str]) -> Optional[List[int]]:
    return parse_preset_args(text) if text else None


def _format(fmt: str) -> OutputFormat:
    if fmt not in ("text", "json"):
        raise InvalidParams(f"--format must be text or json, got '{fmt}'")
    return fmt


def _source(spec: Optional[str], matrix: Optional[int], preset: Optional[str], args: str, variant: str) -> SpecSource:
    if variant not in get_args(Variant):
        raise InvalidParams(f"--variant must be one of {', '.join(get_args(Variant))}")
    if preset is not None:
        return SpecSource(preset=preset, args=parse_preset_args(args), variant=variant)
    if spec is None:
        raise InvalidParams("Give a spec file or --preset")
    resolved: CartanSpec = resolve_spec_path(spec, matrix)
    return SpecSource(spec=CartanSpecFile.model_validate(resolved.to_file_dict()), variant=variant)


def _emit(report: BaseModel, fmt: OutputFormat, render) -> None:
    if fmt == "json":
        typer.echo(report.model_dump_json(indent=2))
    else:
        render(report)


def _run(action) -> None:
    """Run a command body, mapping engine errors to their exit codes."""
    try:
        action()
    except BaseEngineError as exc:
        errors.print(f"[bold red]{type(exc).__name__}[/bold red]: {exc.detail}")
        raise typer.Exit(code=exc.exit_code)
    except ValidationError as exc:
        errors.print(f"[bold red]invalid input[/bold red]: {exc.errors()[0]['msg']}")
        raise typer.Exit(code=SpecFileError().exit_code)


def _dims_table(title: str, dims: dict) -> Table:
    table = Table(title=title, box=box.SIMPLE)
    table.add_column("degree", justify="right")
    table.add_column("dim", justify="right")
    for d, n in dims.items():
        table.add_row(str(d), str(n))
    return table


@app.command()
def build(spec: SpecArg = None, matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "",
          fmt: FormatOpt = "text"):
    """Construct g(A) and report dim, rank, center, simple core, Dynkin diagram and root spaces."""
    def action():
        config = RunConfig(command="build", inputs=[spec or f"{preset}({args})"], format=_format(fmt))
        report = services.get_cartan_service().build_report(_source(spec, matrix, preset, args, "full"), config)

        def render(r):
            console.print(f"[bold]{r.name}[/bold]: dim {r.dim} (sdim {r.sdim}), size {r.size}, rank {r.rank}, "
                          f"center {r.center_dim}")
            console.print(f"derived dim {r.derived_dim}, simple core {r.simple_core_dim} (sdim {r.simple_core_sdim})")
            console.print(r.dynkin)
            table = Table(title="root spaces", box=box.SIMPLE)
            table.add_column("weight")
            table.add_column("dim", justify="right")
            for space in r.root_spaces:
                table.add_row(str(tuple(space.weight)), str(space.dim))
            console.print(table)
        _emit(report, config.format, render)
    _run(action)


@app.command()
def grade(spec: SpecArg = None, r: Annotated[str, typer.Option("--r", help="Grading vector, e.g. 0,1")] = "",
          matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "", variant: VariantOpt = "full",
          fmt: FormatOpt = "text"):
    """Z-grade the algebra by deg X_i^± = ±r_i."""
    def action():
        config = RunConfig(command="grade", inputs=[spec or f"{preset}({args})"], r=_ints(r), format=_format(fmt))
        report = services.get_cartan_service().grade_report(
            _source(spec, matrix, preset, args, variant), config.r or [], config)
        _emit(report, config.format, lambda rep: console.print(
            _dims_table(f"{rep.name} r={tuple(rep.r)} depth {rep.depth}"
                        f"{' (simplest)' if rep.simplest else ''}", rep.dims_by_degree)))
    _run(action)


@app.command()
def reflect(spec: SpecArg = None, sequence: Annotated[str, typer.Option("--sequence", help="Nodes, e.g. 1,2")] = "",
            matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "", fmt: FormatOpt = "text"):
    """Apply simple reflections in the given nodes (1-based)."""
    def action():
        config = RunConfig(command="reflect", inputs=[spec or f"{preset}({args})", sequence], format=_format(fmt))
        report = services.get_cartan_service().reflect(
            _source(spec, matrix, preset, args, "full"), _ints(sequence) or [], config)

        def render(rep):
            for step in rep.steps:
                console.print(step)
            console.print(rep.dynkin)
            for row in rep.matrix:
                console.print("  ".join(row))
        _emit(report, config.format, render)
    _run(action)


@app.command("enumerate-roots")
def enumerate_roots(spec: SpecArg = None, matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "",
                    fmt: FormatOpt = "text"):
    """Close the simple root system under reflections; one Cartan matrix per class."""
    def action():
        config = RunConfig(command="enumerate-roots", inputs=[spec or f"{preset}({args})"], format=_format(fmt))
        report = services.get_cartan_service().enumerate_roots(_source(spec, matrix, preset, args, "full"), config)

        def render(rep):
            console.print(f"[bold]{rep.name}[/bold]: {rep.classes} classes of simple root systems")
            for i, dynkin in enumerate(rep.representatives, start=1):
                console.print(f"[dim]{i}.[/dim] {dynkin}")
        _emit(report, config.format, render)
    _run(action)


def _render_prolong(report: ProlongReport) -> None:
    console.print(f"[bold]{report.input}[/bold]  N={tuple(report.N_used)}  total {report.total}  "
                  f"{'stabilized' if report.stabilized else f'cap {report.degree_cap} reached'}")
    console.print(_dims_table("dims by degree", report.dims_by_degree))
    if report.N_constraints is not None:
        console.print("N constraints: " + ", ".join(report.N_constraints))
    for warning in report.warnings:
        console.print(f"[yellow]warning[/yellow]: {warning}")
    verdict = ", ".join(report.top_verdicts) if report.top_verdicts else "unidentified"
    console.print(f"verdict: [bold green]{verdict}[/bold green]")


def _prolong_request(spec, matrix, preset, args, variant, r, N, free, cap, fixture, fixture_variant, full_g0,
                     constraints, **extra) -> dict:
    source = None if fixture else _source(spec, matrix, preset, args, variant)
    return dict(source=source, fixture=fixture, fixture_variant=fixture_variant, r=_ints(r), N=_ints(N), free=free,
                degree_cap=cap, full_g0=full_g0, constraints=constraints, **extra)


R_OPT = Annotated[str, typer.Option("--r", help="Grading vector, e.g. 0,1,0,0")]
N_OPT = Annotated[str, typer.Option("--N", help="Shearing vector; default: sentinels for symbolic entries")]
FREE_OPT = Annotated[Optional[int], typer.Option("--free", help="Value for every FREE coordinate")]
CAP_OPT = Annotated[Optional[int], typer.Option("--cap", help="Highest degree to compute")]
FIXTURE_OPT = Annotated[Optional[str], typer.Option("--fixture", help="Shipped realization instead of a spec")]
FIXTURE_VARIANT_OPT = Annotated[Optional[str], typer.Option("--fixture-variant")]
FULL_G0_OPT = Annotated[bool, typer.Option("--full-g0", help="Recompute g_0 as the whole normalizer of g_-")]
CONSTRAINTS_OPT = Annotated[bool, typer.Option("--constraints/--no-constraints", help="Probe FREE/BOUNDED entries")]


@app.command()
def prolong(spec: SpecArg = None, r: R_OPT = "", N: N_OPT = "", free: FREE_OPT = None, cap: CAP_OPT = None,
            matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "", variant: VariantOpt = "full",
            fixture: FIXTURE_OPT = None, fixture_variant: FIXTURE_VARIANT_OPT = None, full_g0: FULL_G0_OPT = False,
            constraints: CONSTRAINTS_OPT = True, fmt: FormatOpt = "text"):
    """Complete prolong of g_<=0 with shearing constraints and the catalog verdict."""
    def action():
        request = ProlongRequest(**_prolong_request(spec, matrix, preset, args, variant, r, N, free, cap, fixture,
                                                    fixture_variant, full_g0, constraints))
        config = RunConfig(command="prolong", inputs=[spec or fixture or f"{preset}({args})"], r=request.r,
                           N=request.N, degree_cap=cap, format=_format(fmt))
        _, report = services.get_prolong_service().prolong(request, config)
        _emit(report, config.format, _render_prolong)
    _run(action)


@app.command("partial-prolong")
def partial_prolong(spec: SpecArg = None,
                    v1: Annotated[Optional[List[str]], typer.Option("--v1", help="A degree-1 field, e.g. 'x1*x2*d4'")] = None,
                    r: R_OPT = "", N: N_OPT = "", free: FREE_OPT = None, cap: CAP_OPT = None,
                    matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "",
                    variant: VariantOpt = "full", fixture: FIXTURE_OPT = None,
                    fixture_variant: FIXTURE_VARIANT_OPT = None, constraints: CONSTRAINTS_OPT = True,
                    fmt: FormatOpt = "text"):
    """Prolong with g_1 fixed to the span of the --v1 fields."""
    def action():
        request = PartialProlongRequest(**_prolong_request(spec, matrix, preset, args, variant, r, N, free, cap,
                                                           fixture, fixture_variant, False, constraints, V1=list(v1 or [])))
        config = RunConfig(command="partial-prolong", inputs=[spec or fixture or f"{preset}({args})", *(v1 or [])],
                           r=request.r, N=request.N, degree_cap=cap, format=_format(fmt))
        _, report = services.get_prolong_service().partial_prolong(request, config)
        _emit(report, config.format, _render_prolong)
    _run(action)


@app.command()
def identify(spec: SpecArg = None, r: R_OPT = "", N: N_OPT = "", free: FREE_OPT = 1, cap: CAP_OPT = None,
             matrix: MatrixOpt = None, preset: PresetOpt = None, args: ArgsOpt = "", variant: VariantOpt = "full",
             fixture: FIXTURE_OPT = None, fixture_variant: FIXTURE_VARIANT_OPT = None, fmt: FormatOpt = "text"):
    """Prolong and list every catalog candidate with its mismatches."""
    def action():
        request = ProlongRequest(**_prolong_request(spec, matrix, preset, args, variant, r, N, free, cap, fixture,
                                                    fixture_variant, False, True))
        config = RunConfig(command="identify", inputs=[spec or fixture or f"{preset}({args})"], r=request.r,
                           N=request.N, degree_cap=cap, format=_format(fmt))
        _, report = services.get_prolong_service().prolong(request, config)

        def render(rep):
            _render_prolong(rep)
            table = Table(title="candidates", box=box.SIMPLE)
            table.add_column("name")
            table.add_column("match")
            table.add_column("mismatches / notes")
            for v in rep.verdicts:
                table.add_row(v.name, "[green]exact[/green]" if v.exact else "[red]no[/red]",
                              "; ".join(v.mismatches + v.notes))
            console.print(table)
        _emit(report, config.format, render)
    _run(action)


@app.command()
def reproduce(table: Annotated[str, typer.Option("--table", help="rank1 | rank2 | rank3 | rank4")],
              skip_slow: Annotated[bool, typer.Option("--skip-slow", help="Omit the heavy rows")] = False,
              fmt: FormatOpt = "text"):
    """Recompute every row of a table and compare with the catalogued verdicts."""
    outcome = {}

    def action():
        config = RunConfig(command="reproduce", inputs=[table], format=_format(fmt))
        report = services.get_prolong_service().reproduce(table, config, skip_slow=skip_slow)
        outcome["passed"] = report.passed

        def render(rep):
            grid = Table(title=f"table {rep.table}", box=box.ROUNDED, header_style="bold magenta")
            for column in ("row", "N", "expected", "got", ""):
                grid.add_column(column)
            for cell in rep.cells:
                mark = "[green]✓[/green]" if cell.passed else f"[red]✗[/red] {cell.detail}"
                grid.add_row(cell.row, cell.N, cell.expected, ", ".join(cell.got) or "-", mark)
            console.print(grid)
            for label in rep.skipped:
                console.print(f"[dim]skipped (slow): {label}[/dim]")
        _emit(report, config.format, render)
    _run(action)
    if not outcome.get("passed", True):
        raise typer.Exit(code=EXIT_COMPARISON_FAILURE)


@app.command()
def series(name: Annotated[str, typer.Argument(help=f"One of {', '.join(SERIES)}, or a dimension formula")],
           N: N_OPT = "1",
           n_odd: Annotated[int, typer.Option("--n-odd")] = 0,
           param: Annotated[Optional[List[str]], typer.Option("--param", help="Formula parameter, e.g. k=3 or sign=-")] = None,
           basis: Annotated[bool, typer.Option("--basis", help="List the basis fields")] = False,
           fmt: FormatOpt = "text"):
    """Construct a series member (oracle dump), or evaluate a closed-form superdimension."""
    def action():
        items = param or []
        config = RunConfig(command="series", inputs=[name, *items], N=_ints(N), format=_format(fmt))
        service = services.get_series_service()
        if name not in SERIES:
            if name not in FORMULAS:
                raise InvalidParams(f"'{name}' is neither a series ({', '.join(SERIES)}) nor a formula")
            params = {}
            for item in items:
                key, _, value = item.partition("=")
                if key == "sign":
                    params[key] = value
                elif value.isdigit():
                    params[key] = int(value)
                else:
                    raise InvalidParams(f"--param takes key=integer or sign=+/-, got '{item}'")
            report = service.formula(name, params)
            _emit(report, config.format, lambda rep: console.print(f"{rep.name} {rep.params}: sdim {rep.sdim}"))
            return
        report = service.series(name, config.N or [1], n_odd, config, basis=basis)

        def render(rep):
            formula = f", formula {rep.formula}" if rep.formula else ""
            console.print(f"[bold]{rep.name}[/bold]: dim {rep.dim} (sdim {rep.sdim}){formula}")
            console.print(_dims_table("dims by degree", rep.dims_by_degree))
            for line in rep.basis:
                console.print(line)
        _emit(report, config.format, render)
    _run(action)


@app.command()
def forms(form_file: Annotated[Optional[Path], typer.Argument(help="Form spec JSON")] = None,
          n_ev: Annotated[int, typer.Option("--n-ev")] = 0,
          n_od: Annotated[int, typer.Option("--n-od")] = 0,
          b_ev: Annotated[str, typer.Option("--b-ev", help="I | Pi | S")] = "I",
          b_od: Annotated[str, typer.Option("--b-od", help="I | Pi | S")] = "I",
          parity: Annotated[str, typer.Option("--parity", help="even | odd")] = "even",
          extend: Annotated[Optional[str], typer.Option("--extend", help="oo:k_ev,k_od or pe:m")] = None,
          which: Annotated[str, typer.Option("--which", help="cocycle | I0 | both")] = "both",
          level: Annotated[int, typer.Option("--level")] = 1,
          fmt: FormatOpt = "text"):
    """Canonicalize a symmetric form and size its preserver, or extend a derived oo/pe algebra."""
    def action():
        service = services.get_forms_service()
        output = _format(fmt)
        if extend is not None:
            family, _, values = extend.partition(":")
            numbers = parse_preset_args(values)
            if family == "oo" and len(numbers) == 2:
                request = ExtendRequest(family="oo", k_ev=numbers[0], k_od=numbers[1], level=level, which=which)
            elif family == "pe" and len(numbers) == 1:
                request = ExtendRequest(family="pe", m=numbers[0], level=level, which=which)
            else:
                raise InvalidParams("--extend takes oo:k_ev,k_od or pe:m")
            summary = service.extend(request)
            _emit(summary, output, lambda s: console.print(f"[bold]{s.name}[/bold]: dim {s.dim} (sdim {s.sdim})"))
            return
        if form_file is not None:
            try:
                data = json.loads(form_file.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise SpecFileError(f"{form_file}: {exc}") from None
            spec = FormSpec.model_validate(data)
        else:
            spec = FormSpec(n_ev=n_ev, n_od=n_od, B_ev=b_ev, B_od=b_od, parity=parity)
        report = service.canonicalize(spec)

        def render(rep):
            console.print(f"{rep.parity} form on a space of sdim {rep.sdim}; preserver sdim {rep.preserver_sdim}")
            for block in rep.blocks:
                console.print(f"{block.block} block: class {block.form_class}")
                for row in block.change_of_basis:
                    console.print("  " + " ".join(row))
        _emit(report, output, render)
    _run(action)


if __name__ == "__main__":
    app()
