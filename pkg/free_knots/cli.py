"""
Command-line front end.

Every command takes a Gauss code as a literal argument, `@path` for a file, or
`-` for stdin. Input that is a JSON object with a string "code" field is read
as that code, so the JSON output of `gen` pipes straight back in.

Exit codes: 0 decided, 1 input error, 2 inconclusive, 3 budget exhausted,
4 certificate rejected. JSON goes to stdout, diagnostics to stderr.
"""
import json
import logging
from contextlib import contextmanager
from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .config import get_settings
from .decider import decide_slice, explain_certificate, mirror_certificate, oracle_decide
from .errors import BudgetExhaustedError, FreeKnotError, PairingError
from .gauss_code import (
    canonical_form,
    parse_gauss_code,
    random_diagram,
    render_ascii,
    serialize,
    star_diagram,
)
from .models import ChordDiagram, MoveScript, SearchConfig, Verdict, VerdictKind
from .moves import connected_sum, find_move_sites, mirror, random_walk, replay_script
from .pairing import pairing_from_json, pairing_to_json
from .parity import is_odd_diagram, parities
from .performance_logging import configure_logging

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Decide sliceness of odd free knots given as Gauss codes.",
    no_args_is_help=True,
    add_completion=False,
)
gen_app = typer.Typer(help="Generate diagrams.", no_args_is_help=True)
moves_app = typer.Typer(help="Reidemeister moves.", no_args_is_help=True)
app.add_typer(gen_app, name="gen")
app.add_typer(moves_app, name="moves")

err_console = Console(stderr=True)


class ExitCode(IntEnum):
    DECIDED = 0
    INPUT_ERROR = 1
    INCONCLUSIVE = 2
    BUDGET_EXHAUSTED = 3
    CERTIFICATE_REJECTED = 4


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


class GenFormat(str, Enum):
    CODE = "code"
    JSON = "json"
    TEXT = "text"


CodeArg = typer.Argument(..., help="Gauss code, @path to a file, or - for stdin.")
FormatOpt = typer.Option(OutputFormat.JSON, "--format", help="json (default) or text.")


# --- Input and output helpers ---
def _fail(message: str, code: ExitCode = ExitCode.INPUT_ERROR) -> typer.Exit:
    err_console.print(f"error: {message}", style="red", markup=False, highlight=False)
    return typer.Exit(code=int(code))


def _read_source(source: str) -> str:
    if source == "-":
        return click.get_text_stream("stdin").read()
    if source.startswith("@"):
        path = Path(source[1:])
        try:
            return path.read_text(encoding="utf-8")
        except OSError as e:
            raise _fail(f"cannot read {path}: {e.strerror or e}")
    return source


def _read_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise _fail(f"{what} is not valid JSON: {e}")


def _load_diagram(source: str) -> ChordDiagram:
    text = _read_source(source).strip()
    if text.startswith("{"):
        try:
            document = json.loads(text)
        except json.JSONDecodeError:
            document = None
        # labels may start with a brace, so anything else is read as a literal code
        if isinstance(document, dict) and isinstance(document.get("code"), str):
            text = document["code"]
    return parse_gauss_code(text)


def _emit(document: Dict[str, Any]) -> None:
    typer.echo(json.dumps(document, separators=(",", ":"), ensure_ascii=False))


@contextmanager
def _input_errors() -> Iterator[None]:
    """Turn library errors about the input into exit code 1."""
    try:
        yield
    except (FreeKnotError, ValidationError, ValueError, KeyError, TypeError) as e:
        logger.debug(f"Input rejected: {e}")
        raise _fail(str(e)) from None


def _verdict_exit(verdict: Verdict) -> ExitCode:
    return ExitCode.INCONCLUSIVE if verdict.kind is VerdictKind.INCONCLUSIVE else ExitCode.DECIDED


def _print_verdict_text(diagram: ChordDiagram, verdict: Verdict) -> None:
    typer.echo(render_ascii(diagram))
    typer.echo("")
    typer.echo(f"odd diagram: {'yes' if verdict.odd else 'no'}")
    typer.echo(f"verdict: {verdict.kind.value} ({verdict.pairings_examined} examined)")
    if verdict.certificate is not None:
        for block in pairing_to_json(diagram, verdict.certificate):
            if "chord" in block:
                typer.echo(f"  {block['chord']}")
            else:
                first, second = block["chords"]
                typer.echo(f"  {first} ~ {second}  {block['correspondence']}")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log search timings to stderr."),
) -> None:
    settings = get_settings()
    configure_logging("INFO" if verbose else settings.log_level)


# --- Decisions ---
@app.command()
def decide(
    code: str = CodeArg,
    no_singleton_pruning: bool = typer.Option(False, "--no-singleton-pruning", help="Also try odd singletons."),
    no_parity_pruning: bool = typer.Option(False, "--no-parity-pruning", help="Also try pairs of unequal parity."),
    budget: Optional[int] = typer.Option(None, "--budget", min=0, help="Search node budget (default from settings)."),
    threads: Optional[int] = typer.Option(None, "--threads", min=1, help="Worker threads for the search."),
    output: OutputFormat = FormatOpt,
) -> None:
    """Decide sliceness with the pruned search and print the verdict."""
    settings = get_settings()
    with _input_errors():
        diagram = _load_diagram(code)
    cfg = SearchConfig(
        use_singleton_even_pruning=not no_singleton_pruning,
        use_equal_parity_pruning=not no_parity_pruning,
        node_budget=settings.cli_node_budget if budget is None else budget,
        threads=settings.threads if threads is None else threads,
    )
    try:
        verdict = decide_slice(diagram, cfg)
    except BudgetExhaustedError as e:
        raise _fail(str(e), ExitCode.BUDGET_EXHAUSTED)

    if output is OutputFormat.TEXT:
        _print_verdict_text(diagram, verdict)
    else:
        _emit(verdict.to_dict(diagram))
    raise typer.Exit(code=int(_verdict_exit(verdict)))


@app.command()
def oracle(
    code: str = CodeArg,
    max_chords: Optional[int] = typer.Option(None, "--max-chords", min=0, help="Refuse larger diagrams."),
    output: OutputFormat = FormatOpt,
) -> None:
    """Decide by checking every pairing, without pruning."""
    with _input_errors():
        diagram = _load_diagram(code)
        verdict = oracle_decide(diagram, max_chords=max_chords)
    if output is OutputFormat.TEXT:
        _print_verdict_text(diagram, verdict)
    else:
        _emit(verdict.to_dict(diagram))
    raise typer.Exit(code=int(_verdict_exit(verdict)))


@app.command()
def check(
    code: str = CodeArg,
    certificate: str = typer.Argument(..., help="Block list or verdict JSON, @path, or -."),
) -> None:
    """Check a certificate: exit 0 if valid, 4 with the first violated condition otherwise."""
    with _input_errors():
        diagram = _load_diagram(code)
        text = _read_source(certificate)
    document = _read_json(text, "certificate")
    if isinstance(document, dict):
        document = document.get("certificate")
        if document is None:
            raise _fail("certificate document carries no certificate")

    try:
        pairing = pairing_from_json(diagram, document)
    except PairingError as e:
        if e.kind in ("malformed", "unknown_label"):
            raise _fail(str(e))
        report = {"valid": False, "reason": e.kind, "message": str(e)}
    else:
        report = explain_certificate(diagram, pairing).model_dump(exclude_none=True)

    _emit(report)
    if not report["valid"]:
        err_console.print(f"certificate rejected: {report['message']}", markup=False, highlight=False)
        raise typer.Exit(code=int(ExitCode.CERTIFICATE_REJECTED))


@app.command()
def parity(code: str = CodeArg, output: OutputFormat = FormatOpt) -> None:
    """Gaussian parity of every chord."""
    with _input_errors():
        diagram = _load_diagram(code)
    table = {label: p.value for label, p in zip(diagram.labels, parities(diagram))}
    odd = is_odd_diagram(diagram)
    if output is OutputFormat.TEXT:
        rich_table = Table("chord", "parity")
        for label, value in table.items():
            rich_table.add_row(label, value)
        Console().print(rich_table)
        typer.echo(f"odd diagram: {'yes' if odd else 'no'}")
        return
    _emit({"chords": table, "odd_diagram": odd})


@app.command()
def canon(code: str = CodeArg) -> None:
    """Canonical form up to rotation and reflection."""
    with _input_errors():
        diagram = _load_diagram(code)
    _emit({"canonical": canonical_form(diagram)})


# --- Generators ---
def _emit_code(diagram: ChordDiagram, output: GenFormat, extra: Optional[Dict[str, Any]] = None) -> None:
    if output is GenFormat.TEXT:
        typer.echo(render_ascii(diagram))
    elif output is GenFormat.JSON or extra:
        _emit({"code": serialize(diagram), **(extra or {})})
    else:
        typer.echo(serialize(diagram))


GenFormatOpt = typer.Option(GenFormat.CODE, "--format", help="code (default), json or text.")


@gen_app.command("star")
def gen_star(n: int = typer.Argument(..., min=0), output: GenFormat = GenFormatOpt) -> None:
    """n pairwise linked chords; odd iff n is even."""
    _emit_code(star_diagram(n), output)


@gen_app.command("sum-mirror")
def gen_sum_mirror(
    code: str = CodeArg,
    certificate: bool = typer.Option(False, "--certificate", help="Also emit the mirror certificate (JSON)."),
    output: GenFormat = GenFormatOpt,
) -> None:
    """Connected sum of a diagram with its mirror image."""
    with _input_errors():
        knot = _load_diagram(code)
    if certificate:
        total, pairing = mirror_certificate(knot)
        _emit_code(total, output, {"certificate": pairing_to_json(total, pairing)})
    else:
        _emit_code(connected_sum(knot, 0, mirror(knot), 0), output)


@gen_app.command("random")
def gen_random(
    n: int = typer.Argument(..., min=0),
    seed: int = typer.Argument(...),
    output: GenFormat = GenFormatOpt,
) -> None:
    """Uniformly random diagram with n chords."""
    _emit_code(random_diagram(n, seed), output)


# --- Moves ---
@moves_app.command("sites")
def moves_sites(code: str = CodeArg) -> None:
    """Every R1/R2 removal site and R3 site."""
    with _input_errors():
        diagram = _load_diagram(code)
    _emit({"sites": [site.to_json() for site in find_move_sites(diagram)]})


@moves_app.command("walk")
def moves_walk(
    code: str = CodeArg,
    steps: int = typer.Option(10, "--steps", min=0),
    seed: int = typer.Option(0, "--seed"),
) -> None:
    """Random walk of Reidemeister moves; prints the replayable script."""
    with _input_errors():
        diagram = _load_diagram(code)
        _, script = random_walk(diagram, steps, seed)
    _emit(script.to_json())


@moves_app.command("replay")
def moves_replay(script_file: str = typer.Argument(..., help="Script JSON, @path, or -.")) -> None:
    """Replay a script and confirm it ends where it says."""
    source = script_file if script_file.startswith(("@", "-", "{")) else f"@{script_file}"
    with _input_errors():
        text = _read_source(source)
    document = _read_json(text, "script")
    if not isinstance(document, dict):
        raise _fail("script must be a JSON object")
    with _input_errors():
        script = MoveScript.from_json(document)
        result = replay_script(script)
    _emit({"code": serialize(result), "moves": len(script.moves)})
