"""Command-line front door.

Subcommands:
  query      one NL question against a CSV database
  eval       batch benchmark run producing a JSON report plus per-case
             artifacts (chart-spec JSON, CSV data, PNG figure)
  vql        parse / check / translate a VQL sentence from stdin
  describe   print the prompt-format schema description of a database
  serve      run the HTTP service
"""

from __future__ import annotations

import csv as csv_mod
import json
import sys
from pathlib import Path

import click

from .agents import ScriptedClient, client_from_spec, orchestrate
from .agents.orchestrator import OrchestrationResult
from .catalog import CatalogError, load_database, render_description
from .engine import (
    RenderUnavailable,
    TranslateResult,
    render_chart,
    spec_to_dict,
    spec_to_json,
    table_to_dict,
    translate,
)
from .engine.table import jsonable_value
from .evalharness import load_cases, run_benchmark
from .vql import ParseError, parse_vql, print_vql, validate_vql


def _fail(message: str, as_json: bool, code: str = "RUN_FAILURE") -> None:
    if as_json:
        click.echo(json.dumps({"code": code, "message": message}), err=True)
    else:
        click.echo(message, err=True)
    sys.exit(1)


def _load_db(path: str, as_json: bool):
    try:
        return load_database(path)
    except CatalogError as exc:
        _fail(f"cannot load database: {exc}", as_json, "BAD_DATABASE")


def _write_table_csv(table, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv_mod.writer(fh)
        writer.writerow([c.name for c in table.columns])
        for row in table.rows:
            writer.writerow(["" if v is None else jsonable_value(v) for v in row])


@click.group()
def main() -> None:
    """Natural-language questions to charts over CSV databases."""


@main.command()
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--q", "question", required=True)
@click.option("--client", "client_spec", default="live", show_default=True)
@click.option("--max-iters", default=3, show_default=True)
@click.option("--shots", default=4, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the chart-spec JSON here.")
@click.option("--png", "png_path", type=click.Path(), default=None,
              help="Render the chart to this PNG.")
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="Write the result rows as CSV.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable stderr.")
def query(db_path, question, client_spec, max_iters, shots, out_path, png_path,
          csv_path, as_json):
    """Run one natural-language question through the agent workflow."""
    catalog = _load_db(db_path, as_json)
    try:
        client = client_from_spec(client_spec)
    except (ValueError, OSError) as exc:
        _fail(str(exc), as_json, "BAD_CLIENT")
    result = orchestrate(
        client, catalog, question, max_iters=max_iters, shot_count=shots
    )
    if not isinstance(result, OrchestrationResult):
        attempts = [
            {"vql": a.vql_text, "error": a.error} for a in result.trace.attempts
        ]
        _fail(
            json.dumps({"last_error": result.last_error, "attempts": attempts})
            if as_json
            else f"failed after {result.trace.iterations_used} refinements: "
            f"{result.last_error}",
            as_json,
            "QUERY_FAILED",
        )
    click.echo(print_vql(result.trace.final.query))
    if out_path:
        Path(out_path).write_text(spec_to_json(result.spec) + "\n", encoding="utf-8")
    if csv_path:
        _write_table_csv(result.table, Path(csv_path))
    if png_path:
        try:
            render_chart(result.spec, png_path)
        except RenderUnavailable as exc:
            _fail(f"no raster backend: {exc}", as_json, "RENDER_UNAVAILABLE")
    if not (out_path or csv_path or png_path):
        click.echo(spec_to_json(result.spec))


@main.command("eval")
@click.option("--bench", "bench_path", required=True, type=click.Path(exists=True))
@click.option("--data", "data_root", required=True, type=click.Path(exists=True))
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--client", "client_spec", default=None,
              help="Shared client spec for every case.")
@click.option("--transcripts", "transcripts_dir", type=click.Path(exists=True),
              default=None, help="Directory of per-case transcript JSONL files.")
@click.option("--artifacts", "artifacts_dir", type=click.Path(), default=None,
              help="Write per-case spec/CSV/PNG artifacts here.")
@click.option("--workers", default=1, show_default=True)
@click.option("--max-iters", default=3, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable stderr.")
def eval_cmd(bench_path, data_root, report_path, client_spec, transcripts_dir,
             artifacts_dir, workers, max_iters, as_json):
    """Evaluate a benchmark JSONL file and write the metrics report."""
    if client_spec is None and transcripts_dir is None:
        _fail("provide --client or --transcripts", as_json, "BAD_CLIENT")
    cases = load_cases(bench_path)

    if transcripts_dir is not None:
        transcripts = Path(transcripts_dir)

        def pipeline(case, catalog):
            client = ScriptedClient.from_path(transcripts / f"{case.case_id}.jsonl")
            return orchestrate(client, catalog, case.query, max_iters=max_iters)

    else:
        shared = client_from_spec(client_spec)

        def pipeline(case, catalog):
            return orchestrate(shared, catalog, case.query, max_iters=max_iters)

    try:
        report = run_benchmark(
            cases,
            pipeline,
            data_root,
            report_path=report_path,
            artifacts_dir=artifacts_dir,
            workers=workers,
        )
    except Exception as exc:  # noqa: BLE001 - surfaced as exit 1
        _fail(str(exc), as_json, "EVAL_FAILED")
    click.echo(
        f"n={report.n_cases} invalid={report.invalid_rate:.2f}% "
        f"illegal={report.illegal_rate:.2f}% pass={report.pass_rate:.2f}%"
    )
    sys.exit(1 if report.internal_faults else 0)


@main.group()
def vql() -> None:
    """Work with VQL sentences read from stdin."""


def _read_stdin_vql(as_json: bool) -> str:
    text = sys.stdin.read().strip()
    if not text:
        _fail("no VQL on stdin", as_json, "EMPTY_INPUT")
    return text


@vql.command("parse")
@click.option("--json", "as_json", is_flag=True)
def vql_parse(as_json):
    """Parse stdin and print the canonical single-line form."""
    text = _read_stdin_vql(as_json)
    try:
        click.echo(print_vql(parse_vql(text)))
    except ParseError as exc:
        _fail(exc.render(), as_json, "PARSE_ERROR")


@vql.command("check")
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def vql_check(db_path, as_json):
    """Validate stdin against a database; semantic errors exit 1."""
    text = _read_stdin_vql(as_json)
    catalog = _load_db(db_path, as_json)
    try:
        query_ast = parse_vql(text)
    except ParseError as exc:
        _fail(exc.render(), as_json, "PARSE_ERROR")
    errors = validate_vql(query_ast, catalog)
    if errors:
        if as_json:
            click.echo(
                json.dumps([{"code": e.code, "message": e.message} for e in errors]),
                err=True,
            )
        else:
            for error in errors:
                click.echo(error.render(), err=True)
        sys.exit(1)
    click.echo(print_vql(query_ast))


@vql.command("translate")
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--png", "png_path", type=click.Path(), default=None)
@click.option("--json", "as_json", is_flag=True)
def vql_translate(db_path, png_path, as_json):
    """Execute stdin against a database and print {table, spec} JSON."""
    text = _read_stdin_vql(as_json)
    catalog = _load_db(db_path, as_json)
    try:
        query_ast = parse_vql(text)
    except ParseError as exc:
        _fail(exc.render(), as_json, "PARSE_ERROR")
    outcome = translate(query_ast, catalog)
    if not isinstance(outcome, TranslateResult):
        _fail(outcome.render(), as_json, outcome.code)
    click.echo(
        json.dumps(
            {
                "table": table_to_dict(outcome.table),
                "spec": spec_to_dict(outcome.spec),
            },
            indent=2,
        )
    )
    if png_path:
        try:
            render_chart(outcome.spec, png_path)
        except RenderUnavailable as exc:
            _fail(f"no raster backend: {exc}", as_json, "RENDER_UNAVAILABLE")


@main.command()
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def describe(db_path, as_json):
    """Print the prompt-format schema description of a database."""
    catalog = _load_db(db_path, as_json)
    click.echo(render_description(catalog))


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def serve(config_path):
    """Run the HTTP service."""
    from .service import ServiceConfig, serve as run_service

    run_service(ServiceConfig.from_file(config_path))


if __name__ == "__main__":
    main()
