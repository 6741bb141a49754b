"""Command-line entry point wiring the library for analysts.

Exit codes: 0 success, 1 validation failure, 2 operational failure (I/O,
syntax, unknown version, bad arguments). The CLI adds no semantics over
the library calls it wraps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .builtin import DEFAULT_SET_VERSION, load_builtin
from .canonical import serialize_record, serialize_taxonomy
from .corpus import INDEX_FILE, Corpus, builtin_corpus, load_corpus_dir
from .errors import DocumentSyntaxError, PredicateError, SchemaError, TaxidmaError
from .model import TaxonomySet, parse_taxonomy, validate_taxonomy
from .query import coverage, facet_frequency, filter_records, parse_predicate, parse_scope
from .records import parse_record, validate_record
from .render import (
    FORMAT_MARKDOWN,
    FORMAT_PLAIN,
    render_corpus_table,
    render_coverage,
    render_histogram,
    render_record_report,
    render_taxonomy_reference,
)
from .validation import ValidationReport
from .wizard import WizardAborted, run_wizard

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_OPERATIONAL = 2

CORPUS_DIR_ENV = "TAXIDMA_CORPUS_DIR"
UI_DIR_ENV = "TAXIDMA_UI_DIR"

_FORMATS = {"json": "json", "md": FORMAT_MARKDOWN, "plain": FORMAT_PLAIN}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taxidma", description=__doc__)
    parser.add_argument("--version", action="version", version=f"taxidma {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--set-version", default=DEFAULT_SET_VERSION, help="embedded taxonomy set version")
    common.add_argument("--lenient", action="store_true", help="warn on unknown document fields instead of failing")
    common.add_argument("--deny-warnings", action="store_true", help="treat validation warnings as failures")
    common.add_argument("--format", choices=sorted(_FORMATS), default="plain", help="output format")
    common.add_argument(
        "--corpus-dir",
        default=os.environ.get(CORPUS_DIR_ENV),
        help=f"record directory (default: built-in corpus; env {CORPUS_DIR_ENV})",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate record or taxonomy files")
    p.add_argument("paths", nargs="+", help="files or directories of .json documents")

    p = sub.add_parser("classify", parents=[common], help="interactive classification wizard")
    p.add_argument("--output", help="record file to write (default: <record_id>.json)")

    p = sub.add_parser("query", parents=[common], help="filter records with a predicate")
    p.add_argument("predicate", help="e.g. 'bg:attack/type=active & stage[idms]:attack/category=authentication'")

    p = sub.add_parser("stats", parents=[common], help="value frequency histogram for one facet")
    p.add_argument("--scope", default="bg", help="bg, stage, or stage[<taxonomy-id>]")
    p.add_argument("facet", help="facet path, e.g. identity/type")

    sub.add_parser("coverage", parents=[common], help="taxonomy coverage of the record set")

    p = sub.add_parser("report", parents=[common], help="render a record report or the corpus table")
    p.add_argument("target", help="a record id, or 'corpus' for the census table")

    p = sub.add_parser("taxonomy", parents=[common], help="list or show taxonomies")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("taxonomy_id", nargs="?", help="taxonomy id (for show)")

    p = sub.add_parser("serve", parents=[common], help="serve the HTTP API and UI")
    p.add_argument("--bind", default="127.0.0.1", help="bind address")
    p.add_argument("--port", type=int, default=8765, help="TCP port")
    p.add_argument("--ui-dir", default=os.environ.get(UI_DIR_ENV), help="built UI assets to serve at /")

    return parser


def _load_set(args) -> TaxonomySet:
    return load_builtin(args.set_version)


def _load_records(args) -> Corpus:
    if args.corpus_dir:
        return load_corpus_dir(args.corpus_dir, lenient=args.lenient)
    return builtin_corpus()


def _report_format(args) -> str:
    return _FORMATS[args.format]


def _emit(args, rendered, payload) -> None:
    """Prints the rendered report, or its JSON payload with --format json."""
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(rendered.body, end="")


# --- commands ----------------------------------------------------------------


def _iter_documents(paths: list[str]):
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            yield from sorted(p for p in path.rglob("*.json"))
        else:
            yield path


def cmd_validate(args) -> int:
    tset = _load_set(args)
    failed = False
    reports: dict[str, ValidationReport] = {}
    warn = (lambda msg: print(f"warning unknown-field - {msg}", file=sys.stderr)) if args.lenient else None

    for path in _iter_documents(args.paths):
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error io {path} {exc}", file=sys.stderr)
            return EXIT_OPERATIONAL
        try:
            head = json.loads(text)
        except json.JSONDecodeError as exc:
            print(f"error syntax-error {path} line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
            return EXIT_OPERATIONAL
        if not isinstance(head, dict):
            print(f"error schema-error {path} document root must be an object", file=sys.stderr)
            return EXIT_OPERATIONAL
        if "record_ids" in head:
            continue  # corpus index file
        try:
            if "record_id" in head:
                record = parse_record(text, lenient=args.lenient, on_warning=warn)
                report = validate_record(record, tset)
            elif "categories" in head:
                report = validate_taxonomy(parse_taxonomy(text, lenient=args.lenient, on_warning=warn))
            else:
                print(f"error schema-error {path} neither a record nor a taxonomy document", file=sys.stderr)
                return EXIT_OPERATIONAL
        except (DocumentSyntaxError, SchemaError) as exc:
            print(f"error {getattr(exc, 'rule_id', 'syntax-error')} {path} {exc}", file=sys.stderr)
            return EXIT_OPERATIONAL
        reports[str(path)] = report
        if args.format != "json":
            for defect in report.defects:
                print(f"{defect.severity} {defect.rule_id} {defect.location} {defect.message}")
        if not report.ok or (args.deny_warnings and report.warnings):
            failed = True

    if args.format == "json":
        print(json.dumps({"ok": not failed, "files": {p: r.to_dict() for p, r in reports.items()}}, indent=2))
    return EXIT_INVALID if failed else EXIT_OK


def cmd_classify(args) -> int:
    tset = _load_set(args)
    try:
        record = run_wizard(tset)
    except WizardAborted:
        print("aborted; nothing written", file=sys.stderr)
        return EXIT_OPERATIONAL
    report = validate_record(record, tset)
    if not report.ok:
        for defect in report.errors:
            print(f"error {defect.rule_id} {defect.location} {defect.message}", file=sys.stderr)
        return EXIT_INVALID
    output = Path(args.output) if args.output else Path(f"{record.record_id}.json")
    output.write_text(serialize_record(record), encoding="utf-8")
    print(f"wrote {output}")
    return EXIT_OK


def cmd_query(args) -> int:
    tset = _load_set(args)
    corpus = _load_records(args)
    predicate = parse_predicate(args.predicate)
    matched = sorted(r.record_id for r in filter_records(corpus.records, tset, predicate))
    if args.format == "json":
        print(json.dumps(matched, indent=2))
    else:
        for record_id in matched:
            print(record_id)
    return EXIT_OK


def cmd_stats(args) -> int:
    tset = _load_set(args)
    corpus = _load_records(args)
    scope, taxonomy = parse_scope(args.scope)
    histogram = facet_frequency(corpus.records, tset, scope, args.facet, taxonomy=taxonomy)
    _emit(args, render_histogram(histogram, _format_or_plain(args)), histogram.to_dict())
    return EXIT_OK


def cmd_coverage(args) -> int:
    tset = _load_set(args)
    corpus = _load_records(args)
    report = coverage(corpus.records, tset)
    _emit(args, render_coverage(report, _format_or_plain(args)), report.to_dict())
    return EXIT_OK


def cmd_report(args) -> int:
    tset = _load_set(args)
    corpus = _load_records(args)
    if args.target == "corpus":
        rendered = render_corpus_table(corpus, tset, _format_or_plain(args))
    else:
        record = corpus.get(args.target)
        if record is None:
            print(f"error unknown-record {args.target} not in the record set", file=sys.stderr)
            return EXIT_OPERATIONAL
        rendered = render_record_report(record, tset, _format_or_plain(args))
    _emit(args, rendered, rendered.to_dict())
    return EXIT_OK


def cmd_taxonomy(args) -> int:
    tset = _load_set(args)
    if args.action == "list":
        if args.format == "json":
            print(json.dumps([{"id": t.id, "title": t.title, "version": t.version} for t in tset.taxonomies], indent=2))
        else:
            for taxonomy in tset.taxonomies:
                print(f"{taxonomy.id}\t{taxonomy.title}")
        return EXIT_OK
    if not args.taxonomy_id:
        print("error usage taxonomy show requires a taxonomy id", file=sys.stderr)
        return EXIT_OPERATIONAL
    definition = tset.get(args.taxonomy_id)
    if definition is None:
        print(f"error unknown-taxonomy {args.taxonomy_id} not in set {tset.set_version}", file=sys.stderr)
        return EXIT_OPERATIONAL
    if args.format == "json":
        print(serialize_taxonomy(definition), end="")
    else:
        single = TaxonomySet(set_version=tset.set_version, taxonomies=(definition,))
        print(render_taxonomy_reference(single, _format_or_plain(args)).body, end="")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    if not 1 <= args.port <= 65535:
        print(f"error usage port must be in [1, 65535], got {args.port}", file=sys.stderr)
        return EXIT_OPERATIONAL
    if not args.corpus_dir:
        print(f"error usage serve needs --corpus-dir or {CORPUS_DIR_ENV}", file=sys.stderr)
        return EXIT_OPERATIONAL
    corpus_dir = Path(args.corpus_dir)
    if not corpus_dir.is_dir():
        print(f"error io corpus directory {corpus_dir} does not exist", file=sys.stderr)
        return EXIT_OPERATIONAL

    ui_dir = args.ui_dir or (Path("frontend") / "dist")
    ui_path = Path(ui_dir) if Path(ui_dir).is_dir() else None
    tset = _load_set(args)
    app = create_app(tset, corpus_dir, ui_dir=ui_path, lenient=args.lenient)
    print(f"serving {tset.set_version} from {corpus_dir} on http://{args.bind}:{args.port}")
    if ui_path:
        print(f"serving UI assets from {ui_path}")
    uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    return EXIT_OK


def _format_or_plain(args) -> str:
    fmt = _report_format(args)
    return FORMAT_PLAIN if fmt == "json" else fmt


_COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "query": cmd_query,
    "stats": cmd_stats,
    "coverage": cmd_coverage,
    "report": cmd_report,
    "taxonomy": cmd_taxonomy,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PredicateError as exc:
        print(f"error predicate-invalid - {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL
    except TaxidmaError as exc:
        print(f"error {type(exc).__name__} - {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL
    except OSError as exc:
        print(f"error io - {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    raise SystemExit(main())
