"""Local HTTP/JSON API for the record editor UI and scripting.

Read endpoints are side-effect free; record writes go through a single
process-wide writer lock and land atomically (write-temp-then-rename).
Responses for identical state are byte-identical.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .canonical import serialize_record, serialize_taxonomy
from .corpus import INDEX_FILE, Corpus, corpus_stage_census, load_corpus_dir
from .errors import DocumentSyntaxError, PathNotFoundError, PredicateError, SchemaError
from .model import TaxonomySet
from .query import coverage, facet_frequency, filter_records, parse_predicate, parse_scope
from .records import AttackRecord, parse_record, validate_record

MAX_BODY_BYTES = 1024 * 1024

API_PREFIX = "/api/v1"


class ApiError(Exception):
    """Maps onto an HTTP status plus a stable machine-readable code."""

    def __init__(self, status: int, code: str, message: str, extra: dict | None = None):
        assert status in (400, 404, 409, 422, 500)
        self.status = status
        self.code = code
        self.message = message
        self.extra = extra or {}
        super().__init__(message)


def _json_bytes(payload) -> Response:
    text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    return Response(content=text.encode("utf-8"), media_type="application/json")


class RecordStore:
    """Record files in one corpus directory; one writer at a time."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self._write_lock = threading.Lock()

    def record_ids(self) -> list[str]:
        return sorted(
            p.stem for p in self.directory.glob("*.json") if p.name != INDEX_FILE
        )

    def path_for(self, record_id: str) -> Path:
        return self.directory / f"{record_id}.json"

    def read(self, record_id: str) -> str | None:
        path = self.path_for(record_id)
        if not path.is_file():
            return None
        return path.read_text(encoding="utf-8")

    def records(self) -> tuple[AttackRecord, ...]:
        return load_corpus_dir(self.directory).records

    def write(self, record: AttackRecord, set_version: str) -> None:
        """Atomically persists the canonical form and refreshes the index."""
        with self._write_lock:
            self._replace(self.path_for(record.record_id), serialize_record(record))
            index_path = self.directory / INDEX_FILE
            ids = sorted(set(self.record_ids()) | {record.record_id})
            index = {"set_version": set_version, "record_ids": ids}
            self._replace(index_path, json.dumps(index, ensure_ascii=False, indent=2) + "\n")

    @staticmethod
    def _replace(path: Path, text: str) -> None:
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)


def create_app(
    tset: TaxonomySet,
    corpus_dir: str | Path,
    *,
    ui_dir: str | Path | None = None,
    lenient: bool = False,
) -> FastAPI:
    """Builds the API application around an immutable taxonomy set."""
    app = FastAPI(title="taxidma", docs_url=None, redoc_url=None, openapi_url=None)
    store = RecordStore(Path(corpus_dir))

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        payload = {"code": exc.code, "message": exc.message, **exc.extra}
        return JSONResponse(status_code=exc.status, content=payload)

    async def _read_record_body(request: Request) -> AttackRecord:
        content_type = request.headers.get("content-type", "")
        if not content_type.split(";")[0].strip() == "application/json":
            raise ApiError(400, "wrong-content-type", "expected application/json")
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            raise ApiError(422, "body-too-large", f"body exceeds {MAX_BODY_BYTES} bytes")
        try:
            return parse_record(body.decode("utf-8"), lenient=lenient)
        except UnicodeDecodeError as exc:
            raise ApiError(422, "syntax-error", f"body is not valid UTF-8: {exc}")
        except DocumentSyntaxError as exc:
            raise ApiError(422, "syntax-error", str(exc))
        except SchemaError as exc:
            raise ApiError(422, exc.rule_id if exc.rule_id != "schema" else "schema-error", str(exc))

    def _store_record(record: AttackRecord, *, force: bool, overwrite: bool) -> Response:
        report = validate_record(record, tset)
        if not report.ok:
            raise ApiError(
                422, "validation-failed", "record has validation errors", {"report": report.to_dict()}
            )
        if report.warnings and not force:
            raise ApiError(
                422,
                "warnings-present",
                "record has warnings; repeat with ?force=1 to store anyway",
                {"report": report.to_dict()},
            )
        exists = store.path_for(record.record_id).is_file()
        if exists and not overwrite:
            raise ApiError(409, "record-exists", f"record {record.record_id!r} already exists")
        store.write(record, tset.set_version)
        return _json_bytes({"record_id": record.record_id, "created": not exists, "report": report.to_dict()})

    @app.get(API_PREFIX + "/taxonomies")
    async def list_taxonomies():
        return _json_bytes(
            [{"id": t.id, "title": t.title, "version": t.version} for t in tset.taxonomies]
        )

    @app.get(API_PREFIX + "/taxonomies/{taxonomy_id}")
    async def get_taxonomy(taxonomy_id: str):
        definition = tset.get(taxonomy_id)
        if definition is None:
            raise ApiError(404, "unknown-taxonomy", f"no taxonomy {taxonomy_id!r} in the set")
        return Response(content=serialize_taxonomy(definition).encode("utf-8"), media_type="application/json")

    @app.post(API_PREFIX + "/validate")
    async def validate_endpoint(request: Request):
        record = await _read_record_body(request)
        report = validate_record(record, tset)
        return _json_bytes({"record_id": record.record_id, **report.to_dict()})

    @app.get(API_PREFIX + "/records")
    async def list_records():
        return _json_bytes(store.record_ids())

    @app.get(API_PREFIX + "/records/{record_id}")
    async def get_record(record_id: str):
        text = store.read(record_id)
        if text is None:
            raise ApiError(404, "unknown-record", f"no record {record_id!r} in the corpus directory")
        return Response(content=text.encode("utf-8"), media_type="application/json")

    @app.put(API_PREFIX + "/records")
    async def create_record(request: Request, force: int = 0):
        record = await _read_record_body(request)
        return _store_record(record, force=bool(force), overwrite=False)

    @app.put(API_PREFIX + "/records/{record_id}")
    async def put_record(record_id: str, request: Request, force: int = 0):
        record = await _read_record_body(request)
        if record.record_id != record_id:
            raise ApiError(
                422,
                "record-id-mismatch",
                f"body record_id {record.record_id!r} does not match URL id {record_id!r}",
            )
        return _store_record(record, force=bool(force), overwrite=True)

    @app.get(API_PREFIX + "/query")
    async def query_endpoint(pred: str = ""):
        try:
            predicate = parse_predicate(pred)
            matched = filter_records(store.records(), tset, predicate)
        except (PredicateError, SchemaError, DocumentSyntaxError) as exc:
            raise ApiError(400, "predicate-invalid", str(exc))
        return _json_bytes(sorted(r.record_id for r in matched))

    @app.get(API_PREFIX + "/stats")
    async def stats_endpoint(facet: str, scope: str = "bg"):
        try:
            scope_name, taxonomy = parse_scope(scope)
            histogram = facet_frequency(store.records(), tset, scope_name, facet, taxonomy=taxonomy)
        except PredicateError as exc:
            raise ApiError(400, "unknown-scope", str(exc))
        except PathNotFoundError as exc:
            raise ApiError(400, "unknown-facet", str(exc))
        return _json_bytes(histogram.to_dict())

    @app.get(API_PREFIX + "/coverage")
    async def coverage_endpoint():
        report = coverage(store.records(), tset)
        return _json_bytes(report.to_dict())

    @app.get(API_PREFIX + "/census")
    async def census_endpoint():
        corpus = Corpus(set_version=tset.set_version, records=store.records())
        return _json_bytes(corpus_stage_census(corpus, tset))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
