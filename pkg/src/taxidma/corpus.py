"""The golden corpus of classified attacks plus corpus directory handling."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .builtin import DEFAULT_SET_VERSION, DETAIL_IDS, data_dir, load_builtin, read_data_text
from .errors import SchemaError
from .model import BACKGROUND_ID, TaxonomySet
from .records import AttackRecord, parse_record

INDEX_FILE = "index.json"


@dataclass(frozen=True)
class Corpus:
    """An ordered, id-unique set of records tied to a taxonomy set version."""

    set_version: str
    records: tuple[AttackRecord, ...] = ()

    @property
    def record_ids(self) -> tuple[str, ...]:
        return tuple(r.record_id for r in self.records)

    def get(self, record_id: str) -> AttackRecord | None:
        return next((r for r in self.records if r.record_id == record_id), None)


def builtin_corpus() -> Corpus:
    """Loads the eight embedded real-world attack records."""
    index = json.loads(read_data_text(f"corpus/{INDEX_FILE}"))
    records = tuple(
        parse_record(read_data_text(f"corpus/{record_id}.json"))
        for record_id in index["record_ids"]
    )
    return Corpus(set_version=index["set_version"], records=records)


def builtin_corpus_dir() -> Path:
    return Path(str(data_dir() / "corpus"))


def load_corpus_dir(directory: str | Path, *, lenient: bool = False) -> Corpus:
    """Loads a corpus from a directory of record files plus an index file.

    Without an index the directory is scanned for ``*.json`` record files
    and the default set version is assumed.
    """
    directory = Path(directory)
    index_path = directory / INDEX_FILE
    if index_path.exists():
        index = json.loads(index_path.read_text(encoding="utf-8"))
        set_version = index.get("set_version", DEFAULT_SET_VERSION)
        record_ids = index.get("record_ids", [])
        paths = [directory / f"{record_id}.json" for record_id in record_ids]
    else:
        set_version = DEFAULT_SET_VERSION
        paths = sorted(p for p in directory.glob("*.json") if p.name != INDEX_FILE)

    records = []
    seen: set[str] = set()
    for path in paths:
        record = parse_record(path.read_text(encoding="utf-8"), lenient=lenient)
        if record.record_id in seen:
            raise SchemaError(f"duplicate record_id {record.record_id!r} in corpus", str(path))
        seen.add(record.record_id)
        records.append(record)
    return Corpus(set_version=set_version, records=tuple(records))


def corpus_stage_census(corpus: Corpus, tset: TaxonomySet | None = None) -> dict[str, int]:
    """Counts records (not stages) per detail taxonomy, plus the background.

    A record with two stages of the same taxonomy counts once; the
    background key counts every record carrying a background block.
    """
    detail_ids = tset.detail_ids if tset is not None else DETAIL_IDS
    counts = {BACKGROUND_ID: 0, **{detail_id: 0 for detail_id in detail_ids}}
    for record in corpus.records:
        counts[BACKGROUND_ID] += 1
        for taxonomy_id in {stage.taxonomy for stage in record.stages}:
            if taxonomy_id in counts:
                counts[taxonomy_id] += 1
    return counts


def validate_corpus(corpus: Corpus, tset: TaxonomySet | None = None):
    """Validates every record; yields (record, report) pairs."""
    from .records import validate_record

    tset = tset or load_builtin(corpus.set_version)
    for record in corpus.records:
        yield record, validate_record(record, tset)
