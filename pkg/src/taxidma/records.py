"""Attack classification records: parsing, validation, normalization, diffing.

A record pairs one background classification (constant across the attack)
with an ordered list of stages, each applying one detail taxonomy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Callable, Iterator

from .errors import DocumentSyntaxError, InvalidRecordError, SchemaError, SetMismatchError
from .model import (
    BACKGROUND_ID,
    CARD_ONE,
    KIND_FREE_TEXT,
    Facet,
    TaxonomySet,
    _load_json,
    _ParseContext,
)
from .validation import SEVERITY_ERROR, SEVERITY_WARNING, Defect, ValidationReport

OTHERS_SLUG = "others"


@dataclass(frozen=True)
class Selection:
    """Assignment of value paths (or free text) to one facet."""

    facet: str
    values: tuple[str, ...] = ()
    note: str | None = None
    text: str | None = None


@dataclass(frozen=True)
class ClassificationBlock:
    taxonomy: str
    selections: tuple[Selection, ...] = ()


@dataclass(frozen=True)
class Stage:
    """One application of a detail taxonomy within the attack chain."""

    block: ClassificationBlock
    label: str = ""

    @property
    def taxonomy(self) -> str:
        return self.block.taxonomy

    @property
    def selections(self) -> tuple[Selection, ...]:
        return self.block.selections


@dataclass(frozen=True)
class AttackRecord:
    record_id: str
    title: str
    year: int
    sources: tuple[str, ...] = ()
    background: ClassificationBlock = ClassificationBlock(BACKGROUND_ID)
    stages: tuple[Stage, ...] = ()
    notes: str = ""

    def blocks(self) -> Iterator[tuple[int, ClassificationBlock]]:
        """Yields (-1, background) then (index, stage block) in order."""
        yield -1, self.background
        for index, stage in enumerate(self.stages):
            yield index, stage.block


# --- parsing ----------------------------------------------------------------

_RECORD_FIELDS = ("record_id", "title", "year", "sources", "background", "stages", "notes")
_BLOCK_FIELDS = ("taxonomy", "selections")
_STAGE_FIELDS = ("taxonomy", "label", "selections")
_SELECTION_FIELDS = ("facet", "values", "note", "text")


def parse_record(
    document_text: str,
    *,
    lenient: bool = False,
    on_warning: Callable[[str], None] | None = None,
) -> AttackRecord:
    """Parses a record document (UTF-8 JSON) without consulting a taxonomy set.

    Structural schema violations (missing fields, a stage claiming the
    background taxonomy) raise SchemaError; resolvability against a
    taxonomy set is validate_record's job.
    """
    data = _load_json(document_text)
    ctx = _ParseContext(lenient, on_warning)
    ctx.check_fields(
        data, _RECORD_FIELDS, ("record_id", "title", "year", "sources", "background", "stages"), "record"
    )

    year = data["year"]
    if not isinstance(year, int) or isinstance(year, bool):
        raise SchemaError("year must be an integer", "year")
    sources = data["sources"]
    if not isinstance(sources, list) or not all(isinstance(s, str) for s in sources):
        raise SchemaError("sources must be a list of strings", "sources")
    notes = data.get("notes", "")
    if not isinstance(notes, str):
        raise SchemaError("notes must be a string", "notes")

    background = _parse_block(ctx, data["background"], "background")
    if background.taxonomy != BACKGROUND_ID:
        raise SchemaError(
            f"background block must use the {BACKGROUND_ID!r} taxonomy, got {background.taxonomy!r}",
            "background",
            rule_id="background-taxonomy-invalid",
        )

    raw_stages = data["stages"]
    if not isinstance(raw_stages, list):
        raise SchemaError("stages must be a list", "stages")
    stages = []
    for index, raw in enumerate(raw_stages):
        ctx.check_fields(raw, _STAGE_FIELDS, ("taxonomy", "label", "selections"), "stage")
        block = _parse_block(ctx, {"taxonomy": raw["taxonomy"], "selections": raw["selections"]}, f"stages[{index}]")
        if block.taxonomy == BACKGROUND_ID:
            raise SchemaError(
                "stages must use a detail taxonomy, not the background taxonomy",
                f"stages[{index}]",
                rule_id="stage-taxonomy-invalid",
            )
        stages.append(Stage(block=block, label=ctx.text(raw["label"], f"stages[{index}] label")))

    return AttackRecord(
        record_id=ctx.slug(data["record_id"], "record_id"),
        title=ctx.text(data["title"], "title"),
        year=year,
        sources=tuple(sources),
        background=background,
        stages=tuple(stages),
        notes=notes,
    )


def _parse_block(ctx: _ParseContext, raw, where: str) -> ClassificationBlock:
    ctx.check_fields(raw, _BLOCK_FIELDS, ("taxonomy", "selections"), where)
    raw_selections = raw["selections"]
    if not isinstance(raw_selections, list):
        raise SchemaError("selections must be a list", where)
    selections = []
    for item in raw_selections:
        ctx.check_fields(item, _SELECTION_FIELDS, ("facet", "values"), "selection")
        values = item["values"]
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise SchemaError("selection values must be a list of strings", where)
        note = item.get("note")
        if note is not None and not isinstance(note, str):
            raise SchemaError("selection note must be a string", where)
        text = item.get("text")
        if text is not None and not isinstance(text, str):
            raise SchemaError("selection text must be a string", where)
        selections.append(
            Selection(
                facet=ctx.slug(item["facet"], "selection facet"),
                values=tuple(v.strip().lower() for v in values),
                note=note,
                text=text,
            )
        )
    return ClassificationBlock(taxonomy=ctx.slug(raw["taxonomy"], f"{where} taxonomy"), selections=tuple(selections))


# --- validation -------------------------------------------------------------


def validate_record(record: AttackRecord, tset: TaxonomySet) -> ValidationReport:
    """Checks a record against a taxonomy set; defects are data, not failures.

    Errors cover resolvability, cardinality, kind misuse, and illegal
    stage taxonomies. Warnings cover an ``others`` selection without a
    note and internal-node (branch unspecified) selections.
    """
    defects: list[Defect] = []

    if record.background.taxonomy != BACKGROUND_ID:
        defects.append(
            Defect(
                "background-taxonomy-invalid",
                SEVERITY_ERROR,
                f"background block uses taxonomy {record.background.taxonomy!r}",
                record_id=record.record_id,
                stage=-1,
            )
        )
    else:
        _validate_block(defects, record.record_id, -1, record.background, tset)

    for index, stage in enumerate(record.stages):
        if stage.taxonomy not in tset.detail_ids:
            defects.append(
                Defect(
                    "stage-taxonomy-invalid",
                    SEVERITY_ERROR,
                    f"stage taxonomy {stage.taxonomy!r} is not a detail taxonomy of the set",
                    record_id=record.record_id,
                    stage=index,
                )
            )
            continue
        _validate_block(defects, record.record_id, index, stage.block, tset)

    return ValidationReport.collect(defects)


def _validate_block(
    defects: list[Defect], record_id: str, stage: int, block: ClassificationBlock, tset: TaxonomySet
) -> None:
    taxonomy = tset.get(block.taxonomy)
    if taxonomy is None:
        defects.append(
            Defect(
                "unknown-taxonomy",
                SEVERITY_ERROR,
                f"taxonomy {block.taxonomy!r} is not in the set",
                record_id=record_id,
                stage=stage,
            )
        )
        return

    def bad(rule_id: str, severity: str, path: str, message: str) -> None:
        defects.append(Defect(rule_id, severity, message, record_id=record_id, stage=stage, path=path))

    seen_facets: set[str] = set()
    for selection in block.selections:
        if selection.facet in seen_facets:
            bad("duplicate-facet", SEVERITY_ERROR, selection.facet, f"facet {selection.facet!r} selected twice")
            continue
        seen_facets.add(selection.facet)

        facet = taxonomy.facet(selection.facet)
        if facet is None:
            bad("unknown-facet", SEVERITY_ERROR, selection.facet, f"facet {selection.facet!r} does not exist in {taxonomy.id!r}")
            continue
        _validate_selection(bad, facet, selection)


def _validate_selection(bad, facet: Facet, selection: Selection) -> None:
    path = selection.facet
    if facet.kind == KIND_FREE_TEXT:
        if selection.values:
            bad("kind-misuse", SEVERITY_ERROR, path, "free-text facets take text, not value paths")
        if not selection.text:
            bad("empty-selection", SEVERITY_ERROR, path, "free-text selection carries no text")
        return

    if selection.text is not None:
        bad("kind-misuse", SEVERITY_ERROR, path, f"{facet.kind} facets take value paths, not text")
    if not selection.values:
        bad("empty-selection", SEVERITY_ERROR, path, "selection carries no value paths")
        return
    if facet.cardinality == CARD_ONE and len(selection.values) > 1:
        bad(
            "cardinality-exceeded",
            SEVERITY_ERROR,
            path,
            f"facet {path!r} allows one value, got {len(selection.values)}",
        )

    seen: set[str] = set()
    for value_path in selection.values:
        if value_path in seen:
            bad("duplicate-value", SEVERITY_ERROR, f"{path}/{value_path}", f"value {value_path!r} selected twice")
            continue
        seen.add(value_path)
        node = facet.find(value_path)
        if node is None:
            bad(
                "unknown-value",
                SEVERITY_ERROR,
                f"{path}/{value_path}",
                f"value {value_path!r} does not exist under facet {path!r}",
            )
            continue
        if not node.is_leaf:
            bad(
                "unspecified-branch",
                SEVERITY_WARNING,
                f"{path}/{value_path}",
                f"internal value {value_path!r} selected: branch left unspecified",
            )
        if node.slug == OTHERS_SLUG and not selection.note:
            bad(
                "others-without-note",
                SEVERITY_WARNING,
                f"{path}/{value_path}",
                "selection of an 'others' value should carry a qualifying note",
            )


# --- normalization ----------------------------------------------------------


def normalize_record(record: AttackRecord, tset: TaxonomySet) -> AttackRecord:
    """Returns the record with selections and values in canonical order.

    Sorting is by facet path, then value path; slugs are already
    lowercase from parsing. Idempotent, and raises InvalidRecordError if
    the record has validation errors (warnings are fine).
    """
    report = validate_record(record, tset)
    if not report.ok:
        raise InvalidRecordError(f"record {record.record_id!r} has validation errors", report.errors)
    return _sort_record(record)


def _sort_record(record: AttackRecord) -> AttackRecord:
    return replace(
        record,
        background=_sort_block(record.background),
        stages=tuple(replace(s, block=_sort_block(s.block)) for s in record.stages),
    )


def _sort_block(block: ClassificationBlock) -> ClassificationBlock:
    selections = tuple(
        replace(s, values=tuple(sorted(s.values)))
        for s in sorted(block.selections, key=lambda s: s.facet)
    )
    return replace(block, selections=selections)


# --- diffing ----------------------------------------------------------------


@dataclass(frozen=True)
class DiffEntry:
    """One facet-level difference; ``side`` names the record that has it."""

    scope: str  # "background" or "stage[<index>]"
    taxonomy: str
    facet: str
    value: str  # value path, or "text:<...>" for free-text facets
    side: str  # "a" | "b"


def diff_records(a: AttackRecord, b: AttackRecord, tset: TaxonomySet) -> tuple[DiffEntry, ...]:
    """Symmetric difference of the two records' selected values.

    Both records must validate without errors against the same set,
    otherwise SetMismatchError is raised. Notes are ignored; only
    (scope, facet, value) triples are compared.
    """
    for record in (a, b):
        if not validate_record(record, tset).ok:
            raise SetMismatchError(f"record {record.record_id!r} does not validate against the set")

    triples_a = _record_triples(a)
    triples_b = _record_triples(b)
    entries = [DiffEntry(*t, side="a") for t in sorted(triples_a - triples_b)]
    entries += [DiffEntry(*t, side="b") for t in sorted(triples_b - triples_a)]
    return tuple(entries)


def _record_triples(record: AttackRecord) -> set[tuple[str, str, str, str]]:
    triples: set[tuple[str, str, str, str]] = set()
    for index, block in record.blocks():
        scope = "background" if index == -1 else f"stage[{index}]"
        for selection in block.selections:
            if selection.text is not None:
                triples.add((scope, block.taxonomy, selection.facet, f"text:{selection.text}"))
            for value in selection.values:
                triples.add((scope, block.taxonomy, selection.facet, value))
    return triples
