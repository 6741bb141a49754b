"""Canonical document serialization for taxonomies and records.

Canonical form: fixed key order, normalized selection ordering, 2-space
indentation, LF line endings, one trailing newline. parse(serialize(x))
round-trips structurally and serialize is a normalization fixpoint.
"""

from __future__ import annotations

import json

from .errors import InvalidRecordError
from .model import CategoryNode, Facet, TaxonomyDefinition, ValueNode
from .records import AttackRecord, ClassificationBlock, Selection, _sort_record


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# --- taxonomies -------------------------------------------------------------


def taxonomy_to_dict(taxonomy: TaxonomyDefinition) -> dict:
    return {
        "id": taxonomy.id,
        "version": taxonomy.version,
        "title": taxonomy.title,
        "categories": [_category_dict(c) for c in taxonomy.categories],
    }


def _category_dict(category: CategoryNode) -> dict:
    return {
        "slug": category.slug,
        "title": category.title,
        "facets": [_facet_dict(f) for f in category.facets],
    }


def _facet_dict(facet: Facet) -> dict:
    return {
        "slug": facet.slug,
        "title": facet.title,
        "cardinality": facet.cardinality,
        "kind": facet.kind,
        "values": [_value_dict(v) for v in facet.values],
    }


def _value_dict(value: ValueNode) -> dict:
    out = {"slug": value.slug, "title": value.title}
    if value.citation is not None:
        out["citation"] = value.citation
    out["children"] = [_value_dict(c) for c in value.children]
    return out


def serialize_taxonomy(taxonomy: TaxonomyDefinition) -> str:
    """Renders a taxonomy definition in canonical document form."""
    if not isinstance(taxonomy, TaxonomyDefinition):
        raise InvalidRecordError("serialize_taxonomy expects a TaxonomyDefinition")
    return _dump(taxonomy_to_dict(taxonomy))


# --- records ----------------------------------------------------------------


def record_to_dict(record: AttackRecord) -> dict:
    record = _sort_record(record)
    out = {
        "record_id": record.record_id,
        "title": record.title,
        "year": record.year,
        "sources": list(record.sources),
        "background": _block_dict(record.background),
        "stages": [
            {
                "taxonomy": stage.taxonomy,
                "label": stage.label,
                "selections": _selection_list(stage.selections),
            }
            for stage in record.stages
        ],
    }
    if record.notes:
        out["notes"] = record.notes
    return out


def _block_dict(block: ClassificationBlock) -> dict:
    return {"taxonomy": block.taxonomy, "selections": _selection_list(block.selections)}


def _selection_list(selections: tuple[Selection, ...]) -> list[dict]:
    out = []
    for selection in selections:
        item: dict = {"facet": selection.facet, "values": list(selection.values)}
        if selection.note is not None:
            item["note"] = selection.note
        if selection.text is not None:
            item["text"] = selection.text
        out.append(item)
    return out


def serialize_record(record: AttackRecord) -> str:
    """Renders a record in canonical form, normalizing selection order."""
    if not isinstance(record, AttackRecord):
        raise InvalidRecordError("serialize_record expects an AttackRecord")
    return _dump(record_to_dict(record))
