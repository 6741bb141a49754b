"""Shared test machinery: toy taxonomies, a random record generator,
single-fault mutators, and naive reference implementations.

The oracle_* functions are deliberately dumb linear scans, written
separately from the library so analytics results can be checked against
an independent path.
"""

from __future__ import annotations

import random
from fractions import Fraction

from taxidma.model import (
    BACKGROUND_ID,
    CARD_MANY,
    CARD_ONE,
    KIND_ENUMERATED,
    KIND_FREE_TEXT,
    KIND_ORDINAL,
    CategoryNode,
    Facet,
    TaxonomyDefinition,
    TaxonomySet,
    ValueNode,
)
from taxidma.query import SCOPE_BACKGROUND, Predicate, Term
from taxidma.records import AttackRecord, ClassificationBlock, Selection, Stage


def leaf(slug: str) -> ValueNode:
    return ValueNode(slug=slug, title=slug.title())


def toy_taxonomy(tax_id: str = "background") -> TaxonomyDefinition:
    """Small but complete taxonomy exercising every facet kind."""
    return TaxonomyDefinition(
        id=tax_id,
        version="0.1",
        title=f"Toy {tax_id}",
        categories=(
            CategoryNode(
                slug="thing",
                title="Thing",
                facets=(
                    Facet(
                        slug="color",
                        title="Color",
                        kind=KIND_ENUMERATED,
                        cardinality=CARD_MANY,
                        values=(
                            ValueNode("warm", "Warm", children=(leaf("red"), leaf("orange"))),
                            leaf("blue"),
                        ),
                    ),
                    Facet(
                        slug="size",
                        title="Size",
                        kind=KIND_ORDINAL,
                        cardinality=CARD_ONE,
                        values=(leaf("small"), leaf("large")),
                    ),
                    Facet(slug="name", title="Name", kind=KIND_FREE_TEXT, cardinality=CARD_ONE),
                ),
            ),
        ),
    )


def toy_set() -> TaxonomySet:
    return TaxonomySet(
        set_version="toy-0.1",
        taxonomies=(toy_taxonomy(BACKGROUND_ID), toy_taxonomy("ext-detail")),
        detail_ids=("ext-detail",),
    )


# --- random valid records ----------------------------------------------------


def _gen_selection(rng: random.Random, facet: Facet, facet_path: str) -> Selection:
    if facet.kind == KIND_FREE_TEXT:
        return Selection(facet=facet_path, text=f"text-{rng.randrange(1000)}")
    paths = list(facet.value_paths())
    count = 1 if facet.cardinality == CARD_ONE else rng.randint(1, min(3, len(paths)))
    values = tuple(sorted(rng.sample(paths, count)))
    note = f"note-{rng.randrange(100)}" if rng.random() < 0.3 else None
    return Selection(facet=facet_path, values=values, note=note)


def _gen_block(rng: random.Random, definition: TaxonomyDefinition, min_selections: int = 0) -> ClassificationBlock:
    facets = list(definition.iter_facets())
    count = rng.randint(min_selections, len(facets))
    chosen = rng.sample(facets, count) if count else []
    chosen.sort(key=lambda item: item[2])
    selections = tuple(_gen_selection(rng, facet, path) for _, facet, path in chosen)
    return ClassificationBlock(taxonomy=definition.id, selections=selections)


def gen_record(
    rng: random.Random,
    tset: TaxonomySet,
    *,
    min_stages: int = 0,
    max_stages: int = 3,
    min_selections: int = 1,
) -> AttackRecord:
    """One random record that validates without errors against the set."""
    background = _gen_block(rng, tset.background, min_selections=min_selections)
    stages = []
    for index in range(rng.randint(min_stages, max_stages)):
        taxonomy_id = rng.choice(tset.detail_ids)
        stages.append(
            Stage(
                block=_gen_block(rng, tset.by_id[taxonomy_id], min_selections=min_selections),
                label=f"stage {index}",
            )
        )
    return AttackRecord(
        record_id=f"gen-{rng.randrange(10**9)}",
        title="Generated record",
        year=rng.randint(2000, 2030),
        sources=(f"source-{rng.randrange(100)}",),
        background=background,
        stages=tuple(stages),
        notes="",
    )


# --- single-fault mutations ---------------------------------------------------


def _replace_block_selection(block: ClassificationBlock, index: int, selection: Selection) -> ClassificationBlock:
    selections = list(block.selections)
    selections[index] = selection
    return ClassificationBlock(taxonomy=block.taxonomy, selections=tuple(selections))


def _with_block(record: AttackRecord, which: int, block: ClassificationBlock) -> AttackRecord:
    """which: -1 for background, else stage index."""
    if which == -1:
        return AttackRecord(
            record_id=record.record_id,
            title=record.title,
            year=record.year,
            sources=record.sources,
            background=block,
            stages=record.stages,
            notes=record.notes,
        )
    stages = list(record.stages)
    stages[which] = Stage(block=block, label=record.stages[which].label)
    return AttackRecord(
        record_id=record.record_id,
        title=record.title,
        year=record.year,
        sources=record.sources,
        background=record.background,
        stages=tuple(stages),
        notes=record.notes,
    )


def _pick_block(rng: random.Random, record: AttackRecord, want_values: bool = False):
    """Returns (which, block) with which=-1 for background."""
    candidates = [(-1, record.background)] + [(i, s.block) for i, s in enumerate(record.stages)]
    if want_values:
        candidates = [(i, b) for i, b in candidates if any(s.values for s in b.selections)]
    return rng.choice(candidates)


def mutate_unknown_facet(rng: random.Random, record: AttackRecord) -> tuple[AttackRecord, str]:
    which, block = _pick_block(rng, record)
    bogus = Selection(facet=f"zzz-bogus/zzz-{rng.randrange(1000)}", values=("whatever",))
    if block.selections:
        block = _replace_block_selection(block, rng.randrange(len(block.selections)), bogus)
    else:
        block = ClassificationBlock(taxonomy=block.taxonomy, selections=(bogus,))
    return _with_block(record, which, block), "unknown-facet"


def mutate_unknown_value(rng: random.Random, record: AttackRecord) -> tuple[AttackRecord, str]:
    which, block = _pick_block(rng, record, want_values=True)
    indexed = [(i, s) for i, s in enumerate(block.selections) if s.values]
    index, selection = rng.choice(indexed)
    values = list(selection.values)
    values[rng.randrange(len(values))] = f"zzz-bogus-{rng.randrange(1000)}"
    mutated = Selection(facet=selection.facet, values=tuple(values), note=selection.note)
    return _with_block(record, which, _replace_block_selection(block, index, mutated)), "unknown-value"


def mutate_cardinality(rng: random.Random, record: AttackRecord) -> tuple[AttackRecord, str]:
    # identity/permissions is the built-in set's one-cardinality facet.
    block = record.background
    extra = Selection(facet="identity/permissions", values=("restricted", "extended"))
    selections = [s for s in block.selections if s.facet != extra.facet] + [extra]
    block = ClassificationBlock(taxonomy=block.taxonomy, selections=tuple(selections))
    return _with_block(record, -1, block), "cardinality-exceeded"


def mutate_stage_taxonomy(rng: random.Random, record: AttackRecord) -> tuple[AttackRecord, str]:
    assert record.stages, "mutation needs a record with stages"
    index = rng.randrange(len(record.stages))
    illegal = rng.choice([BACKGROUND_ID, f"zzz-taxonomy-{rng.randrange(100)}"])
    block = ClassificationBlock(taxonomy=illegal, selections=record.stages[index].selections)
    return _with_block(record, index, block), "stage-taxonomy-invalid"


def mutate_kind_misuse(rng: random.Random, record: AttackRecord) -> tuple[AttackRecord, str]:
    which, block = _pick_block(rng, record, want_values=True)
    indexed = [(i, s) for i, s in enumerate(block.selections) if s.values]
    index, selection = rng.choice(indexed)
    mutated = Selection(facet=selection.facet, values=selection.values, note=selection.note, text="boom")
    return _with_block(record, which, _replace_block_selection(block, index, mutated)), "kind-misuse"


MUTATORS = {
    "unknown-facet": mutate_unknown_facet,
    "unknown-value": mutate_unknown_value,
    "cardinality-exceeded": mutate_cardinality,
    "stage-taxonomy-invalid": mutate_stage_taxonomy,
    "kind-misuse": mutate_kind_misuse,
}


# --- naive reference implementations -------------------------------------------


def _blocks_in_scope(record: AttackRecord, scope: str, taxonomy: str | None):
    if scope == SCOPE_BACKGROUND:
        return [record.background]
    blocks = [stage.block for stage in record.stages]
    if taxonomy is not None:
        blocks = [b for b in blocks if b.taxonomy == taxonomy]
    return blocks


def _term_hits(record: AttackRecord, term: Term) -> bool:
    for block in _blocks_in_scope(record, term.scope, term.taxonomy):
        for selection in block.selections:
            if selection.facet != term.facet:
                continue
            for value in selection.values:
                if value == term.value:
                    return True
                if term.descend and value.startswith(term.value + "/"):
                    return True
    return False


def oracle_filter(records, predicate: Predicate):
    return tuple(r for r in records if all(_term_hits(r, t) for t in predicate.terms))


def oracle_frequency(records, scope: str, facet_path: str, taxonomy: str | None = None):
    """Returns (counts dict without zero buckets, unspecified, total)."""
    counts: dict[str, int] = {}
    unspecified = 0
    for record in records:
        selected = set()
        specified = False
        for block in _blocks_in_scope(record, scope, taxonomy):
            for selection in block.selections:
                if selection.facet != facet_path:
                    continue
                if selection.values or selection.text:
                    specified = True
                selected.update(selection.values)
        for value in selected:
            counts[value] = counts.get(value, 0) + 1
        if not specified:
            unspecified += 1
    return counts, unspecified, len(records)


def taxonomy_leaf_paths(definition: TaxonomyDefinition) -> set[str]:
    leaves: set[str] = set()

    def walk(prefix: str, node: ValueNode) -> None:
        path = f"{prefix}/{node.slug}"
        if not node.children:
            leaves.add(path)
        for child in node.children:
            walk(path, child)

    for category in definition.categories:
        for facet in category.facets:
            for value in facet.values:
                walk(f"{category.slug}/{facet.slug}", value)
    return leaves


def oracle_coverage(records, tset: TaxonomySet) -> dict[str, Fraction]:
    """Fraction of leaves selected exactly, per taxonomy id."""
    fractions = {}
    for definition in tset.taxonomies:
        leaves = taxonomy_leaf_paths(definition)
        used = set()
        for record in records:
            for _, block in record.blocks():
                if block.taxonomy != definition.id:
                    continue
                for selection in block.selections:
                    for value in selection.values:
                        path = f"{selection.facet}/{value}"
                        if path in leaves:
                            used.add(path)
        fractions[definition.id] = Fraction(len(used), len(leaves)) if leaves else Fraction(0)
    return fractions


def oracle_census(corpus_records, detail_ids) -> dict[str, int]:
    counts = {BACKGROUND_ID: 0}
    for detail_id in detail_ids:
        counts[detail_id] = 0
    for record in corpus_records:
        counts[BACKGROUND_ID] += 1
        for detail_id in detail_ids:
            if any(stage.taxonomy == detail_id for stage in record.stages):
                counts[detail_id] += 1
    return counts
