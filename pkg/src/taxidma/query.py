"""Filtering, frequency histograms, and coverage analytics over record sets."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PathNotFoundError, PredicateError
from .model import BACKGROUND_ID, KIND_FREE_TEXT, TaxonomyDefinition, TaxonomySet, resolve_path
from .records import AttackRecord, ClassificationBlock

SCOPE_BACKGROUND = "background"
SCOPE_STAGE = "stage"


@dataclass(frozen=True)
class Term:
    """One conjunct: a value (or any of its descendants) selected in scope."""

    scope: str  # SCOPE_BACKGROUND or SCOPE_STAGE
    facet: str
    value: str
    taxonomy: str | None = None  # restricts stage scope to one detail taxonomy
    descend: bool = True


@dataclass(frozen=True)
class Predicate:
    """Conjunction of terms; the empty conjunction matches every record."""

    terms: tuple[Term, ...] = ()


_TERM_RE = re.compile(r"^(?P<scope>bg|stage(?:\[(?P<tax>[a-z0-9-]+)\])?)\s*:\s*(?P<facet>[^=]+?)\s*=\s*(?P<value>.+?)$")


def parse_scope(scope: str) -> tuple[str, str | None]:
    """Parses the scope syntax used by the CLI and API: ``bg``, ``stage``,
    or ``stage[<taxonomy-id>]``."""
    scope = scope.strip()
    if scope in ("bg", SCOPE_BACKGROUND):
        return SCOPE_BACKGROUND, None
    if scope == SCOPE_STAGE:
        return SCOPE_STAGE, None
    if scope.startswith("stage[") and scope.endswith("]"):
        return SCOPE_STAGE, scope[len("stage[") : -1].strip().lower()
    raise PredicateError(f"scope must be bg, stage, or stage[<taxonomy-id>], got {scope!r}")


def parse_predicate(text: str) -> Predicate:
    """Parses the ``scope:facet/path=value/path & ...`` predicate syntax.

    Scope is one of ``bg``, ``stage``, or ``stage[<taxonomy-id>]``.
    """
    terms = []
    for chunk in text.split("&"):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = _TERM_RE.match(chunk)
        if match is None:
            raise PredicateError(f"cannot parse predicate term {chunk!r}")
        scope = SCOPE_BACKGROUND if match.group("scope") == "bg" else SCOPE_STAGE
        terms.append(
            Term(
                scope=scope,
                facet=match.group("facet").strip().strip("/").lower(),
                value=match.group("value").strip().strip("/").lower(),
                taxonomy=match.group("tax"),
            )
        )
    return Predicate(tuple(terms))


def _term_taxonomies(term: Term, tset: TaxonomySet) -> tuple[str, ...]:
    """Taxonomies a term can apply to; raises PredicateError if it
    resolves in none of them."""
    if term.scope == SCOPE_BACKGROUND:
        candidates: tuple[str, ...] = (BACKGROUND_ID,)
    elif term.taxonomy is not None:
        if term.taxonomy not in tset.detail_ids:
            raise PredicateError(f"{term.taxonomy!r} is not a detail taxonomy of the set")
        candidates = (term.taxonomy,)
    else:
        candidates = tset.detail_ids

    resolved = []
    for taxonomy_id in candidates:
        try:
            node = resolve_path(tset, taxonomy_id, f"{term.facet}/{term.value}")
        except PathNotFoundError:
            continue
        if node.kind == "value":
            resolved.append(taxonomy_id)
    if not resolved:
        raise PredicateError(
            f"term {term.facet}={term.value} does not resolve in scope "
            f"{term.taxonomy or term.scope}"
        )
    return tuple(resolved)


def _block_matches(block: ClassificationBlock, term: Term) -> bool:
    for selection in block.selections:
        if selection.facet != term.facet:
            continue
        for value in selection.values:
            if value == term.value:
                return True
            if term.descend and value.startswith(term.value + "/"):
                return True
    return False


def _record_matches(record: AttackRecord, term: Term, taxonomies: tuple[str, ...]) -> bool:
    if term.scope == SCOPE_BACKGROUND:
        return _block_matches(record.background, term)
    return any(
        stage.taxonomy in taxonomies and _block_matches(stage.block, term)
        for stage in record.stages
    )


def filter_records(
    records: Sequence[AttackRecord], tset: TaxonomySet, predicate: Predicate
) -> tuple[AttackRecord, ...]:
    """Keeps records for which every term matches.

    A term matches when an in-scope selection selects the term's value
    path or, with ``descend``, any of its descendants. A selection of an
    internal node only matches terms for that node or its ancestors.
    """
    resolved = [(term, _term_taxonomies(term, tset)) for term in predicate.terms]
    return tuple(
        record
        for record in records
        if all(_record_matches(record, term, taxonomies) for term, taxonomies in resolved)
    )


# --- histograms ---------------------------------------------------------------


@dataclass(frozen=True)
class Histogram:
    """Record counts per selected value path of one facet.

    Buckets cover every value path of the facet (zero-filled); records
    without the facet in scope count as unspecified. Multi-select facets
    can make bucket sums exceed the record total.
    """

    facet: str
    scope: str
    taxonomy: str | None
    total: int
    unspecified: int
    buckets: tuple[tuple[str, int], ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "facet": self.facet,
            "scope": self.scope,
            "taxonomy": self.taxonomy,
            "total": self.total,
            "unspecified": self.unspecified,
            "buckets": {path: count for path, count in self.buckets},
        }


def facet_frequency(
    records: Sequence[AttackRecord],
    tset: TaxonomySet,
    scope: str,
    facet_path: str,
    *,
    taxonomy: str | None = None,
) -> Histogram:
    """Counts records (not selections) per selected value path of a facet."""
    facet_path = facet_path.strip().strip("/").lower()
    if scope == SCOPE_BACKGROUND:
        candidates: tuple[str, ...] = (BACKGROUND_ID,)
    elif taxonomy is not None:
        candidates = (taxonomy,)
    else:
        candidates = tset.detail_ids

    bucket_paths: list[str] = []
    found = False
    for taxonomy_id in candidates:
        definition = tset.get(taxonomy_id)
        facet = definition.facet(facet_path) if definition else None
        if facet is None:
            continue
        found = True
        for path in facet.value_paths():
            if path not in bucket_paths:
                bucket_paths.append(path)
    if not found:
        raise PathNotFoundError("facet", facet_path, taxonomy or scope)

    counts = {path: 0 for path in bucket_paths}
    unspecified = 0
    for record in records:
        if scope == SCOPE_BACKGROUND:
            blocks = [record.background]
        else:
            blocks = [s.block for s in record.stages if s.taxonomy in candidates]
        selected: set[str] = set()
        specified = False
        for block in blocks:
            for selection in block.selections:
                if selection.facet != facet_path:
                    continue
                if selection.values or selection.text:
                    specified = True
                selected.update(selection.values)
        for value in selected:
            if value in counts:
                counts[value] += 1
        if not specified:
            unspecified += 1

    return Histogram(
        facet=facet_path,
        scope=scope,
        taxonomy=taxonomy,
        total=len(records),
        unspecified=unspecified,
        buckets=tuple((path, counts[path]) for path in bucket_paths),
    )


# --- coverage -----------------------------------------------------------------


@dataclass(frozen=True)
class TaxonomyCoverage:
    taxonomy: str
    total_leaves: int
    used_leaves: int
    fraction: Fraction
    unused: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "taxonomy": self.taxonomy,
            "total_leaves": self.total_leaves,
            "used_leaves": self.used_leaves,
            "fraction": float(self.fraction),
            "unused": list(self.unused),
        }


@dataclass(frozen=True)
class CoverageReport:
    """How much of each taxonomy's leaf vocabulary the records exercise.

    The fraction is a tool-side metric over leaf values, not part of the
    classification scheme itself.
    """

    entries: tuple[TaxonomyCoverage, ...] = ()

    def get(self, taxonomy_id: str) -> TaxonomyCoverage | None:
        return next((e for e in self.entries if e.taxonomy == taxonomy_id), None)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}


def _taxonomy_leaves(definition: TaxonomyDefinition) -> list[str]:
    leaves = []
    for _, facet, facet_path in definition.iter_facets():
        if facet.kind == KIND_FREE_TEXT:
            continue
        leaves.extend(f"{facet_path}/{rel}" for rel in facet.leaf_paths())
    return leaves


def coverage(records: Iterable[AttackRecord], tset: TaxonomySet) -> CoverageReport:
    """Counts a leaf as used only when a record selects exactly that leaf.

    Internal-node selections mark their branch as touched but credit no
    leaves, so unspecified branches never inflate the fraction.
    """
    used: dict[str, set[str]] = {t.id: set() for t in tset.taxonomies}
    for record in records:
        for _, block in record.blocks():
            if block.taxonomy not in used:
                continue
            for selection in block.selections:
                for value in selection.values:
                    used[block.taxonomy].add(f"{selection.facet}/{value}")

    entries = []
    for definition in tset.taxonomies:
        leaves = _taxonomy_leaves(definition)
        used_leaves = sorted(set(leaves) & used[definition.id])
        total = len(leaves)
        fraction = Fraction(len(used_leaves), total) if total else Fraction(0)
        entries.append(
            TaxonomyCoverage(
                taxonomy=definition.id,
                total_leaves=total,
                used_leaves=len(used_leaves),
                fraction=fraction,
                unused=tuple(sorted(set(leaves) - set(used_leaves))),
            )
        )
    return CoverageReport(tuple(entries))
