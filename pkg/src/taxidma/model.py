"""Taxonomy data model: category/facet/value trees, sets, resolution, validation.

A taxonomy is a tree: categories at the root, one level of facets below
them, and a value tree (depth <= 4) under each enumerated or ordinal
facet. All nodes are addressed by slash-joined slug paths, e.g.
``attack/type/active/hacking``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

from .errors import DocumentSyntaxError, ExtensionError, PathNotFoundError, SchemaError
from .validation import SEVERITY_ERROR, Defect, ValidationReport

SLUG_RE = re.compile(r"^[a-z0-9-]+$")

KIND_ENUMERATED = "enumerated"
KIND_ORDINAL = "ordinal"
KIND_FREE_TEXT = "free-text"
FACET_KINDS = (KIND_ENUMERATED, KIND_ORDINAL, KIND_FREE_TEXT)

CARD_ONE = "one"
CARD_MANY = "many"
CARDINALITIES = (CARD_ONE, CARD_MANY)

MAX_VALUE_DEPTH = 4

BACKGROUND_ID = "background"
EXTENSION_PREFIX = "ext-"


@dataclass(frozen=True)
class ValueNode:
    """One selectable value; internal nodes are selectable too ("this
    branch, unspecified below")."""

    slug: str
    title: str
    children: tuple["ValueNode", ...] = ()
    citation: str | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Facet:
    """A single classification dimension within a category."""

    slug: str
    title: str
    kind: str = KIND_ENUMERATED
    cardinality: str = CARD_MANY
    values: tuple[ValueNode, ...] = ()

    @cached_property
    def value_index(self) -> dict[str, ValueNode]:
        """Maps facet-relative value paths to nodes, in tree order."""
        index: dict[str, ValueNode] = {}

        def walk(prefix: str, nodes: tuple[ValueNode, ...]) -> None:
            for node in nodes:
                path = f"{prefix}/{node.slug}" if prefix else node.slug
                index[path] = node
                walk(path, node.children)

        walk("", self.values)
        return index

    def value_paths(self) -> tuple[str, ...]:
        return tuple(self.value_index)

    def leaf_paths(self) -> tuple[str, ...]:
        return tuple(p for p, n in self.value_index.items() if n.is_leaf)

    def find(self, value_path: str) -> ValueNode | None:
        return self.value_index.get(value_path)


@dataclass(frozen=True)
class CategoryNode:
    slug: str
    title: str
    facets: tuple[Facet, ...] = ()


@dataclass(frozen=True)
class TaxonomyDefinition:
    """One taxonomy as an immutable tree of categories, facets, and values."""

    id: str
    version: str
    title: str
    categories: tuple[CategoryNode, ...] = ()

    @cached_property
    def facet_index(self) -> dict[str, tuple[CategoryNode, Facet]]:
        """Maps ``category/facet`` paths to their nodes, in tree order."""
        index: dict[str, tuple[CategoryNode, Facet]] = {}
        for category in self.categories:
            for facet in category.facets:
                index[f"{category.slug}/{facet.slug}"] = (category, facet)
        return index

    def facet(self, facet_path: str) -> Facet | None:
        entry = self.facet_index.get(facet_path)
        return entry[1] if entry else None

    def iter_facets(self) -> Iterator[tuple[CategoryNode, Facet, str]]:
        for path, (category, facet) in self.facet_index.items():
            yield category, facet, path

    def leaf_count(self) -> int:
        return sum(len(facet.leaf_paths()) for _, facet, _ in self.iter_facets())


@dataclass(frozen=True)
class ResolvedNode:
    """Result of a path lookup: the node plus its canonical location."""

    taxonomy_id: str
    kind: str  # "category" | "facet" | "value"
    path: str
    node: CategoryNode | Facet | ValueNode
    facet_path: str | None = None
    value_path: str | None = None  # relative to the facet


@dataclass(frozen=True)
class TaxonomySet:
    """An immutable group of taxonomies: ``background`` plus detail taxonomies.

    Safe for concurrent reads; extension happens by building a new set.
    """

    set_version: str
    taxonomies: tuple[TaxonomyDefinition, ...] = ()
    detail_ids: tuple[str, ...] = ()

    @cached_property
    def by_id(self) -> dict[str, TaxonomyDefinition]:
        return {t.id: t for t in self.taxonomies}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.taxonomies)

    def get(self, taxonomy_id: str) -> TaxonomyDefinition | None:
        return self.by_id.get(taxonomy_id)

    @property
    def background(self) -> TaxonomyDefinition:
        return self.by_id[BACKGROUND_ID]

    @property
    def details(self) -> tuple[TaxonomyDefinition, ...]:
        return tuple(t for t in self.taxonomies if t.id in self.detail_ids)

    def extended(self, definition: TaxonomyDefinition) -> "TaxonomySet":
        """Returns a new set with an extension detail taxonomy added.

        Extensions must use a namespaced id (``ext-<name>``) and may not
        shadow an existing taxonomy.
        """
        if not definition.id.startswith(EXTENSION_PREFIX):
            raise ExtensionError(
                f"extension taxonomy id must start with {EXTENSION_PREFIX!r}: {definition.id!r}"
            )
        if definition.id in self.by_id:
            raise ExtensionError(f"taxonomy id {definition.id!r} already present in the set")
        return TaxonomySet(
            set_version=self.set_version,
            taxonomies=self.taxonomies + (definition,),
            detail_ids=self.detail_ids + (definition.id,),
        )


def resolve_path(tset: TaxonomySet, taxonomy_id: str, path: str) -> ResolvedNode:
    """Resolves a category, facet, or value path within one taxonomy.

    Lookup is case-insensitive on input; the returned node carries the
    canonical lowercase path. Raises PathNotFoundError naming the first
    missing component (taxonomy, category, facet, or value).
    """
    taxonomy = tset.get(taxonomy_id.strip().lower())
    if taxonomy is None:
        raise PathNotFoundError("taxonomy", taxonomy_id)
    segments = [seg.strip().lower() for seg in path.strip("/").split("/") if seg.strip()]
    if not segments:
        raise PathNotFoundError("category", path, taxonomy.id)

    category = next((c for c in taxonomy.categories if c.slug == segments[0]), None)
    if category is None:
        raise PathNotFoundError("category", segments[0], taxonomy.id)
    if len(segments) == 1:
        return ResolvedNode(taxonomy.id, "category", category.slug, category)

    facet = next((f for f in category.facets if f.slug == segments[1]), None)
    facet_path = f"{category.slug}/{segments[1]}"
    if facet is None:
        raise PathNotFoundError("facet", facet_path, taxonomy.id)
    if len(segments) == 2:
        return ResolvedNode(taxonomy.id, "facet", facet_path, facet, facet_path=facet_path)

    value_path = "/".join(segments[2:])
    node = facet.find(value_path)
    if node is None:
        raise PathNotFoundError("value", f"{facet_path}/{value_path}", taxonomy.id)
    return ResolvedNode(
        taxonomy.id,
        "value",
        f"{facet_path}/{value_path}",
        node,
        facet_path=facet_path,
        value_path=value_path,
    )


def validate_taxonomy(taxonomy: TaxonomyDefinition) -> ValidationReport:
    """Checks every structural invariant of a taxonomy definition.

    Returns an empty report iff the definition is valid; each defect
    carries the offending node path and a stable rule id.
    """
    defects: list[Defect] = []

    def bad(rule_id: str, path: str, message: str) -> None:
        defects.append(Defect(rule_id, SEVERITY_ERROR, message, path=path))

    if not SLUG_RE.match(taxonomy.id):
        bad("id-format", taxonomy.id, f"taxonomy id {taxonomy.id!r} is not a valid slug")

    seen_paths: set[str] = set()

    def claim(path: str) -> None:
        if path in seen_paths:
            bad("path-collision", path, f"node path {path!r} is not unique")
        seen_paths.add(path)

    def check_slug(slug: str, path: str) -> None:
        if not SLUG_RE.match(slug):
            bad("slug-format", path, f"slug {slug!r} must match [a-z0-9-]+")

    def check_siblings(slugs: list[str], parent_path: str) -> None:
        seen: set[str] = set()
        for slug in slugs:
            if slug in seen:
                bad(
                    "duplicate-sibling-slug",
                    f"{parent_path}/{slug}" if parent_path else slug,
                    f"sibling slug {slug!r} repeats under {parent_path or 'the root'}",
                )
            seen.add(slug)

    def walk_values(facet_path: str, prefix: str, nodes: tuple[ValueNode, ...], depth: int) -> None:
        check_siblings([n.slug for n in nodes], prefix)
        for node in nodes:
            path = f"{prefix}/{node.slug}"
            check_slug(node.slug, path)
            claim(path)
            if depth > MAX_VALUE_DEPTH:
                bad("depth-exceeded", path, f"value node deeper than {MAX_VALUE_DEPTH} levels")
            walk_values(facet_path, path, node.children, depth + 1)

    check_siblings([c.slug for c in taxonomy.categories], "")
    for category in taxonomy.categories:
        check_slug(category.slug, category.slug)
        claim(category.slug)
        check_siblings([f.slug for f in category.facets], category.slug)
        for facet in category.facets:
            facet_path = f"{category.slug}/{facet.slug}"
            check_slug(facet.slug, facet_path)
            claim(facet_path)
            if facet.kind not in FACET_KINDS:
                bad("invalid-kind", facet_path, f"unknown facet kind {facet.kind!r}")
            if facet.cardinality not in CARDINALITIES:
                bad("invalid-cardinality", facet_path, f"unknown cardinality {facet.cardinality!r}")
            node_count = _count_nodes(facet.values)
            if facet.kind == KIND_FREE_TEXT:
                if facet.values:
                    bad("free-text-has-values", facet_path, "free-text facets carry no value tree")
            elif node_count < 2:
                rule = "ordinal-too-small" if facet.kind == KIND_ORDINAL else "enumerated-too-small"
                bad(rule, facet_path, f"{facet.kind} facet needs at least 2 values, has {node_count}")
            if facet.kind == KIND_ORDINAL and any(n.children for n in facet.values):
                bad("ordinal-not-flat", facet_path, "ordinal facets must have a flat value list")
            walk_values(facet_path, facet_path, facet.values, 1)

    return ValidationReport.collect(defects)


def _count_nodes(nodes: tuple[ValueNode, ...]) -> int:
    return sum(1 + _count_nodes(n.children) for n in nodes)


# --- taxonomy file parsing -------------------------------------------------

_TAXONOMY_FIELDS = ("id", "version", "title", "categories")
_CATEGORY_FIELDS = ("slug", "title", "facets")
_FACET_FIELDS = ("slug", "title", "cardinality", "kind", "values")
_VALUE_FIELDS = ("slug", "title", "children", "citation")


def parse_taxonomy(
    document_text: str,
    *,
    lenient: bool = False,
    on_warning: Callable[[str], None] | None = None,
) -> TaxonomyDefinition:
    """Parses a taxonomy document (UTF-8 JSON) into a definition tree.

    Slugs are normalized to lowercase. In strict mode unknown fields are
    a SchemaError; with ``lenient`` they are reported through
    ``on_warning`` and ignored. Duplicate sibling slugs and missing
    required fields are always SchemaErrors.
    """
    data = _load_json(document_text)
    ctx = _ParseContext(lenient, on_warning)
    ctx.check_fields(data, _TAXONOMY_FIELDS, ("id", "version", "title", "categories"), "taxonomy")

    categories = _parse_categories(ctx, data["categories"])
    return TaxonomyDefinition(
        id=ctx.slug(data["id"], "id"),
        version=ctx.text(data["version"], "version"),
        title=ctx.text(data["title"], "title"),
        categories=categories,
    )


def _parse_categories(ctx: "_ParseContext", raw, parent: str = "") -> tuple[CategoryNode, ...]:
    if not isinstance(raw, list):
        raise SchemaError("categories must be a list", parent or "categories")
    categories = []
    seen: set[str] = set()
    for item in raw:
        ctx.check_fields(item, _CATEGORY_FIELDS, ("slug", "title", "facets"), "category")
        slug = ctx.slug(item["slug"], "category slug")
        if slug in seen:
            raise SchemaError(f"duplicate sibling category slug {slug!r}", slug, "duplicate-sibling-slug")
        seen.add(slug)
        categories.append(
            CategoryNode(
                slug=slug,
                title=ctx.text(item["title"], f"{slug} title"),
                facets=_parse_facets(ctx, item["facets"], slug),
            )
        )
    return tuple(categories)


def _parse_facets(ctx: "_ParseContext", raw, category: str) -> tuple[Facet, ...]:
    if not isinstance(raw, list):
        raise SchemaError("facets must be a list", category)
    facets = []
    seen: set[str] = set()
    for item in raw:
        ctx.check_fields(item, _FACET_FIELDS, ("slug", "title", "cardinality", "kind", "values"), "facet")
        slug = ctx.slug(item["slug"], "facet slug")
        path = f"{category}/{slug}"
        if slug in seen:
            raise SchemaError(f"duplicate sibling facet slug {slug!r}", path, "duplicate-sibling-slug")
        seen.add(slug)
        kind = ctx.text(item["kind"], f"{path} kind")
        cardinality = ctx.text(item["cardinality"], f"{path} cardinality")
        if kind not in FACET_KINDS:
            raise SchemaError(f"unknown facet kind {kind!r}", path)
        if cardinality not in CARDINALITIES:
            raise SchemaError(f"unknown cardinality {cardinality!r}", path)
        facets.append(
            Facet(
                slug=slug,
                title=ctx.text(item["title"], f"{path} title"),
                kind=kind,
                cardinality=cardinality,
                values=_parse_values(ctx, item["values"], path),
            )
        )
    return tuple(facets)


def _parse_values(ctx: "_ParseContext", raw, parent: str) -> tuple[ValueNode, ...]:
    if not isinstance(raw, list):
        raise SchemaError("values must be a list", parent)
    values = []
    seen: set[str] = set()
    for item in raw:
        ctx.check_fields(item, _VALUE_FIELDS, ("slug", "title", "children"), "value")
        slug = ctx.slug(item["slug"], "value slug")
        path = f"{parent}/{slug}"
        if slug in seen:
            raise SchemaError(f"duplicate sibling value slug {slug!r}", path, "duplicate-sibling-slug")
        seen.add(slug)
        citation = item.get("citation")
        if citation is not None and not isinstance(citation, str):
            raise SchemaError("citation must be a string", path)
        values.append(
            ValueNode(
                slug=slug,
                title=ctx.text(item["title"], f"{path} title"),
                children=_parse_values(ctx, item["children"], path),
                citation=citation,
            )
        )
    return tuple(values)


def _load_json(document_text: str):
    try:
        data = json.loads(document_text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise SchemaError("document root must be a JSON object")
    return data


@dataclass
class _ParseContext:
    """Strict/lenient field policy shared by the document parsers."""

    lenient: bool = False
    on_warning: Callable[[str], None] | None = None

    def warn(self, message: str) -> None:
        if self.on_warning is not None:
            self.on_warning(message)

    def check_fields(self, obj, known: tuple[str, ...], required: tuple[str, ...], what: str) -> None:
        if not isinstance(obj, dict):
            raise SchemaError(f"{what} must be a JSON object")
        for name in required:
            if name not in obj:
                raise SchemaError(f"{what} is missing required field {name!r}")
        unknown = sorted(set(obj) - set(known))
        if unknown:
            if self.lenient:
                self.warn(f"ignoring unknown {what} field(s): {', '.join(unknown)}")
            else:
                raise SchemaError(f"unknown {what} field(s): {', '.join(unknown)}", rule_id="unknown-field")

    def slug(self, value, what: str) -> str:
        if not isinstance(value, str) or not value.strip():
            raise SchemaError(f"{what} must be a non-empty string")
        return value.strip().lower()

    def text(self, value, what: str) -> str:
        if not isinstance(value, str):
            raise SchemaError(f"{what} must be a string")
        return value
