"""Taxonomy model: parsing, structural validation, and path resolution."""

from __future__ import annotations

import json

import pytest

from helpers import leaf, toy_set, toy_taxonomy
from taxidma import (
    DocumentSyntaxError,
    ExtensionError,
    PathNotFoundError,
    SchemaError,
    parse_taxonomy,
    resolve_path,
    serialize_taxonomy,
    validate_taxonomy,
)
from taxidma.model import CategoryNode, Facet, TaxonomyDefinition, ValueNode

MINIMAL_DOC = {
    "id": "ext-mini",
    "version": "0.1",
    "title": "Mini",
    "categories": [
        {
            "slug": "thing",
            "title": "Thing",
            "facets": [
                {
                    "slug": "color",
                    "title": "Color",
                    "cardinality": "many",
                    "kind": "enumerated",
                    "values": [
                        {"slug": "red", "title": "Red", "children": []},
                        {"slug": "blue", "title": "Blue", "children": []},
                    ],
                }
            ],
        }
    ],
}


def doc(**overrides) -> str:
    merged = json.loads(json.dumps(MINIMAL_DOC))
    merged.update(overrides)
    return json.dumps(merged)


class TestParseTaxonomy:
    def test_minimal_document(self):
        taxonomy = parse_taxonomy(doc())
        assert taxonomy.id == "ext-mini"
        assert len(taxonomy.categories) == 1
        assert taxonomy.categories[0].facets[0].values[0].slug == "red"

    def test_slugs_normalized_to_lowercase(self):
        raw = json.loads(doc())
        raw["id"] = "EXT-Mini"
        raw["categories"][0]["slug"] = "THING"
        taxonomy = parse_taxonomy(json.dumps(raw))
        assert taxonomy.id == "ext-mini"
        assert taxonomy.categories[0].slug == "thing"

    def test_syntax_error_carries_position(self):
        with pytest.raises(DocumentSyntaxError) as exc:
            parse_taxonomy('{"id": "x",\n  "oops"')
        assert exc.value.line == 2
        assert exc.value.column > 0

    def test_missing_required_field(self):
        raw = json.loads(doc())
        del raw["title"]
        with pytest.raises(SchemaError, match="title"):
            parse_taxonomy(json.dumps(raw))

    def test_duplicate_sibling_value_slug_names_path(self):
        raw = json.loads(doc())
        values = raw["categories"][0]["facets"][0]["values"]
        values.append({"slug": "red", "title": "Red again", "children": []})
        with pytest.raises(SchemaError) as exc:
            parse_taxonomy(json.dumps(raw))
        assert "thing/color/red" in str(exc.value)

    def test_unknown_field_strict_vs_lenient(self):
        raw = json.loads(doc())
        raw["surprise"] = 1
        with pytest.raises(SchemaError, match="surprise"):
            parse_taxonomy(json.dumps(raw))
        warnings: list[str] = []
        parse_taxonomy(json.dumps(raw), lenient=True, on_warning=warnings.append)
        assert warnings and "surprise" in warnings[0]

    def test_unknown_kind_rejected(self):
        raw = json.loads(doc())
        raw["categories"][0]["facets"][0]["kind"] = "rainbow"
        with pytest.raises(SchemaError, match="rainbow"):
            parse_taxonomy(json.dumps(raw))

    def test_roundtrip_of_builtin_background(self, tset):
        background = tset.background
        assert parse_taxonomy(serialize_taxonomy(background)) == background


class TestValidateTaxonomy:
    def test_toy_taxonomy_is_clean(self):
        assert validate_taxonomy(toy_taxonomy()).clean

    def test_builtin_definitions_are_clean(self, tset):
        for definition in tset.taxonomies:
            report = validate_taxonomy(definition)
            assert report.clean, report.defects

    def test_ordinal_with_one_value(self):
        taxonomy = TaxonomyDefinition(
            id="ext-t",
            version="0",
            title="T",
            categories=(
                CategoryNode(
                    "c",
                    "C",
                    facets=(Facet("f", "F", kind="ordinal", cardinality="one", values=(leaf("only"),)),),
                ),
            ),
        )
        report = validate_taxonomy(taxonomy)
        assert report.has_rule("ordinal-too-small")

    def test_ordinal_must_be_flat(self):
        nested = ValueNode("a", "A", children=(leaf("b"),))
        taxonomy = TaxonomyDefinition(
            id="ext-t",
            version="0",
            title="T",
            categories=(
                CategoryNode(
                    "c",
                    "C",
                    facets=(Facet("f", "F", kind="ordinal", cardinality="one", values=(nested, leaf("z"))),),
                ),
            ),
        )
        assert validate_taxonomy(taxonomy).has_rule("ordinal-not-flat")

    def test_value_depth_limit(self):
        node = leaf("b5")
        for name in ("b4", "b3", "b2", "b1"):
            node = ValueNode(name, name, children=(node,))
        taxonomy = TaxonomyDefinition(
            id="ext-t",
            version="0",
            title="T",
            categories=(CategoryNode("c", "C", facets=(Facet("f", "F", values=(node, leaf("z"))),)),),
        )
        report = validate_taxonomy(taxonomy)
        assert report.has_rule("depth-exceeded")
        locations = [d.path for d in report.defects if d.rule_id == "depth-exceeded"]
        assert locations == ["c/f/b1/b2/b3/b4/b5"]

    def test_free_text_with_values(self):
        taxonomy = TaxonomyDefinition(
            id="ext-t",
            version="0",
            title="T",
            categories=(
                CategoryNode("c", "C", facets=(Facet("f", "F", kind="free-text", values=(leaf("x"),)),)),
            ),
        )
        assert validate_taxonomy(taxonomy).has_rule("free-text-has-values")

    def test_duplicate_sibling_slug_defect(self):
        taxonomy = TaxonomyDefinition(
            id="ext-t",
            version="0",
            title="T",
            categories=(
                CategoryNode("c", "C", facets=(Facet("f", "F", values=(leaf("x"), leaf("x"))),)),
            ),
        )
        assert validate_taxonomy(taxonomy).has_rule("duplicate-sibling-slug")

    def test_bad_slug_characters(self):
        taxonomy = TaxonomyDefinition(
            id="Ext T",
            version="0",
            title="T",
            categories=(CategoryNode("c", "C", facets=(Facet("f", "F", values=(leaf("ok"), leaf("Nope!"))),)),),
        )
        report = validate_taxonomy(taxonomy)
        assert report.has_rule("id-format")
        assert report.has_rule("slug-format")


class TestResolvePath:
    def test_value_resolution(self, tset):
        node = resolve_path(tset, "background", "attack/delivery/payload")
        assert node.kind == "value"
        assert node.node.title == "Payload"
        assert node.facet_path == "attack/delivery"

    def test_nested_value_resolution(self, tset):
        node = resolve_path(tset, "end-user-identities", "attack/pattern/identity-theft/account-takeover")
        assert node.kind == "value"
        assert node.value_path == "identity-theft/account-takeover"

    def test_case_insensitive_input_canonical_output(self, tset):
        node = resolve_path(tset, "Background", "Attack/Delivery/PAYLOAD")
        assert node.path == "attack/delivery/payload"

    def test_category_and_facet_resolution(self, tset):
        assert resolve_path(tset, "background", "attacker").kind == "category"
        assert resolve_path(tset, "background", "attacker/capabilities").kind == "facet"

    def test_not_found_kinds(self, tset):
        with pytest.raises(PathNotFoundError) as exc:
            resolve_path(tset, "nope", "attacker")
        assert exc.value.kind == "taxonomy"
        with pytest.raises(PathNotFoundError) as exc:
            resolve_path(tset, "background", "attack/delivery/carrier-pigeon")
        assert exc.value.kind == "value"
        with pytest.raises(PathNotFoundError) as exc:
            resolve_path(tset, "background", "identity/charisma")
        assert exc.value.kind == "facet"
        with pytest.raises(PathNotFoundError) as exc:
            resolve_path(tset, "background", "middleware")
        assert exc.value.kind == "category"


class TestTaxonomySet:
    def test_path_to_node_is_a_bijection(self, tset):
        for definition in tset.taxonomies:
            paths: list[str] = []
            node_count = 0
            for category in definition.categories:
                paths.append(category.slug)
                node_count += 1
                for facet in category.facets:
                    facet_path = f"{category.slug}/{facet.slug}"
                    paths.append(facet_path)
                    node_count += 1 + len(facet.value_index)
                    paths.extend(f"{facet_path}/{rel}" for rel in facet.value_paths())
            assert len(paths) == len(set(paths)) == node_count
            for path in paths:
                assert resolve_path(tset, definition.id, path).path == path

    def test_extension_requires_namespace(self):
        tsmall = toy_set()
        with pytest.raises(ExtensionError):
            tsmall.extended(toy_taxonomy("iot"))

    def test_extension_cannot_shadow(self):
        tsmall = toy_set()
        with pytest.raises(ExtensionError):
            tsmall.extended(toy_taxonomy("ext-detail"))

    def test_extension_becomes_detail_taxonomy(self):
        tsmall = toy_set()
        extended = tsmall.extended(toy_taxonomy("ext-iot"))
        assert "ext-iot" in extended.detail_ids
        assert extended.get("ext-iot") is not None
        # the original set is untouched
        assert "ext-iot" not in tsmall.detail_ids

    def test_load_builtin_deterministic(self, tset):
        from taxidma import load_builtin

        load_builtin.cache_clear()
        again = load_builtin()
        assert again == tset
