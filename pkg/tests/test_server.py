"""HTTP API contract: statuses, stable bytes, and atomic persistence."""

from __future__ import annotations

import hashlib
import json

import pytest
from fastapi.testclient import TestClient

from taxidma import load_builtin
from taxidma.server import create_app

JSON = {"content-type": "application/json"}


@pytest.fixture()
def client(corpus_dir):
    app = create_app(load_builtin(), corpus_dir)
    with TestClient(app) as test_client:
        yield test_client


def get_record(client, record_id: str) -> bytes:
    response = client.get(f"/api/v1/records/{record_id}")
    assert response.status_code == 200
    return response.content


class TestTaxonomies:
    def test_index_lists_four(self, client):
        response = client.get("/api/v1/taxonomies")
        assert response.status_code == 200
        ids = [entry["id"] for entry in response.json()]
        assert ids == ["background", "system-identities", "idms", "end-user-identities"]

    def test_single_definition_is_canonical(self, client, tset):
        from taxidma import serialize_taxonomy

        response = client.get("/api/v1/taxonomies/idms")
        assert response.status_code == 200
        assert response.content.decode("utf-8") == serialize_taxonomy(tset.by_id["idms"])
        payload = response.json()
        category = next(c for c in payload["categories"] if c["slug"] == "attack")
        facet = next(f for f in category["facets"] if f["slug"] == "category")
        assert any(v["slug"] == "information" for v in facet["values"])

    def test_unknown_id_is_404(self, client):
        response = client.get("/api/v1/taxonomies/nope")
        assert response.status_code == 404
        assert response.json()["code"] == "unknown-taxonomy"

    def test_responses_are_byte_identical(self, client):
        first = client.get("/api/v1/taxonomies/background").content
        second = client.get("/api/v1/taxonomies/background").content
        assert first == second


class TestValidateEndpoint:
    def test_corpus_record_validates_clean(self, client):
        body = get_record(client, "zoom-zsb-22004")
        response = client.post("/api/v1/validate", content=body, headers=JSON)
        assert response.status_code == 200
        payload = response.json()
        assert payload["ok"] is True
        assert payload["error_count"] == 0

    def test_defects_still_return_200(self, client):
        doc = json.loads(get_record(client, "zoom-zsb-22004"))
        for selection in doc["background"]["selections"]:
            if selection["facet"] == "identity/permissions":
                selection["values"] = ["restricted", "extended"]
        response = client.post("/api/v1/validate", json=doc)
        assert response.status_code == 200
        rules = {d["rule_id"] for d in response.json()["defects"]}
        assert "cardinality-exceeded" in rules

    def test_malformed_body_is_422(self, client):
        response = client.post("/api/v1/validate", content=b"{nope", headers=JSON)
        assert response.status_code == 422
        assert response.json()["code"] == "syntax-error"

    def test_wrong_content_type_is_400(self, client):
        response = client.post("/api/v1/validate", content=b"x", headers={"content-type": "text/plain"})
        assert response.status_code == 400
        assert response.json()["code"] == "wrong-content-type"

    def test_oversize_body_is_422(self, client):
        blob = b'{"record_id": "' + b"x" * (1024 * 1024) + b'"}'
        response = client.post("/api/v1/validate", content=blob, headers=JSON)
        assert response.status_code == 422
        assert response.json()["code"] == "body-too-large"


class TestRecordStore:
    def test_listing_has_eight_ids(self, client):
        response = client.get("/api/v1/records")
        assert response.status_code == 200
        assert len(response.json()) == 8

    def test_unknown_record_is_404(self, client):
        assert client.get("/api/v1/records/nope").status_code == 404

    def test_put_unchanged_record_keeps_bytes(self, client, corpus_dir):
        body = get_record(client, "zoom-zsb-22004")
        before = hashlib.sha256(body).hexdigest()
        response = client.put(
            "/api/v1/records/zoom-zsb-22004", content=body, headers=JSON, params={"force": 1}
        )
        assert response.status_code == 200
        stored = (corpus_dir / "zoom-zsb-22004.json").read_bytes()
        assert hashlib.sha256(stored).hexdigest() == before

    def test_put_requires_force_when_warnings_exist(self, client):
        body = get_record(client, "zoom-zsb-22004")
        response = client.put("/api/v1/records/zoom-zsb-22004", content=body, headers=JSON)
        assert response.status_code == 422
        assert response.json()["code"] == "warnings-present"

    def test_put_invalid_record_writes_nothing(self, client, corpus_dir):
        doc = json.loads(get_record(client, "zoom-zsb-22004"))
        doc["background"]["selections"].append({"facet": "no/such", "values": ["x"]})
        before = (corpus_dir / "zoom-zsb-22004.json").read_bytes()
        response = client.put(
            "/api/v1/records/zoom-zsb-22004",
            content=json.dumps(doc).encode(),
            headers=JSON,
            params={"force": 1},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "validation-failed"
        assert (corpus_dir / "zoom-zsb-22004.json").read_bytes() == before

    def test_create_conflict_is_409(self, client):
        body = get_record(client, "zoom-zsb-22004")
        response = client.put("/api/v1/records", content=body, headers=JSON, params={"force": 1})
        assert response.status_code == 409
        assert response.json()["code"] == "record-exists"

    def test_create_new_record(self, client, corpus_dir):
        doc = {
            "record_id": "fresh-2030",
            "title": "Fresh",
            "year": 2030,
            "sources": [],
            "background": {
                "taxonomy": "background",
                "selections": [{"facet": "identity/type", "values": ["end-user"]}],
            },
            "stages": [],
        }
        response = client.put("/api/v1/records", json=doc)
        assert response.status_code == 200
        assert response.json()["created"] is True
        assert (corpus_dir / "fresh-2030.json").exists()
        index = json.loads((corpus_dir / "index.json").read_text(encoding="utf-8"))
        assert "fresh-2030" in index["record_ids"]
        assert client.get("/api/v1/records/fresh-2030").status_code == 200

    def test_id_mismatch_is_422(self, client):
        body = get_record(client, "zoom-zsb-22004")
        response = client.put("/api/v1/records/other-id", content=body, headers=JSON)
        assert response.status_code == 422
        assert response.json()["code"] == "record-id-mismatch"


class TestAnalyticsEndpoints:
    def test_query_reproduces_the_takeover_triple(self, client):
        response = client.get(
            "/api/v1/query",
            params={"pred": "stage[end-user-identities]:attack/pattern=identity-theft/account-takeover"},
        )
        assert response.status_code == 200
        assert response.json() == ["celebgate-2014", "flytrap-2021", "spotify-2021"]

    def test_bad_predicate_is_400(self, client):
        response = client.get("/api/v1/query", params={"pred": "zzz"})
        assert response.status_code == 400
        assert response.json()["code"] == "predicate-invalid"

    def test_stats_endpoint(self, client):
        response = client.get("/api/v1/stats", params={"scope": "bg", "facet": "identity/type"})
        assert response.status_code == 200
        payload = response.json()
        assert payload["buckets"]["end-user"] == 6
        assert payload["unspecified"] == 2

    def test_stats_unknown_facet_is_400(self, client):
        response = client.get("/api/v1/stats", params={"scope": "bg", "facet": "identity/charisma"})
        assert response.status_code == 400

    def test_coverage_endpoint(self, client):
        response = client.get("/api/v1/coverage")
        assert response.status_code == 200
        entries = {e["taxonomy"]: e for e in response.json()["entries"]}
        assert entries["background"]["used_leaves"] == 30
        assert entries["background"]["total_leaves"] == 79

    def test_census_endpoint(self, client):
        response = client.get("/api/v1/census")
        assert response.status_code == 200
        assert response.json() == {
            "background": 8,
            "system-identities": 2,
            "idms": 3,
            "end-user-identities": 3,
        }

    def test_put_changes_are_visible_to_analytics(self, client):
        doc = {
            "record_id": "added-2031",
            "title": "Added",
            "year": 2031,
            "sources": [],
            "background": {
                "taxonomy": "background",
                "selections": [{"facet": "attack/type", "values": ["active/identity-theft"]}],
            },
            "stages": [],
        }
        assert client.put("/api/v1/records", json=doc).status_code == 200
        response = client.get("/api/v1/query", params={"pred": "bg:attack/type=active/identity-theft"})
        assert response.json() == ["added-2031"]


class TestWriterSafety:
    def test_concurrent_writes_keep_the_store_consistent(self, corpus_dir, tset):
        import threading

        from taxidma.records import AttackRecord, ClassificationBlock, Selection
        from taxidma.server import RecordStore

        store = RecordStore(corpus_dir)

        def write_one(n: int) -> None:
            record = AttackRecord(
                record_id=f"bulk-{n:03d}",
                title=f"Bulk {n}",
                year=2030,
                background=ClassificationBlock(
                    taxonomy="background",
                    selections=(Selection(facet="identity/type", values=("end-user",)),),
                ),
            )
            store.write(record, tset.set_version)

        threads = [threading.Thread(target=write_one, args=(n,)) for n in range(16)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        ids = store.record_ids()
        assert {f"bulk-{n:03d}" for n in range(16)} <= set(ids)
        index = json.loads((corpus_dir / "index.json").read_text(encoding="utf-8"))
        assert set(index["record_ids"]) == set(ids)
        # every file parses cleanly (no torn writes)
        for record_id in ids:
            assert store.read(record_id) is not None


class TestStaticUi:
    def test_ui_mounted_when_directory_exists(self, corpus_dir, tmp_path):
        ui = tmp_path / "dist"
        ui.mkdir()
        (ui / "index.html").write_text("<!doctype html><title>taxidma</title>", encoding="utf-8")
        app = create_app(load_builtin(), corpus_dir, ui_dir=ui)
        with TestClient(app) as client:
            response = client.get("/")
            assert response.status_code == 200
            assert "taxidma" in response.text
            # API still reachable under the mount
            assert client.get("/api/v1/taxonomies").status_code == 200
