"""Command-line behavior: exit codes, formats, and module equivalence."""

from __future__ import annotations

import io
import json

import pytest

from taxidma import facet_frequency, render_histogram
from taxidma.cli import EXIT_INVALID, EXIT_OK, EXIT_OPERATIONAL, main
from taxidma.corpus import builtin_corpus_dir
from taxidma.query import SCOPE_BACKGROUND


def run_cli(capsys, *argv: str):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_corpus_directory_is_valid(self, capsys):
        code, out, _ = run_cli(capsys, "validate", str(builtin_corpus_dir()))
        assert code == EXIT_OK
        assert "error" not in out

    def test_warnings_fail_with_deny_warnings(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--deny-warnings", str(builtin_corpus_dir()))
        assert code == EXIT_INVALID
        assert "unspecified-branch" in out

    def test_unknown_facet_fails(self, capsys, tmp_path):
        bad = {
            "record_id": "bad-1",
            "title": "Bad",
            "year": 2022,
            "sources": [],
            "background": {
                "taxonomy": "background",
                "selections": [{"facet": "identity/charisma", "values": ["high"]}],
            },
            "stages": [],
        }
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(bad), encoding="utf-8")
        code, out, _ = run_cli(capsys, "validate", str(path))
        assert code == EXIT_INVALID
        assert "unknown-facet" in out

    def test_defect_line_format(self, capsys, tmp_path):
        bad = {
            "record_id": "bad-2",
            "title": "Bad",
            "year": 2022,
            "sources": [],
            "background": {
                "taxonomy": "background",
                "selections": [{"facet": "attack/delivery", "values": ["others"]}],
            },
            "stages": [],
        }
        path = tmp_path / "warny.json"
        path.write_text(json.dumps(bad), encoding="utf-8")
        code, out, _ = run_cli(capsys, "validate", str(path))
        assert code == EXIT_OK
        line = out.strip().splitlines()[0]
        severity, rule_id, location, *_ = line.split(" ")
        assert severity == "warning"
        assert rule_id == "others-without-note"
        assert location.startswith("bad-2:background:")

    def test_missing_file_is_operational(self, capsys):
        code, _, err = run_cli(capsys, "validate", "missing.json")
        assert code == EXIT_OPERATIONAL
        assert "io" in err

    def test_syntax_error_is_operational(self, capsys, tmp_path):
        path = tmp_path / "mangled.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == EXIT_OPERATIONAL
        assert "syntax-error" in err

    def test_taxonomy_files_validate_too(self, capsys, tset):
        from taxidma.builtin import data_dir

        code, out, _ = run_cli(capsys, "validate", str(data_dir() / "taxonomies"))
        assert code == EXIT_OK
        assert out == ""

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--format", "json", str(builtin_corpus_dir()))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["ok"] is True
        assert len(payload["files"]) == 8


class TestQuery:
    def test_account_takeover(self, capsys):
        code, out, _ = run_cli(
            capsys, "query", "stage[end-user-identities]:attack/pattern=identity-theft/account-takeover"
        )
        assert code == EXIT_OK
        assert out.split() == ["celebgate-2014", "flytrap-2021", "spotify-2021"]

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "query", "--format", "json", "bg:attack/type=active")
        assert code == EXIT_OK
        assert isinstance(json.loads(out), list)

    def test_json_output_is_stable_across_runs(self, capsys):
        _, first, _ = run_cli(capsys, "query", "--format", "json", "bg:attack/type=active")
        _, second, _ = run_cli(capsys, "query", "--format", "json", "bg:attack/type=active")
        assert first == second
        _, census_one, _ = run_cli(capsys, "coverage", "--format", "json")
        _, census_two, _ = run_cli(capsys, "coverage", "--format", "json")
        assert census_one == census_two

    def test_bad_predicate_is_operational(self, capsys):
        code, _, err = run_cli(capsys, "query", "gibberish")
        assert code == EXIT_OPERATIONAL
        assert "predicate-invalid" in err


class TestStats:
    def test_matches_library_rendering(self, capsys, corpus, tset):
        code, out, _ = run_cli(capsys, "stats", "--scope", "bg", "identity/type")
        assert code == EXIT_OK
        histogram = facet_frequency(corpus.records, tset, SCOPE_BACKGROUND, "identity/type")
        assert out == render_histogram(histogram, "plain").body

    def test_stage_scope(self, capsys):
        code, out, _ = run_cli(capsys, "stats", "--scope", "stage[end-user-identities]", "identity/timeliness")
        assert code == EXIT_OK
        assert "- until-recovery: 2" in out
        assert "- temporary: 1" in out

    def test_unknown_facet_is_operational(self, capsys):
        code, _, err = run_cli(capsys, "stats", "--scope", "bg", "identity/charisma")
        assert code == EXIT_OPERATIONAL


class TestCoverageCommand:
    def test_plain_output(self, capsys):
        code, out, _ = run_cli(capsys, "coverage")
        assert code == EXIT_OK
        assert "background: 30/79 leaves" in out

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "coverage", "--format", "json")
        payload = json.loads(out)
        entries = {e["taxonomy"]: e for e in payload["entries"]}
        assert entries["background"]["total_leaves"] == 79


class TestReport:
    def test_corpus_table(self, capsys):
        code, out, _ = run_cli(capsys, "report", "corpus")
        assert code == EXIT_OK
        assert "| Amount | 8 | 2 | 3 | 3 |" in out

    def test_record_report(self, capsys):
        code, out, _ = run_cli(capsys, "report", "zoom-zsb-22004", "--format", "md")
        assert code == EXIT_OK
        assert out.startswith("# Zoom ZSB-22004")

    def test_unknown_record(self, capsys):
        code, _, err = run_cli(capsys, "report", "nope-2099")
        assert code == EXIT_OPERATIONAL


class TestTaxonomyCommand:
    def test_list_has_four_lines(self, capsys):
        code, out, _ = run_cli(capsys, "taxonomy", "list")
        assert code == EXIT_OK
        assert len(out.strip().splitlines()) == 4

    def test_show_renders_reference(self, capsys):
        code, out, _ = run_cli(capsys, "taxonomy", "show", "idms")
        assert code == EXIT_OK
        assert "Identity Management Systems" in out
        assert "information" in out

    def test_show_json_is_canonical(self, capsys, tset):
        from taxidma import serialize_taxonomy

        code, out, _ = run_cli(capsys, "taxonomy", "show", "idms", "--format", "json")
        assert code == EXIT_OK
        assert out == serialize_taxonomy(tset.by_id["idms"])

    def test_unknown_taxonomy(self, capsys):
        code, _, err = run_cli(capsys, "taxonomy", "show", "nope")
        assert code == EXIT_OPERATIONAL


class TestSetVersionFlag:
    def test_unknown_version_is_operational(self, capsys):
        code, _, err = run_cli(capsys, "taxonomy", "list", "--set-version", "bogus-0.0")
        assert code == EXIT_OPERATIONAL
        assert "UnknownVersionError" in err


class TestClassify:
    def test_scripted_session_writes_record(self, capsys, monkeypatch, tmp_path):
        lines = [
            "cli-demo",
            "CLI demo",
            "2024",
            "",
            "",
            "s",
            "s",
            "s",
            "",
            "s",
            "2",
            "",
            "s",
            "s",
            "s",
            "s",
            "s",
            "s",
            "done",
        ]
        monkeypatch.setattr("sys.stdin", io.StringIO("".join(l + "\n" for l in lines)))
        output = tmp_path / "cli-demo.json"
        code, out, _ = run_cli(capsys, "classify", "--output", str(output))
        assert code == EXIT_OK
        assert output.exists()
        from taxidma import load_builtin, parse_record, validate_record

        record = parse_record(output.read_text(encoding="utf-8"))
        assert validate_record(record, load_builtin()).ok

    def test_aborted_session_writes_nothing(self, capsys, monkeypatch, tmp_path):
        monkeypatch.setattr("sys.stdin", io.StringIO("oops\n"))
        output = tmp_path / "never.json"
        code, _, err = run_cli(capsys, "classify", "--output", str(output))
        assert code == EXIT_OPERATIONAL
        assert not output.exists()
        assert "aborted" in err


class TestCorpusDirFlag:
    def test_env_var_default(self, capsys, corpus_dir, monkeypatch):
        monkeypatch.setenv("TAXIDMA_CORPUS_DIR", str(corpus_dir))
        # parser reads the env var at construction time
        code, out, _ = run_cli(capsys, "query", "bg:identity/type=end-user")
        assert code == EXIT_OK
        assert "spotify-2021" in out
