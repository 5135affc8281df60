"""End-to-end tests of the command-line surface."""
from __future__ import annotations

import csv
import io
import json

import pytest
from typer.testing import CliRunner

from derangement_lab.catalog.builtin import catalog_names, get_entry
from derangement_lab.catalog.files import serialize_entry
from derangement_lab.cli.main import app

runner = CliRunner()


def _json(result) -> dict:
    payload = json.loads(result.stdout)
    assert payload["schema"] == 1
    return payload


@pytest.fixture
def corpus(tmp_path):
    for name in ["C2-regular", "C3-regular", "C4-regular", "S3-natural", "D4-natural"]:
        (tmp_path / f"{name}.grp").write_text(serialize_entry(get_entry(name)))
    return tmp_path


def test_catalog_lists_every_builtin():
    result = runner.invoke(app, ["catalog", "--format", "json"])
    assert result.exit_code == 0
    payload = _json(result)
    assert payload["command"] == "catalog"
    assert [g["name"] for g in payload["result"]] == catalog_names()


def test_analyze_json():
    result = runner.invoke(app, ["analyze", "S4-natural", "--format", "json"])
    assert result.exit_code == 0, result.output
    report = _json(result)["result"]
    assert report["omega"]["size"] == 4
    assert report["alpha"]["size"] == 6
    assert report["series_length"] == 1


def test_analyze_needs_a_source():
    assert runner.invoke(app, ["analyze"]).exit_code == 2


def test_unknown_group_is_a_load_error():
    result = runner.invoke(app, ["analyze", "not-a-group"])
    assert result.exit_code == 2


def test_max_order_from_environment():
    result = runner.invoke(app, ["analyze", "S4-natural"], env={"DERANGEMENT_LAB_MAX_ORDER": "10"})
    assert result.exit_code == 2


def test_inexact_result_needs_allow_inexact():
    args = ["analyze", "S5-natural", "--node-budget", "1", "--format", "json"]
    assert runner.invoke(app, args).exit_code == 1
    result = runner.invoke(app, [*args, "--allow-inexact"])
    assert result.exit_code == 0
    assert _json(result)["result"]["omega"]["exact"] is False


def test_lemma26_csv():
    result = runner.invoke(app, ["lemma26-test", "--seed", "3", "-n", "25", "--format", "csv"])
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert len(rows) == 25
    assert all(r["bound_holds"] == "True" and r["avoids"] == "True" for r in rows)


def test_clique_writes_dimacs(tmp_path):
    path = tmp_path / "s3.dimacs"
    result = runner.invoke(app, ["clique", "S3-natural", "--dimacs", str(path), "--format", "json"])
    assert result.exit_code == 0
    assert _json(result)["result"]["omega"]["size"] == 3
    assert "p edge 6 " in path.read_text()


def test_series_csv():
    result = runner.invoke(app, ["series", "C8-regular", "--format", "csv"])
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert [r["index"] for r in rows] == ["3", "2", "1", "0"]
    assert [r["block_size"] for r in rows] == ["1", "2", "4", "8"]


def test_kronecker_json_to_file(tmp_path):
    out = tmp_path / "c4.json"
    result = runner.invoke(app, ["kronecker", "C4-regular", "--format", "json", "--output", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())["result"]
    assert report["equivalence_relation"]
    assert {e["n"]: e["max_index"] for e in report["envelope"]} == {1: 1, 2: 2, 4: 4}


def test_verify_directory_is_independent_of_jobs(corpus):
    serial = runner.invoke(app, ["verify", "--dir", str(corpus), "--format", "json"])
    parallel = runner.invoke(app, ["verify", "--dir", str(corpus), "--format", "json", "--jobs", "2"])
    assert serial.exit_code == parallel.exit_code == 0
    assert serial.stdout == parallel.stdout
    summary = _json(serial)["result"]
    assert [g["group"] for g in summary["groups"]] == [
        "C2-regular", "C3-regular", "C4-regular", "D4-natural", "S3-natural",
    ]


def test_verify_empty_directory_fails(tmp_path):
    result = runner.invoke(app, ["verify", "--dir", str(tmp_path), "--format", "json"])
    assert result.exit_code == 1
    assert "nothing verified" in result.stdout


def test_verify_bad_file_is_reported_not_fatal(corpus):
    (corpus / "broken.grp").write_text("degree 3\ngen (1 4)\n")
    result = runner.invoke(app, ["verify", "--dir", str(corpus), "--format", "json"])
    assert result.exit_code == 0
    diagnostics = _json(result)["result"]["diagnostics"]
    assert any("broken.grp:2" in d for d in diagnostics)


def test_verify_counts_a_capped_group_as_an_error(corpus):
    (corpus / "S4-natural.grp").write_text(serialize_entry(get_entry("S4-natural")))
    result = runner.invoke(
        app, ["verify", "--dir", str(corpus), "--format", "json", "--max-graph-vertices", "20"],
    )
    assert result.exit_code == 2
    groups = {g["group"]: g for g in _json(result)["result"]["groups"]}
    assert [c["status"] for c in groups["S4-natural"]["checks"]] == ["fail"]
    assert all(c["status"] == "pass" for c in groups["C4-regular"]["checks"])


@pytest.mark.parametrize("command", ["kronecker", "clique", "series"])
def test_per_group_commands_accept_a_directory(command, corpus):
    result = runner.invoke(app, [command, "--dir", str(corpus), "--format", "json", "--jobs", "2"])
    assert result.exit_code == 0, result.output
    payload = _json(result)["result"]
    assert len(payload["reports"]) == 5
    assert payload["diagnostics"] == []


def test_series_directory_csv_concatenates_rows(corpus):
    result = runner.invoke(app, ["series", "--dir", str(corpus), "--format", "csv"])
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert {r["group"] for r in rows} == {"C2-regular", "C3-regular", "C4-regular", "D4-natural", "S3-natural"}


@pytest.mark.parametrize("command", ["kronecker", "clique", "series"])
def test_per_group_commands_need_a_source(command):
    assert runner.invoke(app, [command]).exit_code == 2


def test_dimacs_needs_a_single_group(corpus, tmp_path):
    result = runner.invoke(app, ["clique", "--dir", str(corpus), "--dimacs", str(tmp_path / "g.dimacs")])
    assert result.exit_code == 2
