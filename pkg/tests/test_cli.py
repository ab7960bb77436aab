"""End-to-end checks of the command line interface via main(argv)."""

from __future__ import annotations

import json

import pytest

from grouplab.cli import main
from grouplab.construct import build
from grouplab.core import read_group, write_group


def run(capsys, *argv):
    code = main(["--jobs", "1", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_prints_exchange_format(capsys):
    code, out, _ = run(capsys, "build", "S3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 6"
    assert len(lines) == 7
    assert lines[1].split() == ["0", "1", "2", "3", "4", "5"]


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "C4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["group"] == "C4" and data["order"] == 4
    assert data["table"][1] == [1, 2, 3, 0]


def test_build_to_file_and_read_back(tmp_path, capsys):
    target = tmp_path / "d8.group"
    code, out, _ = run(capsys, "build", "D8", "-o", str(target))
    assert code == 0 and out == ""
    assert read_group(target).table == build("D8").table
    # an existing file argument is read as a table, not parsed as a spec
    code, out, _ = run(capsys, "lambda", str(target))
    assert code == 0
    assert out.strip().endswith("\t5")


def test_lambda_text_and_json(capsys):
    code, out, _ = run(capsys, "lambda", "D8", "Q8", "C2^3")
    assert code == 0
    assert out.splitlines() == ["D8\t5", "Q8\t3", "C2^3\t7"]
    code, out, _ = run(capsys, "lambda", "SD16", "--format", "json")
    data = json.loads(out)
    assert data == [{"group": "SD16", "order": 16, "invariant": 7}]


def test_lambda_with_worker_pool(capsys):
    code = main(["--jobs", "2", "lambda", "D8", "Q8", "S4"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == ["D8\t5", "Q8\t3", "S4\t13"]


def test_sigma_text(capsys):
    code, out, _ = run(capsys, "sigma", "C6", "D8", "A4")
    assert code == 0
    assert out.splitlines() == ["C6\tinfinite", "D8\t3", "A4\t5"]


def test_sigma_json_spells_out_infinity(capsys):
    code, out, _ = run(capsys, "sigma", "C12", "--format", "json")
    data = json.loads(out)
    assert data[0]["invariant"] == "infinite"


def test_sigma_budget_exhaustion(capsys):
    code, out, err = run(capsys, "sigma", "A5", "--budget=-1")
    assert code == 1
    assert out == ""
    assert "bracket 6..inf" in err


def test_covers_output(capsys):
    code, out, _ = run(capsys, "covers", "D8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "group D8 order 8"
    assert lines[1] == "parts 5"
    assert lines[-2:] == ["covers true", "irredundant true"]
    code, out, _ = run(capsys, "covers", "Q8", "--format", "json")
    data = json.loads(out)
    assert data["covers"] and data["irredundant"]
    assert len(data["parts"]) == 3


def test_iso_exit_codes(capsys):
    code, out, _ = run(capsys, "iso", "D8", "C4:C2[inv]")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "isomorphic"
    assert sorted(int(v) for v in lines[1].split()) == list(range(8))
    code, out, _ = run(capsys, "iso", "D8", "Q8")
    assert code == 1
    assert out.strip() == "not isomorphic"


def test_iso_json_map(capsys):
    code, out, _ = run(capsys, "iso", "C6", "C2xC3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["isomorphic"]
    assert sorted(data["map"]) == list(range(6))


def test_enumerate_names_catalog_matches(capsys):
    code, out, _ = run(capsys, "enumerate", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 8 classes 5"
    specs = {line.split("\t")[1] for line in lines[1:]}
    assert specs == {"C8", "C4xC2", "C2^3", "D8", "Q8"}
    assert "-" not in specs


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert len(out.splitlines()) == 73
    code, out, _ = run(capsys, "catalog", "--max-order", "12")
    assert len(out.splitlines()) == 23
    assert all(int(line.split("\t")[0]) <= 12 for line in out.splitlines())


def test_catalog_check_ok(capsys):
    code, out, _ = run(capsys, "catalog", "--check")
    assert code == 0
    assert out.strip() == "catalog ok"


def test_catalog_check_flags_count_mismatch(tmp_path, capsys):
    bad = tmp_path / "short.txt"
    bad.write_text("2;C2;pair\n# count 2 2\n")
    code, out, _ = run(capsys, "catalog", "--check", "--catalog", str(bad))
    assert code == 1
    assert "count record says 2" in out


def test_verify_all_gaps(capsys):
    code, out, _ = run(capsys, "verify", "--max-order", "16")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "checked catalog groups of order 2..16"
    assert len(lines) == 6
    assert all(" PASS " in line for line in lines[1:])
    assert lines[1].startswith("t=1 PASS")


def test_verify_single_gap_json(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "5", "--max-order", "24",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert len(data) == 1 and data[0]["theorem"] == 5 and data[0]["pass"]


def test_verify_reports_missing_group(tmp_path, capsys):
    pruned = tmp_path / "no-s3.txt"
    pruned.write_text(
        "2;C2;pair\n3;C3;triple\n4;C4;four turns\n4;C2^2;rectangle\n"
        "5;C5;five turns\n6;C6;six turns\n# count 6 1\n"
    )
    code, out, _ = run(capsys, "verify", "--theorem", "2", "--max-order", "6",
                       "--catalog", str(pruned))
    assert code == 1
    lines = out.splitlines()
    assert lines[1] == "t=2 FAIL (2 expected, 1 found)"
    assert lines[2] == "  missing S3"


def test_props_all_hold(capsys):
    code, out, _ = run(capsys, "props", "--max-order", "12")
    assert code == 0
    assert out.splitlines() == ["checked 23 groups: all properties hold"]


def test_verify_report_dir(tmp_path, capsys):
    out_dir = tmp_path / "artifacts"
    code, out, _ = run(capsys, "verify", "--max-order", "12",
                       "--report-dir", str(out_dir))
    assert code == 0
    assert (out_dir / "details.csv").is_file()
    assert (out_dir / "lambda_gaps.png").stat().st_size > 0
    assert sum(1 for line in out.splitlines() if line.startswith("wrote ")) == 2
    header = (out_dir / "details.csv").read_text().splitlines()[0]
    assert header == "spec,order,invariant,gap"


def test_props_report_dir(tmp_path, capsys):
    out_dir = tmp_path / "artifacts"
    code, out, _ = run(capsys, "props", "--max-order", "12",
                       "--report-dir", str(out_dir))
    assert code == 0
    assert (out_dir / "props.csv").is_file()
    assert (out_dir / "bounds.png").stat().st_size > 0


def test_quiet_suppresses_stdout(capsys):
    code, out, err = run(capsys, "--quiet", "lambda", "D8")
    assert code == 0 and out == "" and err == ""


def test_bad_spec_exits_two(capsys):
    code, out, err = run(capsys, "build", "Foo")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_missing_file_is_a_bad_spec(capsys):
    code, _, err = run(capsys, "lambda", "/nonexistent/thing.group")
    assert code == 2 and "error:" in err
