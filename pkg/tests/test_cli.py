import json
import subprocess
import sys

import pytest

import golden
from conftest import DATA
from epp5 import codec
from epp5.cli import read_solutions, run_cli

DESIG = str(DATA / "designation.txt")


def synth(tmp_path, name="a1alpha1.json"):
    out = tmp_path / name.split(".")[0]
    assert run_cli(["synth", "--designation", DESIG, "--choices", str(DATA / "choices" / name),
                    "-o", str(out)]) == 0
    return out


def test_tables(capsys):
    assert run_cli(["tables", "--designation", DESIG]) == 0
    assert capsys.readouterr().out == golden.TABLE1_TSV


def test_synth_writes_golden_record(tmp_path, capsys):
    out = synth(tmp_path)
    assert capsys.readouterr().out == golden.MW_A1ALPHA1
    rec = codec.read_record(out / "record.json")
    assert codec.format_mat10(rec.m_w) == golden.MW_A1ALPHA1
    assert (out / "m_w.txt").read_text() == golden.MW_A1ALPHA1
    assert json.loads((out / "summary.json").read_text())["verified"] is True
    assert "physical (forward) order" in (out / "diagram.txt").read_text()


def test_every_output_is_consumable(tmp_path, capsys):
    out = synth(tmp_path, "c1beta1.json")
    assert run_cli(["verify", "--mw", str(out / "record.json")]) == 0
    assert run_cli(["verify", "--mw", str(out / "m_w.txt"), "--designation", DESIG]) == 0
    assert run_cli(["verify", "--sequence", str(out / "sequence.json"), "--designation", DESIG]) == 0
    assert run_cli(["verify", "--sequence", str(out / "record.json")]) == 0
    assert run_cli(["render", "--sequence", str(out / "sequence.json")]) == 0
    assert run_cli(["optimize", "--mw", str(out / "record.json"), "--permute-only",
                    "-o", str(tmp_path / "opt.json")]) == 0
    assert run_cli(["verify", "--mw", str(tmp_path / "opt.json")]) == 0
    assert run_cli(["render", "--sequence", str(tmp_path / "opt.json")]) == 0
    capsys.readouterr()


def test_verify_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    rows = golden.MW_A1ALPHA1.splitlines()
    rows[1] = "1110000010"
    bad.write_text("\n".join(rows) + "\n")
    assert run_cli(["verify", "--mw", str(bad), "--designation", DESIG, "-o", str(tmp_path / "rep")]) == 1
    summary = json.loads((tmp_path / "rep" / "summary.json").read_text())
    assert summary["pass"] is False and summary["reasons"]
    assert len((tmp_path / "rep" / "report.tsv").read_text().splitlines()) == 17
    capsys.readouterr()


def test_verify_against_other_designation(tmp_path, capsys):
    out = synth(tmp_path)
    assert run_cli(["verify", "--mw", str(out / "m_w.txt"),
                    "--designation", str(DATA / "designation_rowsum.txt")]) == 1
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    [],
    ["synth", "--designation", DESIG, "-o", "x"],
    ["synth", "--designation", DESIG, "--enumerate-all", "--choices", "c.json", "-o", "x"],
    ["synth", "--designation", DESIG, "--enumerate-all", "--column-order", "1,1,2,3,4", "-o", "x"],
    ["verify"],
    ["optimize", "--mw", "m.txt", "--objective", "fastest"],
    ["bogus"],
])
def test_usage_errors(argv, capsys):
    assert run_cli(argv) == 2
    capsys.readouterr()


def test_input_errors_exit_two(tmp_path, capsys):
    nine = tmp_path / "nine.txt"
    nine.write_text("".join(golden.MW_A1ALPHA1.splitlines(keepends=True)[:9]))
    assert run_cli(["verify", "--mw", str(nine), "--designation", DESIG]) == 2
    assert "line 10" in capsys.readouterr().err
    assert run_cli(["tables", "--designation", str(tmp_path / "missing.txt")]) == 2
    collide = tmp_path / "collide.txt"
    collide.write_text("0000000000\n" * 4)
    assert run_cli(["tables", "--designation", str(collide)]) == 2
    out = synth(tmp_path)
    assert run_cli(["optimize", "--mw", str(out / "m_w.txt"), "--permute-only"]) == 2
    capsys.readouterr()


def test_optimize_search_reports_optimality(tmp_path, capsys):
    out = synth(tmp_path)
    capsys.readouterr()
    assert run_cli(["optimize", "--mw", str(out / "m_w.txt"), "--objective", "total",
                    "--max-depth", "10"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["optimality"]["certified"] is True and d["optimality"]["depth"] == 10
    assert d["total_ops"] == 10
    assert run_cli(["optimize", "--mw", str(out / "m_w.txt"), "--max-depth", "4"]) == 1
    d = json.loads(capsys.readouterr().out)
    assert d["optimality"]["found"] is False


def test_enumerate_all_with_limit(tmp_path, capsys):
    out = tmp_path / "enum"
    assert run_cli(["synth", "--designation", DESIG, "--enumerate-all", "--column-order", "5,1,2,3,4",
                    "--limit", "50", "-o", str(out)]) == 0
    rows = read_solutions(out / "solutions.tsv")
    summary = json.loads((out / "summary.json").read_text())
    assert len(rows) == 50 and summary["solutions"] == 63744 and summary["written"] == 50
    assert rows[0]["index"] == "1" and rows[0]["options"].count(".") == 4
    assert int(rows[0]["bxor"]) == rows[0]["sequence"].count("BXOR")
    capsys.readouterr()


def test_enumerate_jobs_deterministic(tmp_path, capsys, monkeypatch):
    texts = []
    for jobs in ("1", "2"):
        out = tmp_path / f"j{jobs}"
        assert run_cli(["synth", "--designation", DESIG, "--enumerate-all", "--column-order", "5,1,2,3,4",
                        "--jobs", jobs, "-o", str(out)]) == 0
        texts.append((out / "solutions.tsv").read_bytes())
    assert texts[0] == texts[1]
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "epp5", "tables", "--designation", DESIG],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == golden.TABLE1_TSV
