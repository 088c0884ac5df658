import csv
import io
import json
import subprocess
import sys

import pytest

from curvekit.cli import config_from, build_parser, main, UsageError


def run(argv, capsys, environ=None):
    code = main(argv, environ or {})
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_json(capsys):
    code, out, _ = run(["generate", "--n", "6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["kind"] == "generate"
    assert len(doc["tables"]["curves"]) == 7 and len(doc["tables"]["words"]) == 6


@pytest.mark.parametrize("argv", [
    ["generate", "--n", "4"],
    ["generate", "--a", "abc"],
    ["frobnicate"],
    [],
    ["generate", "--workers", "0"],
    ["verify", "bounded", "--n", "6", "--depth", "6"],
    ["estimate", "pants", "--n", "6", "--A", "2"],
    ["coeff", "--core", "g:99", "--left", "g:0", "--right", "g:3", "--n", "6"],
])
def test_usage_errors_exit_one(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == "" and "error" in err


def test_environment_overrides_and_flags_win():
    args = build_parser().parse_args(["generate", "--n", "7"])
    cfg = config_from(args, {"CURVEKIT_N": "9", "CURVEKIT_RADIUS": "11", "CURVEKIT_AUDIT": "yes"})
    assert (cfg.n, cfg.radius, cfg.audit) == (7, 11, True)
    with pytest.raises(UsageError):
        config_from(args, {"CURVEKIT_RADIUS": "far"})


def test_coeff_command(capsys):
    code, out, _ = run(["coeff", "--n", "8", "--core", "g:4", "--left", "g:1", "--right", "g:7"], capsys)
    row = json.loads(out)["tables"]["coefficient"][0]
    assert code == 0 and row["kind"] == "annular" and row["value"] > 100


def test_csv_output(capsys, tmp_path):
    target = tmp_path / "o.csv"
    code, out, _ = run(["verify", "prop31", "--n", "8", "--format", "csv", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    text = target.read_text()
    chunk = text.split("# annular\n")[1].split("\n# ")[0]
    rows = list(csv.DictReader(io.StringIO(chunk)))
    assert rows and {"i", "j", "j_prime", "value", "slack"} <= set(rows[0])


def test_violations_exit_two(capsys):
    # a lifted overlap gap of 2 is too small for the genus two cover
    code, out, _ = run(["verify", "covers", "--n", "8", "--pairs", "5", "--d", "2"], capsys)
    doc = json.loads(out)
    assert code == 2
    assert {v["tag"] for v in doc["violations"]} == {"claim:lifted-overlap"}


@pytest.mark.parametrize("argv", [["generate", "--n", "8"], ["verify", "prop31", "--n", "8"]])
def test_audit_is_byte_identical(argv, capsys):
    _, fast, _ = run(argv, capsys)
    _, slow, _ = run(argv + ["--audit"], capsys)
    assert fast == slow


def test_output_is_deterministic(capsys):
    argv = ["verify", "behrstock", "--samples", "15", "--seed", "5"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_report_all_clean(capsys):
    code, out, _ = run(["report", "all", "--n", "8", "--radius", "12", "--samples", "30", "--pairs", "10"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["violations"] == []
    assert {"prop31", "bounded", "divergence", "behrstock", "covers"} <= set(doc["meta"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvekit", "estimate", "pants", "--n", "8", "--radius", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["meta"]["lower_bound_sum"] == 3
