import json
import shutil
import subprocess
import sys

import pytest

from cmfamilies.bundles import bundle_path
from cmfamilies.cli import EXIT_DIFF, EXIT_MISSING, EXIT_OK, EXIT_PARSE, EXIT_REFUSAL, EXIT_VALIDATION, main
from cmfamilies.report import default_golden_dir, diff_records, project


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_report_g4_text(capsys):
    code, out, _ = run(capsys, "report", "G4", "--samples", "5")
    assert code == EXIT_OK
    assert out.startswith("G4: order 24, 7 classes, 7 characters")
    assert "12k_{1,0} - 12k_{1,1}" in out
    assert "COUNTER-EXAMPLE" not in out


def test_report_g25_counterexample(capsys):
    code, out, _ = run(capsys, "report", "--group", "G25", "--samples", "0")
    assert code == EXIT_OK
    assert "COUNTER-EXAMPLE" in out
    assert "phi{3,6}, phi{9,7}, phi{9,5}" in out


def test_report_s6_is_a_refusal(capsys):
    code, out, _ = run(capsys, "report", "S6", "--samples", "0")
    assert code == EXIT_REFUSAL
    assert "REFUSED, bad families 2^2" in out


def test_unknown_group_exits_missing(capsys):
    code, out, err = run(capsys, "report", "NoSuchGroup")
    assert code == EXIT_MISSING and out == ""
    assert "NoSuchGroup" in err


def test_diff_golden_all_passes(capsys):
    code, out, _ = run(capsys, "diff-golden", "--all", "--jobs", "4")
    assert code == EXIT_OK, out
    assert out.count("PASS") == 10


def test_altered_golden_fails_with_row_pointer(tmp_path, capsys):
    gdir = tmp_path / "goldens"
    shutil.copytree(default_golden_dir(), gdir)
    path = gdir / "G8.jsonl"
    lines = path.read_text().splitlines()
    k = next(i for i, l in enumerate(lines) if '"phi{4,5}"' in l and '"character"' in l)
    rec = json.loads(lines[k])
    rec["omega"] = "0"
    lines[k] = json.dumps(rec, sort_keys=True)
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "diff-golden", "G8", "--goldens", str(gdir), "--samples", "0")
    assert code == EXIT_DIFF
    assert f"golden line {k + 1} (character phi{{4,5}})" in out


def test_missing_golden(tmp_path, capsys):
    code, _, err = run(capsys, "diff-golden", "G4", "--goldens", str(tmp_path))
    assert code == EXIT_MISSING and "golden" in err


def test_bundle_dir_without_characters(tmp_path, capsys):
    shutil.copy(bundle_path("G4", "group"), tmp_path)
    code, out, err = run(capsys, "report", "G4", "--bundles", str(tmp_path))
    assert code == EXIT_MISSING and out == ""
    assert err.startswith("G4: no characters bundle")


def test_validate_shipped_bundles(capsys):
    paths = [str(bundle_path("G10", k)) for k in ("group", "characters", "rouquier")]
    code, out, _ = run(capsys, "validate", *paths)
    assert code == EXIT_OK
    assert "orthogonality relations" in out and "P(1) = |W|" in out


def test_validate_truncated_file(tmp_path, capsys):
    text = bundle_path("G10", "characters").read_text()
    p = tmp_path / "G10.chars.json"
    p.write_text(text[:4000])
    code, _, err = run(capsys, "validate", str(p))
    assert code == EXIT_PARSE and "line" in err


def test_validate_bad_degrees(tmp_path, capsys):
    data = json.loads(bundle_path("G10", "characters").read_text())
    data["degrees"] = [12, 12]
    p = tmp_path / "G10.chars.json"
    p.write_text(json.dumps(data))
    code, _, err = run(capsys, "validate", str(p), "--bundles", str(bundle_path("G10", "group").parent))
    assert code == EXIT_VALIDATION and "P(1)" in err


def test_machine_format_is_sorted_jsonl(capsys):
    code, out, _ = run(capsys, "report", "G6", "--format", "machine", "--samples", "3")
    assert code == EXIT_OK
    records = [json.loads(l) for l in out.splitlines()]
    assert records[0]["type"] == "header" and records[-1]["type"] == "sampling"
    for line, rec in zip(out.splitlines(), records):
        assert list(rec) == sorted(rec)
        assert json.loads(json.dumps(rec)) == rec
    assert diff_records(records, out.splitlines()) is None


def test_output_independent_of_jobs(capsys):
    _, one, _ = run(capsys, "report", "G4", "G5", "G8", "--format", "machine", "--jobs", "1", "--samples", "4")
    _, many, _ = run(capsys, "report", "G4", "G5", "G8", "--format", "machine", "--jobs", "3", "--samples", "4")
    assert one == many


def test_seed_changes_nothing_but_the_record(capsys):
    _, a, _ = run(capsys, "report", "G4", "--format", "machine", "--seed", "1", "--samples", "10")
    _, b, _ = run(capsys, "report", "G4", "--format", "machine", "--seed", "2", "--samples", "10")
    strip = lambda s: [l for l in s.splitlines() if '"sampling"' not in l]
    assert strip(a) == strip(b) and a != b


def test_project_and_diff_records():
    golden = ['{"type": "header"}', '{"type": "x", "a": 1}', '{"type": "x", "a": [{"b": 2}]}']
    actual = [{"type": "x", "a": 1, "z": 0}, {"type": "x", "a": [{"b": 2, "c": 3}]}, {"type": "y"}]
    assert diff_records(actual, golden) is None
    assert project({"a": [1, 2]}, {"a": [1]}) == {"a": [1, 2]}
    div = diff_records(actual[:1], golden)
    assert div.line == 3 and div.actual is None
    div = diff_records(actual + [{"type": "x", "a": 5}], golden)
    assert div.expected is None and div.actual["a"] == 5


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "cmfamilies.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("cmfamilies ")


def test_no_group_given():
    with pytest.raises(SystemExit):
        main(["report"])
