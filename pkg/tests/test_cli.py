import json
import subprocess
import sys

import pytest

from toricgkm.cli import main

CASES = [
    (["validate", "prism.json"], 0),
    (["validate", "cp2_bad.json"], 1),
    (["local-groups", "cp2.json"], 0),
    (["local-groups", "prism.json", "--face", "F2&F4"], 0),
    (["retract", "square.json", "--all"], 0),
    (["retract", "cube.json", "--all", "--budget", "5"], 3),
    (["divisive", "prism.json"], 0),
    (["divisive", "wp235.json"], 1),
    (["divisive", "prism.json", "--budget", "2"], 3),
    (["gkm", "prism.json", "--seq-from", "prism_certificate.json"], 0),
    (["gkm", "cube.json"], 0),
    (["check-section", "interval.json", "--section", "sections/interval_K_ok.json"], 0),
    (["check-section", "interval.json", "--section", "sections/interval_K_bad.json"], 1),
    (["check-section", "interval.json", "--theory", "H", "--section", "sections/interval_H_ok.json"], 0),
    (["check-section", "cp2.json", "--section", "sections/cp2_H_thom.json"], 0),
    (["check-section", "prism.json", "--section", "sections/prism_K_thom.json"], 0),
    (["check-section", "prism.json", "--section", "sections/prism_K_perturbed.json"], 1),
    (["check-piecewise", "cp2.json", "--element", "piecewise/cp2_H_thom.json"], 0),
    (["check-piecewise", "cp2.json", "--element", "piecewise/cp2_H_bad.json"], 1),
    (["equiv-roundtrip", "cp2.json", "--section", "sections/cp2_H_thom.json"], 0),
    (["equiv-roundtrip", "prism.json", "--section", "sections/prism_K_perturbed.json"], 1),
    (["check-section", "interval.json", "--section", "missing.json"], 2),
    (["check-section", "cp2.json", "--section", "sections/interval_K_ok.json"], 2),
    (["local-groups", "cp2_bad.json"], 2),
    (["local-groups", "cp2.json", "--face", "F9"], 2),
]


def run(args, fixtures_dir, capsys):
    argv = [a if not a.endswith(".json") else str(fixtures_dir / a) for a in args]
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("args,expected", CASES, ids=[" ".join(a) for a, _ in CASES])
def test_exit_codes(args, expected, fixtures_dir, capsys):
    code, out, err = run(args, fixtures_dir, capsys)
    assert code == expected, err
    if code == 2:
        assert out == "" and err.startswith("error:")
    elif code != 3 or args[0] == "divisive":
        assert out.endswith("\n")
        json.loads(out)


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2


def test_divisive_report(fixtures_dir, capsys):
    _, out, _ = run(["divisive", "prism.json"], fixtures_dir, capsys)
    doc = json.loads(out)
    assert doc["status"] == "DIVISIVE"
    steps = [(s["face"], s["vertex"]) for s in doc["certificate"]["steps"]]
    assert steps == [("Q", "v1"), ("F4", "v2"), ("F2∩F4", "v3"), ("F5", "v4"), ("F4∩F5", "v5"), ("v6", "v6")]
    assert all(s["local_group"]["order"] == 1 for s in doc["certificate"]["steps"])
    _, out, _ = run(["divisive", "wp235.json"], fixtures_dir, capsys)
    doc = json.loads(out)
    assert doc["status"] == "NONE" and doc["reason"] == "no admissible starting vertex"


def test_budget_from_environment(fixtures_dir, capsys, monkeypatch):
    monkeypatch.setenv("TORICGKM_BUDGET", "2")
    code, out, err = run(["divisive", "prism.json"], fixtures_dir, capsys)
    assert code == 3 and json.loads(out)["status"] == "UNDECIDED" and "budget" in err
    monkeypatch.setenv("TORICGKM_BUDGET", "lots")
    assert run(["divisive", "prism.json"], fixtures_dir, capsys)[0] == 2


def test_local_groups_report(fixtures_dir, capsys):
    _, out, _ = run(["local-groups", "cp2.json"], fixtures_dir, capsys)
    assert {r["order"] for r in json.loads(out)["local_groups"]} == {1}
    _, out, _ = run(["local-groups", "prism.json"], fixtures_dir, capsys)
    rows = json.loads(out)["local_groups"]
    assert [r["order"] for r in rows if r["face"] == "Q"] == [1, 1, 3, 1, 3, 5]


def test_gkm_report(fixtures_dir, capsys):
    _, out, _ = run(["gkm", "prism.json", "--seq-from", "prism_certificate.json"], fixtures_dir, capsys)
    doc = json.loads(out)
    assert doc["cells_match_h_vector"] and doc["coprimality"]["ok"] and doc["sequence_divisive"]
    assert [len(v["in_neighbors"]) for v in doc["vertices"]] == [3, 2, 1, 2, 1, 0]


def test_table_format(fixtures_dir, capsys):
    code, out, _ = run(["divisive", "prism.json", "--format", "table"], fixtures_dir, capsys)
    assert code == 0 and out.splitlines()[0].split() == ["step", "vertex", "face", "dim", "|G|"]


def test_malformed_document(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 2,\n "facets": [}', encoding="utf-8")
    assert main(["validate", str(p)]) == 2
    assert f"{p}:2:" in capsys.readouterr().err
    p.write_text(json.dumps({"dim": 1, "facets": ["A", "B"], "vertices": [], "lambda": {}}), encoding="utf-8")
    assert main(["validate", str(p)]) == 2


def test_output_is_byte_stable(fixtures_dir):
    cmd = [sys.executable, "-m", "toricgkm.cli", "gkm", str(fixtures_dir / "prism.json")]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.endswith(b"\n")
