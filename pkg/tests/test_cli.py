import json
import subprocess
import sys

import pytest

from threewise.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_measure_construction(capsys):
    code, out, _ = run(capsys, "measure", "--construction", "BD(3,6)", "--p", "2/5")
    assert code == 0 and out.strip() == "112/625"


def test_measure_family_file(tmp_path, capsys):
    path = tmp_path / "fam.txt"
    path.write_text("n=3\n1,2\n1,3\n2,3\n1,2,3\n")
    code, out, _ = run(capsys, "measure", "--family", str(path), "--p", "1/2", "--json")
    assert code == 0 and json.loads(out)["measure"] == "1/2"


def test_malformed_family_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n=3\n1,2\n3,1\n")
    code, _, err = run(capsys, "measure", "--family", str(path), "--p", "1/2")
    assert code == 2 and "line 3" in err


def test_construct_round_trip(tmp_path, capsys):
    out_path = tmp_path / "ak.txt"
    code, out, _ = run(capsys, "construct", "--id", "AK(6,2,1)", "--out", str(out_path),
                       "--p", "1/3")
    assert code == 0
    code2, out2, _ = run(capsys, "measure", "--family", str(out_path), "--p", "1/3")
    assert code2 == 0 and f"measure: {out2.strip()}" in out and f"formula: {out2.strip()}" in out


def test_construct_count_only(capsys):
    code, out, _ = run(capsys, "construct", "--id", "FRS_UNIF(3,120,63,1)", "--count-only", "--json")
    assert code == 0 and int(json.loads(out)["count"]) > 0


def test_verify_cert_pass_and_perturbed_fail(capsys):
    code, out, _ = run(capsys, "verify-cert", "--case", "C4-1")
    assert code == 0 and "PASS" in out and "identically" in out
    code, out, _ = run(capsys, "verify-cert", "--case", "C4-1", "--perturb", "y1", "--fail-fast")
    assert code == 1 and "FAIL" in out


def test_verify_cert_export_and_reload(tmp_path, capsys):
    path = tmp_path / "c52.json"
    code, _, _ = run(capsys, "verify-cert", "--case", "C5-2", "--export", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify-cert", "--file", str(path), "--json")
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_printed_variant_fails(capsys):
    code, _, _ = run(capsys, "verify-cert", "--case", "C5-3-printed", "--fail-fast")
    assert code == 1


def test_unknown_case_is_usage_error(capsys):
    code, _, err = run(capsys, "verify-cert", "--case", "C9-9")
    assert code == 2 and "known cases" in err


def test_simplex_tightness(capsys):
    code, out, _ = run(capsys, "simplex", "--case", "C4-1", "--p", "2/5", "--json")
    data = json.loads(out)
    assert code == 0 and data["optimum"] == "26/25" and data["weak_duality"]


def test_walk(capsys):
    code, out, _ = run(capsys, "walk", "--type", "A", "--p", "2/5", "--t", "1", "--steps", "200",
                       "--json")
    data = json.loads(out)
    assert code == 0 and data["below_closed_form"]
    code, out, _ = run(capsys, "walk", "--type", "B", "--ps", "2/5,2/5,2/5", "--t", "1",
                       "--steps", "120", "--json")
    assert code == 0 and json.loads(out)["j"] == 3


def test_search_and_cross_sum(capsys):
    code, out, _ = run(capsys, "search-optimal", "--n", "4", "--p", "2/5", "--json")
    assert code == 0 and json.loads(out)["max"] == "112/625"
    code, out, _ = run(capsys, "cross-sum", "--n", "3", "--p", "2/5", "--json")
    assert code == 0 and json.loads(out)["max"] == "6/5"


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan-counterexample", "--n", "120", "--k", "63..90", "--csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 29 and all(x.endswith("TRUE") for x in lines[1:])


@pytest.mark.parametrize("argv,expected", [
    (["bounds-eval", "--fn", "m3", "--p", "2/5"], "112/625"),
    (["bounds-eval", "--fn", "eps", "--p", "2/5"], "4/25"),
])
def test_bounds_eval(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and expected in out


@pytest.mark.parametrize("argv", [
    ["measure", "--construction", "BD(3,2)", "--p", "1/2"],
    ["measure", "--construction", "BD(3,6)", "--p", "3/2"],
    ["walk", "--type", "B", "--t", "1"],
    ["search-optimal", "--n", "9", "--p", "1/3"],
    ["bounds-eval", "--fn", "alpha", "--p", "7/10"],
])
def test_domain_and_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argument_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["measure", "--p", "abc"])
    assert exc.value.code == 2


def test_module_entry_point_propagates_exit_code():
    ok = subprocess.run([sys.executable, "-m", "threewise", "verify-cert", "--case", "C4-2"],
                        capture_output=True, text=True)
    bad = subprocess.run([sys.executable, "-m", "threewise", "verify-cert", "--case", "C4-2",
                          "--perturb", "y2:-1/2", "--fail-fast"], capture_output=True, text=True)
    assert ok.returncode == 0
    assert bad.returncode == 1
