import json
import subprocess
import sys

import pytest

from perv_pn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_census_n1_passes_with_five_classes(capsys):
    code, out = run(capsys, "census", "--n", "1", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == "perv_pn.report/1" and rep["seed"] == 0 and rep["status"] == "pass"
    rows = rep["suites"][0]["rows"]
    count = next(r for r in rows if r["case"] == "number of classes")
    assert count["computed"] == 5 and count["statement"] == "otherperspectives"


def test_verify_all_n1(capsys):
    code, out = run(capsys, "verify-all", "--n", "1", "--format", "json", "--seed", "11")
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 11
    assert [s["suite"] for s in rep["suites"]] == ["homtables", "extalgebra", "strings", "cy",
                                                   "serre", "census"]
    serre = next(s for s in rep["suites"] if s["suite"] == "serre")
    certs = [r for r in serre["rows"] if r["statement"] == "serrefunctortwist"]
    assert len(certs) == 5 and all(r["computed"] == "certified" for r in certs)
    assert all(r["statement"] for s in rep["suites"] for r in s["rows"])


def test_homtables_n2_tsv_shape(capsys):
    code, out = run(capsys, "verify-homtables", "--n", "2", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    i = lines.index("# maps_between_simples")
    header = lines[i + 1].split("\t")
    assert header[0] == "r" and len(header) == 1 + 9
    assert [l.split("\t")[0] for l in lines[i + 2:i + 2 + 7]] == [str(r) for r in range(-1, 6)]
    assert "!" not in out


def test_prime_field_is_advisory(capsys):
    code, out = run(capsys, "verify-extalgebra", "--n", "1", "--field", "2", "--format", "json")
    rep = json.loads(out)
    assert rep["advisory"] is True and rep["field"] == "GF(2)"
    assert code == 0
    code, out = run(capsys, "verify-cy", "--n", "1", "--field", "rationals", "--format", "json")
    assert json.loads(out)["advisory"] is False


def test_reports_are_deterministic(capsys, monkeypatch):
    _, a = run(capsys, "verify-serre", "--n", "2", "--format", "json", "--seed", "5")
    monkeypatch.setenv("PERV_PN_WORKERS", "4")
    _, b = run(capsys, "verify-serre", "--n", "2", "--format", "json", "--seed", "5")

    def strip(doc):
        doc = json.loads(doc)
        for s in doc["suites"]:
            s.pop("seconds")
        return doc
    assert strip(a) == strip(b)


def test_out_file_and_text_format(tmp_path, capsys):
    out = tmp_path / "r.txt"
    code, msg = run(capsys, "verify-strings", "--n", "2", "--out", str(out))
    assert code == 0 and "pass" in msg
    text = out.read_text()
    assert "stringsplike" in text and "status: pass" in text


@pytest.mark.parametrize("argv", [
    ["verify-cy", "--n", "0"],
    ["verify-cy", "--field", "4"],
    ["verify-cy", "--field", "reals"],
    ["verify-cy", "--format", "xml"],
    ["no-such-verb"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_violation_exits_1(capsys, monkeypatch):
    from perv_pn import suites
    from perv_pn.suites import Row, SuiteReport

    def broken(A, seed=0):
        return SuiteReport("cy", 1, [Row("CY_objects", "forced", True, False, "fail")])
    monkeypatch.setitem(suites.RUNNERS, "cy", broken)
    code, out = run(capsys, "verify-cy", "--n", "1")
    assert code == 1 and "FAIL" in out


def test_inconclusive_needs_flag(capsys, monkeypatch):
    from perv_pn import suites
    from perv_pn.suites import Row, SuiteReport

    def shaky(A, seed=0):
        return SuiteReport("serre", 1, [Row("serrefunctortwist", "x", "certified", "inconclusive",
                                            "inconclusive", seed)])
    monkeypatch.setitem(suites.RUNNERS, "serre", shaky)
    assert run(capsys, "verify-serre", "--n", "1")[0] == 1
    assert run(capsys, "verify-serre", "--n", "1", "--allow-inconclusive")[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "perv_pn", "verify-cy", "--n", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "status: pass" in res.stdout
