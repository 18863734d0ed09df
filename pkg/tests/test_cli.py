import json
import subprocess
import sys

import pytest

from walab import cli


def test_list_checks(capsys):
    assert cli.main(["list-checks"]) == 0
    out = capsys.readouterr().out
    assert "lemma32_case1" in out and "mde_e8_ramond" in out


def test_list_unknown(capsys):
    assert cli.main(["list-checks", "nope"]) == 0
    assert "no checks match" in capsys.readouterr().out


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "bogus"])
    assert e.value.code == 2


def test_unknown_algebra_rejected():
    with pytest.raises(SystemExit):
        cli.main(["verify", "lemma32", "--type", "B7"])


def test_verify_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["verify", "lemma32", "--type", "D4", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "walab/1"
    assert [r["check_id"] for r in rep["results"]] == ["lemma32_case1", "lemma32_case2", "lemma32_case3"]
    assert rep["summary"] == {"pass": 3, "fail": 0, "skipped": 0}
    assert all("runtime_ms" not in r for r in rep["results"])


def test_report_is_byte_stable(tmp_path):
    a = tmp_path / "a.json"
    cli.main(["verify", "roots", "--type", "A2,G2", "--out", str(a)])
    first = a.read_text()
    cli.main(["verify", "roots", "--type", "A2,G2", "--out", str(a)])
    assert a.read_text() == first


def test_unwritable_output(tmp_path, capsys):
    code = cli.main(["verify", "intertwiner", "--out", str(tmp_path / "missing" / "r.json")])
    assert code == 2
    assert '"schema": "walab/1"' in capsys.readouterr().out


def test_characters_mde(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert cli.main(["characters", "--mde", "--qorder", "6", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["mde"]["modules"]["M2"]["residual_zero"]
    assert "M3" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "walab", "list-checks", "lemma32"], capture_output=True, text=True)
    assert r.returncode == 0 and "lemma32_case3" in r.stdout
