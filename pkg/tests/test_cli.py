import json
import shutil
import subprocess
import sys

import pytest

from nilpo.cli import main
from nilpo.report import Report, build_report
from conftest import CORPUS, load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report_json(capsys, name, *flags):
    code, out, _ = run(capsys, "report", str(CORPUS / f"{name}.grp"), "--json", *flags)
    return code, json.loads(out)


def test_report_heisenberg(capsys):
    code, rep = report_json(capsys, "heisenberg", "--degree", "4")
    assert code == 0
    assert rep["delta"] == "1" and rep["v11_in_one"] is True
    assert rep["gr_dims"] == [2, 1, 0, 0]
    assert all(c["status"] != "fail" for c in rep["checks"])


def test_report_klein(capsys):
    code, rep = report_json(capsys, "klein")
    assert code == 0
    assert rep["delta"] == "t + 1" and rep["v11_in_one"] is False


def test_report_free2_full_torus(capsys):
    code, rep = report_json(capsys, "free2")
    assert code == 0
    assert rep["delta"] == "0" and rep["charvar_full_torus"] is True


def test_report_text(capsys):
    code, out, _ = run(capsys, "report", str(CORPUS / "trefoil.grp"))
    assert code == 0
    assert "delta: t^2 - t + 1" in out


def test_json_round_trip():
    rep = build_report(load("borromean"), degree=4)
    assert Report.from_json(rep.to_json()) == rep


def test_output_is_deterministic(capsys):
    first = run(capsys, "report", str(CORPUS / "z_x_zmod6.grp"), "--json")
    second = run(capsys, "report", str(CORPUS / "z_x_zmod6.grp"), "--json")
    assert first == second


def test_verify_bundled_corpus(capsys):
    code, out, _ = run(capsys, "verify", str(CORPUS))
    assert code == 0
    assert out.strip().splitlines()[-1] == "120 rows, 0 failed"


def test_verify_negative_fixture(tmp_path, capsys):
    text = (CORPUS / "klein.grp").read_text().replace("tags torsion-free", "tags nilpotent torsion-free")
    (tmp_path / "klein.grp").write_text(text)
    code, out, _ = run(capsys, "verify", str(tmp_path), "--json")
    assert code == 2
    rows = json.loads(out)["rows"]
    failed = {r["check"] for r in rows if r["status"] == "fail"}
    assert "nilpotence-screen" in failed


def test_verify_empty_corpus(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", str(tmp_path), "--json")
    assert code == 0 and json.loads(out) == {"rows": [], "ok": True}


def test_verify_orders_by_file_name(tmp_path, capsys):
    for name in ("z2", "klein", "z"):
        shutil.copy(CORPUS / f"{name}.grp", tmp_path)
    code, out, _ = run(capsys, "verify", str(tmp_path), "--json")
    groups = [r["group"] for r in json.loads(out)["rows"]]
    assert groups == sorted(groups, key=["klein", "z", "z2"].index)


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["report", str(CORPUS / "z.grp"), "--bogus"])
    assert exc.value.code == 1


def test_parse_error_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.grp"
    bad.write_text("gens x\nrel x y\n")
    code, _, err = run(capsys, "report", str(bad))
    assert code == 1
    assert "line 2, column 7" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "alexander", "/nonexistent/nope.grp")
    assert code == 1 and err


def test_bad_level(capsys):
    code, _, _ = run(capsys, "charvar", str(CORPUS / "z.grp"), "--level", "0")
    assert code == 1


def test_subcommands(capsys):
    code, out, _ = run(capsys, "alexander", str(CORPUS / "borromean.grp"), "--json")
    assert code == 0 and json.loads(out)["b1"] == 3
    code, out, _ = run(capsys, "charvar", str(CORPUS / "klein.grp"), "--level", "2", "--json")
    assert [c["free"] for c in json.loads(out)["characters"]] == [[0], [1]]
    code, out, _ = run(capsys, "nilpotence", str(CORPUS / "heisenberg.grp"))
    assert "V11 in {1}: true" in out
    code, out, _ = run(capsys, "lie-dims", str(CORPUS / "z2.grp"), "--degree", "3", "--json")
    assert json.loads(out)["gr_dims"] == [2, 0, 0]
    code, out, _ = run(capsys, "resonance", str(CORPUS / "z3.grp"), "--json")
    assert json.loads(out)["rank_mu"] == 3


def test_field_flag(capsys):
    code, rep = report_json(capsys, "z_x_zmod2", "--field", "F2")
    assert code == 0 and rep["field"] == "F2"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nilpo.cli", "alexander", str(CORPUS / "trefoil.grp")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "delta: t^2 - t + 1"
