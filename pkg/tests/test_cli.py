import json
import subprocess
import sys

import pytest

from sos_cayley.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_energies_ising(capsys):
    code, out, _ = run(capsys, "energies", "--k", "2", "--m", "1", "--field-classes", "1")
    assert code == 0 and out["count"] == 8 and len(out["forms"]) == 8


def test_energies_catalog_order(capsys):
    code, out, _ = run(capsys, "energies", "--catalog", "p29")
    assert code == 0 and out["count"] == 29
    assert out["forms"][28]["coeff_alpha"] == ["0", "2"]


def test_regions_single_form(capsys):
    code, out, _ = run(capsys, "regions", "--catalog", "ti18", "--form", "17")
    assert code == 0
    assert out["form"] == 17 and out["energy"] == "2a"
    assert out["region"]["text"] == "J <= 0, a <= 0"


def test_compare_paper(capsys):
    code, out, _ = run(capsys, "compare-paper", "--catalog", "ti18")
    assert code == 0 and out["status"] == "pass"
    code, out, _ = run(capsys, "compare-paper", "--catalog", "p29")
    assert code == 1 and out["mismatched_rows"] == [16, 17, 28, 29]
    row16 = out["rows"][15]
    assert row16["computed_not_published"] or row16["published_not_computed"]


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "--config", "const:1", "--J", "0", "--alpha", "0")
    assert code == 0 and out["verdict"] is True
    code, out, _ = run(capsys, "check", "--config", "const:2", "--J", "-1", "--alpha", "-1")
    assert out["verdict"] is True
    code, out, _ = run(capsys, "check", "--config", "const:2", "--J", "1", "--alpha", "1")
    assert out["verdict"] is False
    assert out["violations"][0]["alt_energy"] == "-3"


def test_check_two_class(capsys):
    code, out, _ = run(capsys, "check", "--config", "evenodd:0,1", "--J", "0", "--alpha1", "1/2", "--alpha2", "0")
    assert code == 0 and out["verdict"] is True


def test_region_of(capsys):
    code, out, _ = run(capsys, "region-of", "--config", "evenodd:0,1")
    assert code == 0
    assert out["region"]["text"] == "J = 0, a1 >= 0, a2 = 0"
    assert out["field_classes"] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "3.4")
    assert code == 0 and out["theorem"] == "3.4" and out["status"] == "pass"


def test_plot(tmp_path, capsys):
    target = tmp_path / "phase.svg"
    code, out, _ = run(capsys, "plot", "--catalog", "ti18", "--window", "-1,1,-1,1", "--out", str(target), "--check", "50")
    assert code == 0 and target.read_text().startswith("<?xml")
    assert all(c["ok"] for c in out["soundness"])
    code, out, _ = run(capsys, "plot", "--catalog", "p29", "--fix", "alpha2=-1/2", "--out", str(target))
    assert code == 0


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--radius", "2", "--J", "-1", "--alpha", "-1", "--limit", "3")
    assert code == 0 and out["examined"] == 3 ** 10
    assert out["survivors"] == [[2] * 10] and out["interior_constant"] is True


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["check", "--config", "const:1", "--J", "0.5", "--alpha", "0"],
    ["check", "--config", "const:1", "--J", "0"],
    ["check", "--config", "const:1", "--J", "0", "--alpha", "0", "--alpha1", "0"],
    ["check", "--config", "bogus", "--J", "0", "--alpha", "0"],
    ["plot", "--catalog", "p29", "--out", "/dev/null"],
    ["oracle", "--radius", "3", "--J", "0", "--alpha", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out is None
    assert "error" in json.loads(err)


def test_negative_values_are_not_flags(capsys):
    code, out, _ = run(capsys, "check", "--config", "const:2", "--J", "-1/2", "--alpha", "-3")
    assert code == 0 and out["params"]["J"] == "-1/2"


def test_determinism_via_subprocess():
    cmd = [sys.executable, "-m", "sos_cayley", "regions", "--catalog", "p29"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


def test_console_script_exit_code():
    res = subprocess.run([sys.executable, "-m", "sos_cayley", "verify", "--theorem", "bogus"], capture_output=True)
    assert res.returncode == 2
    assert "error" in json.loads(res.stderr)
