import json
import subprocess
import sys

import pytest

from quandlelab.catalog import load_quandle
from quandlelab.cli import main
from quandlelab.rack import two_cocycles


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_quandle_f4(capsys):
    code, doc = run_json(capsys, "quandle", "--quandle", "F4_omega")
    assert code == 0
    r = doc["result"]
    assert (r["order"], r["type"], r["ker_eps"]) == (4, 3, 8)
    assert r["h2q"]["text"] == "Z/2" and r["h2q"]["torsion"] == [2] and r["h2q"]["rank"] == 0
    assert r["h2q_eisermann"] == r["h2q"]
    assert len(doc["inputs"]["quandle_sha256"]) == 64


def test_quandle_r3(capsys):
    code, doc = run_json(capsys, "quandle", "-q", "R3")
    r = doc["result"]
    assert (r["order"], r["type"], r["connected"], r["h2q"]["text"]) == (3, 2, True, "0")


def test_quandle_fourcycles(capsys):
    _, doc = run_json(capsys, "quandle", "-q", "S6_fourcycles")
    assert doc["result"]["h2q"]["text"] == "Z/4" and doc["result"]["ker_eps"] == 24


def test_quandle_extended_human(capsys):
    code, out, _ = run(capsys, "quandle", "-q", "F4_omega", "--extended")
    assert code == 0
    assert "extended: order: 8, connected: yes, type: 3, h2q: 0" in out


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--quandle", "F4_omega", "--n", "2", "--flavor", "quandle")
    assert code == 0 and out.strip() == "Z/2"
    code, out, _ = run(capsys, "homology", "-q", "R3", "--n", "2", "--flavor", "rack")
    assert out.strip() == "Z"
    code, out, _ = run(capsys, "homology", "-q", "R3", "--n", "1", "--coefficients", "X", "--flavor", "rack")
    assert out.strip() == "Z"


def test_color(capsys):
    code, out, _ = run(capsys, "color", "--knot", "3_1", "--quandle", "R3")
    assert code == 0 and out.strip() == "9"
    code, doc = run_json(capsys, "color", "-k", "3_1", "-q", "R3", "--list")
    assert doc["result"]["count"] == 9 and len(doc["result"]["colorings"]) == 9


def test_cover(capsys):
    code, doc = run_json(capsys, "cover", "--knot", "3_1", "--fold", "2")
    assert code == 0 and doc["result"]["h1"]["text"] == "Z/3"
    code, doc = run_json(capsys, "cover", "--knot", "3_1", "--fold", "3", "--quandle", "F4_omega", "--theta")
    th = doc["result"]["theta"]
    assert code == 0 and th["well_defined"] and th["equivariant"] and th["image_order"] == 8
    assert doc["result"]["h1"]["torsion"] == [2, 2]


def test_cover_fold_mismatch(capsys):
    code, _, err = run(capsys, "cover", "-k", "3_1", "--fold", "2", "-q", "F4_omega", "--theta")
    assert code == 2 and "fold" in err


def test_invariant_with_cocycle(capsys, tmp_path):
    Q = load_quandle("S6_fourcycles")
    f = tmp_path / "phi.json"
    f.write_text(json.dumps(two_cocycles(Q, 4).generators[0].to_json()))
    code, doc = run_json(capsys, "invariant", "-k", "3_1", "-q", "S6", "--cocycle", str(f))
    assert code == 0
    assert sum(t["count"] for t in doc["result"]["invariant"]) == 30
    assert "cocycle_sha256" in doc["inputs"]


def test_invariant_classes(capsys):
    code, doc = run_json(capsys, "invariant", "-k", "3_1", "-q", "S6")
    assert doc["result"]["h2q"]["text"] == "Z/4"
    assert sorted(c["count"] for c in doc["result"]["classes"]) == [6, 24]


def test_colpoly(capsys):
    code, doc = run_json(capsys, "colpoly", "-k", "4_1", "-q", "R3")
    assert code == 0 and doc["result"]["colorings"] == 3
    assert len(doc["result"]["terms"]) == 1


def test_verify(capsys):
    code, doc = run_json(capsys, "verify", "appendixC", "--quandle", "S6_transpositions")
    assert code == 0 and doc["result"]["ok"]
    assert doc["result"]["tthm21"]["mismatches"] == []


def test_catalog(capsys):
    code, doc = run_json(capsys, "catalog")
    names = {r["name"] for r in doc["result"]["quandles"]}
    assert code == 0 and "F4_omega" in names
    assert {r["name"] for r in doc["result"]["knots"]} >= {"3_1", "4_1"}


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "color", "-k", "nope", "-q", "R3")[0] == 2
    code, _, err = run(capsys, "homology", "-q", "Sp_5_1", "--n", "4")
    assert code == 3 and "H_4" in err
    code, _, _ = run(capsys, "quandle", "-q", "S6", "--max-cosets", "5")
    assert code == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"size": 2, "table": [[0, 0], [0, 1]]}))
    assert run(capsys, "quandle", "-q", str(bad))[0] == 2


def test_error_json(capsys):
    code, out, _ = run(capsys, "color", "-k", "nope", "-q", "R3", "--json")
    doc = json.loads(out)
    assert code == 2 and doc["error"]["stage"] == "load knot" and doc["error"]["exit_code"] == 2


def test_threads_do_not_change_output(capsys):
    a = run(capsys, "invariant", "-k", "3_1", "-q", "S6", "--json", "--threads", "1")[1]
    b = run(capsys, "invariant", "-k", "3_1", "-q", "S6", "--json", "--threads", "8")[1]
    assert a == b


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "quandlelab", "cover", "-k", "3_1", "-q", "S6", "--theta", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["result"]["theta"]["image_order"] == 24


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["homology"])
