import json
import subprocess
import sys

import pytest

from charsum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_permchar_table(capsys):
    code, data, _ = run(capsys, "permchar", "--q", "3", "--n", "1", "--all")
    assert code == 0
    values = [int(r["value"]) for r in data["rows"]]
    assert len(values) == 16
    # the 7 classes of SL(2, 3) land in 5 unitary classes: the +- regular unipotents fuse
    assert sorted(v for v in values if v) == [4] * 5


def test_aliases(capsys):
    _, a, _ = run(capsys, "perm", "--q", "3", "--n", "1", "--all")
    _, b, _ = run(capsys, "permchar", "--q", "3", "--n", "1", "--all")
    assert a == b
    _, a, _ = run(capsys, "full", "--q", "3", "--n", "2", "--all")
    _, b, _ = run(capsys, "fullsum", "--q", "3", "--n", "2", "--all")
    assert a == b


def test_identities(capsys):
    code, data, _ = run(capsys, "identities", "--which", "HLFG", "--nvars", "3", "--deg", "6")
    assert code == 0 and data["ok"] is True
    code, data, _ = run(capsys, "identities", "--which", "HLprod", "--mu", "2", "--nu", "1,1")
    assert code == 0 and data["ok"] is True


def test_oracle_twisted(capsys):
    code, data, _ = run(capsys, "oracle", "--check", "twisted", "--q", "3", "--n", "2")
    assert code == 0
    assert data["mismatches"] == []


def test_hall(capsys):
    code, data, _ = run(capsys, "hall", "--lam", "1,1", "--mu", "1", "--nu", "1")
    assert code == 0
    assert data["g"] == "1 + t^1"
    code, data, _ = run(capsys, "hall", "--max-size", "3")
    assert code == 0 and data["mismatches"] == []


def test_orders_and_classes(capsys):
    _, data, _ = run(capsys, "orders", "--q", "3", "--n", "2")
    assert data["orders"]["U"] == "96" and data["orders"]["Sp"] == "24"
    _, data, _ = run(capsys, "classes", "--q", "3", "--n", "2", "--group", "Sp")
    assert data["count"] == 7
    _, data, _ = run(capsys, "centralizer", "--q", "3", "--n", "1", "--all")
    assert [r["centralizer"] for r in data["rows"]] == ["4"] * 4


def test_prob_totals(capsys):
    _, data, _ = run(capsys, "prob", "--q", "3", "--n", "1", "--which", "sp")
    assert data["total"] == "1/1"
    _, data, _ = run(capsys, "prob", "--q", "3", "--n", "3", "--which", "twisted")
    assert data["total"] == "1/1"


def test_model_check(capsys):
    code, data, _ = run(capsys, "model-check", "--q", "3", "--n", "2")
    assert code == 0 and data["checked"] == 16


def test_class_file(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"q": 3, "parts": [{"orbit": "-1", "partition": [1, 1]}]}))
    code, data, _ = run(capsys, "fullsum", "--q", "3", "--n", "2", "--class", str(f))
    assert code == 0 and data["rows"][0]["value"] == "4"


def test_malformed_class_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"q": 3,\n "parts": [}')
    code, _, err = run(capsys, "fullsum", "--q", "3", "--n", "2", "--class", str(f))
    assert code == 2
    assert "bad.json:2:" in err
    f.write_text(json.dumps([{"q": 3, "parts": [{"orbit": "i", "partition": [1]}]}]))
    code, _, err = run(capsys, "fullsum", "--q", "3", "--n", "1", "--class", str(f))
    assert code == 2 and "[0]" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["orders", "--q", "3", "--n", "2", "--bogus"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "fullsum", "--q", "4", "--n", "1", "--all")
    assert code == 2
    code, _, _ = run(capsys, "permchar", "--q", "3", "--n", "1")
    assert code == 2


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "charsum.cli", "fullsum", "--q", "3", "--n", "2", "--all"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
