import json
import subprocess
import sys

import pytest

from gridmagic import ehrhart
from gridmagic.cli import main, read_sequence_csv
from gridmagic.decompose import decompose
from gridmagic.labelling import gorenstein_witness, labelling_from_json


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_count_text_and_json_agree(capsys):
    code, text, _ = run(capsys, "count", "-m", "3", "-n", "4", "--sum", "2")
    assert code == 0 and text.strip() == "57"
    code, out, _ = run(capsys, "count", "-m", "3", "-n", "4", "--sum", "2", "--format", "json")
    assert json.loads(out)["value"] == 57


def test_count_interior_and_torus(capsys):
    assert run(capsys, "count", "-m", "2", "-n", "5", "--sum", "3", "--mode", "interior")[1].strip() == "1"
    assert run(capsys, "count", "-m", "2", "-n", "4", "--sum", "1", "--topology", "torus")[1].strip() == "9"


def test_count_csv_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "-m", "3", "-n", "4", "--tmax", "8")
    assert code == 0 and out.splitlines()[0] == "index,value"
    path = tmp_path / "counts.csv"
    path.write_text(out)
    counts = read_sequence_csv(path)
    assert counts[:3] == [1, 11, 57]
    code, out, _ = run(capsys, "hvector", "--counts", str(path), "--dim", "6", "--format", "json")
    assert code == 0 and json.loads(out)["h"] == [1, 4, 1]


def test_bad_csv(capsys, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,L\n0,1\n")
    assert run(capsys, "hvector", "--counts", str(path), "--dim", "1")[0] == 1
    path.write_text("index,value\n0,1\n2,5\n")
    assert run(capsys, "hvector", "--counts", str(path), "--dim", "1")[0] == 1


def test_ehrhart_json(capsys):
    code, out, _ = run(capsys, "ehrhart", "-m", "3", "-n", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"d", "counts", "coeffs_num", "coeffs_den", "h", "gorenstein"}
    assert data["d"] == 6 and data["h"] == [1, 4, 1]
    assert data["coeffs_num"][-1] == 1 and data["coeffs_den"][-1] == 120
    assert data["gorenstein"] == {"verdict": True, "index": 5, "mode": "hvector"}
    code, text, _ = run(capsys, "ehrhart", "-m", "3", "-n", "4")
    assert "(z^2 + 4z + 1) / (1-z)^7" in text


def test_gorenstein(capsys):
    code, out, _ = run(capsys, "gorenstein", "-m", "4", "-n", "4", "--format", "json", "--tmax", "6")
    assert json.loads(out)["index"] == 4
    code, out, _ = run(capsys, "gorenstein", "-m", "4", "-n", "5", "--mode", "hvector", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] is False


def test_dimension_and_kasteleyn(capsys):
    assert json.loads(run(capsys, "dimension", "-m", "4", "-n", "4", "--topology", "torus",
                          "--format", "json")[1])["dimension"] == 17
    assert json.loads(run(capsys, "kasteleyn", "-m", "8", "-n", "8", "--format", "json")[1])["value"] == 12988816


def test_recurrence(capsys):
    data = json.loads(run(capsys, "recurrence", "-m", "3", "--format", "json")[1])
    assert data["coeffs"] == ["0", "4", "0", "-1"]
    data = json.loads(run(capsys, "recurrence", "-m", "2", "--method", "charpoly", "--format", "json")[1])
    assert data["coeffs"] == ["1", "2", "-1", "-1"]
    lines = run(capsys, "recurrence", "-m", "2", "--csv")[1].splitlines()
    assert lines[0] == "index,value" and lines[5] == "4,5"


def test_reciprocity_and_power(capsys):
    code, out, _ = run(capsys, "reciprocity", "-m", "2", "--nmax", "6", "--format", "json")
    assert code == 0 and json.loads(out)["all_pass"]
    code, out, _ = run(capsys, "power", "-m", "2", "-t", "2", "--nmax", "6", "--format", "json")
    assert code == 0 and json.loads(out)["checks"]["power_of_base"]


def test_witness_then_decompose(capsys, tmp_path):
    lab_path = tmp_path / "w.json"
    dec_path = tmp_path / "d.json"
    code, out, _ = run(capsys, "witness", "--case", "even-odd-t5", "-m", "4", "-n", "5",
                       "--output", str(lab_path))
    assert code == 0 and "interior: True" in out
    lab = labelling_from_json(lab_path.read_text())
    assert lab == gorenstein_witness("even-odd-t5", 4, 5)
    code, out, _ = run(capsys, "decompose", "--input", str(lab_path), "--output", str(dec_path), "--render")
    assert code == 0 and out.count("layer") == 5
    written = json.loads(dec_path.read_text())
    assert written == decompose(lab).to_dict()


def test_decompose_rejects_invalid(capsys, tmp_path):
    path = tmp_path / "bad.json"
    lab = gorenstein_witness("2xn-t3", 2, 4).to_dict()
    lab["labels"][0] += 1
    path.write_text(json.dumps(lab))
    assert run(capsys, "decompose", "--input", str(path))[0] == 1
    assert run(capsys, "decompose", "--input", str(tmp_path / "missing.json"))[0] == 1


def test_enumerate(capsys):
    data = json.loads(run(capsys, "enumerate", "-m", "2", "-n", "2", "--sum", "1", "--format", "json")[1])
    assert [d["labels"] for d in data] == [[0, 0, 1, 1], [1, 1, 0, 0]]
    assert run(capsys, "enumerate", "-m", "3", "-n", "4", "--sum", "3", "--limit", "5")[0] == 1


def test_graph_command(capsys):
    data = json.loads(run(capsys, "graph", "-m", "2", "-n", "4", "--topology", "torus", "--format", "json")[1])
    assert len(data["edges"]) == 12


@pytest.mark.parametrize("argv", [
    ["count", "-m", "2", "-n", "3", "--sum", "1", "--topology", "torus"],
    ["ehrhart", "-m", "3", "-n", "3"],
    ["witness", "--case", "4x4-t4", "-m", "4", "-n", "6"],
    ["count", "-m", "2", "-n", "3"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and "error" in err


@pytest.mark.parametrize("argv", [
    ["count", "-m", "0", "-n", "3", "--sum", "1"],
    ["frobnicate"],
    ["count", "-m", "2"],
    ["gorenstein", "-m", "2", "-n", "2", "--mode", "maybe"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gridmagic", "count", "-m", "2", "-n", "4", "--sum", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "5"


def test_selftest_is_deterministic(capsys):
    first = run(capsys, "selftest", "--only", "1", "4", "12")
    second = run(capsys, "selftest", "--only", "1", "4", "12")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert first[1].splitlines()[-1] == "3/3 criteria passed"


def test_selftest_catches_corrupted_hvector(capsys, monkeypatch):
    real = ehrhart.h_vector

    def corrupted(counts, d):
        h = real(counts, d)
        h[-1] += 1
        return h

    monkeypatch.setattr(ehrhart, "h_vector", corrupted)
    code, out, _ = run(capsys, "selftest", "--only", "1", "2")
    assert code == 1
    assert out.splitlines()[0].startswith("[FAIL]  1.")
    assert out.splitlines()[1].startswith("[FAIL]  2.")
