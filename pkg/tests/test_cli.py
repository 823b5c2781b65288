"""
End-to-end runs of the `quatlab` command through run_main.
"""
import json

import numpy as np
import pytest

from quatlab.cli import build_config, get_parser, run_main
from quatlab.ideal_lab import sample_generic
from quatlab.manifest import RunManifest
from quatlab.utils import load_json_file

I_ENTRY = [0, 1, 0, 0]
J_ENTRY = [0, 0, 1, 0]


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = run_main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_equiv_same_matrix(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[1, I_ENTRY], [J_ENTRY, 2]])
    code, out = run_json(capsys, "equiv", a, a)
    assert code == 0
    assert out == {"equivalent": True, "differing_invariants": []}


def test_equiv_different_matrices(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[1, 0], [0, 2]])
    b = write_json(tmp_path / "b.json", [[1, 0], [0, 3]])
    code, out = run_json(capsys, "equiv", a, b)
    assert code == 1
    assert not out["equivalent"] and out["differing_invariants"]


def test_w2_open_problem_pair(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[1, 0], [0, 0]])
    b = write_json(tmp_path / "b.json", [[0, 1], [1, 0]])
    code, out = run_json(capsys, "w2", a, b)
    assert code == 1
    assert out["member"] is False and out["witness"] is None


def test_w2_triangular_pair(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[1, I_ENTRY], [0, J_ENTRY]])
    b = write_json(tmp_path / "b.json", {"rows": 2, "cols": 2, "entries": [2, "1/2", 0, 5]})
    code, out = run_json(capsys, "w2", a, b)
    assert code == 0
    assert out["member"] is True and out["case"] == "triangular"


def test_missing_file(tmp_path, capsys):
    code, out = run_json(capsys, "canon", str(tmp_path / "missing.json"))
    assert code == 2
    assert out["error"] == "FileNotFoundError"


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("[[1, 2], [3")
    code, out = run_json(capsys, "canon", str(bad))
    assert code == 2
    assert out["error"] == "JsonParsingError"

    wrong_size = write_json(tmp_path / "three.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    code, out = run_json(capsys, "canon", wrong_size)
    assert code == 2
    assert out["error"] == "InputError"


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["table1", "--format", "csv"],
    ["table1", "--tolerance", "-1"],
    ["dims", "--max-total", "11"],
    ["identities", "--seed", "-1", "--samples", "2"],
])
def test_usage_errors(argv, capsys):
    code, out = run_json(capsys, *argv)
    assert code == 2
    assert "error" in out and "message" in out


def test_canon_output(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[I_ENTRY, 1], [0, J_ENTRY]])
    code, out = run_json(capsys, "canon", a)
    assert code == 0
    assert len(out["p"]) == 6
    assert out["unitary"]["rows"] == 2


def test_eig(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", [[1, 0], [0, I_ENTRY]])
    code, out = run_json(capsys, "eig", a)
    assert code == 0
    flat = [x for z in sorted(out["eigenvalues"]) for x in z]
    assert flat == pytest.approx([0.0, 1.0, 1.0, 0.0])


def test_qt(tmp_path, capsys):
    tri = write_json(tmp_path / "tri.json", [[[1, I_ENTRY], [0, J_ENTRY]], [[0, 1], [0, 0]]])
    code, out = run_json(capsys, "qt", tri)
    assert code == 0 and out["quasi_triangularizable"] is True

    witness = write_json(tmp_path / "witness.json", [[[0, 1], [0, J_ENTRY]], [[0, 1], [I_ENTRY, 0]]])
    code, out = run_json(capsys, "qt", witness)
    assert code == 2 and out["error"] == "DimensionTooLarge"
    code, out = run_json(capsys, "qt", witness, "--max-dim", "16")
    assert code == 1 and out["quasi_triangularizable"] is False


def test_jacobian(tmp_path, capsys):
    A, B = sample_generic(np.random.default_rng(7), 3)
    point = write_json(tmp_path / "point.json", {"A": A.to_json(), "B": B.to_json()})
    code, out = run_json(capsys, "jacobian", "--point", point)
    assert code == 0
    assert out == {"generators": ["f1", "f2", "f3", "f6"], "rank": 4}

    code, out = run_json(capsys, "jacobian", "--point", point, "--generators", "f1,f99")
    assert code == 2
    code, out = run_json(capsys, "jacobian", "--point", point, "--mode", "float")
    assert code == 2


def test_identities(capsys):
    code, out = run_json(capsys, "identities", "--samples", "3", "--seed", "4")
    assert code == 0
    assert out["ok"] is True


def test_table1_and_problem83(capsys):
    code, out = run_json(capsys, "table1")
    assert code == 0 and out["ok"] is True
    assert len(out["rows"]) == 6
    code, out = run_json(capsys, "problem83")
    assert code == 0 and out["member"] is False and out["all_generators_vanish"] is True


def test_dims_csv(capsys):
    code, out = run(capsys, "dims", "--max-total", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k,l,monomials,samples,span_dim,rank_w2,d,rank_stable"
    rows = {tuple(line.split(",")[:2]): line.split(",")[6] for line in lines[1:]}
    assert rows[("3", "3")] == "1"
    assert rows[("2", "4")] == "0"


def test_msg_csv(capsys):
    code, out = run(capsys, "msg", "--m", "7", "--format", "csv")
    assert code == 0
    assert out.strip().split("\n") == ["k,l,new", "3,3,1", "3,4,1", "4,3,1"]


def test_manifest_reproduces(tmp_path, capsys):
    first, second = str(tmp_path / "m1.json"), str(tmp_path / "m2.json")
    code, out1 = run(capsys, "dims", "--max-total", "6", "--seed", "9", "--manifest", first)
    assert code == 0
    code, out2 = run(capsys, "dims", "--max-total", "6", "--seed", "9", "--manifest", second)
    assert code == 0
    assert out1 == out2
    m1 = RunManifest.from_json(load_json_file(first))
    m2 = RunManifest.from_json(load_json_file(second))
    assert m1.reproduces(m2)
    assert m1.seed == 9 and m1.command == "dims"
    assert m1.config["max_total"] == 6


def test_build_config():
    args = get_parser().parse_args(["msg", "--m", "8", "--samples", "50", "--tolerance", "1e-6", "--seed", "2"])
    config = build_config(args)
    assert config.msg_max == 8 and config.samples == 50 and config.seed == 2
    assert config.tolerances.invariant_rel == 1e-6
