import json

import pytest

from fermiupb import io
from fermiupb.cli import main
from fermiupb.exterior import basis_nvector, wedge_expand


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_construct_vandermonde(capsys):
    code, d = run_json(capsys, "construct", "vandermonde", "--n", "2", "--m", "5")
    assert code == 0 and d["type"] == "candidate-set" and len(d["members"]) == 7
    assert d["claims"] == {"orthogonal": False, "independent": True}


def test_construct_slater_and_c4(capsys):
    code, d = run_json(capsys, "construct", "slater", "--n", "2", "--m", "3")
    assert code == 0 and len(d["members"]) == 3
    code, d = run_json(capsys, "construct", "fupb-c4", "--b", "2")
    assert code == 0 and len(d["members"]) == 5
    c = complex(*d["metadata"]["c"])
    assert abs(c - (-0.829747 + 0.0716405j)) <= 1e-4


@pytest.mark.parametrize(
    "argv,size",
    [
        (["pad"], 9),
        (["compose-3-3-pentagon"], 11),
        (["hyperplane", "--n", "3", "--m", "5"], 9),
        (["hyperplane-spanning", "--m", "4"], 5),
        (["dual"], 9),
    ],
)
def test_construct_sets(capsys, argv, size):
    code, d = run_json(capsys, "construct", *argv)
    assert code == 0 and len(d["members"]) == size


def test_construct_other_outputs(capsys):
    code, d = run_json(capsys, "construct", "codim3", "--n", "3", "--m", "5")
    assert code == 0 and d["L_dim"] == 7
    code, d = run_json(capsys, "construct", "block-unitary-upb", "--dims", "2,3", "--seed", "4")
    assert code == 0 and len(d["members"]) == 6 and d["seed"] == 4


def test_construct_errors(capsys):
    assert run(capsys, "construct", "slater", "--n", "2")[0] == 4
    assert run(capsys, "construct", "vandermonde", "--n", "3", "--m", "3")[0] == 4
    assert run(capsys, "construct", "hyperplane-spanning", "--m", "5")[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["construct", "nonsense"])
    assert exc.value.code == 4
    with pytest.raises(SystemExit) as exc:
        main(["construct", "slater", "--bogus"])
    assert exc.value.code == 4


def test_verify_exit_codes(capsys, tmp_path):
    _, c4 = run_json(capsys, "construct", "fupb-c4")
    code, rep = run_json(capsys, "verify", "--in", write(tmp_path, "c4.json", c4))
    assert code == 0 and rep["verdict"]["unextendible"] == "proven"
    assert rep["config"]["seed"] == 0

    _, sl = run_json(capsys, "construct", "slater", "--n", "2", "--m", "4")
    sl["members"] = sl["members"][:-1]
    code, rep = run_json(capsys, "verify", "--in", write(tmp_path, "sl.json", sl))
    assert code == 2
    w = io.from_dict(rep["search"]["witness"])
    assert wedge_expand(w) == basis_nvector(4, 3, 4)

    _, vd = run_json(capsys, "construct", "vandermonde", "--n", "2", "--m", "4")
    vd["claims"]["orthogonal"] = True
    code, rep = run_json(capsys, "verify", "--in", write(tmp_path, "vd.json", vd))
    assert code == 3 and rep["type"] == "claim-violation"


def test_verify_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--in", str(bad))[0] == 4
    assert run(capsys, "verify", "--in", str(tmp_path / "missing.json"))[0] == 4
    nv = write(tmp_path, "nv.json", io.to_dict(basis_nvector(4, 1, 2)))
    assert run(capsys, "verify", "--in", nv)[0] == 4
    _, sl = run_json(capsys, "construct", "slater", "--n", "2", "--m", "4")
    p = write(tmp_path, "sl.json", sl)
    assert run(capsys, "verify", "--in", p, "--tol-found", "1e-3", "--tol-clear", "1e-4")[0] == 4


def test_seed_env_and_override(capsys, tmp_path, monkeypatch):
    _, sl = run_json(capsys, "construct", "slater", "--n", "2", "--m", "4")
    p = write(tmp_path, "sl.json", sl)
    monkeypatch.setenv("FERMI_UPB_SEED", "17")
    assert run_json(capsys, "verify", "--in", p)[1]["config"]["seed"] == 17
    assert run_json(capsys, "verify", "--in", p, "--seed", "3")[1]["config"]["seed"] == 3
    monkeypatch.setenv("FERMI_UPB_SEED", "abc")
    assert run(capsys, "verify", "--in", p)[0] == 4


def test_transform(capsys, tmp_path):
    _, padded = run_json(capsys, "construct", "pad")
    code, d = run_json(capsys, "transform", "dual", "--in", write(tmp_path, "p.json", padded))
    assert code == 0 and (d["n"], d["m"], len(d["members"])) == (3, 5, 9)

    psi = basis_nvector(4, 1, 2) + basis_nvector(4, 3, 4)
    code, d = run_json(capsys, "transform", "slater-decompose", "--in", write(tmp_path, "psi.json", io.to_dict(psi)))
    assert code == 0 and d["coeffs"] == pytest.approx([1, 1])

    f = {"type": "factorization", "m": 4, "n": 2,
         "factors": [[{"re": "1", "im": "0"}, {"re": "0", "im": "0"}, {"re": "0", "im": "0"}, {"re": "0", "im": "0"}],
                     [{"re": "0", "im": "0"}, {"re": "1", "im": "0"}, {"re": "0", "im": "0"}, {"re": "0", "im": "0"}]]}
    code, d = run_json(capsys, "transform", "expand", "--in", write(tmp_path, "f.json", f))
    assert code == 0 and d["entries"] == [{"idx": [1, 2], "re": "1", "im": "0"}]

    grade3 = write(tmp_path, "g3.json", io.to_dict(basis_nvector(5, 1, 2, 3)))
    assert run(capsys, "transform", "slater-decompose", "--in", grade3)[0] == 4
    assert run(capsys, "transform", "expand", "--in", grade3)[0] == 4


def test_bounds(capsys):
    assert run_json(capsys, "bounds", "--n", "2", "--m", "4") == (0, {"ces_max_dim": 1, "gfupb_min": 5})
    assert run_json(capsys, "bounds", "--dims", "3,3") == (0, {"L": 5, "D": 9, "f_m": 5})
    assert run_json(capsys, "bounds", "--n", "3", "--m", "5") == (0, {"ces_max_dim": 3, "gfupb_min": 7})
    assert run(capsys, "bounds")[0] == 4
    assert run(capsys, "bounds", "--n", "5", "--m", "4")[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--dims", "3,x"])
    assert exc.value.code == 4


def test_pretty_and_out_file(capsys, tmp_path):
    code, out = run(capsys, "bounds", "--n", "2", "--m", "4", "--format", "pretty")
    assert code == 0 and "ces_max_dim: 1" in out
    target = tmp_path / "o.json"
    assert run(capsys, "construct", "slater", "--n", "2", "--m", "3", "--out", str(target))[0] == 0
    assert len(json.loads(target.read_text())["members"]) == 3


@pytest.mark.parametrize("name", ["c4", "spanning", "real", "duality"])
def test_demo(capsys, name):
    code, d = run_json(capsys, "demo", name, "--format", "json", "--restarts", "20")
    assert code == 0 and d["demo"] == name
