import json

import pytest

from noether.cli import main

C3 = '{"kind": "cyclic", "n": 3}'


def test_group(capsys):
    assert main(["group", '{"kind": "dihedral", "n": 3}']) == 0
    assert "nonabelian, order 6" in capsys.readouterr().out
    assert main(["group", '{"kind": "wreath", "H": {"kind": "cyclic", "n": 2}, "G": {"kind": "cyclic", "n": 2}}']) == 0
    assert "order 8" in capsys.readouterr().out


def test_group_malformed_json(capsys):
    assert main(["group", '{"kind": "cyclic", "n": 3']) == 2
    assert "line 1, column" in capsys.readouterr().err


def test_group_from_file(tmp_path, capsys):
    spec = tmp_path / "g.json"
    spec.write_text(json.dumps({"kind": "abelian", "factors": [2, 4]}))
    assert main(["group", str(spec)]) == 0
    assert "invariant factors 2 x 4" in capsys.readouterr().out


def test_reduce_and_verify(tmp_path):
    out = tmp_path / "f.json"
    assert main(["reduce", "--theorem", "fischer", "--group", C3, "--field", "Q(zeta:3)", "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    data = json.loads(out.read_text())
    term = data["systems"]["Y"]["defs"][1]["num"][0]
    term["coeff"][0] = -term["coeff"][0]
    tampered = tmp_path / "t.json"
    tampered.write_text(json.dumps(data))
    assert main(["verify", str(tampered)]) == 1
    truncated = tmp_path / "cut.json"
    truncated.write_text(out.read_text()[:200])
    assert main(["verify", str(truncated)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2


def test_hypothesis_violation_exit_2(capsys):
    assert main(["reduce", "--theorem", "1.6", "--split", C3, "--field", "Q"]) == 2
    assert "requires char K = p" in capsys.readouterr().err
    assert main(["reduce", "--theorem", "4.2", "--n", "4"]) == 2


def test_resource_limit_exit_3():
    argv = ["reduce", "--theorem", "1.10", "--H", C3, "--G", C3, "--field", "Q(zeta:3)", "--cap-size", "50"]
    assert main(argv) == 3
    assert main(["reduce", "--theorem", "fischer", "--group", '{"kind": "cyclic", "n": 5}', "--field", "Q(zeta:5)",
                 "--cap-terms", "2"]) == 3


def test_usage_errors():
    assert main([]) == 2
    assert main(["reduce", "--theorem", "9.9"]) == 2
    assert main(["reduce", "--theorem", "1.1"]) == 2
    assert main(["reduce", "--theorem", "fischer", "--group", C3, "--field", "Q(zeta"]) == 2


def test_theorem42_chain(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["reduce", "--theorem", "4.2", "--n", "3", "--field", "Q(zeta:3)", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["theorem"] == "4.2" and len(data["sub"]) == 3
    assert main(["verify", str(out)]) == 0


def test_oracle(capsys):
    assert main(["oracle", "--hnf", "[[2, 4], [1, 3]]"]) == 0
    assert json.loads(capsys.readouterr().out) == [[1, 1], [0, 2]]
    assert main(["oracle", "--kernel", "[[0, 1]]", "--moduli", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["index"] == 2
    assert main(["oracle", "--invariant-check", "[[1, [1, 1, 1]]]", "--group", C3]) == 0
    assert main(["oracle", "--invariant-check", "[[1, [1, 0, 0]]]", "--group", C3]) == 1
    assert main(["oracle"]) == 2


def test_stdout_output(capsys):
    assert main(["reduce", "--theorem", "fischer", "--group", '{"kind": "cyclic", "n": 2}']) == 0
    assert json.loads(capsys.readouterr().out)["schema"] == "noether-certificate/1"
