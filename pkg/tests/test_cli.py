import json

import pytest

from divherm import cli


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_cusps_disc(capsys):
    code, out = _run(["cusps", "--disc", "-23"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["class_number"] == 3


def test_example7_suite(capsys):
    code, out = _run(["example7"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True
    cert = rep["checks"][0]["certificate"]
    assert cert["conclusions"]["cusp_count"] == 1


def test_moduli_gram(capsys):
    code, out = _run(["moduli", "gram", "--case", "d1", "--disc", "-7"],
                     capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["elementary_divisors"] == [1, 1, 1, 1]
    assert rep["principal"] is True
    assert rep["scale"] == "7"


def test_moduli_split(capsys):
    code, out = _run(["moduli", "split", "--case", "d3"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["summands"] == 3 and rep["ol_stable"]


def test_reports_are_deterministic(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.main(["cusps", "--seed", "42", "--out", str(out1)]) == 0
    assert cli.main(["cusps", "--seed", "42", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "tolerance": 1e-9}))
    code, out = _run(["cusps", "--config", str(cfg)], capsys)
    assert code == 0
    assert json.loads(out)["seed"] == 7


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{\"tolerance\": -1}")
    assert cli.main(["cusps", "--config", str(cfg)]) == 2
    cfg.write_text("not json")
    assert cli.main(["cusps", "--config", str(cfg)]) == 2
    capsys.readouterr()


def test_unknown_suite_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_no_suite_exits_2(capsys):
    assert cli.main([]) == 2
    capsys.readouterr()
