import json
import os

import pytest

from fractions import Fraction

from schmidtools.cli import RunConfig, build_parser, main, sumset_grid
from schmidtools.exceptions import CertificateError


third = Fraction(1, 3)


def run(tmp_path, *argv):
    return main(["--out-dir", str(tmp_path)] + list(argv))


def test_parser_defaults():
    args = build_parser().parse_args(["ap-meps"])
    config = RunConfig.from_namespace(args)

    assert config.command == "ap-meps"
    assert str(config.epsilon) == "1/49"
    assert config.depth == 40
    assert config.filename("ap-meps.json") == "ap-meps.json"

    with pytest.raises(AttributeError):
        config.missing


def test_sumset_grid():
    grid = sumset_grid(21)

    assert len(grid) == 21
    assert str(grid[0]) == "1/6"
    assert str(grid[-1]) == "11/6"


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["ap-game", "--epsilon", "1/10"])

    assert info.value.code == 1


def test_bad_value(tmp_path, capsys):
    assert run(tmp_path, "ap4-newhouse", "--epsilon", "1/2") == 1
    assert "error" in capsys.readouterr().err


def test_ap4_newhouse_and_audit(tmp_path, capsys):
    assert run(tmp_path, "ap4-newhouse", "--depth", "4") == 0

    path = os.path.join(str(tmp_path), "ap4-newhouse.json")
    with open(path) as f:
        data = json.load(f)

    assert data["kind"] == "ap"
    assert [Fraction(x) for x in data["elements"]] == [0, third, 2 * third, 1]

    capsys.readouterr()
    assert run(tmp_path, "audit", path) == 0
    assert "accepted" in capsys.readouterr().out


def test_audit_rejects(tmp_path):
    assert run(tmp_path, "ap4-newhouse", "--depth", "4", "--out", "cert.json") == 0

    path = os.path.join(str(tmp_path), "cert.json")
    with open(path) as f:
        data = json.load(f)
    data["gap"] = "1/9"
    with open(path, "w") as f:
        json.dump(data, f)

    assert run(tmp_path, "audit", path) == 2


def test_honest_failure(tmp_path):
    code = run(tmp_path, "ap-game", "--epsilon", "1/10", "--k", "12", "--t", "1/1000")

    assert code == 2

    path = os.path.join(str(tmp_path), "ap-game-failure.json")
    with open(path) as f:
        assert json.load(f)["status"] == "bound"


def test_ap_search(tmp_path, capsys):
    assert run(tmp_path, "ap-search", "--epsilon", "1/3", "--stage", "1") == 0
    assert "length = 4" in capsys.readouterr().out


def test_bounds(tmp_path, capsys):
    assert run(tmp_path, "bounds", "hd-lower", "--N", "4", "--k", "2", "--beta", "1/4") == 0
    assert "0.5" in capsys.readouterr().out

    assert run(tmp_path, "bounds", "independence", "--d1", "1/2", "--d2", "3/4") == 0
    assert "dimension = 1/4" in capsys.readouterr().out


def test_game_replay(tmp_path):
    assert run(tmp_path, "f19-cap-c", "--depth", "3") == 0

    path = os.path.join(str(tmp_path), "f19-cap-c.json")
    assert run(tmp_path, "game-replay", path) == 0


def test_never_stuck(tmp_path, capsys):
    assert run(tmp_path, "never-stuck", "--count", "3", "--depth", "4") == 0


def test_sumset_grid_failure_rows(tmp_path, monkeypatch):
    def reject(certificate):
        raise CertificateError("rejected")

    monkeypatch.setattr("schmidtools.cli.audit_certificate", reject)

    assert run(tmp_path, "sumset-f49", "--t-grid", "2", "--depth", "2") == 2

    with open(os.path.join(str(tmp_path), "sumset-f49.csv")) as f:
        lines = f.read().splitlines()

    assert len(lines) == 3
    assert all("failure:" in line for line in lines[1:])


def test_sumset_grid_processes(tmp_path, capsys):
    assert run(tmp_path, "sumset-f49", "--t-grid", "3", "--depth", "2", "--n-jobs", "2") == 0
    assert "accepted = 3" in capsys.readouterr().out

    for i in range(3):
        assert os.path.exists(os.path.join(str(tmp_path), "sumset-f49-{}.json".format(i)))
