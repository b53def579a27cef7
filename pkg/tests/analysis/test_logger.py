import os

import numpy as np
import pandas as pd

from fractions import Fraction

from schmidtools.analysis.logger import Logger, jsonify
from schmidtools.arith.enclosure import Enclosure
from schmidtools.arith.interval import Interval
from schmidtools.games.game import MatchStatus


results = {"gap": Fraction(1, 3),
           "elements": (0, Fraction(1, 3), Fraction(2, 3)),
           "status": MatchStatus.DEPTH_REACHED,
           "count": np.int64(4),
           "radii": np.array([1, 2]),
           "interval": Interval(0, Fraction(1, 2)),
           "exact": True,
           "missing": None}


def test_jsonify():
    data = jsonify(results)

    assert data["gap"] == "1/3"
    assert data["elements"] == [0, "1/3", "2/3"]
    assert data["status"] == "depth-reached"
    assert data["count"] == 4 and type(data["count"]) is int
    assert data["radii"] == [1, 2]
    assert data["interval"] == ["0/1", "1/2"]
    assert data["exact"] is True
    assert data["missing"] is None


def test_jsonify_enclosure():
    data = jsonify({"estimate": Enclosure(Fraction(1, 4), Fraction(1, 2))})

    assert data["estimate"]["lo"] == "1/4"
    assert data["estimate"]["decimal"] == ["0.250000", "0.500000"]


def test_inserttofilename():
    assert (Logger.inserttofilename(os.path.join("out", "cert.json"), "ap-", "-3")
            == os.path.join("out", "ap-cert-3.json"))


def test_expandpath_logtime(tmp_path):
    logger = Logger(str(tmp_path), logtime="filename")
    logger.reset_time("2020-01-02-030405")

    path = logger.expandpath("cert.json", logtime=True)
    assert path == os.path.join(str(tmp_path), "cert-2020-01-02-030405.json")

    path = logger.expandpath("cert.json", logtime=False)
    assert path == os.path.join(str(tmp_path), "cert.json")

    assert logger.logtime_text() == "2020-01-02 03:04:05"


def test_expandpath_folder(tmp_path):
    logger = Logger(str(tmp_path), logtime="folder")
    logger.reset_time("2020-01-02-030405")

    path = logger.expandpath("cert.json", logtime=True)

    assert path == os.path.join(str(tmp_path), "2020-01-02-030405", "cert.json")
    assert os.path.isdir(os.path.dirname(path))


def test_save_load_json(tmp_path):
    logger = Logger(str(tmp_path), logtime="")
    path = logger.save_json(results, filename="results.json")

    data = Logger.load_json(path)
    assert data == jsonify(results)
    assert logger.save_json(results) is None


def test_save_csv(tmp_path):
    logger = Logger(str(tmp_path), logtime="")
    table = {"t": [Fraction(1, 6), Fraction(1, 2)], "status": ["accepted", "accepted"]}

    path = logger.save_csv(table, sep=",", filename="grid.csv")
    df = pd.read_csv(path, dtype=str)

    assert list(df.columns) == ["t", "status"]
    assert list(df["t"]) == ["1/6", "1/2"]


def test_dict_to_text():
    text = Logger.dict_to_text({"gap": Fraction(1, 2), "audit": {"checks": 3}})

    assert text == "- gap = 1/2\n- audit\n\t- checks = 3"


def test_format_time():
    assert Logger.format_time(12.5) == "12.500 s"
    assert Logger.format_time(3725) == "1 h  2 m  5 s"


def test_save_text_prefix(tmp_path):
    logger = Logger(str(tmp_path), prefix="run-", logtime="")

    path = logger.save_text("accepted\n", filename="audit.txt")

    assert path == os.path.join(str(tmp_path), "run-audit.txt")
    with open(path) as f:
        assert f.read() == "accepted\n"
