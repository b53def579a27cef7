import copy

import pytest

from fractions import Fraction

from schmidtools.analysis.audit import audit_certificate, cover_digest
from schmidtools.analysis.certify import (certify_ap3_meps, certify_newhouse_ap4,
                                          certify_f19_cap_c)
from schmidtools.exceptions import CertificateError
from schmidtools.games.alice import alice_null
from schmidtools.games.bob import bob_subdivision
from schmidtools.games.game import run_match
from schmidtools.games.params import GameParams


third = Fraction(1, 3)


@pytest.fixture(scope="module")
def newhouse():
    return certify_newhouse_ap4(third, 4).to_json()


@pytest.fixture(scope="module")
def point():
    return certify_f19_cap_c(4).to_json()


def test_accepts_newhouse(newhouse):
    report = audit_certificate(newhouse)

    assert report.accepted
    assert report.kind == "ap"
    assert report.to_json()["accepted"]


def test_rejects_gap(newhouse):
    data = copy.deepcopy(newhouse)
    data["gap"] = "1/4"

    with pytest.raises(CertificateError):
        audit_certificate(data)

    report = audit_certificate(data, strict=False)
    assert not report.accepted
    assert report.failed[0].name == "progression"


def test_rejects_non_endpoint(newhouse):
    data = copy.deepcopy(newhouse)
    data["elements"] = ["1/4", "1/2", "3/4", "1"]
    data["gap"] = "1/4"

    report = audit_certificate(data, strict=False)

    assert "element-0" in [c.name for c in report.failed]


def test_rejects_exact_flag(newhouse):
    data = copy.deepcopy(newhouse)
    data["exact"] = False

    assert "exact-flag" in [c.name for c in audit_certificate(data, strict=False).failed]


def test_unknown_kind_and_version(newhouse):
    with pytest.raises(CertificateError):
        audit_certificate({"kind": "proof", "version": 1})

    data = dict(newhouse, version=2)
    with pytest.raises(CertificateError):
        audit_certificate(data)


def test_schema_error(newhouse):
    data = copy.deepcopy(newhouse)
    del data["proofs"]

    report = audit_certificate(data, strict=False)

    assert [c.name for c in report.failed] == ["schema"]


def test_accepts_point(point):
    assert audit_certificate(point).accepted


def test_rejects_tampered_ledger(point):
    data = copy.deepcopy(point)
    data["ledger"] = data["ledger"][1:]

    failed = [c.name for c in audit_certificate(data, strict=False).failed]

    assert "transcript-ledger" in failed


def test_rejects_tampered_transcript(point):
    data = copy.deepcopy(point)
    data["transcript"]["bob_moves"][2] = data["transcript"]["bob_moves"][0]

    failed = [c.name for c in audit_certificate(data, strict=False).failed]

    assert "transcript-legal" in failed


def test_rejects_prefix(point):
    data = copy.deepcopy(point)
    data["cf_prefix"] = [0, 20]

    failed = [c.name for c in audit_certificate(data, strict=False).failed]

    assert "cf-prefix" in failed


def test_audits_bare_transcript():
    params = GameParams.absolute(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
    bob = bob_subdivision(2, Fraction(1, 4), Fraction(1, 2))
    document = run_match(params, alice_null(params), bob, 3).transcript.to_json()

    assert audit_certificate(document).accepted

    document["bob_moves"][1] = document["bob_moves"][0]
    assert not audit_certificate(document, strict=False).accepted


def test_cover_digest_order():
    leaves = [{"word": [1], "type": "A"}, {"word": [2], "type": "B"}]

    assert cover_digest(leaves) != cover_digest(leaves[::-1])
    assert len(cover_digest(leaves)) == 64


@pytest.fixture(scope="module")
def ap3():
    return certify_ap3_meps(Fraction(1, 49), 0, 6).to_json()


def forged_ap():
    proof = {"type": "enclosure", "address": "", "stage": 0}

    return {"kind": "ap", "version": 1,
            "target": {"name": "M_eps", "epsilon": "1/3"},
            "elements": ["1/2", "51/100"],
            "gap": "1/100",
            "exact": False,
            "parameter": ["49/100", "51/100"],
            "proofs": [dict(proof, interval=["49/100", "51/100"], affine=["1/1", "0/1"]),
                       dict(proof, interval=["1/2", "13/25"], affine=["1/1", "1/100"])]}


def test_rejects_forged_enclosures():
    report = audit_certificate(forged_ap(), strict=False)
    failed = [c.name for c in report.failed]

    assert not report.accepted
    assert "meets-0" in failed and "meets-1" in failed
    assert "transcript-present" in failed

    with pytest.raises(CertificateError):
        audit_certificate(forged_ap())


def test_accepts_ap3(ap3):
    report = audit_certificate(ap3)
    names = [c.name for c in report.checks]

    assert "game-params" in names
    assert "strategy-replay" in names
    assert "meets-1" in names and "meets-2" in names


def test_ap3_requires_transcript(ap3):
    data = copy.deepcopy(ap3)
    del data["transcript"]

    assert "transcript-present" in [c.name for c in audit_certificate(data, strict=False).failed]

    del data["enclosure"]
    assert "transcript-present" in [c.name for c in audit_certificate(data, strict=False).failed]


def test_ap3_rejects_game_params(ap3):
    data = copy.deepcopy(ap3)
    data["transcript"]["params"]["alpha"] = "1/3"

    assert "game-params" in [c.name for c in audit_certificate(data, strict=False).failed]

    data = copy.deepcopy(ap3)
    del data["game"]

    assert "game-params" in [c.name for c in audit_certificate(data, strict=False).failed]


def test_ap3_rejects_altered_answers(ap3):
    data = copy.deepcopy(ap3)
    moves = data["transcript"]["alice_moves"]
    m = next(i for i, move in enumerate(moves) if move)
    moves[m] = []

    assert "strategy-replay" in [c.name for c in audit_certificate(data, strict=False).failed]


def test_point_rejects_game(point):
    data = copy.deepcopy(point)
    data["game"]["n"] = 20

    assert "game-params" in [c.name for c in audit_certificate(data, strict=False).failed]
