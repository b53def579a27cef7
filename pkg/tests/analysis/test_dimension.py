import pytest

from fractions import Fraction

from schmidtools.analysis.audit import audit_certificate
from schmidtools.analysis.dimension import (hd_estimate_fn_cap_cantor, hd_lower_formula,
                                            default_k2,
                                            potential_hd_bound, target_alpha,
                                            target_dimension_bound, independence_heuristic,
                                            block_length, inequality_check,
                                            inequality_sweep, survivor_tree,
                                            loglog_slope, budget_trend)
from schmidtools.exceptions import ResourceLimitError
from schmidtools.games.alice import alice_null
from schmidtools.games.params import GameParams


quarter = Fraction(1, 4)


def test_hd_estimate_cover():
    estimate = hd_estimate_fn_cap_cantor(2, Fraction(1, 10))

    assert estimate.kraft == 1
    assert estimate.count == sum(1 for leaf in estimate.leaves if leaf["type"] == "A")
    assert estimate.count > 0
    assert 0 <= estimate.estimate.lo <= estimate.estimate.hi <= 1

    report = audit_certificate(estimate)
    assert report.accepted


def test_hd_estimate_tampered():
    data = hd_estimate_fn_cap_cantor(2, Fraction(1, 10)).to_json()
    data["leaves"] = data["leaves"][1:]

    report = audit_certificate(data, strict=False)

    assert not report.accepted
    assert "kraft" in [c.name for c in report.failed]


def test_hd_estimate_invalid():
    with pytest.raises(ValueError):
        hd_estimate_fn_cap_cantor(1, Fraction(1, 10))
    with pytest.raises(ValueError):
        hd_estimate_fn_cap_cantor(2, 1)
    with pytest.raises(ResourceLimitError):
        hd_estimate_fn_cap_cantor(2, Fraction(1, 10**6), cap=3)


def test_hd_lower_formula():
    bound = hd_lower_formula(4, 2, quarter)
    assert bound.lo == bound.hi == Fraction(1, 2)

    bound = hd_lower_formula(3, 1, Fraction(1, 3))
    assert Fraction(630, 1000) < bound.lo <= bound.hi < Fraction(632, 1000)

    with pytest.raises(ValueError):
        hd_lower_formula(2, 2, quarter)
    with pytest.raises(ValueError):
        hd_lower_formula(3, 1, 1)


def test_potential_bound_without_deletions():
    result = potential_hd_bound(1, 1, 0, quarter, Fraction(1, 2), K1=1, K2=1)

    assert result.condition
    assert result.positive
    assert result.bound.lo == 1


def test_potential_bound_condition_fails():
    result = potential_hd_bound(1, 1, Fraction(1, 2), quarter, Fraction(1, 2), K1=1, K2=10)

    assert not result.condition


def test_potential_bound_invalid():
    with pytest.raises(ValueError):
        potential_hd_bound(1, 1, Fraction(1, 10), quarter, 1)
    with pytest.raises(ValueError):
        potential_hd_bound(1, 1, Fraction(1, 10), Fraction(1, 2), Fraction(1, 2))


def test_target_alpha():
    assert target_alpha("M_eps", Fraction(1, 49)) == Fraction(1, 6)

    with pytest.raises(ValueError):
        target_alpha("BA_3", Fraction(1, 10))


def test_target_dimension_bound():
    result = target_dimension_bound("M_eps", Fraction(1, 100), K1=1, K2=1)

    assert result["alpha"] == target_alpha("M_eps", Fraction(1, 100))
    assert result["bound"].hi < 1
    assert result["shape"].lo > 0


def test_independence_heuristic():
    assert independence_heuristic(Fraction(1, 2), Fraction(3, 4), 1) == quarter
    assert independence_heuristic(quarter, quarter, 1) == 0

    with pytest.raises(ValueError):
        independence_heuristic(2, 0, 1)


def test_block_length():
    assert block_length(1, Fraction(1, 3), Fraction(1, 2)) == 1
    assert block_length(Fraction(1, 2), Fraction(1, 50), Fraction(1, 2)) == 3

    with pytest.raises(ValueError):
        block_length(1, 1, 1)


def test_inequality_check():
    assert inequality_check(1, 1, 1, Fraction(1, 2), 1)
    assert inequality_check(Fraction(1, 100), 7, Fraction(1, 3), Fraction(1, 3), Fraction(2, 3))

    with pytest.raises(ValueError):
        inequality_check(0, 1, 1, 1, 1)


def test_inequality_sweep():
    assert inequality_sweep(200, seed=4) == []


def test_survivor_tree_null():
    params = GameParams.absolute(Fraction(1, 10), quarter, Fraction(1, 8))
    report = survivor_tree(alice_null(params), quarter, 1, 1, Fraction(1, 2), 2)

    assert report.base == 4
    assert [s["min"] for s in report.levels] == [4, 4]
    assert report.levels[1]["survivors"] == 16
    assert report.dimension.lo == report.dimension.hi == 1


def test_survivor_tree_invalid():
    params = GameParams.absolute(Fraction(1, 10), quarter, Fraction(1, 8))

    with pytest.raises(ValueError):
        survivor_tree(alice_null(params), Fraction(1, 3), 1, 1, 1, 1)
    with pytest.raises(ValueError):
        survivor_tree(alice_null(params), quarter, 0, 1, 1, 1)


def test_loglog_slope():
    assert loglog_slope([1, 10, 100], [1, 100, 10000]) == pytest.approx(2)


def test_budget_trend():
    rows = budget_trend([Fraction(1, 100)])

    assert rows[0]["k"] == 9
    assert rows[0]["ratio_lo"] <= rows[0]["ratio_hi"]


def test_default_k2():
    assert default_k2(Fraction(1, 10)) == 100
    assert default_k2(Fraction(1, 2)) == 4

    with pytest.raises(ValueError):
        default_k2(1)


def test_inequality_sweep_processes():
    assert inequality_sweep(300, seed=2, n_jobs=2) == inequality_sweep(300, seed=2) == []


def test_budget_trend_band():
    rows = budget_trend([Fraction(1, 100), Fraction(1, 1000)], n_jobs=2)

    assert [row["alpha"] for row in rows] == [Fraction(1, 100), Fraction(1, 1000)]
    assert rows[0]["k"] < rows[1]["k"]
    assert rows[1]["ratio_hi"] <= 2 * rows[0]["ratio_lo"]
