import pytest

from fractions import Fraction

from schmidtools.arith.interval import Interval, Similarity
from schmidtools.exceptions import ResourceLimitError
from schmidtools.sets.cantor import (CantorSpec, TERNARY, Membership,
                                     interval_of_address, stage_intervals,
                                     gaps_up_to, interval_meets_meps,
                                     deepest_containing,
                                     intersects_ternary_cantor, is_endpoint,
                                     endpoints, thickness, linked)


third = Fraction(1, 3)


def test_cantor_spec():
    assert TERNARY.lam == third
    assert CantorSpec(Fraction(1, 49)).lam == Fraction(24, 49)
    assert CantorSpec("1/5").epsilon == Fraction(1, 5)

    with pytest.raises(ValueError):
        CantorSpec(0)
    with pytest.raises(ValueError):
        CantorSpec(1)


def test_stage_intervals():
    stage = stage_intervals(TERNARY, 2)

    assert [s.address for s in stage] == ["LL", "LR", "RL", "RR"]
    assert stage[1].interval == Interval(Fraction(2, 9), third)
    assert stage_intervals(TERNARY, 0)[0].interval == Interval(0, 1)
    assert interval_of_address(TERNARY, "LR") == stage[1].interval


def test_stage_intervals_cap():
    with pytest.raises(ResourceLimitError):
        stage_intervals(TERNARY, 5, cap=16)
    with pytest.raises(ValueError):
        stage_intervals(TERNARY, -1)
    with pytest.raises(ValueError):
        interval_of_address(TERNARY, "LX")


def test_gaps_up_to():
    gaps = gaps_up_to(TERNARY, 1)

    assert len(gaps) == 3
    assert gaps[0].hull == Interval(third, 2 * third)
    assert gaps[1].hull == Interval(Fraction(1, 9), Fraction(2, 9))
    assert gaps[2].hull == Interval(Fraction(7, 9), Fraction(8, 9))

    spec = CantorSpec(Fraction(1, 5))
    assert all(g.hull.diameter == spec.epsilon * spec.lam**g.stage
               for g in gaps_up_to(spec, 3))


def test_interval_meets_meps_empty():
    meet = interval_meets_meps(TERNARY, Interval(Fraction(2, 5), Fraction(3, 5)), 5)

    assert meet.status is Membership.EMPTY
    assert meet.witness == Interval(third, 2 * third)

    meet = interval_meets_meps(TERNARY, Interval(2, 3), 5)
    assert meet.status is Membership.EMPTY
    assert meet.witness is None


def test_interval_meets_meps_nonempty():
    meet = interval_meets_meps(TERNARY, Interval(Fraction(3, 10), Fraction(2, 5)), 5)

    assert meet.status is Membership.NONEMPTY
    assert meet.witness == third


def test_interval_meets_meps_unknown():
    quarter = Fraction(1, 4)
    meet = interval_meets_meps(TERNARY, Interval(quarter, quarter), 6)

    assert meet.status is Membership.UNKNOWN


def test_deepest_containing():
    found = deepest_containing(TERNARY, Interval(Fraction(2, 9), third))

    assert found.address == "LR"
    assert deepest_containing(TERNARY, Interval(0, 2)) is None


def test_intersects_ternary_cantor():
    assert intersects_ternary_cantor(Interval(Fraction(2, 5), Fraction(3, 5))) == (False, None)
    assert (intersects_ternary_cantor(Interval(Fraction(2, 5), Fraction(7, 10)))
            == (True, 2 * third))

    quarter = Fraction(1, 4)
    assert intersects_ternary_cantor(Interval(quarter, quarter)) == (True, quarter)
    assert intersects_ternary_cantor(Interval(2, 3)) == (False, None)


def test_is_endpoint():
    check = is_endpoint(TERNARY, Fraction(2, 9))
    assert check.is_endpoint
    assert check.address == "LR"

    check = is_endpoint(TERNARY, Fraction(1, 4))
    assert not check.is_endpoint
    assert check.decided

    assert not is_endpoint(TERNARY, Fraction(1, 2)).is_endpoint
    assert not is_endpoint(TERNARY, 2).is_endpoint


def test_endpoints():
    assert endpoints(TERNARY, 1) == [0, third, 2 * third, 1]
    assert len(endpoints(TERNARY, 3)) == 16


def test_thickness():
    assert thickness(TERNARY) == 1
    assert thickness(CantorSpec(Fraction(1, 5))) == 2


def test_linked():
    whole = Interval(0, 1)

    pair = linked(TERNARY, whole, whole, Similarity(1, 0), 4)
    assert pair.linked
    assert pair.first_in_second == 0

    pair = linked(TERNARY, whole, whole, Similarity(1, 5), 4)
    assert not pair.linked
