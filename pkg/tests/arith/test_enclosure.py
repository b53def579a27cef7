import pytest

from fractions import Fraction

from schmidtools.arith.enclosure import (Enclosure, round_down, round_up,
                                         decimal_string, log2_enclosure,
                                         log_enclosure, exp_enclosure,
                                         power_enclosure, exact_log_ratio,
                                         log_ratio, power_sum_leq)


LN2 = (Fraction("0.6931471805599452"), Fraction("0.6931471805599454"))
E = (Fraction("2.718281828459045"), Fraction("2.718281828459046"))
LOG3_2 = (Fraction("0.6309297535714574"), Fraction("0.6309297535714575"))


def test_enclosure_arithmetic():
    a = Enclosure(1, 2)
    b = Enclosure(-1, 3)

    assert a + b == Enclosure(0, 5)
    assert a - b == Enclosure(-2, 3)
    assert a * b == Enclosure(-2, 6)
    assert 1 / Enclosure(2, 4) == Enclosure(Fraction(1, 4), Fraction(1, 2))
    assert 1 - Enclosure(0, 1) == Enclosure(0, 1)
    assert 2 * a == Enclosure(2, 4)


def test_enclosure_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Enclosure(1) / Enclosure(-1, 1)


def test_enclosure_invalid():
    with pytest.raises(ValueError):
        Enclosure(2, 1)
    with pytest.raises(TypeError):
        Enclosure(0.5)


def test_enclosure_comparisons():
    a = Enclosure(1, 2)

    assert a.certainly_le(2)
    assert not a.certainly_lt(2)
    assert a.possibly_le(Enclosure(0, 1))
    assert not a.certainly_le(Enclosure(Fraction(3, 2), 3))
    assert Fraction(3, 2) in a


def test_enclosure_floor():
    assert Enclosure(Fraction(3, 2), Fraction(7, 4)).floor() == 1
    assert Enclosure(Fraction(1, 2), Fraction(3, 2)).floor() is None
    assert Enclosure(-Fraction(1, 2)).floor() == -1


def test_enclosure_json():
    a = Enclosure(Fraction(1, 3), Fraction(1, 2))
    data = a.to_json()

    assert data["lo"] == "1/3"
    assert data["decimal"] == ["0.333333", "0.500000"]
    assert Enclosure.from_json(data) == a


def test_rounding():
    assert round_down(Fraction(1, 3), 4) == Fraction(21, 64)
    assert round_up(Fraction(1, 3), 4) == Fraction(11, 32)
    assert round_down(Fraction(1, 4), 4) == Fraction(1, 4)
    assert round_down(0, 8) == 0


def test_decimal_string():
    assert decimal_string(Fraction(1, 3), 3) == "0.333"
    assert decimal_string(Fraction(1, 3), 3, up=True) == "0.334"
    assert decimal_string(-Fraction(1, 3), 2) == "-0.34"
    assert decimal_string(Fraction(7, 2), 0, up=True) == "4"


def test_log2():
    enc = log2_enclosure()

    assert LN2[0] < enc.lo <= enc.hi < LN2[1]


def test_log_enclosure():
    enc = log_enclosure(8)
    assert 3 * LN2[0] < enc.lo <= enc.hi < 3 * LN2[1]

    enc = log_enclosure(Fraction(1, 2))
    assert -LN2[1] < enc.lo <= enc.hi < -LN2[0]

    assert log_enclosure(1) == Enclosure(0)

    with pytest.raises(ValueError):
        log_enclosure(0)


def test_exp_enclosure():
    enc = exp_enclosure(1)
    assert E[0] < enc.lo <= enc.hi < E[1]

    assert exp_enclosure(0) == Enclosure(1)


def test_exp_log_inverse():
    enc = exp_enclosure(log_enclosure(Fraction(5, 7)))

    assert Fraction(5, 7) in enc
    assert enc.width < Fraction(1, 2**50)


def test_power_enclosure():
    assert power_enclosure(3, 2) == Enclosure(9)
    assert power_enclosure(2, -1) == Enclosure(Fraction(1, 2))
    assert power_enclosure(0, Fraction(1, 2)) == Enclosure(0)
    assert 2 in power_enclosure(4, Fraction(1, 2))

    with pytest.raises(ValueError):
        power_enclosure(-1, Fraction(1, 2))


def test_exact_log_ratio():
    assert exact_log_ratio(8, 4) == Fraction(3, 2)
    assert exact_log_ratio(Fraction(1, 9), 3) == -2
    assert exact_log_ratio(2, 3) is None
    assert exact_log_ratio(12, 2) is None
    assert exact_log_ratio(1, 5) == 0


def test_log_ratio():
    assert log_ratio(9, 3) == Enclosure(2)

    enc = log_ratio(2, 3)
    assert LOG3_2[0] < enc.lo <= enc.hi < LOG3_2[1]


def test_power_sum_leq():
    half = Fraction(1, 2)

    assert power_sum_leq([Fraction(1, 4), Fraction(1, 9)], 1, half)
    assert not power_sum_leq([Fraction(1, 4)] * 2, half, half)
    assert power_sum_leq([half, half], 1, 2)
    assert not power_sum_leq([Fraction(1, 4), Fraction(1, 3)], Fraction(1, 2), half)


def test_power_sum_leq_exact_roots():
    third = Fraction(1, 3)
    terms = [Fraction(1, 8), Fraction(1, 27)]

    # 1/2 + 1/3 = 5/6 = (125/216)**(1/3)
    assert power_sum_leq(terms, Fraction(125, 216), third)
    assert not power_sum_leq(terms, Fraction(124, 216), third)
    assert power_sum_leq([Fraction(1, 4), Fraction(1, 9)], Fraction(25, 36), Fraction(1, 2))


def test_power_sum_leq_degenerate():
    half = Fraction(1, 2)

    assert power_sum_leq([], 1, half)
    assert power_sum_leq([5], 1, 0)
    assert not power_sum_leq([1, 2], 5, 0)
    assert power_sum_leq([0, 0], 0, half)

    with pytest.raises(ValueError):
        power_sum_leq([1], 1, -1)
