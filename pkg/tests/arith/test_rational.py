import pytest

from fractions import Fraction

from schmidtools.arith.rational import (parse_rational, as_rational, iroot, exact_root,
                                        floor_root, ceil_root,
                                        max_int_power_below, is_power_of,
                                        ternary_digits, ternary_value,
                                        rational_to_json, rational_from_json)


def test_parse_rational():
    assert parse_rational("1/49") == Fraction(1, 49)
    assert parse_rational("1e-8") == Fraction(1, 10**8)
    assert parse_rational(" 0.25 ") == Fraction(1, 4)
    assert parse_rational("-3") == Fraction(-3)


def test_parse_rational_errors():
    with pytest.raises(ValueError):
        parse_rational("one half")
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_as_rational():
    assert as_rational(3) == Fraction(3)
    assert as_rational("2/6") == Fraction(1, 3)
    assert as_rational(Fraction(5, 7)) == Fraction(5, 7)


def test_as_rational_refuses_float_and_bool():
    with pytest.raises(TypeError):
        as_rational(0.1)
    with pytest.raises(TypeError):
        as_rational(True)


def test_rational_json():
    assert rational_to_json(Fraction(-2, 6)) == "-1/3"
    assert rational_to_json(4) == "4/1"
    assert rational_from_json("-1/3") == Fraction(-1, 3)
    assert rational_from_json(7) == Fraction(7)


def test_iroot():
    assert iroot(0, 3) == 0
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    assert iroot(10**20, 2) == 10**10
    assert iroot(10**40 - 1, 4) == 10**10 - 1
    assert iroot(2**64, 64) == 2

    with pytest.raises(ValueError):
        iroot(-1, 2)


def test_exact_root():
    assert exact_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert exact_root(Fraction(125, 216), 3) == Fraction(5, 6)
    assert exact_root(0, 2) == 0
    assert exact_root(Fraction(1, 2), 2) is None
    assert exact_root(Fraction(4, 3), 2) is None


def test_floor_ceil_root():
    assert floor_root(Fraction(17, 2)) == 2
    assert ceil_root(Fraction(17, 2)) == 3
    assert ceil_root(9) == 3
    assert ceil_root(0) == 0


def test_max_int_power_below():
    assert max_int_power_below(9, 2) == 2
    assert max_int_power_below(Fraction(19, 2), 2) == 3
    assert max_int_power_below(1, 3) == 0
    assert max_int_power_below(0, 2) == -1


def test_is_power_of():
    assert is_power_of(81, 3) == 4
    assert is_power_of(1, 3) == 0
    assert is_power_of(54, 3) is None


def test_ternary_digits():
    expansion = ternary_digits(Fraction(1, 4), 4)
    assert expansion.digits == [0, 2, 0, 2]
    assert expansion.exact is False

    expansion = ternary_digits(Fraction(1, 3), 2)
    assert expansion.digits == [1, 0]
    assert expansion.exact is True


def test_ternary_digits_one():
    expansion = ternary_digits(1, 3)
    assert expansion.integer_part == 1
    assert expansion.digits == [0, 0, 0]

    with pytest.raises(ValueError):
        ternary_digits(Fraction(4, 3), 2)


def test_ternary_value():
    assert ternary_value([2, 0, 2]) == Fraction(20, 27)
    assert ternary_value(ternary_digits(Fraction(17, 27), 3).digits) == Fraction(17, 27)
