import pytest

from fractions import Fraction

from schmidtools.arith.interval import Interval
from schmidtools.sets.contfrac import (CFWord, cf_expand, convergents, cf_value,
                                       cylinder_interval, exact_cylinder,
                                       cf_prefix_of_interval, folding_step,
                                       is_good, quotient_bound_holds)


def test_cfword_normalization():
    assert CFWord(0, (2, 1)) == CFWord(0, (3,))
    assert CFWord(0, (1,)) == CFWord(1)
    assert len(CFWord(0, (2, 1), normalize=False)) == 2
    assert str(CFWord(0, (1, 1, 2))) == "[0;1,1,2]"
    assert str(CFWord(4)) == "[4]"

    with pytest.raises(ValueError):
        CFWord(0, (2, 0))


def test_cfword_json():
    word = CFWord(0, (2, 1), normalize=False)

    assert word.to_json() == [0, 2, 1]
    assert CFWord.from_json([0, 2, 1]) == word
    assert word.max_quotient() == 2


def test_cf_expand():
    assert cf_expand(Fraction(3, 7)) == CFWord(0, (2, 3))
    assert cf_expand(Fraction(17, 27)) == CFWord(0, (1, 1, 1, 2, 3))
    assert cf_expand(Fraction(-1, 2)) == CFWord(-1, (2,))
    assert cf_expand(5) == CFWord(5)


def test_convergents():
    assert convergents([0, 2, 3]) == [(0, 1), (1, 2), (3, 7)]
    assert convergents(CFWord(1, (2,))) == [(1, 1), (3, 2)]
    assert cf_value(CFWord(0, (1, 1, 1, 2, 3))) == Fraction(17, 27)
    assert CFWord(0, (2, 3)).value == Fraction(3, 7)


def test_cylinder_interval():
    assert cylinder_interval((1,), 2) == Interval(Fraction(1, 2), Fraction(3, 4))
    assert cylinder_interval((2,), 2) == Interval(Fraction(1, 3), Fraction(3, 7))

    with pytest.raises(ValueError):
        cylinder_interval((), 2)
    with pytest.raises(ValueError):
        cylinder_interval((3,), 2)


def test_exact_cylinder():
    cyl = exact_cylinder(CFWord(0, (2,), normalize=False))
    assert cyl == (Fraction(1, 3), Fraction(1, 2), False, True)

    cyl = exact_cylinder(CFWord(0, (1, 1), normalize=False))
    assert cyl == (Fraction(1, 2), Fraction(2, 3), False, False)

    assert exact_cylinder([3]) == (3, 4, True, False)


def test_cf_prefix_of_interval():
    assert cf_prefix_of_interval(Interval(Fraction(2, 5), Fraction(3, 7))) == CFWord(0, (2,))
    assert len(cf_prefix_of_interval(Interval(Fraction(1, 3), Fraction(2, 3)))) == 0

    prefix = cf_prefix_of_interval(Interval(Fraction(3, 5), Fraction(5, 8)))
    assert prefix.quotients == (1, 1)

    with pytest.raises(ValueError):
        cf_prefix_of_interval(Interval(0, Fraction(1, 2)))


def test_folding_step():
    assert folding_step(Fraction(17, 27)) == Fraction(1376, 2187)
    assert folding_step(Fraction(1, 3)) == Fraction(8, 27)


def test_is_good():
    check = is_good(Fraction(17, 27))
    assert check.good
    assert check.rational.power_of_3_exponent == 3

    assert not is_good(Fraction(1, 2)).good
    assert is_good(Fraction(1, 3)).reason == "fewer than 4 partial quotients"
    assert not is_good(Fraction(4, 3)).good


def test_quotient_bound_holds():
    assert quotient_bound_holds(CFWord(0, (1, 1, 1, 2, 3)), 3)
    assert not quotient_bound_holds(CFWord(0, (1, 1, 1, 2, 3)), 2)
