import pytest

from fractions import Fraction

from schmidtools.arith.interval import (Interval, Ball2, Similarity, IDENTITY,
                                        interval_relate, ball_from_json)
from schmidtools.arith.farey import farey_neighbors, farey_between


I = Interval(0, 1)
J = Interval(Fraction(1, 3), Fraction(2, 3))
K = Interval(1, 2)
B = Ball2((0, 0), 1)


def test_interval_properties():
    assert I.center == Fraction(1, 2)
    assert I.radius == Fraction(1, 2)
    assert J.diameter == Fraction(1, 3)
    assert Interval.from_center(Fraction(1, 2), Fraction(1, 6)) == J


def test_interval_invalid():
    with pytest.raises(ValueError):
        Interval(1, 0)
    with pytest.raises(ValueError):
        Interval.from_center(0, -1)
    with pytest.raises(AttributeError):
        I.lo = 2


def test_interval_containment():
    assert Fraction(1, 3) in J
    assert 1 not in J
    assert I.contains_ball(J)
    assert not J.contains_ball(I)


def test_interval_intersection():
    assert I.intersects(K)
    assert I.intersection(K) == Interval(1, 1)
    assert J.intersection(K) is None
    assert J.distance(K) == Fraction(1, 3)


def test_interval_relate():
    rel = interval_relate(I, K)
    assert rel.touching
    assert not rel.disjoint

    rel = interval_relate(J, I)
    assert rel.first_in_second
    assert rel.contained
    assert not rel.touching

    rel = interval_relate(J, K)
    assert rel.disjoint
    assert rel.gap == Fraction(1, 3)


def test_interval_json():
    assert J.to_json() == ["1/3", "2/3"]
    assert Interval.from_json(["1/3", "2/3"]) == J
    assert ball_from_json(["0/1", "1/1"]) == I


def test_ball2():
    assert B.diameter == 2
    assert (1, -1) in B
    assert (Fraction(3, 2), 0) not in B
    assert B.contains_ball(Ball2((Fraction(1, 2), 0), Fraction(1, 2)))
    assert B.intersects(Ball2((2, 2), 1))
    assert not B.intersects(Ball2((3, 0), 1))


def test_ball2_distances():
    assert B.distance_to_point((3, 0)) == 2
    # line x + y = 4: sup-norm distance from the center is 4/2
    assert B.distance_to_hyperplane((1, 1), 4) == 1
    assert ball_from_json(B.to_json()) == B


def test_similarity_on_points_and_intervals():
    g = Similarity(Fraction(1, 3), Fraction(1, 3))

    assert g(0) == Fraction(1, 3)
    assert g(I) == Interval(Fraction(1, 3), Fraction(2, 3))
    assert Similarity(-1, 1)(J) == J
    assert g.ratio == Fraction(1, 3)


def test_similarity_group():
    g = Similarity(2, -1)
    h = Similarity(Fraction(1, 2), 3)

    assert g.compose(g.inverse()) == IDENTITY
    assert g.compose(h)(5) == g(h(5))
    assert Similarity.from_json(g.to_json()) == g

    with pytest.raises(ValueError):
        Similarity(0, 1)


def test_similarity_plane():
    g = Similarity(2, (1, -1))

    assert g((1, 1)) == (3, 1)
    assert g(B) == Ball2((1, -1), 2)
    # image of x + y = 1 is x + y = 2 + 0
    assert g.hyperplane((1, 1), 1) == ((1, 1), 2)


def test_farey_neighbors():
    assert farey_neighbors(Fraction(1, 2), 3) == (True, Fraction(1, 3), Fraction(2, 3))
    assert farey_neighbors(Fraction(2, 5), 3) == (False, Fraction(1, 3), Fraction(1, 2))
    assert farey_neighbors(0, 4) == (True, Fraction(-1, 4), Fraction(1, 4))

    with pytest.raises(ValueError):
        farey_neighbors(Fraction(1, 2), 0)


def test_farey_neighbors_large_order():
    x = Fraction(1, 3)
    member, left, right = farey_neighbors(x, 10**12)

    assert member
    assert left < x < right
    assert x.denominator * left.numerator - x.numerator * left.denominator == -1
    assert right.denominator <= 10**12


def test_farey_between():
    assert farey_between(0, 1, 3) == [0, Fraction(1, 3), Fraction(1, 2),
                                      Fraction(2, 3), 1]
    assert farey_between(Fraction(2, 5), Fraction(3, 5), 4) == [Fraction(1, 2)]
    assert farey_between(1, 0, 4) == []
