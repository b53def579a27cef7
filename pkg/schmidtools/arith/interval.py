"""
Closed intervals, sup-norm balls and similarities

`Interval` is the closed ball of dimension 1 and `Ball2` the closed ball of
the plane for the supremum norm. Both expose the same small interface
(`radius`, `diameter`, `contains`, `contains_ball`, `intersects`,
`distance_to_point`, `distance_to_hyperplane`, `map_affine`) so that the
game machinery does not depend on the dimension.
"""

from dataclasses import dataclass
from fractions import Fraction

from schmidtools.arith.rational import (as_rational, rational_to_json,
                                        rational_from_json)


class Interval:
    """
    Closed interval [lo, hi] with rational endpoints.

    Degenerate intervals (lo == hi) are allowed. Instances are immutable and
    hashable.

    :param lo: left endpoint.
    :type lo: Fraction, int or str
    :param hi: right endpoint, at least `lo`.
    :type hi: Fraction, int or str
    """

    __slots__ = ("lo", "hi")

    dimension = 1

    def __init__(self, lo, hi):
        lo = as_rational(lo)
        hi = as_rational(hi)

        if lo > hi:
            raise ValueError("Interval endpoints `{}` > `{}`.".format(lo, hi))

        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable.")

    @classmethod
    def from_center(cls, center, radius):
        center = as_rational(center)
        radius = as_rational(radius)

        if radius < 0:
            raise ValueError("Radius `{}` must be non-negative.".format(radius))

        return cls(center - radius, center + radius)

    @property
    def center(self):
        return (self.lo + self.hi) / 2

    @property
    def radius(self):
        return (self.hi - self.lo) / 2

    @property
    def diameter(self):
        return self.hi - self.lo

    length = diameter

    def __repr__(self):
        return "<Interval: [{}, {}]>".format(self.lo, self.hi)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __contains__(self, x):
        return self.contains(x)

    def contains(self, x):
        if isinstance(x, tuple):
            x, = x
        return self.lo <= x <= self.hi

    def contains_ball(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)

        if lo > hi:
            return None

        return Interval(lo, hi)

    def distance(self, other):
        return max(0, other.lo - self.hi, self.lo - other.hi)

    def distance_to_point(self, p):
        if isinstance(p, tuple):
            p, = p
        return max(0, self.lo - p, p - self.hi)

    def distance_to_hyperplane(self, normal, offset):
        # in dimension 1 the hyperplane a*x = b is the point b/a
        a, = normal
        return self.distance_to_point(Fraction(offset) / a)

    def map_affine(self, scale, shift):
        if isinstance(shift, tuple):
            shift, = shift
        a = scale * self.lo + shift
        b = scale * self.hi + shift

        return Interval(min(a, b), max(a, b))

    def clamp(self, lo=0, hi=1):
        return self.intersection(Interval(lo, hi))

    def to_json(self):
        return [rational_to_json(self.lo), rational_to_json(self.hi)]

    @classmethod
    def from_json(cls, data):
        lo, hi = data
        return cls(rational_from_json(lo), rational_from_json(hi))


class Ball2:
    """
    Closed ball of the plane for the supremum norm.

    The ball B((x, y), r) is the axis-aligned square [x - r, x + r] x
    [y - r, y + r]. Distances to points and lines are the sup-norm ones, so
    the distance from z to the line a.z = b is |a.z - b| / (|a_1| + |a_2|).
    """

    __slots__ = ("center", "radius")

    dimension = 2

    def __init__(self, center, radius):
        center = tuple(as_rational(c) for c in center)
        radius = as_rational(radius)

        if len(center) != 2:
            raise ValueError("Ball2 center must have 2 coordinates, got `{}`."
                             .format(len(center)))
        if radius < 0:
            raise ValueError("Radius `{}` must be non-negative.".format(radius))

        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    def __setattr__(self, name, value):
        raise AttributeError("Ball2 is immutable.")

    @property
    def diameter(self):
        return 2 * self.radius

    def __repr__(self):
        return "<Ball2: center = ({}, {}), radius = {}>".format(*self.center,
                                                                 self.radius)

    def __eq__(self, other):
        if not isinstance(other, Ball2):
            return NotImplemented
        return self.center == other.center and self.radius == other.radius

    def __hash__(self):
        return hash((self.center, self.radius))

    def __contains__(self, point):
        return self.contains(point)

    def sides(self):
        return tuple(Interval(c - self.radius, c + self.radius)
                     for c in self.center)

    def contains(self, point):
        return max(abs(p - c) for p, c in zip(point, self.center)) <= self.radius

    def contains_ball(self, other):
        gap = max(abs(p - c) for p, c in zip(other.center, self.center))
        return gap + other.radius <= self.radius

    def intersects(self, other):
        gap = max(abs(p - c) for p, c in zip(other.center, self.center))
        return gap <= self.radius + other.radius

    def distance_to_point(self, p):
        gap = max(abs(a - c) for a, c in zip(p, self.center))
        return max(0, gap - self.radius)

    def distance_to_hyperplane(self, normal, offset):
        norm1 = sum(abs(a) for a in normal)
        if norm1 == 0:
            raise ValueError("Hyperplane normal `{}` is zero.".format(normal))

        value = sum(a * c for a, c in zip(normal, self.center)) - offset

        return max(0, abs(value) / norm1 - self.radius)

    def map_affine(self, scale, shift):
        center = tuple(scale * c + s for c, s in zip(self.center, shift))
        return Ball2(center, abs(scale) * self.radius)

    def to_json(self):
        return {"center": [rational_to_json(c) for c in self.center],
                "radius": rational_to_json(self.radius)}

    @classmethod
    def from_json(cls, data):
        return cls([rational_from_json(c) for c in data["center"]],
                   rational_from_json(data["radius"]))


def ball_from_json(data):
    if isinstance(data, dict):
        return Ball2.from_json(data)
    return Interval.from_json(data)


@dataclass(frozen=True)
class IntervalRelation:
    disjoint: bool
    touching: bool
    first_in_second: bool
    second_in_first: bool
    gap: Fraction

    @property
    def contained(self):
        return self.first_in_second or self.second_in_first


def interval_relate(I, J):
    """
    Relation between two closed intervals.

    The gap distance is max(0, J.lo - I.hi, I.lo - J.hi). Two intervals are
    touching when the gap is zero and their interiors are disjoint, that is
    when they only share an endpoint.
    """

    gap = I.distance(J)
    overlap = min(I.hi, J.hi) - max(I.lo, J.lo)

    return IntervalRelation(disjoint=gap > 0,
                            touching=(gap == 0 and overlap == 0),
                            first_in_second=J.contains_ball(I),
                            second_in_first=I.contains_ball(J),
                            gap=Fraction(gap))


class Similarity:
    """
    Similarity x -> scale * x + shift with rational scale != 0.

    The shift is a rational in dimension 1 and a pair in dimension 2. The
    map acts on points, balls and (through the games module) on obstacles;
    distances are multiplied by `ratio` = |scale|.
    """

    __slots__ = ("scale", "shift")

    def __init__(self, scale=1, shift=0):
        scale = as_rational(scale)

        if scale == 0:
            raise ValueError("Similarity scale must be non-zero.")

        if isinstance(shift, (tuple, list)):
            shift = tuple(as_rational(s) for s in shift)
        else:
            shift = as_rational(shift)

        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, name, value):
        raise AttributeError("Similarity is immutable.")

    def __repr__(self):
        return "<Similarity: x -> {} x + {}>".format(self.scale, self.shift)

    def __eq__(self, other):
        if not isinstance(other, Similarity):
            return NotImplemented
        return self.scale == other.scale and self.shift == other.shift

    def __hash__(self):
        return hash((self.scale, self.shift))

    @property
    def ratio(self):
        return abs(self.scale)

    def _shift_for(self, d):
        if isinstance(self.shift, tuple):
            return self.shift
        return (self.shift,) * d

    def __call__(self, x):
        if isinstance(x, (Interval, Ball2)):
            d = x.dimension
            shift = self._shift_for(d)
            return x.map_affine(self.scale, shift if d == 2 else shift[0])
        elif isinstance(x, tuple):
            shift = self._shift_for(len(x))
            return tuple(self.scale * c + s for c, s in zip(x, shift))
        else:
            shift, = self._shift_for(1)
            return self.scale * x + shift

    def inverse(self):
        if isinstance(self.shift, tuple):
            shift = tuple(-s / self.scale for s in self.shift)
        else:
            shift = -self.shift / self.scale

        return Similarity(1 / self.scale, shift)

    def compose(self, other):
        """
        Return self o other.
        """

        if isinstance(other.shift, tuple) or isinstance(self.shift, tuple):
            d = len(other.shift) if isinstance(other.shift, tuple) else len(self.shift)
            shift = tuple(self.scale * a + b for a, b in
                          zip(other._shift_for(d), self._shift_for(d)))
        else:
            shift = self.scale * other.shift + self.shift

        return Similarity(self.scale * other.scale, shift)

    def hyperplane(self, normal, offset):
        """
        Image of the hyperplane normal . x = offset.
        """

        d = len(normal)
        shift = self._shift_for(d)
        image_offset = self.scale * offset + sum(a * s for a, s in zip(normal, shift))

        return tuple(normal), image_offset

    def to_json(self):
        if isinstance(self.shift, tuple):
            shift = [rational_to_json(s) for s in self.shift]
        else:
            shift = rational_to_json(self.shift)

        return {"scale": rational_to_json(self.scale), "shift": shift}

    @classmethod
    def from_json(cls, data):
        shift = data["shift"]
        if isinstance(shift, list):
            shift = tuple(rational_from_json(s) for s in shift)
        else:
            shift = rational_from_json(shift)

        return cls(rational_from_json(data["scale"]), shift)


IDENTITY = Similarity(1, 0)
