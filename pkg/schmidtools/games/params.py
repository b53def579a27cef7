"""
Game parameters, obstacles and verdicts

`GameParams` holds the tuple (alpha, beta, rho, k) of the absolute game or
(alpha, beta, c, rho) of the potential game. An `Obstacle` is the closed
thickening of a point or of an affine hyperplane; its thickness is the
radius of the thickening. A `Verdict` is the answer of the legality
predicates.
"""

import enum

from dataclasses import dataclass, field, replace
from fractions import Fraction

from schmidtools.arith.interval import Interval, Ball2
from schmidtools.arith.rational import (as_rational, rational_to_json,
                                        rational_from_json)


AVOIDANCE_MODES = ("immediate", "deferred")


class GameKind(enum.Enum):
    ABSOLUTE = "absolute"
    POTENTIAL = "potential"


class ObstacleClass(enum.Enum):
    POINTS = "points"
    HYPERPLANES = "hyperplanes"


@dataclass(frozen=True)
class GameParams:
    """
    Parameters of an absolute or potential game.

    The absolute game uses `k` (maximal number of deleted balls per turn),
    the potential game uses `c` (exponent of the deletion budget; c = 0
    allows a single obstacle per turn).

    With `avoidance = "deferred"` Bob is not required to avoid the deleted
    balls immediately (as in the potential game); the clearance of the final
    ball is then checked against the whole ledger.
    """

    kind: GameKind
    alpha: Fraction
    beta: Fraction
    rho: Fraction
    k: int = 1
    c: Fraction = Fraction(0)
    obstacles: ObstacleClass = ObstacleClass.POINTS
    dimension: int = 1
    avoidance: str = "immediate"

    def __post_init__(self):
        for name in ("alpha", "beta", "rho", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

        if not isinstance(self.kind, GameKind):
            object.__setattr__(self, "kind", GameKind(self.kind))
        if not isinstance(self.obstacles, ObstacleClass):
            object.__setattr__(self, "obstacles", ObstacleClass(self.obstacles))

        if self.alpha <= 0:
            raise ValueError("Alpha `{}` must be positive.".format(self.alpha))
        if not 0 < self.beta < 1:
            raise ValueError("Beta `{}` must lie in (0, 1).".format(self.beta))
        if self.rho <= 0:
            raise ValueError("Rho `{}` must be positive.".format(self.rho))
        if self.kind is GameKind.ABSOLUTE and self.k < 1:
            raise ValueError("Absolute game needs k >= 1, got `{}`.".format(self.k))
        if self.c < 0:
            raise ValueError("Exponent c `{}` must be non-negative.".format(self.c))
        if self.dimension not in (1, 2):
            raise ValueError("Dimension `{}` must be 1 or 2.".format(self.dimension))
        if self.avoidance not in AVOIDANCE_MODES:
            raise ValueError("Avoidance mode `{}` must be one of {}."
                             .format(self.avoidance, AVOIDANCE_MODES))

    @classmethod
    def absolute(cls, alpha, beta, rho, k=1, **kwargs):
        return cls(GameKind.ABSOLUTE, alpha, beta, rho, k=k, **kwargs)

    @classmethod
    def potential(cls, alpha, beta, c, rho, **kwargs):
        return cls(GameKind.POTENTIAL, alpha, beta, rho, c=c, **kwargs)

    @property
    def immediate(self):
        return self.kind is GameKind.ABSOLUTE and self.avoidance == "immediate"

    def replace(self, **changes):
        return replace(self, **changes)

    def scaled(self, ratio):
        """
        Parameters of the image game under a similarity of the given ratio.
        """

        return replace(self, rho=self.rho * ratio)

    def as_tuple(self):
        if self.kind is GameKind.ABSOLUTE:
            return (self.alpha, self.beta, self.rho, self.k)
        return (self.alpha, self.beta, self.c, self.rho)

    def __repr__(self):
        if self.kind is GameKind.ABSOLUTE:
            text = "<GameParams: absolute, alpha = {}, beta = {}, rho = {}, k = {}>"
            return text.format(self.alpha, self.beta, self.rho, self.k)

        text = "<GameParams: potential, alpha = {}, beta = {}, c = {}, rho = {}>"
        return text.format(self.alpha, self.beta, self.c, self.rho)

    def to_json(self):
        return {"kind": self.kind.value,
                "alpha": rational_to_json(self.alpha),
                "beta": rational_to_json(self.beta),
                "rho": rational_to_json(self.rho),
                "k": self.k,
                "c": rational_to_json(self.c),
                "obstacles": self.obstacles.value,
                "dimension": self.dimension,
                "avoidance": self.avoidance}

    @classmethod
    def from_json(cls, data):
        return cls(GameKind(data["kind"]),
                   rational_from_json(data["alpha"]),
                   rational_from_json(data["beta"]),
                   rational_from_json(data["rho"]),
                   k=int(data.get("k", 1)),
                   c=rational_from_json(data.get("c", "0/1")),
                   obstacles=ObstacleClass(data.get("obstacles", "points")),
                   dimension=int(data.get("dimension", 1)),
                   avoidance=data.get("avoidance", "immediate"))


@dataclass(frozen=True)
class Obstacle:
    """
    Closed thickening N(h, r) of a point or an affine hyperplane.

    A point carrier is a tuple of coordinates; a hyperplane carrier is a
    pair (normal, offset) describing {x : normal . x = offset}. The
    thickening meets a ball iff the distance from the carrier to the ball
    is at most the thickness (closed sets: touching counts).
    """

    carrier: str
    point: tuple = None
    normal: tuple = None
    offset: Fraction = None
    thickness: Fraction = Fraction(0)
    turn: int = 0

    def __post_init__(self):
        if self.carrier not in ("point", "hyperplane"):
            raise ValueError("Obstacle carrier `{}` must be point or hyperplane."
                             .format(self.carrier))

        object.__setattr__(self, "thickness", as_rational(self.thickness))
        if self.thickness < 0:
            raise ValueError("Thickness `{}` must be non-negative."
                             .format(self.thickness))

        if self.carrier == "point":
            if isinstance(self.point, (tuple, list)):
                point = tuple(as_rational(x) for x in self.point)
            else:
                point = (as_rational(self.point),)
            object.__setattr__(self, "point", point)
        else:
            normal = tuple(as_rational(a) for a in self.normal)
            if all(a == 0 for a in normal):
                raise ValueError("Hyperplane normal `{}` is zero.".format(normal))
            object.__setattr__(self, "normal", normal)
            object.__setattr__(self, "offset", as_rational(self.offset))

    @classmethod
    def ball(cls, center, radius, turn=0):
        return cls("point", point=center, thickness=radius, turn=turn)

    @classmethod
    def from_interval(cls, I, turn=0):
        return cls("point", point=(I.center,), thickness=I.radius, turn=turn)

    @classmethod
    def hyperplane(cls, normal, offset, thickness, turn=0):
        return cls("hyperplane", normal=normal, offset=offset,
                   thickness=thickness, turn=turn)

    @property
    def dimension(self):
        return len(self.point) if self.carrier == "point" else len(self.normal)

    def distance_to(self, ball):
        """
        Distance from the carrier to the ball.
        """

        if self.carrier == "point":
            return ball.distance_to_point(self.point)
        return ball.distance_to_hyperplane(self.normal, self.offset)

    def meets(self, ball):
        return self.distance_to(ball) <= self.thickness

    def clearance(self, ball):
        """
        Signed gap between the thickened set and the ball (positive iff
        they are disjoint).
        """

        return self.distance_to(ball) - self.thickness

    def hull(self):
        """
        The thickened set as a ball, for point carriers.
        """

        if self.carrier != "point":
            raise ValueError("Only point obstacles have a ball hull.")

        if len(self.point) == 1:
            return Interval.from_center(self.point[0], self.thickness)

        return Ball2(self.point, self.thickness)

    def mapped(self, similarity):
        """
        Image of the obstacle under a similarity.
        """

        thickness = self.thickness * similarity.ratio

        if self.carrier == "point":
            return replace(self, point=similarity(self.point), thickness=thickness)

        normal, offset = similarity.hyperplane(self.normal, self.offset)

        return replace(self, normal=normal, offset=offset, thickness=thickness)

    def __repr__(self):
        if self.carrier == "point":
            where = ", ".join(str(x) for x in self.point)
            return "<Obstacle: point ({}), thickness = {}, turn = {}>".format(
                where, self.thickness, self.turn)

        return "<Obstacle: hyperplane {} . x = {}, thickness = {}, turn = {}>".format(
            self.normal, self.offset, self.thickness, self.turn)

    def to_json(self):
        data = {"carrier": self.carrier,
                "thickness": rational_to_json(self.thickness),
                "turn": self.turn}

        if self.carrier == "point":
            data["point"] = [rational_to_json(x) for x in self.point]
        else:
            data["normal"] = [rational_to_json(a) for a in self.normal]
            data["offset"] = rational_to_json(self.offset)

        return data

    @classmethod
    def from_json(cls, data):
        if data["carrier"] == "point":
            return cls("point",
                       point=tuple(rational_from_json(x) for x in data["point"]),
                       thickness=rational_from_json(data["thickness"]),
                       turn=int(data.get("turn", 0)))

        return cls("hyperplane",
                   normal=tuple(rational_from_json(a) for a in data["normal"]),
                   offset=rational_from_json(data["offset"]),
                   thickness=rational_from_json(data["thickness"]),
                   turn=int(data.get("turn", 0)))


@dataclass(frozen=True)
class Verdict:
    """
    Answer of a legality predicate. `rule` names the violated rule.
    """

    legal: bool
    rule: str = None
    detail: str = field(default="", compare=True)

    @classmethod
    def ok(cls):
        return cls(True, None, "")

    @classmethod
    def reject(cls, rule, detail):
        return cls(False, rule, detail)

    def __bool__(self):
        return self.legal

    def to_json(self):
        return {"legal": self.legal, "rule": self.rule, "detail": self.detail}

    @classmethod
    def from_json(cls, data):
        return cls(bool(data["legal"]), data.get("rule"), data.get("detail", ""))
