"""
Middle-epsilon Cantor sets

M_eps is obtained from [0, 1] by repeatedly removing from every interval the
open middle interval of relative length eps. Construction intervals are
addressed by words over {L, R}: the interval of address w has length
lambda**len(w) with lambda = (1 - eps)/2.

Gaps are returned as closed hulls of the removed open intervals. Membership
of a general interval is only semi-decided (`interval_meets_meps`), but the
two cases used by the certificates are decided exactly: endpoints of
construction intervals (`is_endpoint`) and the ternary set
(`intersects_ternary_cantor`).
"""

import enum
import logging

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from schmidtools.arith.interval import Interval
from schmidtools.arith.rational import as_rational
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import ResourceLimitError


logger = logging.getLogger(__name__)


Gap = namedtuple("Gap", ["stage", "address", "hull"])
StageInterval = namedtuple("StageInterval", ["address", "interval"])
EndpointCheck = namedtuple("EndpointCheck", ["is_endpoint", "address", "decided"])


class Membership(enum.Enum):
    EMPTY = "empty-certified"
    NONEMPTY = "nonempty-certified"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MepsMeet:
    """
    Answer of `interval_meets_meps`.

    For NONEMPTY the witness is a construction endpoint lying in the
    interval, for EMPTY it is the hull of the gap whose interior contains
    the interval (None when the interval misses [0, 1]).
    """

    status: Membership
    witness: object = None
    stage: int = 0
    address: str = ""


@dataclass(frozen=True)
class CantorSpec:
    """
    Middle-eps Cantor set.

    :param epsilon: relative length of the removed middle intervals, in
        (0, 1).
    """

    epsilon: Fraction

    def __post_init__(self):
        eps = as_rational(self.epsilon)
        if not 0 < eps < 1:
            raise ValueError("Epsilon `{}` must lie in (0, 1).".format(eps))
        object.__setattr__(self, "epsilon", eps)

    @property
    def lam(self):
        return (1 - self.epsilon) / 2

    def __repr__(self):
        return "<CantorSpec: epsilon = {}, lambda = {}>".format(self.epsilon,
                                                                  self.lam)

    def children(self, J):
        step = self.lam * J.diameter
        return (Interval(J.lo, J.lo + step), Interval(J.hi - step, J.hi))

    def gap_of(self, J):
        step = self.lam * J.diameter
        return Interval(J.lo + step, J.hi - step)

    def to_json(self):
        return {"epsilon": "{}/{}".format(self.epsilon.numerator,
                                          self.epsilon.denominator)}


TERNARY = CantorSpec(Fraction(1, 3))


def _check_cap(n, what, cap_key, cap=None):
    cap = cap or DEFAULTS[cap_key]
    if 2**n > cap:
        raise ResourceLimitError(what, cap, 2**n)


def interval_of_address(spec, address):
    """
    Construction interval with the given {L, R} address.
    """

    lo = Fraction(0)
    length = Fraction(1)

    for letter in address:
        if letter == "R":
            lo += length - spec.lam * length
        elif letter != "L":
            raise ValueError("Address letter `{}` must be L or R.".format(letter))
        length *= spec.lam

    return Interval(lo, lo + length)


def stage_intervals(spec, n, cap=None):
    """
    Construction intervals of stage n, from left to right.

    Args:
        spec: Cantor set.
        n: stage (0 gives [0, 1]).
        cap: maximal number of intervals, default `DEFAULTS["cap:stage_intervals"]`.

    Returns:
        list of `StageInterval` (address, interval).
    """

    if n < 0:
        raise ValueError("Stage `{}` must be non-negative.".format(n))

    _check_cap(n, "stage intervals", "cap:stage_intervals", cap)

    current = [("", Fraction(0))]
    length = Fraction(1)
    shift = 1 - spec.lam

    for _ in range(n):
        shifted = shift * length
        current = [item for addr, lo in current
                   for item in ((addr + "L", lo), (addr + "R", lo + shifted))]
        length *= spec.lam

    return [StageInterval(addr, Interval(lo, lo + length)) for addr, lo in current]


def gaps_up_to(spec, n, cap=None):
    """
    Closed hulls of the gaps removed at stages 0 to n.

    The gap of stage j has length lambda**j * eps; there are 2**(n+1) - 1 of
    them, listed by stage and then from left to right.
    """

    if n < 0:
        raise ValueError("Stage `{}` must be non-negative.".format(n))

    _check_cap(n + 1, "gaps", "cap:stage_intervals", cap)

    gaps = []
    for stage in range(n + 1):
        for addr, J in stage_intervals(spec, stage, cap):
            gaps.append(Gap(stage, addr, spec.gap_of(J)))

    return gaps


def interval_meets_meps(spec, I, depth):
    """
    Semi-decide whether I meets M_eps by following the construction down to
    the given stage.

    The search follows the single construction path containing I: as long
    as I contains no endpoint of the current interval J, it lies in the
    interior of J and therefore in the interior of one child or of the gap.

    :param spec: Cantor set.
    :param I: closed interval.
    :param depth: last stage whose gaps are examined.
    :rtype: MepsMeet
    """

    J = Interval(0, 1)
    address = ""

    if not I.intersects(J):
        return MepsMeet(Membership.EMPTY, None, 0, "")

    for stage in range(depth + 1):
        if I.contains_ball(J) or J.lo in I:
            return MepsMeet(Membership.NONEMPTY, J.lo, stage, address)
        if J.hi in I:
            return MepsMeet(Membership.NONEMPTY, J.hi, stage, address)

        gap = spec.gap_of(J)
        left, right = spec.children(J)

        if gap.lo in I:
            return MepsMeet(Membership.NONEMPTY, gap.lo, stage + 1, address + "L")
        if gap.hi in I:
            return MepsMeet(Membership.NONEMPTY, gap.hi, stage + 1, address + "R")

        if gap.lo < I.lo and I.hi < gap.hi:
            return MepsMeet(Membership.EMPTY, gap, stage, address)
        elif I.hi < gap.lo:
            J, address = left, address + "L"
        else:
            J, address = right, address + "R"

    return MepsMeet(Membership.UNKNOWN, J, depth + 1, address)


def deepest_containing(spec, I, max_stage=None):
    """
    Deepest construction interval containing I.

    Returns:
        `StageInterval`, or None if I is not inside [0, 1].
    """

    J = Interval(0, 1)
    if not J.contains_ball(I):
        return None

    max_stage = max_stage or DEFAULTS["cap:endpoint_stages"]
    address = ""

    for _ in range(max_stage):
        left, right = spec.children(J)
        if left.contains_ball(I):
            J, address = left, address + "L"
        elif right.contains_ball(I):
            J, address = right, address + "R"
        else:
            break

    return StageInterval(address, J)


def intersects_ternary_cantor(I, cap=None):
    """
    Decide whether I meets the ternary Cantor set.

    Computes the least point y >= I.lo of the set: x is followed down the
    ternary construction in renormalized coordinates; landing in a removed
    middle third lifts y to the left end of the right child, and a repeated
    coordinate means x itself belongs to the set.

    Returns:
        (meets, witness), the witness being the least point of the set in I
        (None when there is none).
    """

    I = I.clamp(0, 1)
    if I is None:
        return (False, None)

    cap = cap or DEFAULTS["cap:ternary_orbit"]

    u = I.lo
    offset = Fraction(0)
    scale = Fraction(1)
    seen = set()

    while True:
        if u <= 0:
            y = offset
            break
        if u in seen:
            y = I.lo
            break
        if len(seen) >= cap:
            raise ResourceLimitError("ternary orbit", cap, len(seen) + 1)
        seen.add(u)

        if u <= Fraction(1, 3):
            u = 3 * u
        elif u <= Fraction(2, 3):
            y = offset + 2 * scale / 3
            break
        else:
            u = 3 * u - 2
            offset += 2 * scale / 3
        scale /= 3

    if y <= I.hi:
        return (True, y)

    return (False, None)


def is_endpoint(spec, x, cap=None):
    """
    Decide whether x is an endpoint of a construction interval.

    The coordinate of x relative to the current construction interval is
    renormalized at each stage; it is eventually periodic, so a repeated
    coordinate proves that x is not an endpoint (it then lies in M_eps).

    Returns:
        `EndpointCheck` with the address of a construction interval having x
        as an endpoint; `decided` is False only when the cap was reached.
    """

    x = as_rational(x)

    if x < 0 or x > 1:
        return EndpointCheck(False, None, True)

    cap = cap or DEFAULTS["cap:endpoint_stages"]
    lam = spec.lam

    u = x
    address = ""
    seen = set()

    for _ in range(cap):
        if u == 0 or u == 1:
            return EndpointCheck(True, address, True)
        if u in seen:
            return EndpointCheck(False, None, True)
        seen.add(u)

        if u <= lam:
            u = u / lam
            address += "L"
        elif u >= 1 - lam:
            u = (u - (1 - lam)) / lam
            address += "R"
        else:
            return EndpointCheck(False, None, True)

    logger.warning("Endpoint descent of %s stopped after %d stages.", x, cap)

    return EndpointCheck(False, None, False)


def endpoints(spec, stage, cap=None):
    """
    Sorted endpoints of the construction intervals of the given stage.
    """

    points = set()
    for _, J in stage_intervals(spec, stage, cap):
        points.add(J.lo)
        points.add(J.hi)

    return sorted(points)


def thickness(spec):
    """
    Newhouse thickness lambda/eps of M_eps.
    """

    return spec.lam / spec.epsilon


LinkedPair = namedtuple("LinkedPair", ["linked", "first_in_second", "second_in_first"])


def linked(spec, J1, J2, image, depth):
    """
    Check that M_eps restricted to J1 and image(M_eps restricted to J2) are
    not contained in a gap of each other.

    J1 and J2 are construction intervals. The check exhibits a construction
    endpoint of the first set inside the hull image(J2) and the image of a
    construction endpoint of the second set inside J1. Together with
    thickness(spec)**2 >= 1 this proves that the two sets intersect.

    Returns:
        `LinkedPair` (linked, endpoint of the first set in image(J2), point of
        the second set in J1).
    """

    J2_image = image(J2)

    window = J1.intersection(J2_image)
    if window is None:
        return LinkedPair(False, None, None)

    first = interval_meets_meps(spec, window, depth)

    back = image.inverse()(J1).intersection(J2)
    second = interval_meets_meps(spec, back, depth) if back is not None else None

    if (first.status is not Membership.NONEMPTY or second is None
            or second.status is not Membership.NONEMPTY):
        return LinkedPair(False, None, None)

    return LinkedPair(thickness(spec) >= 1, first.witness, image(second.witness))
