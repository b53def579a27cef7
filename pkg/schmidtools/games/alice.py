"""
Strategies of Alice

Every strategy is a function of the transcript (Bob's current ball and the
turn index) returning the obstacles deleted on this turn, together with
the parameters it is legal for. Deterministic strategies can therefore be
replayed when the match loop backtracks.

Targets:
    - `alice_meps`: M_eps (outside of [0, 1] is allowed), deleting gaps;
    - `alice_ba1`: badly approximable numbers BA_1(eps), deleting the
      neighbourhoods B(p/q, eps q**-2);
    - `alice_fn`: numbers with partial quotients at most n;
    - `alice_bad_simplex`: BA_d(eps) for d = 1, 2, deleting thickened
      hyperplanes through the rational points of small denominator;
    - `combine_alice`: intersections of images of winning sets.
"""

import enum
import logging
import math

from fractions import Fraction

import numpy as np
import sympy

from schmidtools.arith.enclosure import power_enclosure, round_up
from schmidtools.arith.farey import farey_between
from schmidtools.arith.interval import IDENTITY, Ball2, Interval
from schmidtools.arith.rational import (as_rational, ceil_root, iroot,
                                        max_int_power_below)
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import ResourceLimitError, StrategyInvariantError
from schmidtools.games.game import Transcript, validate_alice_move
from schmidtools.games.params import (GameKind, GameParams, Obstacle,
                                      ObstacleClass, Verdict)
from schmidtools.parallel import fan_out
from schmidtools.sets.cantor import CantorSpec, Gap


logger = logging.getLogger(__name__)


class AliceStrategy:
    """
    Strategy of Alice with the parameters it is declared legal for.

    Args:
        responder: function transcript -> list of obstacles.
        params (GameParams): declared parameters; every answer is checked
            against them.
        tag (str): description of the target set.
        skips (list): turns on which the strategy chose not to delete.
    """

    def __init__(self, responder, params, tag="", skips=None, children=None):
        self.responder = responder
        self.params = params
        self.tag = tag
        self._skips = skips if skips is not None else []
        self.children = children or []

    def __repr__(self):
        return "<AliceStrategy: {}, {}>".format(self.tag, self.params)

    @property
    def skips(self):
        return self._skips + [s for child in self.children for s in child.skips]

    def respond(self, transcript):
        obstacles = list(self.responder(transcript))

        verdict = validate_alice_move(self.params, transcript, obstacles)
        if not verdict.legal:
            raise StrategyInvariantError("Strategy `{}` broke its declared "
                                         "parameters ({}): {}"
                                         .format(self.tag, verdict.rule,
                                                 verdict.detail))

        return obstacles

    def promote(self, alpha=None, rho=None, k=None):
        """
        Same strategy declared for larger alpha, rho or k.

        A move legal for (alpha, k) is legal for any (alpha', k') above it,
        and a first ball of radius at least rho' >= rho is allowed by rho.
        """

        alpha = self.params.alpha if alpha is None else as_rational(alpha)
        rho = self.params.rho if rho is None else as_rational(rho)
        k = self.params.k if k is None else k

        if alpha < self.params.alpha or rho < self.params.rho or k < self.params.k:
            raise ValueError("Cannot lower declared parameters {} to "
                             "alpha = `{}`, rho = `{}`, k = `{}`."
                             .format(self.params, alpha, rho, k))

        params = self.params.replace(alpha=alpha, rho=rho, k=k)

        return AliceStrategy(self.responder, params, self.tag, self._skips,
                             self.children)

    def as_potential(self, c):
        """
        View a single-deletion absolute strategy as a potential strategy.
        """

        if self.params.kind is GameKind.ABSOLUTE and self.params.k != 1:
            raise ValueError("Only strategies deleting one obstacle per turn can "
                             "be played in the potential game (k = `{}`)."
                             .format(self.params.k))

        params = GameParams.potential(self.params.alpha, self.params.beta, c,
                                      self.params.rho,
                                      obstacles=self.params.obstacles,
                                      dimension=self.params.dimension)

        return AliceStrategy(self.responder, params, self.tag, self._skips,
                             self.children)


def alice_null(params, tag="null"):
    """
    Alice deleting nothing.
    """

    return AliceStrategy(lambda transcript: [], params, tag)


def _meps_gaps_meeting(spec, ball, n):
    # gaps of stage <= n whose closed hull meets the closed ball
    found = []
    stack = [(Interval(0, 1), 0, "")]

    while stack:
        J, stage, address = stack.pop()
        gap = spec.gap_of(J)

        if gap.lo <= ball.hi and ball.lo <= gap.hi:
            found.append(Gap(stage, address, gap))

        if stage < n:
            for child, letter in zip(spec.children(J), "LR"):
                if child.lo <= ball.hi and ball.lo <= child.hi:
                    stack.append((child, stage + 1, address + letter))

    return found


def _meps_gap_to_delete(gaps, ball):
    """
    Gap deleted among those meeting the ball.

    Two gaps of stage <= n can both meet B only when B is the construction
    interval between them and touches each at one endpoint; nothing is
    deleted then. A single gap touching B is deleted.
    """

    if len(gaps) <= 1:
        return gaps[0] if gaps else None

    inner = [g for g in gaps if g.hull.lo < ball.hi and ball.lo < g.hull.hi]
    if len(inner) > 1:
        raise StrategyInvariantError("Ball {} meets {} gaps: {}."
                                     .format(ball, len(inner), inner))

    return inner[0] if inner else None


def alice_meps(spec, beta):
    """
    Strategy for the target M_eps together with the complement of [0, 1].

    On Bob's ball B, let n be the largest integer with lambda**(n+1) >= |B|.
    Gaps of stages up to n are lambda**(n+1)-separated, so at most one of
    them meets B, up to a ball touching two of them at its endpoints.
    Alice deletes the closed hull of that gap when this is legal and
    records a skip otherwise.

    Declared parameters: alpha = 2 eps/(1 - eps) / beta, rho = lambda beta/2.

    :param spec: Cantor set.
    :type spec: CantorSpec
    :param beta: Bob's contraction parameter, in (0, 1).
    :rtype: AliceStrategy
    """

    if not isinstance(spec, CantorSpec):
        spec = CantorSpec(spec)

    beta = as_rational(beta)
    if not 0 < beta < 1:
        raise ValueError("Beta `{}` must lie in (0, 1).".format(beta))

    eps = spec.epsilon
    lam = spec.lam
    alpha = 2 * eps / (1 - eps) / beta
    params = GameParams.absolute(alpha, beta, lam * beta / 2, k=1)

    skips = []

    def responder(transcript):
        ball = transcript.current_ball
        size = ball.diameter

        if size == 0 or lam < size:
            return []

        n = 0
        while lam**(n + 2) >= size:
            n += 1

        gap = _meps_gap_to_delete(_meps_gaps_meeting(spec, ball, n), ball)

        if gap is None:
            return []

        obstacle = Obstacle.from_interval(gap.hull, turn=transcript.turn)

        if obstacle.thickness > params.alpha * ball.radius:
            logger.warning("Gap %s of stage %d is too large to be deleted on "
                           "turn %d.", gap.hull, gap.stage, transcript.turn)
            skips.append({"turn": transcript.turn, "stage": gap.stage,
                          "address": gap.address})
            return []

        return [obstacle]

    return AliceStrategy(responder, params, "M_eps({})".format(eps), skips)


def ba1_band(eps, beta, length):
    """
    Denominators q with length < (1 - 2 eps) q**-2 <= length / beta.

    Returns:
        (q_min, q_max), empty when q_min > q_max.
    """

    scale = (1 - 2 * eps) / length
    q_max = max_int_power_below(scale, 2)
    q_min = max(1, ceil_root(beta * scale, 2))

    return q_min, q_max


def ba1_members_meeting(eps, beta, ball):
    """
    Members B(p/q, eps q**-2) of the collection C_l (l = |ball|) which meet
    the ball.
    """

    q_min, q_max = ba1_band(eps, beta, ball.diameter)

    if q_max < q_min:
        return []

    reach = eps / q_min**2
    members = []

    for r in farey_between(ball.lo - reach, ball.hi + reach, q_max):
        q = r.denominator
        if q < q_min:
            continue
        delta = Interval.from_center(r, eps / q**2)
        if delta.intersects(ball):
            members.append(delta)

    return members


def alice_ba1(eps, beta):
    """
    Strategy for the badly approximable numbers BA_1(eps).

    With l the length of Bob's ball, Alice deletes the unique member of
    C_l = {B(p/q, eps q**-2) : l < (1 - 2 eps) q**-2 <= l / beta} meeting
    it. Requires 0 < eps < 1/2 and (eps/(1 - eps))**2 <= beta < 1.

    Declared parameters: alpha = 2 eps/(1 - 2 eps) / beta, rho = beta/2.
    """

    eps = as_rational(eps)
    beta = as_rational(beta)

    if not 0 < eps < Fraction(1, 2):
        raise ValueError("Epsilon `{}` must lie in (0, 1/2).".format(eps))
    if not (eps / (1 - eps))**2 <= beta < 1:
        raise ValueError("Beta `{}` must satisfy (eps/(1-eps))**2 <= beta < 1."
                         .format(beta))

    alpha = 2 * eps / (1 - 2 * eps) / beta
    params = GameParams.absolute(alpha, beta, beta / 2, k=1)

    def responder(transcript):
        ball = transcript.current_ball
        if ball.diameter == 0:
            return []

        members = ba1_members_meeting(eps, beta, ball)

        if len(members) > 1:
            raise StrategyInvariantError("Ball {} meets {} members of C_l: {}."
                                         .format(ball, len(members), members))

        return [Obstacle.from_interval(m, turn=transcript.turn) for m in members]

    return AliceStrategy(responder, params, "BA_1({})".format(eps))


def alice_fn(n, beta):
    """
    Strategy for F_n (with the complement of [0, 1]), through
    [0, 1] n BA_1(1/(n+1)) contained in F_n. Requires 1/n**2 <= beta < 1.

    Declared parameters: alpha = 2/(n - 1) / beta, rho = beta/2.
    """

    if n < 2:
        raise ValueError("F_n needs n >= 2, got `{}`.".format(n))

    beta = as_rational(beta)
    if not Fraction(1, n**2) <= beta < 1:
        raise ValueError("Beta `{}` must satisfy 1/n**2 <= beta < 1 for n = {}."
                         .format(beta, n))

    strategy = alice_ba1(Fraction(1, n + 1), beta)
    strategy.tag = "F_{}".format(n)

    return strategy


def simplex_constant(d):
    """
    Rational bounds (lower, upper) of (d! V_d)**(-1/d) with V_d = 2**d the
    volume of the unit ball of the supremum norm.
    """

    if d == 1:
        return Fraction(1, 2), Fraction(1, 2)
    if d == 2:
        # (2 * 4)**(-1/2) = sqrt(2)/4
        scale = 2**40
        r = iroot(2 * scale**2, 2)
        return Fraction(r, 4 * scale), Fraction(r + 1, 4 * scale)

    raise ValueError("Dimension `{}` must be 1 or 2.".format(d))


def _to_sympy(x):
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(x):
    return Fraction(int(x.p), int(x.q))


def simplex_points(center, radius, q_max, cap=None):
    """
    Rational points p/q with q <= q_max in the closed sup-norm ball.
    """

    cap = cap or DEFAULTS["cap:simplex_denominator"]
    if q_max > cap:
        raise ResourceLimitError("simplex denominator", cap, q_max)

    if len(center) == 1:
        x, = center
        return [(r,) for r in farey_between(x - radius, x + radius, q_max)]

    x, y = center
    points = set()

    for q in range(1, q_max + 1):
        xs = range(math.ceil((x - radius) * q), math.floor((x + radius) * q) + 1)
        ys = range(math.ceil((y - radius) * q), math.floor((y + radius) * q) + 1)
        for p1 in xs:
            for p2 in ys:
                points.add((Fraction(p1, q), Fraction(p2, q)))

    return sorted(points)


def affinely_dependent(points):
    """
    Whether the points lie in a common affine hyperplane.
    """

    if not points:
        return True

    d = len(points[0])
    if len(points) <= d:
        return True

    base = points[0]
    rows = [[_to_sympy(a - b) for a, b in zip(p, base)] for p in points[1:]]

    return sympy.Matrix(rows).rank() < d


def fit_hyperplane(points):
    """
    Affine hyperplane (normal, offset) containing affinely dependent points
    of the plane.
    """

    if len(points) == 1:
        x, y = points[0]
        return (Fraction(0), Fraction(1)), y

    rows = [[_to_sympy(x), _to_sympy(y), -1] for x, y in points]
    kernel = sympy.Matrix(rows).nullspace()

    if not kernel:
        raise StrategyInvariantError("Points {} are not collinear.".format(points))

    a, b, c = (_from_sympy(v) for v in kernel[0])

    return (a, b), c


def alice_bad_simplex(eps, beta, d):
    """
    Strategy for BA_d(eps), d = 1, 2, deleting thickened hyperplanes.

    With rho_m the radius of Bob's ball, Q is given by
    rho_m = K Q**(-(d+1)/d) where K = (d! V_d)**(-1/d) - eps/beta. The
    rational points of denominator q < Q in the ball of radius
    s = rho_m + (eps/beta) Q**(-(d+1)/d) around the center lie in an affine
    hyperplane, whose (alpha rho_m)-thickening Alice deletes.

    K is replaced by a rational lower bound and Q by the integer bound
    q**(d+1) < (K/rho_m)**d, which keeps every comparison exact.

    Declared parameters: alpha = (eps/beta)/K, rho = beta (d! V_d)**(-1/d) - eps.
    """

    eps = as_rational(eps)
    beta = as_rational(beta)

    if not 0 < beta < 1:
        raise ValueError("Beta `{}` must lie in (0, 1).".format(beta))
    if eps <= 0:
        raise ValueError("Epsilon `{}` must be positive.".format(eps))

    kappa_lo, kappa_hi = simplex_constant(d)
    K = kappa_lo - eps / beta

    if K <= 0:
        raise ValueError("Parameters eps = `{}`, beta = `{}` violate "
                         "(d! V_d)**(1/d) eps < beta.".format(eps, beta))

    alpha = eps / beta / K
    obstacles = ObstacleClass.POINTS if d == 1 else ObstacleClass.HYPERPLANES
    params = GameParams.absolute(alpha, beta, beta * kappa_hi - eps, k=1,
                                 obstacles=obstacles, dimension=d)

    def responder(transcript):
        ball = transcript.current_ball
        rho_m = ball.radius
        turn = transcript.turn

        q_max = max_int_power_below((K / rho_m)**d, d + 1)
        if q_max < 1:
            return []

        s = rho_m * kappa_lo / K
        center = (ball.center,) if d == 1 else ball.center
        points = simplex_points(center, s, q_max)

        if not points:
            return []

        if not affinely_dependent(points):
            raise StrategyInvariantError("Rational points {} with q <= {} near {} "
                                         "are affinely independent."
                                         .format(points, q_max, center))

        thickness = alpha * rho_m

        if d == 1:
            return [Obstacle.ball(points[0], thickness, turn=turn)]

        normal, offset = fit_hyperplane(points)

        return [Obstacle.hyperplane(normal, offset, thickness, turn=turn)]

    return AliceStrategy(responder, params, "BA_{}({})".format(d, eps))


class CombineMode(enum.Enum):
    ABSOLUTE_SUM = "absolute-sum"
    POTENTIAL_SUM = "potential-sum"


def _potential_alpha(alphas, c):
    # rational upper bound of (sum alpha_j**c)**(1/c)
    if len(set(alphas)) == 1 and (1 / c).denominator == 1:
        return len(alphas)**int(1 / c) * alphas[0]

    total = sum((power_enclosure(a, c) for a in alphas[1:]), power_enclosure(alphas[0], c))

    return round_up(power_enclosure(total.hi, 1 / c).hi, DEFAULTS["log:bits"])


def combine_alice(strategies, mode, conjugations=None, tag=None):
    """
    Strategy for the intersection of the images f_j(S_j) of winning sets.

    Each strategy sees the transcript pulled back through its similarity
    f_j; its obstacles are pushed forward by f_j and all are deleted
    together. Declared parameters: rho is the largest |f_j| rho_j; in the
    absolute game k is the sum of the k_j and alpha the largest alpha_j; in
    the potential game alpha**c is the sum of the alpha_j**c (rounded up).

    :param strategies: list of AliceStrategy.
    :param mode: CombineMode (or its value).
    :param conjugations: list of Similarity, default identities.
    :rtype: AliceStrategy
    """

    mode = CombineMode(mode)
    strategies = list(strategies)
    conjugations = list(conjugations or [IDENTITY] * len(strategies))

    if not strategies:
        raise ValueError("Cannot combine an empty list of strategies.")
    if len(conjugations) != len(strategies):
        raise ValueError("Got {} similarities for {} strategies."
                         .format(len(conjugations), len(strategies)))

    params = [s.params.scaled(f.ratio) for s, f in zip(strategies, conjugations)]
    first = params[0]

    for p in params[1:]:
        if p.beta != first.beta:
            raise ValueError("Incompatible beta `{}` and `{}`.".format(first.beta, p.beta))
        if p.dimension != first.dimension:
            raise ValueError("Incompatible dimensions `{}` and `{}`."
                             .format(first.dimension, p.dimension))

    rho = max(p.rho for p in params)
    obstacles = (ObstacleClass.HYPERPLANES
                 if any(p.obstacles is ObstacleClass.HYPERPLANES for p in params)
                 else ObstacleClass.POINTS)

    if mode is CombineMode.ABSOLUTE_SUM:
        if any(p.kind is not GameKind.ABSOLUTE for p in params):
            raise ValueError("Absolute sum needs absolute strategies.")
        combined = GameParams.absolute(max(p.alpha for p in params), first.beta, rho,
                                       k=sum(p.k for p in params), obstacles=obstacles,
                                       dimension=first.dimension,
                                       avoidance=first.avoidance)
    else:
        if any(p.kind is not GameKind.POTENTIAL for p in params):
            raise ValueError("Potential sum needs potential strategies.")
        if any(p.c != first.c for p in params):
            raise ValueError("Incompatible exponents c: `{}`."
                             .format([str(p.c) for p in params]))
        if first.c == 0:
            raise ValueError("Potential sum needs c > 0.")
        alpha = _potential_alpha([p.alpha for p in params], first.c)
        combined = GameParams.potential(alpha, first.beta, first.c, rho,
                                        obstacles=obstacles, dimension=first.dimension)

    pairs = list(zip(strategies, conjugations))

    def responder(transcript):
        deleted = []
        for strategy, f in pairs:
            view = transcript.mapped(f.inverse(), params=strategy.params)
            deleted.extend(o.mapped(f) for o in strategy.respond(view))

        return deleted

    tag = tag or " & ".join(s.tag for s in strategies)

    return AliceStrategy(responder, combined, tag, children=strategies)


def _turn_rng(seed, transcript):
    ball = transcript.current_ball
    return np.random.default_rng([seed, transcript.turn + 1, abs(hash(ball)) % 2**32])


def alice_random(params, seed=0, grid=64):
    """
    Random legal deletions on a rational grid inside Bob's ball.

    The draw only depends on the seed, the turn and Bob's ball, so that the
    strategy is a function of the transcript.
    """

    def radius(rng, bound):
        return bound * Fraction(int(rng.integers(1, grid + 1)), grid)

    def position(rng, lo, hi):
        return lo + (hi - lo) * Fraction(int(rng.integers(0, grid + 1)), grid)

    def responder(transcript):
        rng = _turn_rng(seed, transcript)
        ball = transcript.current_ball
        bound = params.alpha * ball.radius

        if params.kind is GameKind.ABSOLUTE:
            count = int(rng.integers(0, params.k + 1))
        elif params.c == 0:
            count = int(rng.integers(0, 2))
        else:
            count = int(rng.integers(0, 5))
            if count:
                # count * (bound/count**j)**c <= bound**c for j*c >= 1
                bound = bound / count**math.ceil(1 / params.c)

        deleted = []
        for _ in range(count):
            r = radius(rng, bound)
            if ball.dimension == 1:
                deleted.append(Obstacle.ball((position(rng, ball.lo, ball.hi),), r,
                                             turn=transcript.turn))
                continue

            point = tuple(position(rng, c - ball.radius, c + ball.radius)
                          for c in ball.center)
            if params.obstacles is ObstacleClass.HYPERPLANES:
                a, b = 0, 0
                while a == 0 and b == 0:
                    a, b = (int(v) for v in rng.integers(-3, 4, size=2))
                offset = a * point[0] + b * point[1]
                deleted.append(Obstacle.hyperplane((a, b), offset, r, turn=transcript.turn))
            else:
                deleted.append(Obstacle.ball(point, r, turn=transcript.turn))

        return deleted

    return AliceStrategy(responder, params, "random({})".format(seed))


def _ba1_brute_force(eps, beta, ball):
    # reduced p/q of the band whose member meets the ball, by enumeration
    q_min, q_max = ba1_band(eps, beta, ball.diameter)
    members = []

    for q in range(q_min, q_max + 1):
        radius = eps / q**2
        lo = math.floor((ball.lo - radius) * q)
        hi = math.ceil((ball.hi + radius) * q)
        for p in range(lo, hi + 1):
            if math.gcd(p, q) != 1:
                continue
            delta = Interval.from_center(Fraction(p, q), radius)
            if delta.intersects(ball):
                members.append(delta)

    return sorted(members, key=lambda m: (m.lo, m.hi))


def _ba1_uniqueness_case(task):
    i, eps, beta, ball = task

    members = _ba1_brute_force(eps, beta, ball)
    found = sorted(ba1_members_meeting(eps, beta, ball), key=lambda m: (m.lo, m.hi))

    if len(members) > 1:
        logger.warning("Ball %s meets %d members of C_l (eps = %s, beta = %s).",
                       ball, len(members), eps, beta)

    return {"case": i, "eps": eps, "beta": beta, "lo": ball.lo, "hi": ball.hi,
            "members": len(members), "agrees": members == found}


def ba1_uniqueness_sweep(count, seed=0, n_jobs=None):
    """
    Check on random balls that at most one member of C_l meets a ball of
    length l, whenever (eps/(1 - eps))**2 <= beta < 1.

    Each case draws eps = e/1000 with 1 <= e <= 499, beta between the lower
    bound and 1 on a grid of 64 steps, a length l = 1/m with
    2 <= m <= 10**4 and a left end on the grid of step 10**-6. The members
    are enumerated directly and compared with `ba1_members_meeting`.

    Returns:
        list of dict rows (case, eps, beta, lo, hi, members, agrees).
    """

    rng = np.random.default_rng(seed)
    tasks = []

    for i in range(count):
        eps = Fraction(int(rng.integers(1, 500)), 1000)
        lower = (eps / (1 - eps))**2
        beta = lower + (1 - lower) * Fraction(int(rng.integers(0, 64)), 64)
        lo = Fraction(int(rng.integers(0, 10**6 + 1)), 10**6)
        ball = Interval(lo, lo + Fraction(1, int(rng.integers(2, 10**4 + 1))))
        tasks.append((i, eps, beta, ball))

    return fan_out(_ba1_uniqueness_case, tasks, n_jobs, chunksize=32)


def _simplex_case(task):
    i, eps, beta, d, ball = task

    alice = alice_bad_simplex(eps, beta, d)
    transcript = Transcript(alice.params)
    transcript.record_bob(ball, Verdict.ok())

    try:
        obstacles = alice.respond(transcript)
    except StrategyInvariantError as e:
        logger.warning("Simplex strategy failed on %s: %s", ball, e)
        return {"case": i, "radius": ball.radius, "obstacles": None, "error": str(e)}

    return {"case": i, "radius": ball.radius, "obstacles": len(obstacles), "error": ""}


def simplex_sweep(count, seed=0, d=2, eps=Fraction(1, 100), beta=Fraction(1, 4),
                  n_jobs=None):
    """
    Play the simplex strategy for BA_d(eps) on random balls of radius 1/m,
    10 <= m <= 5000, centered on the grid of step 10**-4 of the unit cube.

    A row with an error means the rational points near the ball were
    affinely independent or the deletion was illegal.
    """

    rng = np.random.default_rng(seed)
    tasks = []

    for i in range(count):
        center = tuple(Fraction(int(v), 10**4) for v in rng.integers(0, 10**4 + 1, size=d))
        radius = Fraction(1, int(rng.integers(10, 5001)))
        ball = Interval.from_center(center[0], radius) if d == 1 else Ball2(center, radius)
        tasks.append((i, eps, beta, d, ball))

    return fan_out(_simplex_case, tasks, n_jobs, chunksize=16)
