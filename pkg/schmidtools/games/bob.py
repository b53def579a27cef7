"""
Strategies of Bob

Bob proposes his moves ranked by preference; the match loop plays the first
one and keeps the others for backtracking. Each strategy declares a decay
contract (w, b): over every w consecutive turns the radius shrinks by the
factor b < 1.
"""

import logging

from collections import namedtuple
from fractions import Fraction

import numpy as np

from schmidtools.arith.interval import Ball2, Interval
from schmidtools.arith.rational import as_rational
from schmidtools.defaults import DEFAULTS
from schmidtools.games.alice import alice_random
from schmidtools.games.game import MatchStatus, run_match
from schmidtools.games.params import GameParams
from schmidtools.parallel import fan_out
from schmidtools.sets.cantor import CantorSpec


logger = logging.getLogger(__name__)


Admissibility = namedtuple("Admissibility", ["admissible", "equality", "value"])


class BobStrategy:
    """
    Strategy of Bob.

    Args:
        proposer: function (transcript, active) -> balls ranked by
            preference; `active` lists the obstacles meeting the current
            ball. Called with an empty transcript for the first move.
        decay: contract (window, factor).
        tag: description.
        budget: number of moves the match loop may rewind.
    """

    def __init__(self, proposer, decay, tag="", budget=None):
        self.proposer = proposer
        self.decay = decay
        self.tag = tag
        self.budget = DEFAULTS["bob:backtrack_budget"] if budget is None else budget

    def __repr__(self):
        return "<BobStrategy: {}, decay = {}>".format(self.tag, self.decay)

    def candidates(self, transcript, active):
        return list(self.proposer(transcript, active))


def subdivision_admissible(k, alpha, beta):
    """
    Check k alpha + (k + 1) beta <= 1, under which Bob can subdivide his
    interval into k + 1 children separated by gaps larger than the deleted
    balls.

    :rtype: Admissibility
    """

    alpha = as_rational(alpha)
    beta = as_rational(beta)
    value = k * alpha + (k + 1) * beta

    return Admissibility(value <= 1, value == 1, value)


def subdivide(I, kplus1, beta):
    """
    The k + 1 equally spaced children of length beta |I|, from left to right.
    """

    L = I.diameter
    step = beta * L
    if kplus1 == 1:
        return [Interval(I.lo, I.lo + step)]

    gap = (1 - kplus1 * beta) * L / (kplus1 - 1)

    return [Interval(I.lo + i * (step + gap), I.lo + i * (step + gap) + step)
            for i in range(kplus1)]


def _free(children, active):
    return [child for child in children
            if not any(o.meets(child) for o in active)]


def bob_subdivision(kplus1, beta, alpha, start=None, strict=True):
    """
    Subdivision strategy: play the first child (left to right) missing every
    active obstacle.

    Args:
        kplus1: number of children k + 1 (k >= 1).
        beta: length ratio of the children.
        alpha: deletion ratio of the game, checked against
            k alpha + (k + 1) beta <= 1.
        start: first interval, default [0, 1].
        strict: if False, only (k + 1) beta <= 1 is required; survival then
            rests on backtracking and the final clearance check.
    """

    beta = as_rational(beta)
    k = kplus1 - 1

    if k < 1:
        raise ValueError("Subdivision needs k + 1 >= 2 children, got `{}`."
                         .format(kplus1))
    if kplus1 * beta > 1:
        raise ValueError("Children of ratio beta = `{}` do not fit {} times."
                         .format(beta, kplus1))

    check = subdivision_admissible(k, alpha, beta)
    if strict and not check.admissible:
        raise ValueError("Parameters k = `{}`, alpha = `{}`, beta = `{}` give "
                         "k alpha + (k+1) beta = `{}` > 1."
                         .format(k, alpha, beta, check.value))

    start = start or Interval(0, 1)

    def proposer(transcript, active):
        if not transcript.bob_moves:
            return [start]

        return _free(subdivide(transcript.current_ball, kplus1, beta), active)

    return BobStrategy(proposer, (1, beta), "subdivision({}, {})".format(kplus1, beta))


def bob_construction_survival(spec, start=None):
    """
    Play construction intervals of a Cantor set, avoiding every active
    obstacle.

    The child whose smallest clearance to the active obstacles is largest
    comes first, then the leftmost.
    """

    if not isinstance(spec, CantorSpec):
        spec = CantorSpec(spec)

    start = start or Interval(0, 1)

    def proposer(transcript, active):
        if not transcript.bob_moves:
            return [start]

        children = list(spec.children(transcript.current_ball))
        if not active:
            return children

        free = _free(children, active)

        def key(child):
            return (-min(o.clearance(child) for o in active), child.lo)

        return sorted(free, key=key)

    return BobStrategy(proposer, (1, spec.lam),
                       "construction(eps = {})".format(spec.epsilon))


def bob_random(params, seed=0, start=None, count=4, grid=64):
    """
    Random legal sub-balls on a rational grid.

    Radii are drawn in [beta r, r] and centers so that the ball stays inside
    the current one. Obstacles are only avoided where the game requires it
    (immediate avoidance).
    """

    if start is None:
        radius = max(params.rho, Fraction(1, 2))
        start = (Interval.from_center(Fraction(1, 2), radius) if params.dimension == 1
                 else Ball2((Fraction(1, 2), Fraction(1, 2)), radius))

    def draw(rng):
        return Fraction(int(rng.integers(0, grid + 1)), grid)

    def proposer(transcript, active):
        if not transcript.bob_moves:
            return [start]

        ball = transcript.current_ball
        rng = np.random.default_rng([seed, transcript.turn + 1,
                                     abs(hash(ball)) % 2**32])

        if params.immediate and transcript.alice_moves:
            avoid = transcript.alice_moves[-1]
        else:
            avoid = []

        moves = []
        for _ in range(8 * count):
            r = ball.radius * (params.beta + (1 - params.beta) * draw(rng))
            slack = ball.radius - r
            if ball.dimension == 1:
                move = Interval.from_center(ball.center - slack + 2 * slack * draw(rng), r)
            else:
                move = Ball2(tuple(c - slack + 2 * slack * draw(rng) for c in ball.center), r)

            if not any(o.meets(move) for o in avoid):
                moves.append(move)
            if len(moves) == count:
                break

        return moves

    return BobStrategy(proposer, None, "random({})".format(seed))


def _never_stuck_match(task):
    i, k, alpha, beta, seed, depth = task

    params = GameParams.absolute(alpha, beta, beta / 2, k=k)
    alice = alice_random(params, seed=seed)
    bob = bob_subdivision(k + 1, beta, alpha)
    result = run_match(params, alice, bob, depth, budget=0, max_backtracks=0)

    if result.status is not MatchStatus.DEPTH_REACHED:
        logger.warning("Subdivision stuck in match %d (k = %d, alpha = %s, beta = %s).",
                       i, k, alpha, beta)

    return {"match": i, "k": k, "alpha": alpha, "beta": beta,
            "status": result.status.value, "backtracks": result.backtracks}


def never_stuck_sweep(count, seed=0, depth=12, kmax=3, n_jobs=None):
    """
    Play random legal adversaries against the subdivision strategy at
    random parameters with k alpha + (k + 1) beta < 1.

    Each match draws k in 1..kmax, beta = 1/b with k + 2 <= b <= 4k + 4 and
    alpha = (1 - (k + 1) beta)/k * j/64 with 1 <= j <= 63. Bob may not
    backtrack.

    Returns:
        list of dict rows (match, k, alpha, beta, status, backtracks), in
        match order.
    """

    rng = np.random.default_rng(seed)
    tasks = []

    for i in range(count):
        k = int(rng.integers(1, kmax + 1))
        beta = Fraction(1, int(rng.integers(k + 2, 4 * k + 5)))
        alpha = (1 - (k + 1) * beta) / k * Fraction(int(rng.integers(1, 64)), 64)
        tasks.append((i, k, alpha, beta, int(rng.integers(0, 2**31)), depth))

    return fan_out(_never_stuck_match, tasks, n_jobs, chunksize=64)
