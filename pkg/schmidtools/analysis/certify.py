"""
Certificate pipelines

Each pipeline plays (or searches) at finite depth and returns a certificate
that the auditor re-checks from its serialized form alone:

    - `certify_ap3_meps`: 3-term progressions in M_eps, eps <= 1/49;
    - `certify_newhouse_ap4`: the progression 1/2 - 3t, ..., 1/2 + 3t in
      M_eps, eps <= 1/3;
    - `search_ap_endpoints`: longest progression of construction endpoints;
    - `certify_f19_cap_c`: a point of F_19 and the ternary Cantor set;
    - `certify_sumset_f49`: t = x + (t - x) with both terms in F_49;
    - `certify_folding_f9`: the folding chain of 17/27 and its limit in
      F_9 and the ternary Cantor set;
    - `ap_length_budget` and `find_ap_via_game`: long progressions from
      the potential game;
    - `ap_instance_diagnostics`: upper-bound quantities of a certificate.

Points produced by a game are certified through their enclosure: the final
ball of Bob avoids every deleted obstacle and lies in a construction
interval (or a continued fraction cylinder) of the target.
"""

import logging
import math

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

from schmidtools.analysis.logger import jsonify
from schmidtools.arith.enclosure import exp_enclosure, log_enclosure
from schmidtools.arith.interval import Interval, Similarity
from schmidtools.arith.rational import as_rational, ternary_digits
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import PipelineFailure, ResourceLimitError
from schmidtools.games.alice import (CombineMode, alice_fn, alice_meps,
                                     combine_alice)
from schmidtools.games.bob import bob_construction_survival, bob_subdivision
from schmidtools.games.game import MatchStatus, run_match
from schmidtools.sets.cantor import (TERNARY, CantorSpec, Membership,
                                     deepest_containing, endpoints,
                                     interval_meets_meps, interval_of_address,
                                     is_endpoint, linked, thickness)
from schmidtools.sets.contfrac import (cf_expand, cf_prefix_of_interval,
                                       folding_step, is_good,
                                       quotient_bound_holds)


logger = logging.getLogger(__name__)


NEWHOUSE_MAP = Similarity(Fraction(1, 3), Fraction(1, 3))
NEWHOUSE_WINDOW = Interval(Fraction(1, 2), Fraction(2, 3))


@dataclass
class APCertificate:
    """
    Arithmetic progression in a target set.

    `elements` are exact rationals forming the progression. Elements proved
    by an enclosure are the images of the common `parameter` interval under
    the affine maps recorded in their proofs; their value is the image of
    the midpoint.
    """

    target: dict
    elements: list
    gap: Fraction
    proofs: list
    parameter: Interval = None
    enclosure: Interval = None
    ledger: list = field(default_factory=list)
    transcript: object = None
    extra: dict = field(default_factory=dict)

    @property
    def exact(self):
        return all(p["type"] == "endpoint" for p in self.proofs)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "<APCertificate: {}, {} elements, gap = {}>".format(
            self.target.get("name"), len(self.elements), self.gap)

    def to_json(self):
        data = {"kind": "ap", "version": 1,
                "target": self.target,
                "elements": self.elements,
                "gap": self.gap,
                "proofs": self.proofs,
                "exact": self.exact,
                "parameter": self.parameter,
                "enclosure": self.enclosure,
                "ledger": self.ledger}
        data.update(self.extra)
        if self.transcript is not None:
            data["transcript"] = self.transcript

        return jsonify(data)


@dataclass
class PointCertificate:
    """
    Point of a target set given by nested intervals.
    """

    target: dict
    intervals: list
    ledger: list
    cf_prefix: object
    ternary_address: str = None
    transcript: object = None
    extra: dict = field(default_factory=dict)

    @property
    def enclosure(self):
        return self.intervals[-1]

    def __repr__(self):
        return "<PointCertificate: {}, {} intervals, prefix {}>".format(
            self.target.get("name"), len(self.intervals), self.cf_prefix)

    def to_json(self):
        data = {"kind": "point", "version": 1,
                "target": self.target,
                "intervals": self.intervals,
                "enclosure": self.enclosure,
                "ledger": self.ledger,
                "cf_prefix": self.cf_prefix,
                "ternary_address": self.ternary_address}
        data.update(self.extra)
        if self.transcript is not None:
            data["transcript"] = self.transcript

        return jsonify(data)


@dataclass
class SumsetCertificate:
    t: Fraction
    window: Interval
    x_enclosure: Interval
    x_prefix: object
    y_prefix: object
    bound: int
    ledger: list
    transcript: object = None
    game: dict = None

    @property
    def y_enclosure(self):
        return Similarity(-1, self.t)(self.x_enclosure)

    def __repr__(self):
        return "<SumsetCertificate: t = {}, x in {}>".format(self.t, self.x_enclosure)

    def to_json(self):
        data = {"kind": "sumset", "version": 1,
                "t": self.t,
                "window": self.window,
                "bound": self.bound,
                "x_enclosure": self.x_enclosure,
                "y_enclosure": self.y_enclosure,
                "x_prefix": self.x_prefix,
                "y_prefix": self.y_prefix,
                "enclosure": self.x_enclosure,
                "ledger": self.ledger,
                "game": self.game}
        if self.transcript is not None:
            data["transcript"] = self.transcript

        return jsonify(data)


@dataclass
class FoldingCertificate:
    chain: list
    y: Fraction
    enclosure: Interval
    prefix_length: int
    twos: list
    cf_prefix: object
    bound: int = 9

    def __repr__(self):
        return "<FoldingCertificate: {} steps, prefix {}>".format(len(self.chain) - 1,
                                                                  self.cf_prefix)

    def to_json(self):
        return jsonify({"kind": "folding", "version": 1,
                        "chain": [{"x": x, "cf": word, "exponent": m}
                                  for x, word, m in self.chain],
                        "y": self.y,
                        "enclosure": self.enclosure,
                        "prefix_length": self.prefix_length,
                        "twos": self.twos,
                        "cf_prefix": self.cf_prefix,
                        "bound": self.bound})


def _failure(message, result):
    diagnostic = {"status": result.status.value,
                  "backtracks": result.backtracks,
                  "blocking": [o.to_json() for o in result.blocking],
                  "transcript": result.transcript.to_json()}

    logger.warning("%s (status %s, %d blocking obstacles).", message,
                   result.status.value, len(result.blocking))

    return PipelineFailure(message, diagnostic)


def _check_result(result, what):
    if result.status is not MatchStatus.DEPTH_REACHED:
        raise _failure("{}: Bob is stuck.".format(what), result)
    if not result.cleared:
        raise _failure("{}: final ball meets the ledger.".format(what), result)


def _meps_target(spec):
    return {"name": "M_eps", "epsilon": spec.epsilon}


def _endpoint_proof(spec, x):
    check = is_endpoint(spec, x)
    if not check.is_endpoint:
        return None
    return {"type": "endpoint", "address": check.address}


def _enclosure_proof(spec, interval, scale, shift):
    found = deepest_containing(spec, interval)
    if found is None:
        return None

    return {"type": "enclosure", "interval": interval, "affine": [scale, shift],
            "address": found.address, "stage": len(found.address)}


def _sorted_progression(elements, proofs):
    pairs = sorted(zip(elements, proofs), key=lambda p: p[0])
    elements = [e for e, _ in pairs]
    proofs = [p for _, p in pairs]

    return elements, proofs, elements[1] - elements[0]


def ap3_window(a):
    """
    Window of the third element, farthest from a.
    """

    if a >= Fraction(1, 2):
        return Interval(0, Fraction(1, 6))
    return Interval(Fraction(5, 6), 1)


def ap3_strategy(spec, a, beta=Fraction(1, 6)):
    """
    Combined strategy for S_1 and S_2 = 2 S_1 - a, declared for the absolute
    game (1/4, 1/6, 1/12, k = 2).
    """

    base = alice_meps(spec, beta).promote(alpha=Fraction(1, 4), rho=Fraction(1, 24))

    return combine_alice([base, base], CombineMode.ABSOLUTE_SUM,
                         [Similarity(1, 0), Similarity(2, -a)],
                         tag="M_eps & 2 M_eps - {}".format(a))

AP3_PARAMS = (Fraction(1, 4), Fraction(1, 6), Fraction(1, 12), 2)


def game_strategy(game, epsilon=None):
    """
    Rebuild Alice and the match parameters from the game block of a
    certificate.

    Pipelines:
        - "ap3": `ap3_strategy` for M_eps, with keys "a" and "beta";
        - "ap-potential": k translates of M_eps in the potential game with
          c = 1, keys "k", "t" and "beta";
        - "fn-potential": F_n in the potential game, keys "n", "beta", "c";
        - "sumset": F_n and t - F_n, keys "n", "beta" and "t".

    Args:
        game (dict): game block, values may be "p/q" strings.
        epsilon: epsilon of M_eps for the first two pipelines.

    Returns:
        (AliceStrategy, GameParams)
    """

    pipeline = game["pipeline"]
    beta = as_rational(game["beta"])

    if pipeline == "ap3":
        alice = ap3_strategy(CantorSpec(epsilon), as_rational(game["a"]), beta)
        return alice, alice.params.replace(avoidance="deferred")

    if pipeline == "ap-potential":
        k, t = int(game["k"]), as_rational(game["t"])
        base = alice_meps(CantorSpec(epsilon), beta).as_potential(1)
        alice = combine_alice([base] * k, CombineMode.POTENTIAL_SUM,
                              [Similarity(1, -i * t) for i in range(k)],
                              tag="{}-fold M_eps".format(k))
        return alice, alice.params

    if pipeline == "fn-potential":
        alice = alice_fn(int(game["n"]), beta).as_potential(as_rational(game["c"]))
        return alice, alice.params

    if pipeline == "sumset":
        n, t = int(game["n"]), as_rational(game["t"])
        base = alice_fn(n, beta)
        alice = combine_alice([base, base], CombineMode.ABSOLUTE_SUM,
                              [Similarity(1, 0), Similarity(-1, t)],
                              tag="F_{} & {} - F_{}".format(n, t, n))
        return alice, alice.params.replace(avoidance="deferred")

    raise ValueError("Unknown game pipeline `{}`.".format(pipeline))


def meps_membership(spec, interval, stage):
    """
    Membership status of an element enclosure whose construction interval
    has the given stage, followed `DEFAULTS["meps:membership_depth"]`
    stages further.
    """

    depth = stage + DEFAULTS["meps:membership_depth"]

    return interval_meets_meps(spec, interval, depth).status


def certify_ap3_meps(epsilon, a, depth):
    """
    3-term progression {a, (a + t)/2, t} in M_eps.

    The absolute game (1/4, 1/6, 1/12, k = 2) is played with deferred
    avoidance (equality case of k alpha + (k + 1) beta = 1) between the
    combined strategy for M_eps and 2 M_eps - a and the subdivision
    strategy on the window [0, 1/6] or [5/6, 1] farthest from a.

    Args:
        epsilon: at most 1/49.
        a: endpoint of a construction interval of M_eps.
        depth: number of turns.

    Returns:
        APCertificate
    """

    spec = CantorSpec(epsilon)
    a = as_rational(a)

    if spec.epsilon > Fraction(1, 49):
        raise ValueError("Epsilon `{}` must satisfy 0 < epsilon <= 1/49."
                         .format(spec.epsilon))

    a_proof = _endpoint_proof(spec, a)
    if a_proof is None:
        raise ValueError("Point a = `{}` must be given as an endpoint of a "
                         "construction interval of M_eps.".format(a))

    game = {"pipeline": "ap3", "a": a, "beta": Fraction(1, 6)}
    alice, params = game_strategy(game, spec.epsilon)
    window = ap3_window(a)
    bob = bob_subdivision(3, params.beta, params.alpha, start=window)

    logger.info("Playing %s on %s to depth %d.", params, window, depth)

    result = run_match(params, alice, bob, depth)
    _check_result(result, "3-term progression in M_{}".format(spec.epsilon))

    E = result.enclosure
    middle = Similarity(Fraction(1, 2), a / 2)

    t_proof = _enclosure_proof(spec, E, Fraction(1), Fraction(0))
    m_proof = _enclosure_proof(spec, middle(E), Fraction(1, 2), a / 2)

    if t_proof is None or m_proof is None:
        raise _failure("Final ball leaves [0, 1].", result)

    t = E.center
    elements, proofs, gap = _sorted_progression([a, middle(t), t],
                                                [a_proof, m_proof, t_proof])

    depth_check = {"t": meps_membership(spec, E, t_proof["stage"]),
                   "middle": meps_membership(spec, middle(E), m_proof["stage"])}

    if Membership.EMPTY in depth_check.values():
        raise _failure("Enclosure lies in a gap of M_eps.", result)

    return APCertificate(_meps_target(spec), elements, gap, proofs, parameter=E,
                         enclosure=E, ledger=result.ledger,
                         transcript=result.transcript,
                         extra={"skips": alice.skips, "membership": depth_check,
                                "game": game})


def _pair_search(spec, depth, cap):
    # synchronized descent over (J1 of M_eps, J2 with g(J2) of (M_eps + 1)/3)
    g = NEWHOUSE_MAP
    half = Fraction(1, 2)
    stack = [("", "")]
    fallback = None
    nodes = 0

    while stack:
        a1, a2 = stack.pop()
        nodes += 1
        if nodes > cap:
            logger.warning("Pair search stopped after %d nodes.", cap)
            break

        J1 = interval_of_address(spec, a1)
        J2 = interval_of_address(spec, a2)
        meet = J1.intersection(g(J2))
        if meet is None or meet.intersection(NEWHOUSE_WINDOW) is None:
            continue

        for u in (J1.lo, J1.hi, g(J2.lo), g(J2.hi)):
            if half < u <= NEWHOUSE_WINDOW.hi and u in meet:
                first = is_endpoint(spec, u)
                second = is_endpoint(spec, 3 * u - 1)
                if first.is_endpoint and second.is_endpoint:
                    logger.info("Exact pair found at stages (%d, %d).", len(a1), len(a2))
                    return ("exact", u, None)

        if (fallback is None and half < meet.lo and meet.hi <= NEWHOUSE_WINDOW.hi
                and linked(spec, J1, J2, g, depth).linked):
            fallback = (a1, a2, meet)

        refine = [side for side, address in ((1, a1), (2, a2)) if len(address) < depth]
        if not refine:
            continue

        if len(refine) == 2:
            side = 1 if J1.diameter >= g(J2).diameter else 2
        else:
            side = refine[0]

        if side == 1:
            stack.extend([(a1 + "R", a2), (a1 + "L", a2)])
        else:
            stack.extend([(a1, a2 + "R"), (a1, a2 + "L")])

    if fallback is not None:
        return ("linked", None, fallback)

    return (None, None, None)


NEWHOUSE_AFFINE = ((Fraction(-3), Fraction(2)), (Fraction(-1), Fraction(1)),
                   (Fraction(1), Fraction(0)), (Fraction(3), Fraction(-1)))


def certify_newhouse_ap4(epsilon, depth, cap=None):
    """
    4-term progression {1/2 - 3t, 1/2 - t, 1/2 + t, 1/2 + 3t} in M_eps.

    With u = 1/2 + t the progression lies in M_eps iff u and 3u - 1 do (M_eps
    is symmetric around 1/2), so the search looks for u in (1/2, 2/3] in
    M_eps and in (M_eps + 1)/3. Exact endpoint pairs are preferred; otherwise
    a pair of linked construction intervals proves the intersection
    nonempty (both sets have thickness lambda/eps >= 1).

    Raises:
        PipelineFailure: nothing found at this depth (not a disproof).
    """

    spec = CantorSpec(epsilon)
    if spec.epsilon > Fraction(1, 3):
        raise ValueError("Epsilon `{}` must satisfy 0 < epsilon <= 1/3."
                         .format(spec.epsilon))

    cap = cap or DEFAULTS["cap:pair_nodes"]
    kind, u, fallback = _pair_search(spec, depth, cap)

    if kind == "exact":
        points = [s * u + c for s, c in NEWHOUSE_AFFINE]
        proofs = [_endpoint_proof(spec, x) for x in points]
        return APCertificate(_meps_target(spec), points, 2 * u - 1, proofs)

    if kind == "linked":
        a1, a2, W = fallback
        u = W.center
        points = [s * u + c for s, c in NEWHOUSE_AFFINE]
        proofs = [{"type": "linked", "interval": Similarity(s, c)(W), "affine": [s, c]}
                  for s, c in NEWHOUSE_AFFINE]
        extra = {"linked": {"first": a1, "second": a2, "image": NEWHOUSE_MAP,
                            "depth": depth, "thickness": thickness(spec)}}
        return APCertificate(_meps_target(spec), points, 2 * u - 1, proofs,
                             parameter=W, extra=extra)

    raise PipelineFailure("No 4-term progression found for epsilon = {} at depth {}."
                          .format(spec.epsilon, depth),
                          {"status": "unknown", "epsilon": str(spec.epsilon),
                           "depth": depth})


APSearch = namedtuple("APSearch", ["length", "progression", "maximal"])


def search_ap_endpoints(epsilon, stage, kmax=None, cap=None):
    """
    Longest arithmetic progression made of endpoints of construction
    intervals of the given stage.

    Only progressions that cannot be extended to the left are scanned. The
    length is capped by `kmax`.

    Returns:
        APSearch (length, first longest progression, all progressions of
        that length)
    """

    spec = epsilon if isinstance(epsilon, CantorSpec) else CantorSpec(epsilon)
    cap = cap or DEFAULTS["cap:search_endpoints"]

    if 2**(stage + 1) > cap:
        raise ResourceLimitError("stage endpoints", cap, 2**(stage + 1))

    points = endpoints(spec, stage)
    members = set(points)
    kmax = kmax or len(points)

    best = 1
    found = []

    for i, x in enumerate(points):
        for y in points[i + 1:]:
            d = y - x
            if x - d in members:
                continue

            length = 2
            while length < kmax and x + length * d in members:
                length += 1

            if length > best:
                best, found = length, []
            if length == best:
                found.append([x + j * d for j in range(length)])

    progression = found[0] if found else points[:1]

    return APSearch(best, progression, found)


def _check_prefix(interval, bound):
    if interval.lo <= 0 or interval.hi >= 1:
        return None, False

    word = cf_prefix_of_interval(interval)

    return word, quotient_bound_holds(word, bound)


def certify_f19_cap_c(depth, min_prefix=None):
    """
    Point of F_19 and the ternary Cantor set.

    Potential game (1/3, 1/3, c = 0, 1/6) between the strategy for F_19
    and Bob playing ternary construction intervals.

    Args:
        depth: number of turns.
        min_prefix: least length of the certified continued fraction
            prefix; by default `DEFAULTS["f19:min_prefix"]` from depth
            `DEFAULTS["f19:prefix_depth"]` on, no requirement below.

    Returns:
        PointCertificate

    Raises:
        PipelineFailure: Bob is stuck, or the prefix of the final ball is
            shorter than `min_prefix` or has a quotient above 19.
    """

    if depth < 1:
        raise ValueError("Depth `{}` must be at least 1.".format(depth))

    if min_prefix is None:
        min_prefix = (DEFAULTS["f19:min_prefix"]
                      if depth >= DEFAULTS["f19:prefix_depth"] else 0)

    game = {"pipeline": "fn-potential", "n": 19, "beta": Fraction(1, 3), "c": 0}
    alice, params = game_strategy(game)
    bob = bob_construction_survival(TERNARY)

    logger.info("Playing %s to depth %d.", params, depth)

    result = run_match(params, alice, bob, depth)
    _check_result(result, "F_19 cap C")

    E = result.enclosure
    word, bounded = _check_prefix(E, 19)

    if word is None or not bounded:
        raise _failure("Continued fraction prefix of {} is not bounded by 19."
                       .format(E), result)

    if len(word) < min_prefix:
        raise _failure("Continued fraction prefix {} is shorter than {}."
                       .format(word, min_prefix), result)

    address = deepest_containing(TERNARY, E).address

    logger.info("Certified prefix %s of length %d.", word, len(word))

    return PointCertificate({"name": "F_n cap C", "n": 19},
                            list(result.transcript.bob_moves), result.ledger,
                            word, address, result.transcript,
                            extra={"params": params, "game": game})


def sumset_window(t):
    return Interval(max(Fraction(0), t - 1), min(Fraction(1), t))


def certify_sumset_f49(t, depth):
    """
    Decomposition t = x + (t - x) with x and t - x in F_49.

    The combined strategy for F_49 and t - F_49 is declared for
    (1/4, 1/6, 1/12, k = 2); Bob subdivides the window
    [max(0, t - 1), min(1, t)] into three children.

    Returns:
        SumsetCertificate
    """

    t = as_rational(t)
    if not Fraction(1, 6) <= t <= Fraction(11, 6):
        raise ValueError("Sum t = `{}` must lie in [1/6, 11/6].".format(t))

    beta = Fraction(1, 6)
    game = {"pipeline": "sumset", "n": 49, "beta": beta, "t": t}
    alice, params = game_strategy(game)

    window = sumset_window(t)
    bob = bob_subdivision(3, beta, params.alpha, start=window)

    result = run_match(params, alice, bob, depth)
    _check_result(result, "F_49 + F_49 at t = {}".format(t))

    E = result.enclosure
    x_word, x_ok = _check_prefix(E, 49)
    y_word, y_ok = _check_prefix(Similarity(-1, t)(E), 49)

    if not (x_ok and y_ok):
        raise _failure("Continued fraction prefixes at t = {} are not bounded by 49."
                       .format(t), result)

    return SumsetCertificate(t, window, E, x_word, y_word, 49, result.ledger,
                             result.transcript, game)


def folding_chain(iterations, start=Fraction(17, 27)):
    """
    Iterates x_{k+1} = x_k - 1/(3 q_k**2) of a good rational.

    Raises:
        PipelineFailure: an iterate is not good.
    """

    cap = DEFAULTS["cap:folding_iterations"]
    if iterations > cap:
        raise ResourceLimitError("folding iterations", cap, iterations)

    chain = []
    x = as_rational(start)

    for k in range(iterations + 1):
        check = is_good(x)
        if not check.good:
            raise PipelineFailure("Iterate {} = {} is not good: {}."
                                  .format(k, x, check.reason),
                                  {"iterate": k, "x": str(x), "reason": check.reason})
        chain.append((x, check.rational.cf, check.rational.power_of_3_exponent))
        x = folding_step(x)

    return chain


def folding_twos(length):
    """
    Positions 2**k - 1 (k >= 1) of the ternary digit 2 in the limit of
    2 - 2 x_k, up to `length`.
    """

    return [2**k - 1 for k in range(1, length.bit_length() + 2) if 2**k - 1 <= length]


def certify_folding_f9(iterations, cf_depth=15):
    """
    Limit of the folding chain of 17/27 in F_9 and the ternary Cantor set.

    With y_n = 2 - 2 x_n, the limit y satisfies y_n < y < y_n + 3**(-M) for
    M = 2**(n+3) - 2, and its first M ternary digits are those of y_n. The
    certificate checks that these digits are 2 exactly at the positions
    2**k - 1 and 0 elsewhere, and that the continued fraction prefix of the
    enclosure has at least `cf_depth` quotients, all at most 9.

    Returns:
        FoldingCertificate
    """

    if iterations < 1:
        raise ValueError("Iterations `{}` must be at least 1.".format(iterations))

    chain = folding_chain(iterations)

    y = 2 - 2 * chain[-1][0]
    M = 2**(iterations + 3) - 2
    enclosure = Interval(y, y + Fraction(1, 3**M))

    digits = ternary_digits(y, M).digits
    twos = [i + 1 for i, d in enumerate(digits) if d == 2]

    if any(d == 1 for d in digits) or twos != folding_twos(M):
        raise PipelineFailure("Ternary digits of {} do not follow the folding "
                              "pattern.".format(y), {"twos": twos})

    word = cf_prefix_of_interval(enclosure)
    if len(word) < cf_depth or not quotient_bound_holds(word, 9):
        raise PipelineFailure("Continued fraction prefix {} fails the bound 9 "
                              "to depth {}.".format(word, cf_depth),
                              {"prefix": word.to_json()})

    return FoldingCertificate(chain, y, enclosure, M, twos, word)


APBudget = namedtuple("APBudget", ["k", "c", "ratio", "empty"])


def ap_length_budget(alpha, beta=Fraction(1, 4), K2=1):
    """
    Largest k with k alpha**c <= (1 - beta**(1-c))/K2 for
    c = 1 - 1/log(1/alpha).

    Here alpha**c = e alpha and beta**(1-c) = exp(-log(1/beta)/log(1/alpha)).
    Both sides are enclosed and k is the floor of the lower bound of their
    ratio, so that it never exceeds the exact value.

    Returns:
        APBudget (k, enclosure of c, enclosure of k alpha log(1/alpha),
        empty flag)
    """

    alpha = as_rational(alpha)
    beta = as_rational(beta)
    K2 = as_rational(K2)

    if not 0 < beta <= Fraction(1, 4):
        raise ValueError("Beta `{}` must lie in (0, 1/4].".format(beta))
    if K2 <= 0:
        raise ValueError("K2 `{}` must be positive.".format(K2))

    L = log_enclosure(1 / alpha) if alpha > 0 else None
    if L is None or not L.lo > 1:
        raise ValueError("Alpha `{}` must satisfy log(1/alpha) > 1.".format(alpha))

    c = 1 - 1 / L
    lhs = exp_enclosure(1) * alpha
    rhs = (1 - exp_enclosure(-(log_enclosure(1 / beta) / L))) / K2

    k = max(0, math.floor(rhs.lo / lhs.hi))

    if k == 0:
        logger.info("Budget empty for alpha = %s, K2 = %s.", alpha, K2)

    return APBudget(k, c, k * alpha * L, k == 0)


def find_ap_via_game(epsilon, k, t, depth, beta=None):
    """
    k-term progression {x, x + t, ..., x + (k-1) t} in M_eps from the
    potential game.

    The strategies for M_eps - i t (i < k) are combined in the potential
    game with c = 1, which gives alpha = k alpha_0; Bob subdivides his
    interval into k + 1 children of ratio beta = 1/(2k + 2).

    Raises:
        PipelineFailure: k - 1 > 1/eps, or Bob does not survive.
    """

    spec = CantorSpec(epsilon)
    t = as_rational(t)

    if k < 2:
        raise ValueError("Length k `{}` must be at least 2.".format(k))

    if k - 1 > 1 / spec.epsilon:
        raise PipelineFailure("No {}-term progression exists in M_{}: k - 1 > 1/eps."
                              .format(k, spec.epsilon),
                              {"status": "bound", "k": k, "epsilon": str(spec.epsilon)})

    if not 0 < t <= spec.epsilon / k:
        raise ValueError("Step t `{}` must lie in (0, eps/k].".format(t))

    beta = as_rational(beta) if beta is not None else Fraction(1, 2 * k + 2)
    game = {"pipeline": "ap-potential", "k": k, "t": t, "beta": beta}
    alice, params = game_strategy(game, spec.epsilon)
    base_alpha = alice.children[0].params.alpha

    start = Interval(0, 1 - (k - 1) * t)
    if start.radius < params.rho:
        raise ValueError("Step t `{}` leaves a window shorter than 2 rho."
                         .format(t))

    bob = bob_subdivision(k + 1, beta, base_alpha, start=start, strict=False)

    result = run_match(params, alice, bob, depth)
    _check_result(result, "{}-term progression in M_{}".format(k, spec.epsilon))

    E = result.enclosure
    proofs = [_enclosure_proof(spec, Similarity(1, i * t)(E), Fraction(1), i * t)
              for i in range(k)]

    if any(p is None for p in proofs):
        raise _failure("Progression leaves [0, 1].", result)

    membership = [meps_membership(spec, p["interval"], p["stage"]) for p in proofs]
    if Membership.EMPTY in membership:
        raise _failure("An element enclosure lies in a gap of M_eps.", result)

    x = E.center
    elements = [x + i * t for i in range(k)]

    return APCertificate(_meps_target(spec), elements, t, proofs, parameter=E,
                         enclosure=E, ledger=result.ledger,
                         transcript=result.transcript,
                         extra={"skips": alice.skips, "membership": membership,
                                "game": game})


def _cf_branching(values):
    words = [cf_expand(v).quotients for v in values]

    common = []
    for letters in zip(*words):
        if len(set(letters)) > 1:
            break
        common.append(letters[0])

    r = len(common)
    nexts = sorted({w[r] for w in words if len(w) > r})

    return common, nexts


def ap_instance_diagnostics(certificate):
    """
    Quantities of the upper-bound arguments for a certificate.

    For M_eps: the smallest construction interval I containing the
    progression, its middle gap J, whether t >= |J| and whether
    k - 1 <= |I|/|J| = 1/eps. For F_n (sumset certificates): the longest
    common continued fraction prefix of the points, the branching letters
    and the ratio diam(S)/t.

    :param certificate: APCertificate, SumsetCertificate or their JSON.
    :rtype: dict
    """

    data = certificate.to_json() if hasattr(certificate, "to_json") else certificate
    kind = data["kind"]

    if kind == "ap" and data["target"]["name"] == "M_eps":
        spec = CantorSpec(data["target"]["epsilon"])
        elements = [Fraction(x) for x in data["elements"]]
        gap = Fraction(data["gap"])
        hull = Interval(min(elements), max(elements))

        found = deepest_containing(spec, hull)
        if found is None:
            return {"kind": kind, "inside": False}

        I = found.interval
        J = spec.gap_of(I)
        k = len(elements)

        return {"kind": kind,
                "I": I,
                "J": J,
                "stage": len(found.address),
                "t_ge_gap": gap >= J.diameter,
                "k_minus_1": k - 1,
                "bound": I.diameter / J.diameter,
                "holds": k - 1 <= I.diameter / J.diameter,
                "tight": k - 1 == I.diameter / J.diameter}

    if kind == "sumset":
        x = Interval.from_json(data["x_enclosure"]).center
        y = Fraction(data["t"]) - x
        points, step = [min(x, y), max(x, y)], abs(x - y)
        bound = int(data["bound"])
    else:
        points = [Fraction(p) for p in data["elements"]]
        step = Fraction(data["gap"])
        bound = int(data["target"].get("n", 0))

    omega, letters = _cf_branching(points)
    adjacent = len(letters) == 2 and letters[1] - letters[0] == 1

    return {"kind": kind,
            "omega": omega,
            "letters": letters,
            "regime": "adjacent" if adjacent else "separated",
            "bound_shape": bound**2 if adjacent else (letters[0] if letters else None),
            "diameter_over_t": (max(points) - min(points)) / step if step else None}
