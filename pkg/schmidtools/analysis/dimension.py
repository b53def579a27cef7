"""
Dimension estimators and bounds

- `hd_estimate_fn_cap_cantor`: cover estimator of the dimension of
  F_n and the ternary Cantor set, with an auditable cover manifest;
- formula bounds: `hd_lower_formula`, `potential_hd_bound`,
  `target_dimension_bound`, `independence_heuristic`;
- `survivor_tree`: empirical branching of the grid balls kept while the
  potential of the obstacles deleted by Alice stays under a threshold.

Logarithms are certified enclosures; numpy is only used for random samples
and trend slopes.
"""

import logging
import math

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from schmidtools.analysis.audit import cover_digest
from schmidtools.analysis.certify import ap_length_budget
from schmidtools.analysis.logger import jsonify
from schmidtools.arith.enclosure import (Enclosure, log_enclosure, log_ratio,
                                         power_enclosure, power_sum_leq)
from schmidtools.arith.interval import Interval
from schmidtools.arith.rational import as_rational
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import ResourceLimitError
from schmidtools.games.alice import alice_ba1, alice_bad_simplex, alice_meps
from schmidtools.games.game import Transcript
from schmidtools.games.params import Verdict
from schmidtools.parallel import fan_out
from schmidtools.sets.cantor import intersects_ternary_cantor
from schmidtools.sets.contfrac import cylinder_interval


logger = logging.getLogger(__name__)


@dataclass
class DimensionEstimate:
    """
    Cover of F_n and the ternary Cantor set at a given scale.

    Leaves are the words w classified as type A (the cylinder I_w meets C and
    |I_w| < scale <= |I_w'|, w' being w without its last letter) or type B
    (I_w misses C). The estimate is log(N)/(-log(scale)) with N the number
    of type-A leaves.
    """

    n: int
    scale: Fraction
    count: int
    estimate: Enclosure
    leaves: list = field(default_factory=list)
    nodes: int = 0

    @property
    def kraft(self):
        return sum((Fraction(1, self.n**len(leaf["word"])) for leaf in self.leaves),
                   Fraction(0))

    @property
    def digest(self):
        return cover_digest(self.leaves)

    def __repr__(self):
        lo, hi = self.estimate.to_decimal() if self.estimate else (None, None)
        return "<DimensionEstimate: n = {}, scale = {}, N = {}, estimate in [{}, {}]>".format(
            self.n, self.scale, self.count, lo, hi)

    def to_json(self):
        return jsonify({"kind": "cover", "version": 1,
                        "n": self.n,
                        "scale": self.scale,
                        "count": self.count,
                        "estimate": self.estimate,
                        "kraft": self.kraft,
                        "nodes": self.nodes,
                        "digest": self.digest,
                        "leaves": self.leaves})


def hd_estimate_fn_cap_cantor(n, scale, cap=None):
    """
    Estimate the Hausdorff dimension of F_n and the ternary Cantor set.

    Depth-first search over words in {1, ..., n}: a cylinder missing C is a
    type-B leaf, a cylinder meeting C and shorter than the scale a type-A
    leaf, and other cylinders are subdivided.

    Args:
        n: largest partial quotient, at least 2.
        scale: in (0, 1).
        cap: maximal number of visited nodes, default
            `DEFAULTS["cap:cover_nodes"]`.

    Returns:
        DimensionEstimate
    """

    scale = as_rational(scale)
    cap = cap or DEFAULTS["cap:cover_nodes"]

    if n < 2:
        raise ValueError("Alphabet size n `{}` must be at least 2.".format(n))
    if not 0 < scale < 1:
        raise ValueError("Scale `{}` must lie in (0, 1).".format(scale))

    leaves = []
    stack = [(a,) for a in range(n, 0, -1)]
    nodes = 0

    while stack:
        word = stack.pop()
        nodes += 1
        if nodes > cap:
            count = sum(1 for leaf in leaves if leaf["type"] == "A")
            logger.warning("Cover search stopped after %d nodes with %d type-A "
                           "leaves.", cap, count)
            raise ResourceLimitError("cover nodes", cap, nodes)

        I = cylinder_interval(word, n)
        meets, _ = intersects_ternary_cantor(I)

        if not meets:
            leaves.append({"word": list(word), "type": "B"})
        elif I.diameter < scale:
            leaves.append({"word": list(word), "type": "A"})
        else:
            stack.extend(word + (a,) for a in range(n, 0, -1))

    count = sum(1 for leaf in leaves if leaf["type"] == "A")
    estimate = log_ratio(count, 1 / scale) if count else Enclosure(0)

    logger.info("Cover of F_%d cap C at scale %s: %d nodes, N = %d.", n, scale,
                nodes, count)

    return DimensionEstimate(n, scale, count, estimate, leaves, nodes)


def hd_lower_formula(N, k, beta):
    """
    Lower bound log(N - k)/(-log beta) of the dimension of a set winning a
    game where Bob has N disjoint choices and Alice blocks k of them.

    :rtype: Enclosure
    """

    beta = as_rational(beta)

    if N <= k:
        raise ValueError("Bound needs N > k, got N = `{}`, k = `{}`.".format(N, k))
    if not 0 < beta < 1:
        raise ValueError("Beta `{}` must lie in (0, 1).".format(beta))

    return log_ratio(N - k, 1 / beta)


def _decide_leq(lhs, rhs, what):
    # lhs, rhs: functions bits -> Enclosure
    for bits in DEFAULTS["budget:refine_bits"]:
        a, b = lhs(bits), rhs(bits)
        if a.certainly_le(b):
            return True
        if b.certainly_lt(a):
            return False

    logger.warning("Comparison %s undecided at %d bits.", what,
                   DEFAULTS["budget:refine_bits"][-1])

    return False


def default_k2(eps=None):
    """
    Rational upper bound of max(eps**-2, 2 log(1/eps)/eps).
    """

    eps = as_rational(eps if eps is not None else DEFAULTS["bound:eps"])
    if not 0 < eps < 1:
        raise ValueError("Epsilon `{}` must lie in (0, 1).".format(eps))

    return max(1 / eps**2, 2 * log_enclosure(1 / eps).hi / eps)


def _constants(K1, K2):
    K1 = as_rational(K1 if K1 is not None else DEFAULTS["bound:K1"])
    if K2 is None:
        K2 = DEFAULTS["bound:K2"]
    K2 = default_k2() if K2 is None else as_rational(K2)

    return K1, K2


@dataclass
class PotentialBound:
    bound: Enclosure
    condition: bool
    positive: bool

    def to_json(self):
        return {"bound": self.bound, "condition": self.condition,
                "positive": self.positive}


def potential_hd_bound(delta, eta, alpha, beta, c, K1=None, K2=None):
    """
    Dimension bound delta - K1 alpha**eta/|log beta| of potential winning
    sets, valid when alpha**c <= (1 - beta**(eta - c))/K2.

    Args:
        delta: Ahlfors regularity exponent of the ambient measure.
        eta: decay exponent, c < eta.
        alpha, beta, c: game parameters, beta <= 1/4.
        K1, K2: constants, default `DEFAULTS["bound:K1"]` and
            `DEFAULTS["bound:K2"]` (or `default_k2()`).

    Returns:
        PotentialBound (bound enclosure, condition flag, positivity flag).
        Positivity holds when the condition holds and K2 > eta K1/delta,
        or when the enclosure is certainly positive.
    """

    delta, eta, alpha, beta, c = (as_rational(x) for x in (delta, eta, alpha, beta, c))
    K1, K2 = _constants(K1, K2)

    if not c < eta:
        raise ValueError("Exponent c `{}` must be smaller than eta `{}`.".format(c, eta))
    if not 0 < beta <= Fraction(1, 4):
        raise ValueError("Beta `{}` must lie in (0, 1/4].".format(beta))
    if alpha < 0:
        raise ValueError("Alpha `{}` must be non-negative.".format(alpha))

    def lhs(bits):
        return K2 * power_enclosure(alpha, c, bits) if alpha else Enclosure(0)

    def rhs(bits):
        return 1 - power_enclosure(beta, eta - c, bits)

    condition = _decide_leq(lhs, rhs, "alpha**c <= (1 - beta**(eta - c))/K2")

    decay = K1 * power_enclosure(alpha, eta) / log_enclosure(1 / beta) if alpha else 0
    bound = Enclosure(delta) - decay

    positive = bound.lo > 0 or (condition and K2 > eta * K1 / delta)

    return PotentialBound(bound, condition, positive)


TARGETS = ("M_eps", "BA_1", "BA_2")


def target_alpha(target, eps, beta=Fraction(1, 4)):
    """
    Deletion parameter alpha of the strategy built for a target.
    """

    if target == "M_eps":
        return alice_meps(eps, beta).params.alpha
    if target == "BA_1":
        return alice_ba1(eps, beta).params.alpha
    if target == "BA_2":
        return alice_bad_simplex(eps, beta, 2).params.alpha

    raise ValueError("Target `{}` must be one of {}.".format(target, TARGETS))


def target_dimension_bound(target, eps, delta=1, eta=1, K1=None, K2=None):
    """
    Potential bound at beta = 1/4 and c = eta/2 for a target of the package.

    The shape ratio (delta - bound)/eps**eta stays bounded as eps -> 0 since
    alpha is proportional to eps.

    :rtype: dict
    """

    eps = as_rational(eps)
    eta = as_rational(eta)
    beta = Fraction(1, 4)

    alpha = target_alpha(target, eps, beta)
    result = potential_hd_bound(delta, eta, alpha, beta, eta / 2, K1, K2)
    shape = (as_rational(delta) - result.bound) / power_enclosure(eps, eta)

    return {"target": target,
            "eps": eps,
            "alpha": alpha,
            "bound": result.bound,
            "condition": result.condition,
            "positive": result.positive,
            "shape": shape}


def independence_heuristic(d1, d2, d):
    """
    Expected dimension max(0, d1 + d2 - d) of the intersection of two
    independent sets.
    """

    d1, d2 = as_rational(d1), as_rational(d2)

    if not (0 <= d1 <= d and 0 <= d2 <= d):
        raise ValueError("Dimensions `{}` and `{}` must lie in [0, {}]."
                         .format(d1, d2, d))

    return max(Fraction(0), d1 + d2 - d)


def block_length(eps, alpha, eta):
    """
    Block length N = floor(eps * alpha**(-eta)).
    """

    eps, alpha, eta = as_rational(eps), as_rational(alpha), as_rational(eta)

    if not 0 < alpha < 1:
        raise ValueError("Alpha `{}` must lie in (0, 1).".format(alpha))

    value = None
    for bits in DEFAULTS["budget:refine_bits"]:
        value = eps * power_enclosure(alpha, -eta, bits)
        floor = value.floor()
        if floor is not None:
            return floor

    logger.warning("Floor of %s undecided, rounding down.", value)

    return math.floor(value.lo)


def inequality_check(x, y, gamma, c, eta):
    """
    Decide min(1, x**c/(gamma y)**c) (x + 2y)**eta
    <= 3**eta x**c max(x**(eta - c), y**(eta - c)/gamma**c) exactly.

    Both sides are positive, so raising them to the common denominator D of
    c and eta leaves only integer exponents.
    """

    x, y, gamma, c, eta = (as_rational(v) for v in (x, y, gamma, c, eta))

    if min(x, y, gamma) <= 0:
        raise ValueError("Values x, y, gamma must be positive.")
    if c < 0 or eta < 0:
        raise ValueError("Exponents c `{}` and eta `{}` must be non-negative."
                         .format(c, eta))

    D = c.denominator * eta.denominator // math.gcd(c.denominator, eta.denominator)
    cD = int(c * D)
    eD = int(eta * D)

    lhs = min(Fraction(1), (x / (gamma * y))**cD) * (x + 2 * y)**eD
    rhs = 3**eD * x**cD * max(x**(eD - cD), y**(eD - cD) / gamma**cD)

    return lhs <= rhs


def _random_rational(rng, lo=1, hi=1000):
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1)))


def _inequality_case(task):
    return task if not inequality_check(*task) else None


def inequality_sweep(count, seed=0, max_denominator=6, n_jobs=None):
    """
    Check `inequality_check` on random rational tuples.

    Returns:
        list of the violating tuples (x, y, gamma, c, eta).
    """

    rng = np.random.default_rng(seed)
    tasks = []

    for _ in range(count):
        x, y, gamma = (_random_rational(rng) for _ in range(3))
        q = int(rng.integers(1, max_denominator + 1))
        eta = Fraction(int(rng.integers(1, q + 1)), q)
        c = eta * Fraction(int(rng.integers(0, q + 1)), q)
        tasks.append((x, y, gamma, c, eta))

    violations = [v for v in fan_out(_inequality_case, tasks, n_jobs, chunksize=1024)
                  if v is not None]

    if violations:
        logger.warning("%d violations out of %d tuples.", len(violations), count)

    return violations


@dataclass
class SurvivorNode:
    ball: Interval
    level: int
    phi: Enclosure
    survived: bool


@dataclass
class SurvivorReport:
    base: int
    N: int
    levels: list
    dimension: Enclosure
    nodes: int
    block_nodes: list = field(default_factory=list)

    def to_json(self):
        return {"base": self.base, "N": self.N, "levels": self.levels,
                "dimension": self.dimension, "nodes": self.nodes}


def _potential(obstacles, ball, c):
    hits = [o.thickness for o in obstacles if o.meets(ball)]
    total = sum((power_enclosure(t, c) for t in hits), Enclosure(0))

    return hits, total


def survivor_tree(alice, beta, N, gamma, c, levels, cap=None):
    """
    Empirical branching of the survivor tree on [0, 1].

    Bob descends the beta-adic grid; Alice answers along every path. A grid
    ball B of level jN (a block node) survives when its parent block node
    survived and phi(B), the sum of thickness**c over the obstacles deleted
    before turn jN which meet B, is at most (gamma rho)**c with rho the
    radius of B.

    Args:
        alice: AliceStrategy.
        beta: 1/b for an integer b >= 4.
        N: block length, in grid levels.
        gamma: threshold factor.
        c: exponent of the potential.
        levels: number of blocks.
        cap: maximal number of grid nodes, default
            `DEFAULTS["cap:survivor_nodes"]`.

    Returns:
        SurvivorReport, with the minimal and mean number of surviving
        children per block level and the enclosure of
        log(min branching)/log(b**N).
    """

    beta = as_rational(beta)
    gamma = as_rational(gamma)
    c = as_rational(c)
    cap = cap or DEFAULTS["cap:survivor_nodes"]

    if beta.numerator != 1 or beta.denominator < 4:
        raise ValueError("Beta `{}` must be 1/b with an integer b >= 4.".format(beta))
    if N < 1 or levels < 1:
        raise ValueError("Block length `{}` and levels `{}` must be positive."
                         .format(N, levels))

    b = beta.denominator
    nodes = 0

    root = Transcript(alice.params, {"alice": alice.tag, "bob": "grid({})".format(b)})
    root.record_bob(Interval(0, 1), Verdict.ok())

    frontier = [root]
    stats = []
    block_nodes = []

    for j in range(1, levels + 1):
        branching = []
        survivors = []

        for parent in frontier:
            paths = [parent]
            for _ in range(N):
                deeper = []
                for path in paths:
                    nodes += b
                    if nodes > cap:
                        raise ResourceLimitError("survivor nodes", cap, nodes)

                    path.record_alice(alice.respond(path), Verdict.ok())
                    ball = path.current_ball
                    step = ball.diameter / b
                    for i in range(b):
                        child = path.copy()
                        child.record_bob(Interval(ball.lo + i * step, ball.lo + (i + 1) * step),
                                         Verdict.ok())
                        deeper.append(child)
                paths = deeper

            kept = 0
            for path in paths:
                ball = path.current_ball
                hits, phi = _potential(path.ledger, ball, c)
                survived = power_sum_leq(hits, gamma * ball.radius, c)
                block_nodes.append(SurvivorNode(ball, j, phi, survived))
                if survived:
                    kept += 1
                    survivors.append(path)
            branching.append(kept)

        stats.append({"level": j,
                      "parents": len(frontier),
                      "min": min(branching) if branching else 0,
                      "mean": Fraction(sum(branching), len(branching)) if branching else 0,
                      "survivors": len(survivors)})

        logger.info("Block %d: %d survivors, branching min %s.", j, len(survivors),
                    stats[-1]["min"])

        frontier = survivors
        if not frontier:
            break

    least = min(s["min"] for s in stats)
    dimension = log_ratio(least, b**N) if least > 0 else Enclosure(0)

    return SurvivorReport(b, N, stats, dimension, nodes, block_nodes)


def loglog_slope(xs, ys):
    """
    Least squares slope of log(y) against log(x), for trend reports.
    """

    xs = np.log(np.array([float(x) for x in xs]))
    ys = np.log(np.array([float(y) for y in ys]))

    slope, _ = np.polyfit(xs, ys, 1)

    return float(slope)


def _budget_row(task):
    alpha, beta, K2 = task
    budget = ap_length_budget(alpha, beta, K2)

    return {"alpha": alpha, "k": budget.k,
            "ratio_lo": budget.ratio.lo, "ratio_hi": budget.ratio.hi}


def budget_trend(alphas, beta=Fraction(1, 4), K2=1, n_jobs=None):
    """
    Ratio k alpha log(1/alpha) of the progression length budget across
    alphas.
    """

    tasks = [(as_rational(alpha), beta, K2) for alpha in alphas]

    return fan_out(_budget_row, tasks, n_jobs)
