"""
Absolute and potential games

Legality predicates for both players, the transcript of a match, and the
match loop. A match is truncated at a finite depth: its outcome is replaced
by Bob's final ball, and the claim "the outcome avoids every deleted set"
by the clearance of that ball against the whole obstacle ledger.

Turn order: Bob plays B_0, then for m = 0, 1, ... Alice answers B_m and Bob
plays B_{m+1}. Alice does not answer the final ball.
"""

import enum
import logging

from dataclasses import dataclass, field

from schmidtools.arith.enclosure import power_sum_leq
from schmidtools.arith.interval import ball_from_json
from schmidtools.arith.rational import rational_to_json, rational_from_json
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import IllegalMoveError
from schmidtools.games.params import (GameKind, GameParams, Obstacle,
                                      ObstacleClass, Verdict)


logger = logging.getLogger(__name__)


class MatchStatus(enum.Enum):
    IN_PROGRESS = "in-progress"
    BOB_STUCK = "bob-stuck"
    DEPTH_REACHED = "depth-reached"


class Transcript:
    """
    Validated history of a match.

    `bob_moves[m]` is the ball B_m and `alice_moves[m]` the list of
    obstacles Alice deleted in answer to it. The verdicts of every recorded
    move are stored next to the moves.
    """

    def __init__(self, params, meta=None):
        self.params = params
        self.bob_moves = []
        self.alice_moves = []
        self.bob_verdicts = []
        self.alice_verdicts = []
        self.status = MatchStatus.IN_PROGRESS
        self.meta = meta or {}

    def __repr__(self):
        return "<Transcript: {} Bob moves, {} obstacles, status = {}>".format(
            len(self.bob_moves), len(self.ledger), self.status.value)

    @property
    def turn(self):
        """
        Index m of the last ball played by Bob (-1 before the first move).
        """

        return len(self.bob_moves) - 1

    @property
    def current_ball(self):
        return self.bob_moves[-1] if self.bob_moves else None

    @property
    def ledger(self):
        return [obstacle for move in self.alice_moves for obstacle in move]

    def record_bob(self, ball, verdict):
        self.bob_moves.append(ball)
        self.bob_verdicts.append(verdict)

    def record_alice(self, obstacles, verdict):
        self.alice_moves.append(list(obstacles))
        self.alice_verdicts.append(verdict)

    def truncate(self, n):
        """
        Rewind to Bob's n-th move: keep the first n balls and Alice's answers
        to them.
        """

        del self.bob_moves[n:]
        del self.bob_verdicts[n:]
        del self.alice_moves[n:]
        del self.alice_verdicts[n:]

        self.status = MatchStatus.IN_PROGRESS

    def copy(self):
        other = Transcript(self.params, dict(self.meta))
        other.bob_moves = list(self.bob_moves)
        other.alice_moves = [list(move) for move in self.alice_moves]
        other.bob_verdicts = list(self.bob_verdicts)
        other.alice_verdicts = list(self.alice_verdicts)
        other.status = self.status

        return other

    def mapped(self, similarity, params=None):
        """
        Image of the transcript under a similarity.

        Radii and thicknesses are multiplied by the similarity ratio; the
        parameters are those given, or the current ones with rho scaled.
        """

        params = params or self.params.scaled(similarity.ratio)

        other = Transcript(params, dict(self.meta))
        other.bob_moves = [similarity(ball) for ball in self.bob_moves]
        other.alice_moves = [[o.mapped(similarity) for o in move]
                             for move in self.alice_moves]
        other.bob_verdicts = list(self.bob_verdicts)
        other.alice_verdicts = list(self.alice_verdicts)
        other.status = self.status

        return other

    def to_json(self):
        return {"kind": "transcript",
                "version": 1,
                "params": self.params.to_json(),
                "bob_moves": [ball.to_json() for ball in self.bob_moves],
                "alice_moves": [[o.to_json() for o in move]
                                for move in self.alice_moves],
                "verdicts": {"bob": [v.to_json() for v in self.bob_verdicts],
                             "alice": [v.to_json() for v in self.alice_verdicts]},
                "status": self.status.value,
                "meta": self.meta}

    @classmethod
    def from_json(cls, data):
        transcript = cls(GameParams.from_json(data["params"]), dict(data.get("meta", {})))

        transcript.bob_moves = [ball_from_json(b) for b in data["bob_moves"]]
        transcript.alice_moves = [[Obstacle.from_json(o) for o in move]
                                  for move in data["alice_moves"]]

        verdicts = data.get("verdicts", {})
        transcript.bob_verdicts = [Verdict.from_json(v) for v in verdicts.get("bob", [])]
        transcript.alice_verdicts = [Verdict.from_json(v)
                                     for v in verdicts.get("alice", [])]
        transcript.status = MatchStatus(data.get("status", "in-progress"))

        return transcript


@dataclass
class MatchResult:
    transcript: Transcript
    enclosure: object
    ledger: list
    cleared: bool
    blocking: list = field(default_factory=list)
    backtracks: int = 0

    @property
    def status(self):
        return self.transcript.status

    def to_json(self):
        enclosure = self.enclosure.to_json() if self.enclosure is not None else None

        return {"enclosure": enclosure,
                "cleared": self.cleared,
                "status": self.status.value,
                "backtracks": self.backtracks,
                "blocking": [o.to_json() for o in self.blocking],
                "transcript": self.transcript.to_json()}


def validate_bob_move(params, transcript, ball):
    """
    Check a move of Bob.

    The first ball must have radius at least rho. Later balls must have
    radius at least beta times the previous one and lie in the previous
    ball; in the absolute game with immediate avoidance they must also miss
    the obstacles deleted on the previous turn.

    :rtype: Verdict
    """

    if ball.dimension != params.dimension:
        return Verdict.reject("dimension", "ball of dimension {} in a game of "
                              "dimension {}".format(ball.dimension, params.dimension))

    if not transcript.bob_moves:
        if ball.radius < params.rho:
            return Verdict.reject("rho-min", "radius {} < rho = {}"
                                  .format(ball.radius, params.rho))
        return Verdict.ok()

    previous = transcript.bob_moves[-1]

    if ball.radius < params.beta * previous.radius:
        return Verdict.reject("beta-shrink", "radius {} < beta * {}"
                              .format(ball.radius, previous.radius))

    if not previous.contains_ball(ball):
        return Verdict.reject("containment", "{} is not inside {}"
                              .format(ball, previous))

    if params.immediate and len(transcript.alice_moves) == len(transcript.bob_moves):
        for obstacle in transcript.alice_moves[-1]:
            if obstacle.meets(ball):
                return Verdict.reject("avoidance", "{} meets {}".format(ball, obstacle))

    return Verdict.ok()


def validate_alice_move(params, transcript, obstacles):
    """
    Check a move of Alice against Bob's current ball of radius rho_m.

    Absolute game: at most k obstacles, each of thickness at most
    alpha * rho_m. Potential game with c > 0: the sum of the c-th powers of
    the thicknesses is at most (alpha * rho_m)**c. Potential game with
    c = 0: a single obstacle of thickness at most alpha * rho_m.

    :rtype: Verdict
    """

    obstacles = list(obstacles)
    radius = transcript.current_ball.radius
    bound = params.alpha * radius

    for obstacle in obstacles:
        if obstacle.dimension != params.dimension:
            return Verdict.reject("dimension", "{} in dimension {}"
                                  .format(obstacle, params.dimension))
        if (params.obstacles is ObstacleClass.POINTS
                and obstacle.carrier != "point"):
            return Verdict.reject("obstacle-class", "{} in a game deleting points"
                                  .format(obstacle))

    if params.kind is GameKind.ABSOLUTE:
        if len(obstacles) > params.k:
            return Verdict.reject("count", "{} obstacles > k = {}"
                                  .format(len(obstacles), params.k))
        for obstacle in obstacles:
            if obstacle.thickness > bound:
                return Verdict.reject("radius", "thickness {} > alpha * rho_m = {}"
                                      .format(obstacle.thickness, bound))
        return Verdict.ok()

    if params.c == 0:
        if len(obstacles) > 1:
            return Verdict.reject("single-element", "{} obstacles with c = 0"
                                  .format(len(obstacles)))
        if obstacles and obstacles[0].thickness > bound:
            return Verdict.reject("radius", "thickness {} > alpha * rho_m = {}"
                                  .format(obstacles[0].thickness, bound))
        return Verdict.ok()

    if not power_sum_leq([o.thickness for o in obstacles], bound, params.c):
        return Verdict.reject("budget", "sum of thickness**{} exceeds "
                              "(alpha * rho_m)**c with alpha * rho_m = {}"
                              .format(params.c, bound))

    return Verdict.ok()


def _active(ledger, ball):
    return [o for o in ledger if o.meets(ball)]


def _bob_candidates(params, transcript, bob):
    active = _active(transcript.ledger, transcript.current_ball) \
        if transcript.bob_moves else []

    legal = []
    for ball in bob.candidates(transcript, active):
        verdict = validate_bob_move(params, transcript, ball)
        if not verdict.legal:
            raise IllegalMoveError(verdict, transcript.copy())
        legal.append((ball, verdict))

    return legal


def run_match(params, alice, bob, depth, budget=None, max_backtracks=None):
    """
    Play a match to the given depth.

    Every move is validated before it is recorded. When Bob has no move, the
    match rewinds to one of the last `budget` Bob moves that still has an
    untried alternative (Alice strategies are functions of the transcript,
    so replaying them is deterministic). When the search is exhausted the
    status is BOB_STUCK.

    Args:
        params: parameters of the game.
        alice: Alice strategy, called as `alice.respond(transcript)`.
        bob: Bob strategy, called as `bob.candidates(transcript, active)`
            where `active` lists the obstacles meeting his current ball; it
            returns his moves ranked by preference.
        depth: number of Alice turns; Bob's last ball is B_depth.
        budget: number of Bob moves the backtracking may rewind, default
            `bob.budget` or `DEFAULTS["bob:backtrack_budget"]`.
        max_backtracks: total number of rewinds allowed.

    Returns:
        MatchResult
    """

    if budget is None:
        budget = getattr(bob, "budget", None)
    budget = DEFAULTS["bob:backtrack_budget"] if budget is None else budget
    max_backtracks = (DEFAULTS["bob:backtrack_total"] if max_backtracks is None
                      else max_backtracks)

    transcript = Transcript(params, {"alice": getattr(alice, "tag", ""),
                                     "bob": getattr(bob, "tag", ""),
                                     "decay": _decay_json(getattr(bob, "decay", None))})

    # stack[j]: untried alternatives for Bob's move j
    stack = []
    backtracks = 0

    def play(alternatives):
        ball, verdict = alternatives.pop(0)
        transcript.record_bob(ball, verdict)

    first = _bob_candidates(params, transcript, bob)
    if not first:
        transcript.status = MatchStatus.BOB_STUCK
        return _result(transcript, backtracks)

    stack.append(first)
    play(first)

    while transcript.turn < depth:
        obstacles = alice.respond(transcript)
        verdict = validate_alice_move(params, transcript, obstacles)
        if not verdict.legal:
            raise IllegalMoveError(verdict, transcript.copy())
        transcript.record_alice(obstacles, verdict)

        alternatives = _bob_candidates(params, transcript, bob)
        if alternatives:
            stack.append(alternatives)
            play(alternatives)
            continue

        m = transcript.turn
        rewind = None
        for j in range(m, max(m - budget, -1), -1):
            if stack[j]:
                rewind = j
                break

        if rewind is None or backtracks >= max_backtracks:
            logger.warning("Bob is stuck at turn %d after %d backtracks.", m + 1,
                           backtracks)
            transcript.status = MatchStatus.BOB_STUCK
            return _result(transcript, backtracks)

        backtracks += 1
        logger.debug("Backtracking from turn %d to turn %d.", m + 1, rewind)

        transcript.truncate(rewind)
        del stack[rewind + 1:]
        play(stack[rewind])

    transcript.status = MatchStatus.DEPTH_REACHED

    return _result(transcript, backtracks)


def _decay_json(decay):
    if decay is None:
        return None
    window, factor = decay
    return {"window": window, "factor": rational_to_json(factor)}


def _result(transcript, backtracks):
    transcript.meta["backtracks"] = backtracks
    enclosure = transcript.current_ball
    ledger = transcript.ledger

    if enclosure is None:
        return MatchResult(transcript, None, ledger, False, [], backtracks)

    blocking = _active(ledger, enclosure)

    return MatchResult(transcript, enclosure, ledger, not blocking, blocking,
                       backtracks)


def radius_decay_certified(result, window=None, factor=None):
    """
    Finite-depth surrogate of "the radii tend to zero".

    True iff over every window of w consecutive turns the radius decreased
    by at least the factor b < 1, with (w, b) the decay contract declared by
    Bob's strategy (or given explicitly).
    """

    transcript = result.transcript if isinstance(result, MatchResult) else result

    if window is None or factor is None:
        decay = transcript.meta.get("decay")
        if not decay:
            return False
        window, factor = int(decay["window"]), rational_from_json(decay["factor"])

    if factor >= 1 or window < 1:
        return False

    radii = [ball.radius for ball in transcript.bob_moves]

    return all(radii[i + window] <= factor * radii[i]
               for i in range(len(radii) - window))


@dataclass
class ReplayReport:
    verdicts: list
    matches: bool
    first_illegal: int = None


def replay_transcript(document):
    """
    Re-validate every move of a serialized transcript.

    Returns:
        ReplayReport with the recomputed verdicts (in play order), whether
        they coincide with the recorded ones, and the index of the first
        illegal move (None if all are legal).
    """

    recorded = Transcript.from_json(document) if isinstance(document, dict) else document
    params = recorded.params

    fresh = Transcript(params, dict(recorded.meta))
    verdicts = []
    first_illegal = None

    for m, ball in enumerate(recorded.bob_moves):
        verdict = validate_bob_move(params, fresh, ball)
        verdicts.append(("bob", m, verdict))
        fresh.record_bob(ball, verdict)
        if not verdict.legal and first_illegal is None:
            first_illegal = len(verdicts) - 1

        if m < len(recorded.alice_moves):
            obstacles = recorded.alice_moves[m]
            verdict = validate_alice_move(params, fresh, obstacles)
            verdicts.append(("alice", m, verdict))
            fresh.record_alice(obstacles, verdict)
            if not verdict.legal and first_illegal is None:
                first_illegal = len(verdicts) - 1

    matches = (fresh.bob_verdicts == recorded.bob_verdicts
               and fresh.alice_verdicts == recorded.alice_verdicts)

    return ReplayReport(verdicts, matches, first_illegal)


def replay_strategy(document, alice):
    """
    Turn at which a deterministic strategy stops reproducing the recorded
    moves of Alice.

    Each recorded ball is played on a fresh transcript and `alice` answers
    it; the answer must equal the recorded obstacles, turn indices
    included.

    Returns:
        int or None: first turn whose answer differs, None if all agree.
    """

    recorded = Transcript.from_json(document) if isinstance(document, dict) else document
    fresh = Transcript(recorded.params, dict(recorded.meta))

    for m, obstacles in enumerate(recorded.alice_moves):
        fresh.record_bob(recorded.bob_moves[m], recorded.bob_verdicts[m]
                         if m < len(recorded.bob_verdicts) else Verdict.ok())

        if alice.respond(fresh) != obstacles:
            logger.info("Strategy `%s` differs from the transcript at turn %d.",
                        getattr(alice, "tag", ""), m)
            return m

        fresh.record_alice(obstacles, Verdict.ok())

    return None
