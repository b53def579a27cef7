"""
Independent auditor

Certificates are re-checked from their JSON form alone: every quantity is
recomputed from the primitives of `schmidtools.arith` and
`schmidtools.sets`, transcripts are replayed move by move and ledgers are
matched against the replayed moves. Alice is rebuilt from the game block
of the certificate; her declared parameters must be those of the
transcript and her answers must reproduce the recorded ones.
"""

import hashlib
import json
import logging

from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

from schmidtools.analysis.certify import AP3_PARAMS, game_strategy
from schmidtools.arith.enclosure import Enclosure, log_ratio
from schmidtools.arith.interval import Interval, Similarity
from schmidtools.arith.rational import rational_from_json, ternary_digits
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import CertificateError, SchmidtoolsError
from schmidtools.games.game import (MatchStatus, Transcript,
                                    radius_decay_certified, replay_strategy,
                                    replay_transcript)
from schmidtools.games.params import Obstacle
from schmidtools.sets.cantor import (TERNARY, CantorSpec, Membership,
                                     interval_of_address, interval_meets_meps,
                                     intersects_ternary_cantor, is_endpoint,
                                     linked, thickness)
from schmidtools.sets.contfrac import (CFWord, cf_prefix_of_interval,
                                       cylinder_interval, folding_step,
                                       is_good, quotient_bound_holds)


logger = logging.getLogger(__name__)


Check = namedtuple("Check", ["name", "passed", "detail"])

KINDS = ("ap", "point", "folding", "sumset", "cover", "transcript")


@dataclass
class AuditReport:
    kind: str
    checks: list = field(default_factory=list)

    @property
    def accepted(self):
        return all(c.passed for c in self.checks)

    @property
    def failed(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        if not passed:
            logger.info("Check `%s` failed: %s", name, detail)

    def __repr__(self):
        return "<AuditReport: {}, {}, {}/{} checks>".format(
            self.kind, "accepted" if self.accepted else "rejected",
            len(self.checks) - len(self.failed), len(self.checks))

    def to_json(self):
        return {"kind": self.kind,
                "accepted": self.accepted,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in self.checks]}


def _q(x):
    return rational_from_json(x)


def _interval(data):
    return Interval.from_json(data) if data is not None else None


def _ledger(data):
    return [Obstacle.from_json(o) for o in data]


def _audit_game(report, data, enclosure):
    """
    Replay the transcript and tie it to the ledger and the enclosure.

    Returns:
        the parsed transcript, None when it is missing.
    """

    ledger = _ledger(data.get("ledger", []))

    report.add("ledger-cleared", not any(o.meets(enclosure) for o in ledger),
               "final ball {} against {} obstacles".format(enclosure, len(ledger)))

    if data.get("transcript") is None:
        report.add("transcript-present", False, "no transcript")
        return None

    transcript = Transcript.from_json(data["transcript"])
    replay = replay_transcript(transcript)

    report.add("transcript-legal", replay.first_illegal is None,
               "first illegal move {}".format(replay.first_illegal))
    report.add("transcript-verdicts", replay.matches, "recorded verdicts differ")
    report.add("transcript-depth", transcript.status is MatchStatus.DEPTH_REACHED,
               "status {}".format(transcript.status.value))
    report.add("transcript-enclosure", transcript.current_ball == enclosure,
               "last ball {} != {}".format(transcript.current_ball, enclosure))
    report.add("transcript-ledger", transcript.ledger == ledger,
               "ledger differs from the replayed moves")
    report.add("radius-decay", radius_decay_certified(transcript),
               "declared decay contract violated")

    return transcript


def _audit_strategy(report, data, transcript, pipeline, match=None, epsilon=None,
                    fixed=None):
    """
    Rebuild Alice from the game block, compare the declared parameters with
    those of the transcript and replay her answers.
    """

    game = data.get("game") or {}

    if game.get("pipeline") != pipeline:
        report.add("game-params", False, "expected a `{}` game block, got {}"
                   .format(pipeline, game.get("pipeline")))
        return

    for key, value in (match or {}).items():
        if game.get(key) is None or _q(game[key]) != value:
            report.add("game-params", False, "game {} = {} != {}"
                       .format(key, game[key], value))
            return

    try:
        alice, params = game_strategy(game, epsilon)
    except (SchmidtoolsError, ValueError) as e:
        report.add("game-params", False, "cannot rebuild the game: {}".format(e))
        return

    report.add("game-params", transcript.params == params
               and (fixed is None or params.as_tuple() == fixed),
               "transcript parameters {} != declared {}".format(transcript.params, params))

    try:
        turn = replay_strategy(transcript, alice)
    except (SchmidtoolsError, ValueError) as e:
        report.add("strategy-replay", False, "{}: {}".format(type(e).__name__, e))
        return

    report.add("strategy-replay", turn is None,
               "recorded answer of Alice differs at turn {}".format(turn))


def _audit_ap_game(report, data, spec, elements, proofs, transcript):
    # affine maps of the enclosure proofs are fixed by the game
    game = data.get("game") or {}
    pipeline = game.get("pipeline")
    affine = sorted(tuple(_q(a) for a in p["affine"]) for p in proofs
                    if p["type"] == "enclosure")

    if pipeline == "ap3" and "a" in game:
        a = _q(game["a"])
        expected = sorted([(Fraction(1), Fraction(0)), (Fraction(1, 2), a / 2)])
        report.add("game-base", a in elements, "base point {} not in {}".format(a, elements))
        fixed = AP3_PARAMS
    elif pipeline == "ap-potential" and "t" in game and "k" in game:
        t = _q(game["t"])
        expected = sorted((Fraction(1), i * t) for i in range(int(game["k"])))
        fixed = None
    else:
        report.add("game-params", False, "unknown or incomplete game {}".format(game))
        return

    report.add("game-affine", affine == expected,
               "affine maps {} != {}".format(affine, expected))

    _audit_strategy(report, data, transcript, pipeline, epsilon=spec.epsilon, fixed=fixed)


def _audit_ap(report, data):
    target = data["target"]
    if target.get("name") != "M_eps":
        report.add("target", False, "unknown target {}".format(target))
        return

    spec = CantorSpec(_q(target["epsilon"]))
    elements = [_q(x) for x in data["elements"]]
    gap = _q(data["gap"])
    proofs = data["proofs"]
    parameter = _interval(data.get("parameter"))

    report.add("length", len(elements) >= 2 and len(proofs) == len(elements),
               "{} elements, {} proofs".format(len(elements), len(proofs)))
    report.add("progression",
               gap > 0 and all(b - a == gap for a, b in zip(elements, elements[1:])),
               "elements {} with gap {}".format(elements, gap))
    report.add("exact-flag",
               data.get("exact") == all(p["type"] == "endpoint" for p in proofs),
               "exact flag does not match the proofs")

    for i, (x, proof) in enumerate(zip(elements, proofs)):
        name = "element-{}".format(i)

        if proof["type"] == "endpoint":
            check = is_endpoint(spec, x)
            J = interval_of_address(spec, proof["address"])
            report.add(name, check.is_endpoint and x in (J.lo, J.hi),
                       "{} is not an endpoint of {}".format(x, J))
            continue

        if parameter is None:
            report.add(name, False, "enclosure proof without parameter")
            continue

        f = Similarity(*[_q(a) for a in proof["affine"]])
        interval = _interval(proof["interval"])
        image_ok = interval == f(parameter) and x == f(parameter.center)

        if proof["type"] == "enclosure":
            J = interval_of_address(spec, proof["address"])
            report.add(name, image_ok and J.contains_ball(interval)
                       and len(proof["address"]) == proof["stage"],
                       "{} not inside construction interval {}".format(interval, J))

            depth = int(proof["stage"]) + DEFAULTS["meps:membership_depth"]
            status = interval_meets_meps(spec, interval, depth).status
            report.add("meets-{}".format(i), status is not Membership.EMPTY,
                       "{} lies in a gap of M_eps".format(interval))
        elif proof["type"] == "linked":
            report.add(name, image_ok, "{} is not the image of {}".format(interval, parameter))
        else:
            report.add(name, False, "unknown proof type {}".format(proof["type"]))

    if "linked" in data:
        _audit_linked(report, spec, data["linked"], parameter, proofs)
    elif any(p["type"] == "linked" for p in proofs):
        report.add("linked-present", False, "linked proofs without a linked pair")

    played = any(p["type"] == "enclosure" for p in proofs)

    if played or data.get("transcript") is not None or data.get("enclosure") is not None:
        enclosure = _interval(data.get("enclosure"))
        report.add("parameter-enclosure", enclosure is not None and enclosure == parameter,
                   "parameter {} != enclosure {}".format(parameter, enclosure))

        if enclosure is None:
            report.add("transcript-present", False, "enclosure proofs without a game")
            return

        transcript = _audit_game(report, data, enclosure)
        if transcript is not None:
            _audit_ap_game(report, data, spec, elements, proofs, transcript)


NEWHOUSE_AFFINE = {(Fraction(-3), Fraction(2)), (Fraction(-1), Fraction(1)),
                   (Fraction(1), Fraction(0)), (Fraction(3), Fraction(-1))}


def _audit_linked(report, spec, block, parameter, proofs):
    # u in M_eps and 3u - 1 in M_eps give the four elements by symmetry
    image = Similarity.from_json(block["image"])
    J1 = interval_of_address(spec, block["first"])
    J2 = interval_of_address(spec, block["second"])
    W = J1.intersection(image(J2))

    report.add("linked-map", image == Similarity(Fraction(1, 3), Fraction(1, 3)),
               "image map {}".format(image))
    report.add("linked-window", W is not None and W == parameter
               and Fraction(1, 2) < W.lo and W.hi <= Fraction(2, 3),
               "window {} for parameter {}".format(W, parameter))
    report.add("linked-thickness", thickness(spec) >= 1,
               "thickness {} < 1".format(thickness(spec)))
    report.add("linked-pair", linked(spec, J1, J2, image, int(block["depth"])).linked,
               "{} and {} are not linked".format(J1, J2))

    affine = {tuple(_q(a) for a in p["affine"]) for p in proofs}
    report.add("linked-elements", affine == NEWHOUSE_AFFINE,
               "affine maps {}".format(affine))


def _audit_prefix(report, name, interval, recorded, bound):
    if interval.lo <= 0 or interval.hi >= 1:
        report.add(name, False, "{} not inside (0, 1)".format(interval))
        return

    word = cf_prefix_of_interval(interval)
    recorded = CFWord.from_json(recorded)

    report.add(name, word == recorded and quotient_bound_holds(word, bound),
               "prefix {} (recorded {}) against bound {}".format(word, recorded, bound))


def _audit_point(report, data):
    n = int(data["target"]["n"])
    intervals = [_interval(I) for I in data["intervals"]]
    address = data["ternary_address"] or ""
    enclosure = _interval(data["enclosure"])

    report.add("root", intervals[0] == Interval(0, 1), "first interval {}".format(intervals[0]))
    report.add("address-length", len(address) == len(intervals) - 1,
               "address of length {} for {} intervals".format(len(address), len(intervals)))

    nested = all(interval_of_address(TERNARY, address[:i]) == I
                 for i, I in enumerate(intervals))
    report.add("ternary-intervals", nested, "intervals are not ternary construction intervals")
    report.add("enclosure", enclosure == intervals[-1],
               "enclosure {} != last interval".format(enclosure))

    _audit_prefix(report, "cf-prefix", enclosure, data["cf_prefix"], n)

    transcript = _audit_game(report, data, enclosure)
    if transcript is not None:
        _audit_strategy(report, data, transcript, "fn-potential", match={"n": n})


def _audit_sumset(report, data):
    t = _q(data["t"])
    bound = int(data["bound"])
    window = Interval(max(Fraction(0), t - 1), min(Fraction(1), t))
    x_enclosure = _interval(data["x_enclosure"])
    y_enclosure = _interval(data["y_enclosure"])

    report.add("t-range", Fraction(1, 6) <= t <= Fraction(11, 6), "t = {}".format(t))
    report.add("window", window == _interval(data["window"]) and window.contains_ball(x_enclosure),
               "{} inside window {}".format(x_enclosure, window))
    report.add("complement", y_enclosure == Similarity(-1, t)(x_enclosure),
               "{} != t - {}".format(y_enclosure, x_enclosure))

    _audit_prefix(report, "x-prefix", x_enclosure, data["x_prefix"], bound)
    _audit_prefix(report, "y-prefix", y_enclosure, data["y_prefix"], bound)

    transcript = _audit_game(report, data, x_enclosure)
    if transcript is not None:
        _audit_strategy(report, data, transcript, "sumset", match={"n": bound, "t": t})


def _audit_folding(report, data):
    chain = data["chain"]
    xs = [_q(step["x"]) for step in chain]

    report.add("start", xs[0] == Fraction(17, 27), "x_0 = {}".format(xs[0]))
    report.add("folding-steps", all(folding_step(a) == b for a, b in zip(xs, xs[1:])),
               "chain does not follow the folding map")

    for k, (x, step) in enumerate(zip(xs, chain)):
        check = is_good(x)
        ok = (check.good and check.rational.cf == CFWord.from_json(step["cf"])
              and check.rational.power_of_3_exponent == int(step["exponent"]))
        report.add("good-{}".format(k), ok, "x_{} = {}: {}".format(k, x, check.reason))

    n = len(xs) - 1
    y = _q(data["y"])
    M = 2**(n + 3) - 2
    enclosure = _interval(data["enclosure"])

    report.add("y", y == 2 - 2 * xs[-1], "y = {}".format(y))
    report.add("prefix-length", int(data["prefix_length"]) == M,
               "prefix length {} != {}".format(data["prefix_length"], M))
    report.add("enclosure", enclosure == Interval(y, y + Fraction(1, 3**M)),
               "enclosure {}".format(enclosure))

    digits = ternary_digits(y, M).digits
    twos = [i + 1 for i, d in enumerate(digits) if d == 2]
    expected = [2**k - 1 for k in range(1, M.bit_length() + 1) if 2**k - 1 <= M]

    report.add("ternary-digits", 1 not in digits and twos == expected
               and [int(i) for i in data["twos"]] == expected,
               "twos at {}".format(twos))

    _audit_prefix(report, "cf-prefix", enclosure, data["cf_prefix"], int(data["bound"]))


def cover_digest(leaves):
    """
    SHA-256 of the canonical serialization of cover leaves.
    """

    text = json.dumps([[list(leaf["word"]), leaf["type"]] for leaf in leaves],
                      separators=(",", ":"))

    return hashlib.sha256(text.encode()).hexdigest()


def _audit_cover(report, data):
    n = int(data["n"])
    scale = _q(data["scale"])
    leaves = data["leaves"]
    words = [tuple(leaf["word"]) for leaf in leaves]

    kraft = sum((Fraction(1, n**len(w)) for w in words), Fraction(0))
    report.add("kraft", kraft == 1, "Kraft sum {}".format(kraft))

    members = set(words)
    report.add("prefix-free", len(members) == len(words)
               and not any(w[:i] in members for w in words for i in range(1, len(w))),
               "a leaf is a prefix of another leaf")

    report.add("digest", cover_digest(leaves) == data["digest"], "manifest digest differs")

    internal = {}

    def is_internal(word):
        if word not in internal:
            I = cylinder_interval(word, n)
            internal[word] = (I.diameter >= scale and intersects_ternary_cantor(I)[0])
        return internal[word]

    bad = []
    for leaf, word in zip(leaves, words):
        I = cylinder_interval(word, n)
        meets = intersects_ternary_cantor(I)[0]
        if leaf["type"] == "A":
            ok = meets and I.diameter < scale
        else:
            ok = leaf["type"] == "B" and not meets
        ok = ok and all(is_internal(word[:i]) for i in range(1, len(word)))
        if not ok:
            bad.append(list(word))

    report.add("classification", not bad, "misclassified leaves {}".format(bad[:5]))

    count = sum(1 for leaf in leaves if leaf["type"] == "A")
    report.add("count", count == int(data["count"]),
               "{} type-A leaves, recorded {}".format(count, data["count"]))

    if count > 0:
        estimate = log_ratio(count, 1 / scale)
        recorded = Enclosure.from_json(data["estimate"])
        report.add("estimate", recorded.lo <= estimate.lo and estimate.hi <= recorded.hi,
                   "estimate {} not inside recorded {}".format(estimate, recorded))


def _audit_transcript(report, data):
    replay = replay_transcript(data)

    report.add("transcript-legal", replay.first_illegal is None,
               "first illegal move {}".format(replay.first_illegal))
    report.add("transcript-verdicts", replay.matches, "recorded verdicts differ")


AUDITORS = {"ap": _audit_ap,
            "point": _audit_point,
            "folding": _audit_folding,
            "sumset": _audit_sumset,
            "cover": _audit_cover,
            "transcript": _audit_transcript}


def audit_certificate(document, strict=True):
    """
    Audit a serialized certificate.

    Args:
        document: dict (parsed JSON) or object with a `to_json` method.
        strict: if True raise `CertificateError` naming the first failed
            check, else return the report.

    Returns:
        AuditReport
    """

    data = document.to_json() if hasattr(document, "to_json") else document

    kind = data.get("kind") if isinstance(data, dict) else None
    if kind not in AUDITORS:
        raise CertificateError("Unknown certificate kind `{}`.".format(kind))
    if int(data.get("version", 0)) != 1:
        raise CertificateError("Unsupported certificate version `{}`."
                               .format(data.get("version")))

    report = AuditReport(kind)

    try:
        AUDITORS[kind](report, data)
    except (KeyError, TypeError, ValueError, IndexError) as e:
        report.add("schema", False, "{}: {}".format(type(e).__name__, e))

    if strict and not report.accepted:
        failed = report.failed[0]
        raise CertificateError("Certificate `{}` rejected by check `{}`: {}."
                               .format(kind, failed.name, failed.detail))

    logger.info("Audit of %s certificate: %s.", kind,
                "accepted" if report.accepted else "rejected")

    return report
