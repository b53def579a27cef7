"""
Command line interface

Every pipeline subcommand writes its certificate as JSON after auditing it
(exit 0). An honest failure writes the diagnostic next to it (exit 2);
usage errors exit with 1.
"""

import argparse
import logging
import os
import sys
import time

from dataclasses import dataclass, field
from fractions import Fraction

from schmidtools.analysis.audit import audit_certificate
from schmidtools.analysis.certify import (ap_instance_diagnostics,
                                          ap_length_budget, certify_ap3_meps,
                                          certify_f19_cap_c, certify_folding_f9,
                                          certify_newhouse_ap4,
                                          certify_sumset_f49, find_ap_via_game,
                                          search_ap_endpoints)
from schmidtools.analysis.dimension import (budget_trend, hd_estimate_fn_cap_cantor,
                                            hd_lower_formula, independence_heuristic,
                                            inequality_sweep, loglog_slope,
                                            potential_hd_bound, survivor_tree,
                                            target_dimension_bound, TARGETS)
from schmidtools.analysis.logger import Logger, jsonify
from schmidtools.arith.rational import parse_rational
from schmidtools.defaults import DEFAULTS
from schmidtools.exceptions import CertificateError, PipelineFailure, SchmidtoolsError
from schmidtools.games.alice import alice_ba1, alice_meps, alice_null
from schmidtools.games.bob import never_stuck_sweep
from schmidtools.games.game import replay_transcript
from schmidtools.games.params import GameParams
from schmidtools.parallel import fan_out


logger = logging.getLogger(__name__)

N_JOBS_HELP = "worker processes, -1 for all CPUs"


class ArgumentParser(argparse.ArgumentParser):
    # usage errors exit with 1, 2 is reserved for honest failures

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "{}: error: {}\n".format(self.prog, message))


@dataclass
class RunConfig:
    """
    Options shared by all subcommands.
    """

    command: str
    out_dir: str = "."
    out: str = ""
    verbosity: int = 0
    options: dict = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, args):
        options = {k: v for k, v in vars(args).items()
                   if k not in ("command", "out_dir", "out", "verbose", "handler")}

        return cls(args.command, args.out_dir, getattr(args, "out", "") or "",
                   args.verbose, options)

    @property
    def logger(self):
        return Logger(self.out_dir, logtime="")

    def filename(self, default):
        return self.out or default

    def __getattr__(self, name):
        options = self.__dict__.get("options", {})
        if name in options:
            return options[name]
        raise AttributeError(name)


def configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _print(summary):
    print(Logger.dict_to_text(jsonify(summary)))


def _emit(config, certificate, default):
    """
    Audit a certificate and save it.
    """

    report = audit_certificate(certificate)
    path = config.logger.save_json(certificate, filename=config.filename(default),
                                   logtime=False)

    logger.info("Certificate written to %s.", path)

    return {"file": path, "audit": "accepted ({} checks)".format(len(report.checks))}


def _failure_file(config, default):
    stem, _ = os.path.splitext(config.filename(default))
    return stem + "-failure.json"


def run_ap_meps(config):
    cert = certify_ap3_meps(config.epsilon, config.a, config.depth)
    summary = {"elements": cert.elements, "gap": cert.gap, "skips": len(cert.extra["skips"])}
    summary.update(_emit(config, cert, "ap-meps.json"))
    _print(summary)


def run_ap4_newhouse(config):
    cert = certify_newhouse_ap4(config.epsilon, config.depth)
    summary = {"elements": cert.elements, "gap": cert.gap, "exact": cert.exact,
               "diagnostics": ap_instance_diagnostics(cert)}
    summary.update(_emit(config, cert, "ap4-newhouse.json"))
    _print(summary)


def run_ap_search(config):
    result = search_ap_endpoints(config.epsilon, config.stage, config.kmax)
    summary = {"length": result.length, "progression": result.progression,
               "count": len(result.maximal)}
    config.logger.save_json(summary, filename=config.filename("ap-search.json"),
                            logtime=False)
    _print(summary)


def run_ap_game(config):
    cert = find_ap_via_game(config.epsilon, config.k, config.t, config.depth)
    summary = {"elements": cert.elements, "gap": cert.gap}
    summary.update(_emit(config, cert, "ap-game.json"))
    _print(summary)


def run_f19_cap_c(config):
    cert = certify_f19_cap_c(config.depth)
    summary = {"prefix": str(cert.cf_prefix), "prefix_length": len(cert.cf_prefix),
               "ternary_address": cert.ternary_address, "obstacles": len(cert.ledger)}
    summary.update(_emit(config, cert, "f19-cap-c.json"))
    _print(summary)


def sumset_grid(count):
    lo, hi = Fraction(1, 6), Fraction(11, 6)
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _sumset_case(task):
    t, depth = task

    try:
        cert = certify_sumset_f49(t, depth)
        audit_certificate(cert)
    except SchmidtoolsError as e:
        # pipeline failures and rejected certificates both end in a failure row
        row = {"t": t, "status": "failure: {}".format(e),
               "x_lo": "", "x_hi": "", "x_prefix": "", "y_prefix": ""}
        return row, None

    row = {"t": t, "status": "accepted", "x_lo": cert.x_enclosure.lo,
           "x_hi": cert.x_enclosure.hi, "x_prefix": len(cert.x_prefix),
           "y_prefix": len(cert.y_prefix)}

    return row, jsonify(cert)


def run_sumset_f49(config):
    if config.t is not None:
        cert = certify_sumset_f49(config.t, config.depth)
        summary = {"t": cert.t, "x": cert.x_enclosure, "x_prefix": str(cert.x_prefix),
                   "y_prefix": str(cert.y_prefix)}
        summary.update(_emit(config, cert, "sumset-f49.json"))
        _print(summary)
        return

    stem, _ = os.path.splitext(config.filename("sumset-f49.json"))
    results = fan_out(_sumset_case, [(t, config.depth) for t in sumset_grid(config.t_grid)],
                      config.n_jobs)

    rows = {"t": [], "status": [], "x_lo": [], "x_hi": [], "x_prefix": [], "y_prefix": []}
    failures = 0

    for i, (row, document) in enumerate(results):
        for key in rows:
            rows[key].append(row[key])
        if document is None:
            failures += 1
            continue
        config.logger.save_json(document, filename="{}-{}.json".format(stem, i),
                                logtime=False)

    config.logger.save_csv(rows, sep=",", filename=stem + ".csv", logtime=False)
    _print({"grid": config.t_grid, "accepted": config.t_grid - failures,
            "failures": failures})

    if failures:
        raise PipelineFailure("{} of {} grid values failed.".format(failures, config.t_grid),
                              {"rows": rows})


def run_folding_f9(config):
    cert = certify_folding_f9(config.iterations, config.cf_depth)
    summary = {"denominators": ["3^{}".format(m) for _, _, m in cert.chain],
               "twos": cert.twos[:8], "prefix": str(cert.cf_prefix),
               "prefix_length": len(cert.cf_prefix)}
    summary.update(_emit(config, cert, "folding-f9.json"))
    _print(summary)


def run_hd_fn_c(config):
    estimate = hd_estimate_fn_cap_cantor(config.n, config.scale)
    lo, hi = estimate.estimate.to_decimal()
    summary = {"N": estimate.count, "estimate": "[{}, {}]".format(lo, hi),
               "nodes": estimate.nodes, "digest": estimate.digest}
    summary.update(_emit(config, estimate, "hd-fn-c.json"))
    _print(summary)


def run_ap_budget(config):
    if len(config.alpha) == 1:
        budget = ap_length_budget(config.alpha[0], config.beta, config.K2)
        _print({"k": budget.k, "c": budget.c, "ratio": budget.ratio,
                "empty": budget.empty})
        return

    rows = budget_trend(config.alpha, config.beta, config.K2, n_jobs=config.n_jobs)
    table = {key: [row[key] for row in rows] for key in rows[0]}
    path = config.logger.save_csv(table, sep=",", filename=config.filename("ap-budget.csv"),
                                  logtime=False)

    ratios = [row["ratio_lo"] for row in rows]
    _print({"file": path, "k": [row["k"] for row in rows],
            "slope": loglog_slope([1 / row["alpha"] for row in rows], [row["k"] for row in rows]),
            "band": max(ratios) / min(ratios) if min(ratios) > 0 else None})


def _survivor_alice(config):
    params = GameParams.absolute(1, config.beta, config.beta / 2)

    if config.strategy == "null":
        return alice_null(params)
    if config.strategy == "ba1":
        return alice_ba1(config.eps, config.beta)
    return alice_meps(config.eps, config.beta)


def run_survivor_tree(config):
    report = survivor_tree(_survivor_alice(config), config.beta, config.N, config.gamma,
                           config.c, config.levels)
    lo, hi = report.dimension.to_decimal()
    path = config.logger.save_json(report, filename=config.filename("survivor-tree.json"),
                                   logtime=False)
    _print({"file": path, "levels": report.levels, "dimension": "[{}, {}]".format(lo, hi)})


def run_bounds(config):
    kind = config.bound

    if kind == "hd-lower":
        lo, hi = hd_lower_formula(config.N, config.k, config.beta).to_decimal()
        _print({"bound": "[{}, {}]".format(lo, hi)})
    elif kind == "potential":
        result = potential_hd_bound(config.delta, config.eta, config.alpha, config.beta,
                                    config.c, config.K1, config.K2)
        _print(result.to_json())
    elif kind == "independence":
        _print({"dimension": independence_heuristic(config.d1, config.d2, config.d)})
    elif kind == "target":
        _print(target_dimension_bound(config.target, config.eps, config.delta, config.eta,
                                      config.K1, config.K2))
    elif kind == "inequality":
        violations = inequality_sweep(config.count, config.seed, n_jobs=config.n_jobs)
        _print({"tuples": config.count, "violations": len(violations)})
        if violations:
            raise PipelineFailure("Inequality violated.", {"violations": violations[:10]})


def run_never_stuck(config):
    rows = never_stuck_sweep(config.count, config.seed, config.depth, n_jobs=config.n_jobs)
    table = {key: [row[key] for row in rows] for key in rows[0]} if rows else {}
    path = config.logger.save_csv(table, sep=",", filename=config.filename("never-stuck.csv"),
                                  logtime=False)
    stuck = sum(1 for row in rows if row["status"] != "depth-reached")

    _print({"file": path, "matches": len(rows), "stuck": stuck})

    if stuck:
        raise PipelineFailure("Bob was stuck in {} matches.".format(stuck), {"rows": rows})


def run_game_replay(config):
    document = Logger.load_json(config.file)
    if document.get("kind") != "transcript":
        document = document["transcript"]
    replay = replay_transcript(document)

    for player, turn, verdict in replay.verdicts:
        print("{:>5} {:>4}  {}".format(player, turn,
                                       "ok" if verdict.legal else
                                       "{}: {}".format(verdict.rule, verdict.detail)))

    audit_certificate(document)


def run_audit(config):
    report = audit_certificate(Logger.load_json(config.file), strict=False)

    for check in report.checks:
        print("{} {}{}".format("ok  " if check.passed else "FAIL", check.name,
                               "" if check.passed else ": " + check.detail))
    print(report)

    if not report.accepted:
        raise CertificateError("Certificate `{}` rejected.".format(config.file))


def build_parser():
    rational = parse_rational

    parser = ArgumentParser(prog="schmidtools",
                            description="Certified Schmidt game pipelines.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="INFO with -v, DEBUG with -vv")
    parser.add_argument("--out-dir", default=".", help="directory of the artifacts")

    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def command(name, handler, help, out=True):
        p = sub.add_parser(name, help=help)
        p.set_defaults(handler=handler)
        if out:
            p.add_argument("--out", default="", help="output filename")
        return p

    p = command("ap-meps", run_ap_meps, "3-term progression in M_eps")
    p.add_argument("--epsilon", type=rational, default=Fraction(1, 49))
    p.add_argument("--a", type=rational, default=Fraction(0))
    p.add_argument("--depth", type=int, default=40)

    p = command("ap4-newhouse", run_ap4_newhouse, "4-term progression in M_eps")
    p.add_argument("--epsilon", type=rational, default=Fraction(1, 3))
    p.add_argument("--depth", type=int, default=12)

    p = command("ap-search", run_ap_search, "longest progression of endpoints")
    p.add_argument("--epsilon", type=rational, required=True)
    p.add_argument("--stage", type=int, default=4)
    p.add_argument("--kmax", type=int, default=None)

    p = command("ap-game", run_ap_game, "k-term progression from the potential game")
    p.add_argument("--epsilon", type=rational, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=rational, required=True)
    p.add_argument("--depth", type=int, default=30)

    p = command("f19-cap-c", run_f19_cap_c, "point of F_19 and the Cantor set")
    p.add_argument("--depth", type=int, default=40)

    p = command("sumset-f49", run_sumset_f49, "t = x + y with x, y in F_49")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", type=rational, default=None)
    group.add_argument("--t-grid", type=int, nargs="?", const=DEFAULTS["sumset:grid"],
                       default=DEFAULTS["sumset:grid"])
    p.add_argument("--depth", type=int, default=30)
    p.add_argument("--n-jobs", type=int, default=None, help=N_JOBS_HELP)

    p = command("folding-f9", run_folding_f9, "folding chain of 17/27")
    p.add_argument("--iterations", type=int, default=DEFAULTS["cap:folding_iterations"])
    p.add_argument("--cf-depth", type=int, default=15)

    p = command("hd-fn-c", run_hd_fn_c, "cover estimate of dim F_n cap C")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--scale", type=rational, default=Fraction(1, 10**8))

    p = command("ap-budget", run_ap_budget, "progression length budget")
    p.add_argument("--alpha", type=rational, nargs="+", required=True)
    p.add_argument("--beta", type=rational, default=Fraction(1, 4))
    p.add_argument("--K2", type=rational, default=Fraction(1))
    p.add_argument("--n-jobs", type=int, default=None, help=N_JOBS_HELP)

    p = command("survivor-tree", run_survivor_tree, "survivor tree branching")
    p.add_argument("--strategy", choices=("null", "ba1", "meps"), default="null")
    p.add_argument("--eps", type=rational, default=Fraction(1, 100))
    p.add_argument("--beta", type=rational, default=Fraction(1, 4))
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--gamma", type=rational, default=Fraction(1))
    p.add_argument("--c", type=rational, default=Fraction(1, 2))
    p.add_argument("--levels", type=int, default=2)

    p = command("bounds", run_bounds, "dimension bound calculators", out=False)
    bounds = p.add_subparsers(dest="bound", metavar="bound")
    bounds.required = True

    b = bounds.add_parser("hd-lower")
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--beta", type=rational, required=True)

    b = bounds.add_parser("potential")
    for name in ("delta", "eta", "alpha", "beta", "c"):
        b.add_argument("--" + name, type=rational, required=True)
    b.add_argument("--K1", type=rational, default=None)
    b.add_argument("--K2", type=rational, default=None)

    b = bounds.add_parser("independence")
    b.add_argument("--d1", type=rational, required=True)
    b.add_argument("--d2", type=rational, required=True)
    b.add_argument("--d", type=int, default=1)

    b = bounds.add_parser("target")
    b.add_argument("--target", choices=TARGETS, required=True)
    b.add_argument("--eps", type=rational, required=True)
    b.add_argument("--delta", type=rational, default=Fraction(1))
    b.add_argument("--eta", type=rational, default=Fraction(1))
    b.add_argument("--K1", type=rational, default=None)
    b.add_argument("--K2", type=rational, default=None)

    b = bounds.add_parser("inequality")
    b.add_argument("--count", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--n-jobs", type=int, default=None, help=N_JOBS_HELP)

    p = command("never-stuck", run_never_stuck, "random adversaries against subdivision")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--n-jobs", type=int, default=None, help=N_JOBS_HELP)

    p = command("game-replay", run_game_replay, "replay a transcript", out=False)
    p.add_argument("file")

    p = command("audit", run_audit, "audit a certificate", out=False)
    p.add_argument("file")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    configure_logging(args.verbose)
    config = RunConfig.from_namespace(args)

    start = time.perf_counter()

    try:
        args.handler(config)
    except PipelineFailure as e:
        print("failure: {}".format(e), file=sys.stderr)
        if e.diagnostic:
            Logger(config.out_dir, logtime="").save_json(
                e.diagnostic, filename=_failure_file(config, config.command + ".json"),
                logtime=False)
        return 2
    except SchmidtoolsError as e:
        print("failure: {}".format(e), file=sys.stderr)
        return 2
    except (ValueError, TypeError) as e:
        print("error: {}".format(e), file=sys.stderr)
        return 1

    logger.info("%s done in %s.", config.command,
                Logger.format_time(time.perf_counter() - start))

    return 0


if __name__ == "__main__":
    sys.exit(main())
