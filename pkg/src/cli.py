"""
S5 x S5 Action Certifier
Command-line entry point for the certification suites.

Verbs:
- verify <suite>                     run a suite and emit its report
- group info <family> <params...>    structure table of a presented group
- rep check <name> [--prime p]       certificates for one representation table
- fixedpoints --space X0 --group P3  fixed-point census of one space
- report [--from saved.json]         re-render a saved report (default: the last one)

Exit codes: 0 certified, 1 a check failed, 2 usage / configuration / output
error, 3 internal inconsistency of the exact arithmetic.
"""

import argparse
import logging
import os
import re
import sys

import pandas as pd

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from cyclotomic import ArithmeticInconsistency
from finite_groups import ClosureBoundExceeded, group_profile
from fixed_point_census import SPACES, ManualAnalysisRequired, census_check, space_census, verify_free_on_U
from presented_groups import build_group
from representations import (
    GAMMA_TABLES,
    REP_NAMES,
    det_check,
    rep_build,
    verify_faithful,
    verify_irreducible,
    verify_rep_relations,
)
from suites import SUITE_NAMES, run_suite
from verification_config import FORMATS, ConfigError, load_config
from verification_report import (
    Report,
    ReportWriteError,
    emit_report,
    last_report,
    load_report,
    remember_report,
    run_timed,
)

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
BANNER = "=" * 70

EXIT_CERTIFIED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (overrides defaults and environment)")
    common.add_argument("--epsilon", help="Collar width as an exact rational, e.g. 49/625")
    common.add_argument("--seed", type=int, help="Seed for every sampled check")
    common.add_argument("--jobs", type=int, help="joblib workers for the census (-1 = all cores)")
    common.add_argument("--timing", action="store_true", help="Record nanosecond timings")
    common.add_argument("--verbose", action="store_true", help="Debug logging")
    common.add_argument("--out", help="Write the report to this path")
    common.add_argument("--format", choices=FORMATS, help="Report format (default: json)")

    parser = argparse.ArgumentParser(
        prog="certifier",
        description="Exact verification of the free actions on S5 x S5",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    verify = verbs.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES)

    group = verbs.add_parser("group", help="Presented groups")
    group_verbs = group.add_subparsers(dest="group_verb", required=True)
    info = group_verbs.add_parser("info", parents=[common], help="Structure of P(k), E(p) or B(k,eps)")
    info.add_argument("family", choices=["P", "E", "B", "p", "e", "b"])
    info.add_argument("params", nargs="+", type=int)

    rep = verbs.add_parser("rep", help="Representation tables")
    rep_verbs = rep.add_subparsers(dest="rep_verb", required=True)
    check = rep_verbs.add_parser("check", parents=[common], help="Certify one table")
    check.add_argument("name", choices=REP_NAMES + ("trivial",))
    check.add_argument("--prime", type=int, help="The prime for rho_E")

    fixed = verbs.add_parser("fixedpoints", parents=[common], help="Fixed-point census")
    fixed.add_argument("--space", choices=sorted(SPACES), default="X0")
    fixed.add_argument("--group", default="P3", help="P<k>, e.g. P4")

    report = verbs.add_parser("report", parents=[common], help="Re-render a saved JSON report")
    report.add_argument("--from", dest="source", help="Saved JSON report (default: the last one written)")
    return parser


def _overrides(args):
    return {
        "epsilon": args.epsilon,
        "seed": args.seed,
        "n_jobs": args.jobs,
        "record_timing": True if args.timing else None,
        "output": args.out,
        "format": args.format,
    }


def print_summary(report):
    counts = report.counts()
    print(BANNER)
    print(f"SUITE {report.suite}: {report.status.upper()}")
    print(f"  {counts['certified']} certified, {counts['failed']} failed, {counts['skipped']} skipped")
    print(BANNER)
    failed = report.failed_checks()
    if failed:
        frame = pd.DataFrame([{"check": c.check_id, "anchor": c.anchor} for c in failed])
        print(frame.to_string(index=False))


def finish(report, config):
    """Write or print the report; the exit code follows its status."""
    if config.output:
        path = emit_report(report, config.format, config.output)
        if config.format == "json":
            remember_report(path)
        print_summary(report)
    elif config.format == "markdown":
        sys.stdout.write(report.to_markdown())
    else:
        sys.stdout.write(report.to_json())
    return EXIT_CERTIFIED if report.certified else EXIT_FAILED


def cmd_verify(args, config):
    return finish(run_suite(args.suite, config), config)


def cmd_group_info(args, config):
    G = build_group(args.family, *args.params)
    profile = group_profile(G)
    histogram = profile.pop("order_histogram")
    relations = G.verify_own_relations()
    print(BANNER)
    print(f"{G.name}  {G.anchor}")
    print(BANNER)
    print(pd.DataFrame([profile]).to_string(index=False))
    print()
    print(pd.DataFrame({"element order": list(histogram), "count": list(histogram.values())})
          .to_string(index=False))
    print()
    print(f"relations: {relations.status} ({relations.witness['relations_checked']} checked)")
    return EXIT_CERTIFIED if relations.certified else EXIT_FAILED


def cmd_rep_check(args, config):
    rep = rep_build(args.name, args.prime)
    G = rep.source_group()
    checks = [lambda: verify_rep_relations(rep, config.k_values)]
    if args.name not in GAMMA_TABLES[1:]:
        checks += [
            lambda: det_check(rep, G),
            lambda: verify_irreducible(rep, G),
        ]
        if args.name != "trivial":
            checks.append(lambda: verify_faithful(rep, G, config.closure_bound))
    else:
        checks.append(lambda: verify_irreducible(rep, G, expected=False))
    report = Report(suite=f"rep.{rep.name}", config=config.report_snapshot())
    for check in checks:
        report.add(run_timed(check, config.record_timing))
    return finish(report, config)


def cmd_fixedpoints(args, config):
    match = re.fullmatch(r"P\(?(\d+)\)?", args.group.strip(), re.IGNORECASE)
    if not match:
        raise ConfigError(f"--group must look like P3 or P(4), got {args.group!r}")
    k = int(match.group(1))
    census = space_census(args.space, k, config.n_jobs)
    print(BANNER, file=sys.stderr)
    print(f"{args.space} census of P({k}): {len(census)} elements with fixed points", file=sys.stderr)
    print(BANNER, file=sys.stderr)
    print(census.to_frame().to_string(index=False), file=sys.stderr)

    report = Report(suite=f"fixedpoints.{args.space}.P{k}", config=config.report_snapshot())
    report.add(run_timed(lambda: census_check(args.space, k, config.n_jobs), config.record_timing))
    if args.space != "Y":
        i = int(args.space[1])
        report.add(run_timed(lambda: verify_free_on_U(i, k, config.epsilon, config.n_jobs),
                             config.record_timing))
    return finish(report, config)


def cmd_report(args, config):
    return finish(load_report(args.source or last_report()), config)


COMMANDS = {
    "verify": cmd_verify,
    "group": cmd_group_info,
    "rep": cmd_rep_check,
    "fixedpoints": cmd_fixedpoints,
    "report": cmd_report,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_CERTIFIED

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config, _overrides(args))
        return COMMANDS[args.verb](args, config)
    except (ArithmeticInconsistency, ManualAnalysisRequired, ClosureBoundExceeded) as e:
        LOGGER.error("Internal inconsistency: %s", e)
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ConfigError, ValueError, ReportWriteError, FileNotFoundError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
