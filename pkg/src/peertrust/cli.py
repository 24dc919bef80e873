"""Command-line front end: ``score``, ``trust`` and ``simulate``.

Exit codes: 0 success, 2 invalid input or scenario, 3 output failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import PeerTrustError, ScenarioError
from .ledger import OpinionEntry, read_table_csv
from .scoring import (
    DEFAULT_FAMILIARITY_PARAMS,
    DEFAULT_GAP_PARAMS,
    DEFAULT_INTERACTION_THRESHOLD,
    DEFAULT_RESPONSE_PARAMS,
    GompertzParams,
    InteractionInputs,
    PrivilegeLevel,
    PropertyWeights,
    RelevanceGrade,
    score_interaction,
)
from .sim import bundled_scenario_path, load_scenario, run_scenario
from .sim.report import format_report, write_outputs
from .trust import OpinionReport, assess_trust

EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3

PROPERTY_LABELS = ("response time", "time gap", "familiarity", "reciprocity", "relevance")


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"must be finite and >= 0, got {text}")
    return v


def _positive(text: str) -> float:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _unit(text: str) -> float:
    v = _nonneg(text)
    if v > 1:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return v


def _reciprocity(text: str) -> tuple[int, int]:
    try:
        r, r_max = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LEVEL/MAX, e.g. 9/10, got {text!r}")
    return r, r_max


def _relevance(text: str) -> RelevanceGrade:
    try:
        return RelevanceGrade.parse(text)
    except PeerTrustError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _weights(text: str) -> PropertyWeights:
    try:
        return PropertyWeights.from_sequence(float(x) for x in text.split(","))
    except (ValueError, PeerTrustError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="peertrust", description=__doc__, formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score one interaction", formatter_class=fmt)
    p.add_argument("--elapsed-hours", type=_nonneg, default=10.0, help="response time in hours")
    p.add_argument("--gap-months", type=_nonneg, default=5.0, help="months since the previous interaction")
    p.add_argument("--acquaintance-years", type=_nonneg, default=1.0, help="years since first contact")
    p.add_argument("--reciprocity", type=_reciprocity, default="9/10", metavar="LEVEL/MAX",
                   help="granted privilege level on its scale")
    p.add_argument("--reciprocity-min", type=int, default=0, help="lowest (no access) level of the scale")
    p.add_argument("--relevance", type=_relevance, default="fully",
                   help="not_at_all | may_not | cant_say | to_some_extent | fully")
    for prop, params, unit in (("response", DEFAULT_RESPONSE_PARAMS, "hours"),
                               ("gap", DEFAULT_GAP_PARAMS, "months"),
                               ("familiarity", DEFAULT_FAMILIARITY_PARAMS, "years")):
        p.add_argument(f"--b-{prop}", type=_positive, default=params.b, help=f"Gompertz b for the {prop} curve")
        p.add_argument(f"--c-{prop}", type=_positive, default=params.c,
                       help=f"Gompertz c for the {prop} curve, per {unit[:-1]}")
    p.add_argument("--weights", type=_weights, default="0.2,0.1,0.3,0.3,0.1", metavar="W1,W2,W3,W4,W5",
                   help="weights for response time, time gap, familiarity, reciprocity, relevance")
    p.add_argument("--threshold", type=_unit, default=DEFAULT_INTERACTION_THRESHOLD,
                   help="aggregate score an interaction must exceed to count as positive")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("trust", help="assess trust from an opinion table and opinion reports", formatter_class=fmt)
    p.add_argument("table", help="opinion table CSV: node,weight,opinion,positive,negative,total")
    p.add_argument("reports", help="opinion reports CSV: reporter,subject,opinion,weight")
    p.add_argument("--t-min", type=_positive_int, default=10, help="interactions needed to skip the community")
    p.add_argument("--subject", help="node being assessed (default: the only subject in the inputs)")
    p.add_argument("--trustor", help="assessing node; its own reports are ignored")
    p.set_defaults(func=cmd_trust)

    p = sub.add_parser("simulate", help="run a community scenario", formatter_class=fmt)
    p.add_argument("scenario", help="scenario JSON path, or the name of a bundled scenario (e.g. good_vs_bad)")
    p.add_argument("--out", default="run", help="output directory")
    p.add_argument("--seed", type=_seed, action="append", help="override the scenario seed; repeat for a batch")
    p.add_argument("--jobs", type=_positive_int, default=1, help="threads for a multi-seed batch")
    p.set_defaults(func=cmd_simulate)
    return parser


def cmd_score(args, parser) -> int:
    r, r_max = args.reciprocity
    try:
        privilege = PrivilegeLevel(r, args.reciprocity_min, r_max)
    except PeerTrustError as exc:
        parser.error(f"argument --reciprocity: {exc}")
    inputs = InteractionInputs(
        args.elapsed_hours, args.gap_months, args.acquaintance_years, privilege, args.relevance,
        GompertzParams(args.b_response, args.c_response),
        GompertzParams(args.b_gap, args.c_gap),
        GompertzParams(args.b_familiarity, args.c_familiarity),
    )
    score = score_interaction(inputs, args.weights, args.threshold)
    for k, (label, s) in enumerate(zip(PROPERTY_LABELS, score.scores), start=1):
        print(f"I_{k} {label:<14} {s:.4f}")
    print(f"I   {'aggregate':<14} {score.aggregate:.4f}")
    print(f"classification     {score.classification.value}")
    return EXIT_OK


def _read_reports(path) -> list[OpinionReport]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = ["reporter", "subject", "opinion", "weight"]
        if reader.fieldnames != expected:
            raise ValueError(f"{path}: header must be {','.join(expected)}")
        return [OpinionReport(row["reporter"], row["subject"], float(row["opinion"]), float(row["weight"]))
                for row in reader]


def cmd_trust(args, parser) -> int:
    try:
        table = read_table_csv(Path(args.table).read_text())
        reports = _read_reports(args.reports)
        subject = args.subject
        if subject is None:
            candidates = {r.subject for r in reports} | set(table)
            if len(candidates) != 1:
                raise ValueError(f"cannot infer the subject from {sorted(candidates)}; pass --subject")
            subject = candidates.pop()
        entry = table.get(subject, OpinionEntry())
        assessment = assess_trust(entry, reports, args.t_min, trustor=args.trustor)
    except (OSError, ValueError, PeerTrustError) as exc:
        print(f"peertrust trust: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    a = assessment
    print(f"subject    {subject}")
    print(f"personal   {a.personal:.4f}")
    print(f"community  {'-' if a.community is None else f'{a.community:.4f}'}")
    print(f"trust      {a.trust:.4f}")
    print(f"basis      {a.basis.value}")
    print(f"conflict   {'yes' if a.conflict else 'no'}")
    return EXIT_OK


def _resolve_scenario(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    bundled = bundled_scenario_path(name)
    if bundled.exists():
        return bundled
    return path


def cmd_simulate(args, parser) -> int:
    try:
        scenario = load_scenario(_resolve_scenario(args.scenario))
    except ScenarioError as exc:
        print("peertrust simulate: invalid scenario:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"peertrust simulate: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    seeds = args.seed or [scenario.seed]
    out = Path(args.out)
    jobs = [(s, out if len(seeds) == 1 else out / f"seed-{s}") for s in seeds]

    def run_one(job):
        seed, directory = job
        trace = run_scenario(scenario.with_seed(seed))
        return seed, write_outputs(trace, directory)

    try:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_one, jobs))
    except OSError as exc:
        print(f"peertrust simulate: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    for seed, report in results:
        if len(results) > 1:
            print(f"== seed {seed}")
        print(format_report(report))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
