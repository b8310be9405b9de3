"""Command-line front end: verify, search, minimize, sharpness.

Exit codes: 0 when everything passed, 1 when a check was refuted or a
counterexample was found, 2 on usage or structural errors.

With ``--json PATH`` each subcommand writes a run manifest whose content is
fully determined by the arguments (including the seed); reruns produce
byte-identical files except for the elapsed_ms fields inside verifier
reports.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__, explorer, verifier
from .explorer import MacroState, PreconditionError, SearchConfig
from .poly import StructuralError

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")

ONES_PROBE = {"a1": 1, "a2": 1, "a3": 1, "b1": 1, "b2": 1, "b3": 1}


def rational(text: str) -> Fraction:
    """argparse type for exact rationals: "num/den" or integer syntax."""
    if not _RATIONAL_RE.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a rational; use integer or num/den syntax"
        )
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has denominator zero") from None


def rational_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"{text!r} must be three comma-separated rationals")
    return tuple(rational(part) for part in parts)


def coordinate_order(text: str) -> tuple[int, int, int]:
    if sorted(text) != ["1", "2", "3"]:
        raise argparse.ArgumentTypeError(
            f"{text!r} must be a permutation of the digits 123"
        )
    return tuple(int(ch) for ch in text)


@dataclass
class RunManifest:
    """Machine-readable record of one CLI invocation."""

    command: str
    config: dict
    reports: list[dict]
    overall_status: str

    def to_dict(self) -> dict:
        return {
            "tool": "cstriple",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "reports": self.reports,
            "overall_status": self.overall_status,
        }


def _emit(manifest: RunManifest, json_path: str | None) -> None:
    if json_path:
        text = json.dumps(manifest.to_dict(), indent=2) + "\n"
        Path(json_path).write_text(text, encoding="utf-8")


def _cmd_verify(args: argparse.Namespace) -> int:
    names = [args.check] if args.check else list(verifier.CHECK_NAMES)
    reports = [verifier.run_check(name) for name in names]
    for report in reports:
        line = f"{report.check:26s} {report.status:9s} terms={report.term_count}"
        if report.witness:
            line += f"  witness: {report.witness}"
        print(line)
    ok = all(r.status == verifier.STATUS_VERIFIED for r in reports)
    status = "pass" if ok else "fail"
    print(f"overall: {status}")
    manifest = RunManifest(
        command="verify",
        config={"checks": names},
        reports=[r.to_dict() for r in reports],
        overall_status=status,
    )
    _emit(manifest, args.json)
    return 0 if ok else 1


def _cmd_search(args: argparse.Namespace) -> int:
    cfg = SearchConfig(
        sample_count=args.samples,
        seed=args.seed,
        numerator_bound=args.num_bound,
        denominator_bound=args.den_bound,
        zero_probability=args.zero_prob,
    )
    poly = explorer.resolve_target(args.target, args.c)
    # The all-ones point is a known equality case of every target; it rides
    # along as a fixed probe so each run pins the exact value 0 there.
    probe = {name: 1 for name in poly.varset.names}
    report = explorer.random_search(poly, cfg, probes=[probe], label=args.target)

    def point_text(point) -> str:
        return " ".join(f"{n}={v}" for n, v in zip(report.variables, point))

    print(f"target={report.target} samples={report.samples_run} seed={report.seed}")
    print(f"min = {report.min_value} at {point_text(report.argmin)}")
    print(f"counterexamples: {len(report.counterexamples)}")
    for point, value in report.counterexamples[:3]:
        print(f"  {point_text(point)} -> {value}")
    ok = not report.counterexamples
    status = "pass" if ok else "fail"
    print(f"overall: {status}")
    config = cfg.to_dict()
    config["target"] = args.target
    config["c"] = str(args.c) if args.c is not None else None
    manifest = RunManifest(
        command="search",
        config=config,
        reports=[report.to_dict()],
        overall_status=status,
    )
    _emit(manifest, args.json)
    return 0 if ok else 1


def _cmd_minimize(args: argparse.Namespace) -> int:
    state = MacroState(args.p, args.z)
    trace = explorer.greedy_minimize_z(state, order=args.order)
    classification = explorer.case_classify(trace.final)

    def triple(values) -> str:
        return "(" + ",".join(str(v) for v in values) + ")"

    print(f"initial: p={triple(state.p)} z={triple(state.z)} d={trace.initial.d_value()}")
    for step in trace.steps:
        print(
            f"  lower {step.coordinate}: {step.old_value} -> {step.new_value}"
            f"   d: {step.d_before} -> {step.d_after}"
        )
    print(
        f"final: z={triple(trace.final.z)} d={trace.final.d_value()} "
        f"case {classification.label} (permutation {classification.permutation}, "
        f"closed form {classification.closed_form_value})"
    )
    negative_product = state.p[0] * state.p[1] * state.p[2] < 0
    ok = (
        trace.case_label != "mixed"
        and all(step.d_after <= step.d_before for step in trace.steps)
        and classification.closed_form_value == trace.final.d_value()
        and (not negative_product or trace.final.d_value() >= 0)
    )
    status = "pass" if ok else "fail"
    print(f"overall: {status}")
    payload = trace.to_dict()
    payload["classification"] = classification.to_dict()
    manifest = RunManifest(
        command="minimize",
        config={
            "p": [str(v) for v in args.p],
            "z": [str(v) for v in args.z],
            "order": list(args.order),
        },
        reports=[payload],
        overall_status=status,
    )
    _emit(manifest, args.json)
    return 0 if ok else 1


def _cmd_sharpness(args: argparse.Namespace) -> int:
    witness = explorer.sharpness_witness(args.c)
    print(
        f"c={witness.c}: value {witness.value} < 0 at "
        f"b=({','.join(map(str, witness.b))}) k=({','.join(map(str, witness.k))})"
    )
    ok = witness.value < 0
    status = "pass" if ok else "fail"
    print(f"overall: {status}")
    manifest = RunManifest(
        command="sharpness",
        config={"c": str(witness.c)},
        reports=[witness.to_dict()],
        overall_status=status,
    )
    _emit(manifest, args.json)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstriple",
        description=(
            "Exact verification toolkit for a three-factor Cauchy-Schwarz-type "
            "inequality: symbolic identity replay and exact-rational search."
        ),
    )
    parser.add_argument("--version", action="version", version=f"cstriple {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="replay the symbolic identity checks")
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--check", choices=verifier.CHECK_NAMES, help="run one named check")
    group.add_argument("--all", action="store_true", help="run every check (default)")
    p_verify.add_argument("--json", metavar="PATH", help="write the run manifest as JSON")
    p_verify.set_defaults(func=_cmd_verify)

    p_search = sub.add_parser("search", help="seeded exact-rational counterexample search")
    p_search.add_argument("--target", required=True, choices=explorer.TARGET_NAMES)
    p_search.add_argument(
        "--c",
        type=rational,
        default=None,
        help="bracket constant for target d-k (default 1/2)",
    )
    p_search.add_argument("--samples", type=int, required=True)
    p_search.add_argument("--seed", type=int, required=True)
    p_search.add_argument("--num-bound", type=int, default=100)
    p_search.add_argument("--den-bound", type=int, default=100)
    p_search.add_argument("--zero-prob", type=rational, default=Fraction(1, 16))
    p_search.add_argument("--json", metavar="PATH")
    p_search.set_defaults(func=_cmd_search)

    p_min = sub.add_parser("minimize", help="replay the greedy z-minimization on one state")
    # argparse's stock negative-number detector rejects "-1,-1,-1", which
    # would otherwise be mistaken for an option string; widen it.
    p_min._negative_number_matcher = re.compile(r"^-\d")
    p_min.add_argument("--p", type=rational_triple, required=True, metavar="r1,r2,r3")
    p_min.add_argument("--z", type=rational_triple, required=True, metavar="r1,r2,r3")
    p_min.add_argument(
        "--order",
        type=coordinate_order,
        default=(3, 2, 1),
        help="coordinate lowering order, e.g. 321 (default) or 123",
    )
    p_min.add_argument("--json", metavar="PATH")
    p_min.set_defaults(func=_cmd_minimize)

    p_sharp = sub.add_parser(
        "sharpness", help="exhibit a counterexample for a bracket constant above 1/2"
    )
    p_sharp.add_argument("--c", type=rational, required=True)
    p_sharp.add_argument("--json", metavar="PATH")
    p_sharp.set_defaults(func=_cmd_sharpness)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StructuralError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
