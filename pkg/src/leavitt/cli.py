"""Command-line front end: basis listings, normal forms, differentials,
actions, witnesses and the verification suites.

Reports are byte-deterministic for fixed inputs and seed except for the
timing line, which is always emitted last (and sits in a fixed key in JSON).
The process exits 0 iff every check passed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import enumerate_pairs, witness_pair
from .complex import differential
from .exprs import (ExprError, format_element, format_pair, format_vector,
                    parse_element, parse_vector)
from .quiver import QuiverError, parse_quiver
from .scalars import FieldMismatchError, parse_field
from .suites import SUITE_NAMES, run_suites
from . import bimodule


def _load_quiver(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def _field_from_env():
    return parse_field(os.environ.get("LEAVITT_FIELD", "Q"))


class Report:
    def __init__(self, command: str, quiver, parameters: dict):
        self.command = command
        self.digest = quiver.digest()
        self.parameters = parameters
        self.lines: list[str] = []
        self.checks: list[dict] = []
        self.started = time.perf_counter()

    def line(self, text: str):
        self.lines.append(text)

    def add_check(self, record):
        entry = {"name": record.name, "status": record.status, "checks": record.checks}
        if record.counterexample:
            entry["counterexample"] = record.counterexample
        self.checks.append(entry)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c["status"] != "pass")

    def emit(self, as_json: bool) -> int:
        elapsed_ms = round((time.perf_counter() - self.started) * 1000, 3)
        if as_json:
            payload = {
                "command": self.command,
                "quiver_digest": self.digest,
                "parameters": self.parameters,
                "output": self.lines,
                "checks": self.checks,
                "failed": self.failed,
                "timing_ms": elapsed_ms,
            }
            print(json.dumps(payload, sort_keys=True))
        else:
            print(f"command: {self.command}")
            print(f"quiver: {self.digest}")
            for key in sorted(self.parameters):
                print(f"{key}: {self.parameters[key]}")
            for text in self.lines:
                print(text)
            for c in self.checks:
                mark = "PASS" if c["status"] == "pass" else "FAIL"
                print(f"[{mark}] {c['name']} ({c['checks']} checks)")
                if c["status"] != "pass":
                    print(f"       counterexample: {c['counterexample']}")
            print(f"timing_ms: {elapsed_ms}")
        return 1 if self.failed else 0


def _parse_degree_window(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("degree window must look like L1..L2")
    return range(int(lo), int(hi) + 1)


def cmd_basis(args) -> int:
    quiver = _load_quiver(args.quiver)
    params = {"vertex": args.vertex, "l": args.l, "nmax": args.nmax}
    report = Report("basis", quiver, params)
    total = 0
    for n in range(args.nmax + 1):
        pairs = enumerate_pairs(quiver, args.vertex, args.l, n)
        total += len(pairs)
        report.line(f"q-length {n}: {len(pairs)} pairs")
        for pair in pairs:
            report.line(f"  {format_pair(pair)}")
    report.line(f"total: {total}")
    if args.witness:
        pair = witness_pair(quiver, args.vertex, args.l)
        report.line(f"witness: {format_pair(pair)}")
    return report.emit(args.json)


def cmd_witness(args) -> int:
    quiver = _load_quiver(args.quiver)
    report = Report("witness", quiver, {"vertex": args.vertex, "l": args.l})
    pair = witness_pair(quiver, args.vertex, args.l)
    report.line(f"witness: {format_pair(pair)}")
    return report.emit(args.json)


def cmd_reduce(args) -> int:
    quiver = _load_quiver(args.quiver)
    field = _field_from_env()
    report = Report("reduce", quiver, {"expr": args.expr, "field": field.name})
    element = parse_element(args.expr, quiver, field)
    report.line(f"normal form: {format_element(element)}")
    for degree, part in element.graded_parts().items():
        report.line(f"degree {degree}: {format_element(part)}")
    return report.emit(args.json)


def cmd_differential(args) -> int:
    quiver = _load_quiver(args.quiver)
    field = _field_from_env()
    report = Report("differential", quiver, {"vector": args.vector, "field": field.name})
    vector = parse_vector(args.vector, quiver, field)
    image = differential(quiver, vector, args.inject_fault)
    report.line(f"image: {format_vector(image, quiver)}")
    return report.emit(args.json)


def cmd_act(args) -> int:
    quiver = _load_quiver(args.quiver)
    field = _field_from_env()
    report = Report("act", quiver,
                    {"vector": args.vector, "by": args.by, "field": field.name})
    vector = parse_vector(args.vector, quiver, field)
    element = parse_element(args.by, quiver, field)
    report.line(f"image: {format_vector(bimodule.act(quiver, vector, element), quiver)}")
    return report.emit(args.json)


def cmd_verify(args) -> int:
    quiver = _load_quiver(args.quiver)
    field = _field_from_env()
    suites = SUITE_NAMES if args.suite == "all" else (args.suite,)
    params = {
        "nmax": args.nmax,
        "degrees": f"{args.degrees.start}..{args.degrees.stop - 1}",
        "suite": args.suite,
        "seed": args.seed,
        "field": field.name,
        "fault": args.inject_fault or "none",
    }
    report = Report("verify", quiver, params)
    records = run_suites(quiver, nmax=args.nmax, degrees=args.degrees, suites=suites,
                         seed=args.seed, field=field, fault=args.inject_fault)
    for record in records:
        report.add_check(record)
    report.line(f"suites: {', '.join(suites)}")
    return report.emit(args.json)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Leavitt path algebra and injective Leavitt complex toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--quiver", required=True, help="quiver file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("basis", help="list admissible pairs by q-length")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--l", type=int, required=True, help="degree l(q) - l(p)")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--witness", action="store_true", help="also print a witness pair")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("witness", help="one admissible pair of the requested degree")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("reduce", help="normal form and graded parts of an expression")
    common(p)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("differential", help="apply the differential to a vector")
    common(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--inject-fault", choices=("flip_unit", "flip_sum", "drop_sum"),
                   default=None, help="test hook: miswire the special case")
    p.set_defaults(func=cmd_differential)

    p = sub.add_parser("act", help="apply the right algebra action to a vector")
    common(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--by", required=True, help="algebra expression")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("verify", help="run the exact verification suites")
    common(p)
    p.add_argument("--nmax", type=int, default=4, help="path length bound")
    p.add_argument("--degrees", type=_parse_degree_window, default=range(-4, 5),
                   help="degree window L1..L2")
    p.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", choices=("flip_unit", "flip_sum", "drop_sum"),
                   default=None, help="test hook: miswire the special case")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuiverError, ExprError, FieldMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
