"""Command line front end: manifests in, verdicts and certificates out.

Exit codes are stable: 0 for a decided pass, 1 for a violated verified
property, 2 for invalid input, 3 for an honest UNKNOWN or undecided
result.  All documents are JSON with rationals as "p/q" strings; no
floating point appears anywhere.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import manifolds
from .circle import IntervalSet, lift, parse_rational
from .errors import (
    GenusOneError,
    InvalidInputError,
    PropertyViolation,
)
from .interlacing import (
    brute_force_interlace_points,
    interlace_intervals,
    interlace_points,
    labeled_config,
)
from .manifolds import DefiningSequence, Verdict
from .tubes import find_verified_plan, tube_parameters

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_UNDECIDED = 3

_UNDECIDED = {Verdict.UNKNOWN, Verdict.INDISTINGUISHABLE_AT_HORIZON}

_BRUTE_FORCE_LIMIT = 16


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}")


def _load_sets(path: str, mode: str) -> tuple:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "a" not in doc or "b" not in doc:
        raise InvalidInputError(f"{path} must be an object with 'a' and 'b' lists")
    if mode == "points":
        a = [parse_rational(p) for p in _as_list(doc["a"], path)]
        b = [parse_rational(p) for p in _as_list(doc["b"], path)]
        return a, b
    a = IntervalSet.from_records(_as_list(doc["a"], path))
    b = IntervalSet.from_records(_as_list(doc["b"], path))
    return a, b


def _as_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise InvalidInputError(f"{path}: labeled sets must be lists")
    return value


def load_manifest(path: str) -> tuple[DefiningSequence, dict]:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "sequence" not in doc:
        raise InvalidInputError(f"{path} must be an object with a 'sequence' field")
    seq_doc = dict(doc["sequence"])
    seq_doc.setdefault("name", doc.get("name", ""))
    seq = DefiningSequence.from_doc(seq_doc)
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InvalidInputError(f"{path}: options must be an object")
    for key in ("depth", "horizon"):
        if key in options and not isinstance(options[key], int):
            raise InvalidInputError(f"{path}: option {key} must be an integer")
    return seq, options


def _resolve(args, options: dict) -> tuple[int, int]:
    depth = args.depth if args.depth is not None else options.get("depth", 6)
    horizon = args.horizon if args.horizon is not None else options.get("horizon", 4)
    if not isinstance(depth, int) or depth < 4:
        raise InvalidInputError(f"depth must be an integer >= 4, got {depth!r}")
    if not isinstance(horizon, int) or horizon < 1:
        raise InvalidInputError(f"horizon must be a positive integer, got {horizon!r}")
    return depth, horizon


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def _verdict_exit(verdict: Verdict) -> int:
    return EXIT_UNDECIDED if verdict in _UNDECIDED else EXIT_OK


def _print_certificate(cert: manifolds.Certificate, as_json: bool) -> int:
    if as_json:
        _emit_json(cert.to_doc())
        return _verdict_exit(cert.verdict)
    print(f"verdict: {cert.verdict.value}")
    evidence = cert.evidence
    kind = evidence.get("kind")
    if kind == "divergence":
        for row in evidence["trace"]:
            print(f"  level {row['level']}: order {row['order']} -> bound {row['bound']}")
        print(f"  final bound {evidence['final_bound']} over horizon {evidence['horizon']}")
    elif kind == "exhaustion":
        for step in evidence["steps"]:
            print(
                f"  level {step['level']}: order {step['order']} "
                f"setup={'pass' if step['setup_passed'] else 'FAIL'} "
                f"nested={'pass' if step['v0_strictly_nested'] else 'FAIL'}"
            )
    elif kind == "scope":
        print(f"  reason: {evidence['reason']}")
    elif kind == "prime":
        print(f"  p = {evidence['p']}")
        print(f"  a period hits: {evidence['a']['period_hits']}")
        print(f"  b period hits: {evidence['b']['period_hits']}")
    return _verdict_exit(cert.verdict)


def cmd_interlace(args) -> int:
    loaded = _load_sets(args.input, args.mode)
    if args.mode == "points":
        a, b = loaded
        bound = interlace_points(a, b)
        if args.brute_force:
            if len(a) + len(b) > _BRUTE_FORCE_LIMIT:
                raise InvalidInputError(
                    f"brute force cross-check is limited to {_BRUTE_FORCE_LIMIT} points"
                )
            oracle = brute_force_interlace_points(a, b)
            if oracle != bound.value:
                raise PropertyViolation(
                    f"block count {bound.value} disagrees with brute force {oracle}"
                )
    else:
        a, b = loaded
        bound = interlace_intervals(a, b)
        if args.brute_force:
            config = labeled_config(a, b)
            reps_a = [p for p, l in zip(config.anchors, config.labels) if l == "A"]
            reps_b = [p for p, l in zip(config.anchors, config.labels) if l == "B"]
            if len(reps_a) + len(reps_b) > _BRUTE_FORCE_LIMIT:
                raise InvalidInputError(
                    f"brute force cross-check is limited to {_BRUTE_FORCE_LIMIT} components"
                )
            oracle = brute_force_interlace_points(reps_a, reps_b)
            if oracle != bound.value:
                raise PropertyViolation(
                    f"block count {bound.value} disagrees with brute force {oracle}"
                )
    if args.json:
        _emit_json({"op": "interlace", "mode": args.mode, **bound.to_doc()})
    else:
        print(f"interlacing number: {bound.value} ({bound.kind.value})")
    return EXIT_OK


def cmd_tubes(args) -> int:
    if args.n < 1:
        raise InvalidInputError(f"order must be a positive integer, got {args.n}")
    params = tube_parameters(args.n)
    depth = args.depth if args.depth is not None else params.m + 3
    short, long_ = 4 * params.k, 2**params.m - 2 * params.k
    doc = {
        "op": "tubes",
        "order": params.n,
        "m": params.m,
        "k": params.k,
        "tubes": 4 * params.n,
        "short_tubes": short,
        "short_length": f"1/{3 ** (params.m + 1)}",
        "long_tubes": long_,
        "long_length": f"1/{3 ** params.m}",
    }
    report = None
    if args.verify:
        _, report = find_verified_plan(args.n, depth)
        doc["setup"] = report.to_doc()
    if args.json:
        _emit_json(doc)
    else:
        print(f"n={params.n}: m={params.m} k={params.k}")
        print(
            f"tubes: {4 * params.n} total "
            f"({short} x 1/{3 ** (params.m + 1)}, {long_} x 1/{3 ** params.m})"
        )
        if report is not None:
            print(f"setup at depth {depth}: {'PASS' if report.passed else 'FAIL'}")
    if report is not None and not report.passed:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_classify(args) -> int:
    seq, options = load_manifest(args.manifest)
    depth, horizon = _resolve(args, options)
    cert = manifolds.classify_double3(seq, depth, horizon)
    return _print_certificate(cert, args.json)


def cmd_distinguish(args) -> int:
    seq_a, options_a = load_manifest(args.a)
    seq_b, _ = load_manifest(args.b)
    _, horizon = _resolve(args, options_a)
    cert = manifolds.distinguish_by_prime(seq_a, seq_b, args.prime, horizon)
    return _print_certificate(cert, args.json)


def cmd_index(args) -> int:
    seq, _ = load_manifest(args.manifest)
    value = manifolds.index_between(seq, args.i, args.j)
    if args.json:
        _emit_json({"op": "index", "i": args.i, "j": args.j, "value": value})
    else:
        print(value)
    return EXIT_OK


def cmd_trace(args) -> int:
    seq, options = load_manifest(args.manifest)
    _, horizon = _resolve(args, options)
    cert = manifolds.trace_certificate(seq, horizon)
    return _print_certificate(cert, args.json)


def cmd_cover_lift(args) -> int:
    if args.fold < 1:
        raise InvalidInputError(f"fold must be a positive integer, got {args.fold}")
    a, b = _load_sets(args.input, "intervals")
    base = interlace_intervals(a, b)
    lifted_a, lifted_b = lift(a, args.fold), lift(b, args.fold)
    lifted = interlace_intervals(lifted_a, lifted_b)
    if lifted.value != args.fold * base.value:
        raise PropertyViolation(
            f"cover multiplicativity failed: {lifted.value} != {args.fold} * {base.value}"
        )
    if args.json:
        _emit_json(
            {
                "op": "cover-lift",
                "fold": args.fold,
                "base": base.to_doc(),
                "lifted": lifted.to_doc(),
                "a_lifted": lifted_a.to_records(),
                "b_lifted": lifted_b.to_records(),
            }
        )
    else:
        print(f"base interlacing: {base.value}")
        print(f"{args.fold}-fold lift interlacing: {lifted.value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--depth", type=int, default=None, help="verification depth")
    common.add_argument("--horizon", type=int, default=None, help="levels to examine")

    parser = argparse.ArgumentParser(
        prog="genusone",
        description="Exact verification of nested-torus constructions on the circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interlace", parents=[common], help="interlacing number of two sets")
    p.add_argument("input", help="JSON file with 'a' and 'b' labeled sets")
    p.add_argument("--mode", choices=("points", "intervals"), default="points")
    p.add_argument(
        "--brute-force",
        action="store_true",
        help="cross-check against the exhaustive oracle (small inputs)",
    )
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("tubes", parents=[common], help="order-n tube census and setup check")
    p.add_argument("n", type=int, help="link order")
    p.add_argument("--verify", action="store_true", help="run the setup verification")
    p.set_defaults(func=cmd_tubes)

    p = sub.add_parser("classify", parents=[common], help="double 3-space classification")
    p.add_argument("manifest", help="manifest JSON file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("distinguish", parents=[common], help="prime divisibility distinguisher")
    p.add_argument("a", help="first manifest")
    p.add_argument("b", help="second manifest")
    p.add_argument("--prime", type=int, required=True, help="the prime p")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("index", parents=[common], help="geometric index between two levels")
    p.add_argument("manifest", help="manifest JSON file")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("trace", parents=[common], help="interlacing divergence trace")
    p.add_argument("manifest", help="manifest JSON file")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("cover-lift", parents=[common], help="lift sets to an n-fold cover")
    p.add_argument("input", help="JSON file with 'a' and 'b' interval sets")
    p.add_argument("--fold", type=int, required=True, help="cover degree")
    p.add_argument("--mode", choices=("intervals",), default="intervals")
    p.set_defaults(func=cmd_cover_lift)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except PropertyViolation as exc:
        print(f"property violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except GenusOneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run() -> None:  # console entry point
    raise SystemExit(main())


if __name__ == "__main__":
    run()
