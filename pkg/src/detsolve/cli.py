"""Command line entry point: ``detsolve solve|bounds|oracle``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .detstart import bounds
from .errors import DetsolveError
from .field_linalg import DEFAULT_PRIME
from .solver import MODES, oracle_check, parse, solve


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _cmd_solve(args):
    spec = _load(args.input)
    report = solve(spec, mode=args.mode, simple=args.simple, seed=args.seed, prime=args.prime)
    data = report.to_json()
    text = json.dumps(data, indent=2)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.check:
        bad = [k for k, ok in report.checks.items() if not ok]
        print(("checks failed: " + ", ".join(bad)) if bad else "all checks passed", file=sys.stderr)
        return 1 if bad else 0
    return 0


def _cmd_bounds(args):
    spec = _load(args.input)
    print(json.dumps(bounds(spec.profile()).to_json()))
    return 0


def _cmd_oracle(args):
    spec = _load(args.input)
    print(json.dumps(oracle_check(spec, args.field, seed=args.seed), indent=2))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="detsolve", description="Isolated points of determinantal systems over F_p.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a problem file")
    s.add_argument("--input", required=True)
    s.add_argument("--mode", choices=MODES, default="auto")
    s.add_argument("--simple", action="store_true", help="keep only simple points")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    s.add_argument("--check", action="store_true", help="exit nonzero if a check fails")
    s.add_argument("--json", metavar="OUT")
    s.set_defaults(func=_cmd_solve)

    b = sub.add_parser("bounds", help="print c, c', e, e'")
    b.add_argument("--input", required=True)
    b.set_defaults(func=_cmd_bounds)

    o = sub.add_parser("oracle", help="compare the solver with exhaustive enumeration")
    o.add_argument("--input", required=True)
    o.add_argument("--field", type=int, required=True)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=_cmd_oracle)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except DetsolveError as exc:
        print(f"detsolve: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"detsolve: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
