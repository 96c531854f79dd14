"""Command-line front end.

One subcommand per capability:

* ``decide A.vec B.vec`` — decide link-homotopy of two invariant vectors;
  prints ``EQUIVALENT`` plus a replayable witness word, or
  ``NOT-EQUIVALENT`` plus the first stage whose block cannot be matched.
* ``act V.vec WORD…`` — apply a generator word to a vector and print the
  result in vector-file format (so it can be piped straight back in).
* ``normal-form V.vec`` — print the canonical representative of the orbit.
* ``orbit V.vec --bound B --cap N`` — enumerate the orbit slice inside the
  coordinate bound, in lexicographic order of the value tuples.
* ``verify [--suite NAME] [--seed S]`` — run the table consistency suite,
  one line per check.
* ``tables --list | --show NAME`` — inspect the shipped table data.

Exit codes: 0 for success (``decide``: equivalent; ``verify``: no hard
failure), 1 for a negative outcome (``decide``: not equivalent; ``verify``:
a hard failure), 2 for malformed input or usage, with a diagnostic naming
the offending file, line, and token.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import homotopy, verify
from .errors import LinkhomError, SchemeError
from .model import (
    SHIPPED_TABLES,
    load_scheme,
    load_shipped_table,
    parse_word,
    read_vector,
    write_vector_text,
)
from .polyring import poly_to_str


def _read_checked(path, wanted_n):
    v = read_vector(path)
    if wanted_n is not None and v.scheme.n != wanted_n:
        raise SchemeError(
            f"{path}: vector has n={v.scheme.n}, but --n {wanted_n} was given"
        )
    return v


def _cmd_decide(args):
    left = _read_checked(args.left, args.n)
    right = _read_checked(args.right, args.n)
    verdict = homotopy.decide(left, right)
    if args.json:
        payload = {"equivalent": verdict.equivalent}
        if verdict.equivalent:
            payload["witness"] = verdict.witness.token_text
        else:
            payload["failed_stage"] = verdict.failed_stage
        print(json.dumps(payload))
    elif verdict.equivalent:
        print("EQUIVALENT")
        print(f"witness: {verdict.witness.token_text}")
    else:
        print("NOT-EQUIVALENT")
        print(f"failed stage: {verdict.failed_stage}")
    return 0 if verdict.equivalent else 1


def _cmd_act(args):
    v = _read_checked(args.vector, args.n)
    word = parse_word(" ".join(args.word), v.scheme, source="<arguments>")
    result = homotopy.apply_word(word, v)
    if args.json:
        print(json.dumps({
            "n": result.scheme.n,
            "values": {s.name: val for s, val in result.nonzero()},
        }))
    else:
        sys.stdout.write(write_vector_text(result))
    return 0


def _cmd_normal_form(args):
    v = _read_checked(args.vector, args.n)
    result = homotopy.normal_form(v)
    if args.json:
        print(json.dumps({
            "n": result.scheme.n,
            "values": {s.name: val for s, val in result.nonzero()},
        }))
    else:
        sys.stdout.write(write_vector_text(result))
    return 0


def _cmd_orbit(args):
    if args.bound < 1 or args.cap < 1:
        print("linkhom: error: --bound and --cap must be positive", file=sys.stderr)
        return 2
    v = _read_checked(args.vector, args.n)
    result = homotopy.orbit_bfs(v, args.bound, args.cap)
    members = sorted(result, key=lambda m: m.values)
    if args.json:
        print(json.dumps({
            "n": v.scheme.n,
            "coords": [s.name for s in v.scheme.coords],
            "members": [list(m.values) for m in members],
            "truncated": result.truncated,
            "discarded": result.discarded,
        }))
        return 0
    print(f"n={v.scheme.n}")
    for m in members:
        print(" ".join(str(x) for x in m.values))
    print(f"# members={len(members)} truncated={'yes' if result.truncated else 'no'} "
          f"discarded={result.discarded}")
    return 0


def _cmd_verify(args):
    if args.json:
        reports = verify.run_suite(args.suite, seed=args.seed)
        print(json.dumps([
            {"check_id": r.check_id, "status": r.status, "details": r.details}
            for r in reports
        ]))
    else:
        reports = verify.run_suite(args.suite, seed=args.seed, report=print)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_tables(args):
    if args.list:
        for key in sorted(SHIPPED_TABLES):
            n, columns = SHIPPED_TABLES[key]
            print(f"{key}  n={n}  {columns} columns")
        return 0
    table = load_shipped_table(args.show)
    scheme = table.scheme
    for label in table.labels:
        print(f"[{label}]")
        rows = table.rows(label)
        for sym in scheme.coords:
            if sym in rows:
                print(f"{sym.name} = {poly_to_str(rows[sym])}")
        print()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linkhom",
        description="Exact link-homotopy decisions for 4- and 5-component links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def vector_flags(p):
        p.add_argument("--n", type=int, choices=(4, 5), default=None,
                       help="expected component count (cross-checked against files)")
        p.add_argument("--json", action="store_true", help="structured output")

    p = sub.add_parser("decide", help="decide link-homotopy of two vectors")
    p.add_argument("left", help="first vector file")
    p.add_argument("right", help="second vector file")
    vector_flags(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("act", help="apply a generator word to a vector")
    p.add_argument("vector", help="vector file")
    p.add_argument("word", nargs="*", default=[],
                   help="generator word (may be quoted or split; empty = identity)")
    vector_flags(p)
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("normal-form", help="canonical orbit representative")
    p.add_argument("vector", help="vector file")
    vector_flags(p)
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("orbit", help="bounded orbit enumeration")
    p.add_argument("vector", help="vector file")
    p.add_argument("--bound", type=int, required=True,
                   help="discard states with any |coordinate| above this")
    p.add_argument("--cap", type=int, required=True,
                   help="stop after this many states (marked truncated)")
    vector_flags(p)
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("verify", help="run the table consistency suite")
    p.add_argument("--suite", default="all",
                   choices=["all", *verify.SUITES],
                   help="which suite to run (default: all)")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED,
                   help="seed for the randomized checks")
    p.add_argument("--json", action="store_true", help="structured output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("tables", help="inspect the shipped tables")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true", help="list table names")
    group.add_argument("--show", metavar="NAME", help="print one table")
    p.set_defaults(func=_cmd_tables)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        name = exc.filename if exc.filename is not None else ""
        reason = exc.strerror or str(exc)
        print(f"linkhom: error: {name}: {reason}".replace(": :", ":"),
              file=sys.stderr)
        return 2
    except LinkhomError as exc:
        print(f"linkhom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
