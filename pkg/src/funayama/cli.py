"""Command-line front end: ``funayama <subcommand> ...``.

Exit status 0 means success, 1 a failed verification, 2 a usage or parse
error, and 3 a capacity overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .config import CLI_MAX_GENERATORS, CLI_MAX_PAIRS, ORACLE_MAX_PAIRS, PROBLEM1_MAX_ATOMS
from .dot import emit_dot
from .embedding import check_preservation, embed
from .errors import CapacityExceeded, FunayamaError
from .facts import run_facts
from .lattice_file import parse_lattice, serialize_lattice
from .report import analyze
from .roalgebra import build_ro_algebra, oracle_ro_enumerate, verify_boolean_axioms
from .zoo import CATALOG_NAMES, catalog_entry, search_problem1, survey_problem2

OK, FAILED, USAGE, CAPACITY = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _budget(args) -> int:
    return 1 << args.max_generators


def _load(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return parse_lattice(data)


def _check_pairs(X, limit):
    if len(X) > limit:
        raise CapacityExceeded(f"pair space has {len(X)} points, limit {limit}", stage="pair-space")


def _fmt(U) -> str:
    return "{" + ", ".join(f"({a},{b})" for a, b in U) + "}"


def cmd_analyze(args, out) -> int:
    P = _load(args.file)
    rep = analyze(P, max_pairs=args.max_pairs, max_generators=args.max_generators, budget=_budget(args))
    out.write(rep.to_json() if args.json else rep.summary() + "\n")
    return OK


def cmd_catalog(args, out) -> int:
    entry = catalog_entry(args.name)
    out.write(serialize_lattice(entry.poset))
    return OK


def cmd_embed(args, out) -> int:
    P = _load(args.file)
    E = embed(P, _budget(args))
    _check_pairs(E.target.space, args.max_pairs)
    for x, U in E.images().items():
        out.write(f"e({x}) = {_fmt(U)}\n")
    rep = check_preservation(E)
    for mode, flag in rep.flags.items():
        out.write(f"{mode}: {'ok' if flag else 'FAIL'}\n")
    for mode, subset, expected, actual in rep.counterexamples:
        out.write(f"  {mode} {{{', '.join(map(str, subset))}}}: e(op S) = {_fmt(expected)}, op e[S] = {_fmt(actual)}\n")
    return OK


def cmd_survey(args, out) -> int:
    records = survey_problem2(args.max_size, out=args.out, problem1_atoms=args.problem1_atoms, budget=_budget(args))
    bad = [r for r in records if r.distributive and not r.macneille_iso]
    if args.out is None:
        for r in records:
            out.write(r.to_json() + "\n")
    iso = sum(r.macneille_iso for r in records)
    print(f"{len(records)} lattices, {iso} with equal algebras", file=sys.stderr)
    return FAILED if bad else OK


def cmd_search_p1(args, out) -> int:
    P = _load(args.file)
    status = search_problem1(P, args.max_atoms, _budget(args))
    out.write(json.dumps(status.to_dict(), sort_keys=True, indent=2) + "\n")
    return OK


def cmd_dot(args, out) -> int:
    P = _load(args.file)
    if args.pairs:
        E = embed(P)
        _check_pairs(E.target.space, args.max_pairs)
        out.write(emit_dot(E.target.space, E.images()))
    else:
        out.write(emit_dot(P))
    return OK


def cmd_oracle_check(args, out) -> int:
    P = _load(args.file)
    X = embed(P).target.space
    limit = min(args.max_pairs, ORACLE_MAX_PAIRS)
    if len(X) > limit:
        raise CapacityExceeded(f"pair space has {len(X)} points, oracle limit {limit}", stage="oracle")
    B = build_ro_algebra(X, _budget(args))
    fast = set(B.carrier_masks)
    slow = {U.mask for U in oracle_ro_enumerate(X, limit)}
    axioms = verify_boolean_axioms(B)
    same = fast == slow
    out.write(f"closure: {len(fast)}  oracle: {len(slow)}  identical: {same}\n")
    out.write(f"Boolean axioms: {'ok' if axioms.ok else 'FAIL ' + str(axioms.first_violation)}\n")
    return OK if same and axioms.ok else FAILED


def cmd_verify(args, out) -> int:
    results = run_facts(stream=out)
    failed = sum(not ok for _, ok, _, _ in results)
    out.write(f"{len(results) - failed}/{len(results)} facts hold\n")
    return FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="funayama", description="Regular-open embeddings of finite posets.")
    p.add_argument("--max-pairs", type=int, default=CLI_MAX_PAIRS, help="largest pair space to build (default %(default)s)")
    p.add_argument(
        "--max-generators", type=int, default=CLI_MAX_GENERATORS,
        help="generator cap; the work budget is 2**G (default %(default)s)",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze", help="full report for a lattice file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("catalog", help="print a named lattice as a lattice file")
    s.add_argument("name", help="one of " + ", ".join(CATALOG_NAMES))
    s.set_defaults(run=cmd_catalog)

    s = sub.add_parser("embed", help="images of the embedding and the preservation report")
    s.add_argument("file")
    s.set_defaults(run=cmd_embed)

    s = sub.add_parser("survey", help="compare the two algebras over all small lattices")
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--problem1-atoms", type=int, default=None, help="also run the powerset search")
    s.set_defaults(run=cmd_survey)

    s = sub.add_parser("search-p1", help="bounded search for a powerset embedding")
    s.add_argument("file")
    s.add_argument("--max-atoms", type=int, default=PROBLEM1_MAX_ATOMS)
    s.set_defaults(run=cmd_search_p1)

    s = sub.add_parser("dot", help="Graphviz text for the Hasse diagram")
    s.add_argument("file")
    s.add_argument("--pairs", action="store_true", help="draw the pair space instead")
    s.set_defaults(run=cmd_dot)

    s = sub.add_parser("oracle-check", help="closure construction against brute force")
    s.add_argument("file")
    s.set_defaults(run=cmd_oracle_check)

    s = sub.add_parser("verify-paper", help="run the built-in regression facts")
    s.set_defaults(run=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if args.max_pairs < 1 or args.max_generators < 0:
            raise _Usage("--max-pairs must be positive and --max-generators non-negative")
        return args.run(args, out)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except CapacityExceeded as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return CAPACITY
    except (FunayamaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


cli = main

if __name__ == "__main__":
    sys.exit(main())
