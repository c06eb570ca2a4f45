"""Command-line interface: ``braidfree COMMAND ...``.

Exit codes: 0 success / Free / pass, 1 NotFree / violations, 2 Unknown,
64 usage error, 65 bad input file, 70 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import formats
from .ann import ann_decompose
from .arrangement import enumerate_balanced
from .errors import BraidFreeError, FormatError, InternalInconsistency, NotAnn
from .freeness import Status, decide, find_construction, reduce_free_vertices
from .signed_graph import is_eliminable
from .verify import (
    SweepConfig,
    conjecture_scan,
    verify_equivalence,
    verify_sos_identity,
    verify_structure_tables,
    verify_table1_catalog,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_SOFTWARE = 64, 65, 70

_STATUS_EXIT = {Status.FREE: EXIT_OK, Status.NOT_FREE: EXIT_NEGATIVE, Status.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidfree", description="Decide freeness of multiplicities on braid arrangements.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide freeness of a multiplicity file")
    c.add_argument("file")
    c.add_argument("--strengthened", action="store_true", help="use the sharper subset bound")
    c.add_argument("--construct", action="store_true", help="also search for a free-vertex construction")
    c.add_argument("--json", action="store_true")

    d = sub.add_parser("decompose", help="ANN decomposition of a multiplicity file")
    d.add_argument("file")
    d.add_argument("--json", action="store_true")

    e = sub.add_parser("eliminable", help="signed-eliminability of a signed graph file")
    e.add_argument("file")
    e.add_argument("--json", action="store_true")

    r = sub.add_parser("reduce", help="remove free vertices greedily and print the core")
    r.add_argument("file")
    r.add_argument("--json", action="store_true")

    n = sub.add_parser("enumerate", help="list balanced multiplicities as JSON lines")
    n.add_argument("--ell", type=_positive, required=True)
    n.add_argument("--max-m", type=_positive, required=True)
    n.add_argument("--limit", type=_positive)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=("sos", "tables", "catalog", "equivalence"), required=True)
    v.add_argument("--ell", type=_positive, default=3)
    v.add_argument("--max-m", type=_positive, default=4)
    v.add_argument("--samples", type=_positive, help="random instances instead of exhaustive enumeration")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--dump-dir", help="where equivalence disagreements are written")
    v.add_argument("--ell-max", type=_positive, default=10, help="largest l for the tables suite")

    k = sub.add_parser("conjecture", help="catalogue multiplicities the pipeline leaves Unknown")
    k.add_argument("--ell", type=_positive, required=True)
    k.add_argument("--max-m", type=_positive, required=True)
    k.add_argument("--out", required=True)
    k.add_argument("--samples", type=_positive)
    k.add_argument("--seed", type=int, default=0)
    return p


def _load_multiplicity(path):
    return formats.multiplicity_from_json(formats.load_json(path))


def _emit(doc):
    print(formats.dumps(doc))


def cmd_check(args) -> int:
    m = _load_multiplicity(args.file)
    verdict = decide(m, strengthened=args.strengthened)
    construction = find_construction(m) if args.construct else None
    if args.json:
        doc = formats.verdict_to_json(verdict)
        if args.construct:
            doc["construction"] = formats.construction_to_json(construction)
        _emit(doc)
    else:
        print(verdict.status.value)
        print(formats.render_certificate(verdict.certificate, "  "))
        if args.construct:
            if construction is None:
                print("  no free-vertex construction found")
            else:
                print(f"  construction: ordering {list(construction.ordering)}, prefix through position {construction.k}")
    return _STATUS_EXIT[verdict.status]


def cmd_decompose(args) -> int:
    m = _load_multiplicity(args.file)
    try:
        d = ann_decompose(m)
    except NotAnn as exc:
        if args.json:
            _emit({"decomposable": False, "reason": exc.reason, "message": str(exc)})
        else:
            print(f"not decomposed ({exc.reason}): {exc}")
        return EXIT_NEGATIVE
    if args.json:
        _emit(formats.decomposition_to_json(d))
    else:
        print(f"n = {list(d.n)}")
        for i, j, e in d.eps_items():
            if e:
                print(f"  eps_{i}{j} = {e:+d}")
    return EXIT_OK


def cmd_eliminable(args) -> int:
    G = formats.signed_graph_from_json(formats.load_json(args.file))
    cert = is_eliminable(G)
    if args.json:
        _emit(formats.elimination_to_json(cert))
    elif cert.eliminable:
        print("eliminable")
        print(f"  ordering (lowest rank first): {list(cert.ordering)}")
    else:
        ob = cert.obstruction
        print("not eliminable")
        print(f"  induced {ob.kind} on {list(ob.vertices)}")
    return EXIT_OK if cert.eliminable else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    m = _load_multiplicity(args.file)
    eliminated, core = reduce_free_vertices(m)
    if args.json:
        _emit({"eliminated": list(eliminated), "core": list(core)})
    else:
        print(f"eliminated: {list(eliminated)}")
        print(f"core: {list(core)}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for count, m in enumerate(enumerate_balanced(args.ell + 1, args.max_m)):
        if args.limit is not None and count >= args.limit:
            break
        _emit(formats.multiplicity_to_json(m))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "catalog":
        report = verify_table1_catalog()
    elif args.suite == "tables":
        report = verify_structure_tables(range(3, args.ell_max + 1))
    else:
        mode = "identity" if args.suite == "sos" else "equivalence"
        cfg = SweepConfig(args.ell, args.max_m, mode, args.samples, args.seed)
        if args.suite == "sos":
            report = verify_sos_identity(cfg)
        else:
            report = verify_equivalence(cfg, args.dump_dir)
    for line in report.records():
        print(line)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_conjecture(args) -> int:
    cfg = SweepConfig(args.ell, args.max_m, "conjecture", args.samples, args.seed)
    report = conjecture_scan(cfg, args.out)
    summary = report.summary()
    summary.pop("unknown_instances", None)
    print(json.dumps({"summary": summary}, sort_keys=True))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "eliminable": cmd_eliminable,
    "reduce": cmd_reduce,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE
    except BraidFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
