"""Command-line front end.

Exit codes: 0 success / certified, 1 domain failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from schurgrr.automorphisms import oracle_limit
from schurgrr.cayley import cayley_colour_dot, export_colour_graph
from schurgrr.construct import (
    SpecViolation,
    build_connecting_set,
    certify,
    check_spec,
    default_mode,
    normalise_rule,
    table,
)
from schurgrr.errors import InvalidInput, ResourceLimit, SchurError
from schurgrr.groups import Group, generated_subgroup, parse_set
from schurgrr.reproduce import GROUPS, TABLE_ERRATA, items, run
from schurgrr.schur import SchurPartition, closure, closure_of_family, is_trivial

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _group(args) -> Group:
    try:
        if args.dihedral is not None:
            return Group("dihedral", args.dihedral)
        return Group("cyclic", args.cyclic)
    except SchurError as exc:
        raise UsageError(str(exc)) from None


def _elements(group: Group, text: str):
    try:
        S = parse_set(group, text)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None
    if not S:
        raise UsageError("the element set is empty")
    return S


def _connection(group: Group, text: str):
    S = _elements(group, text)
    if group.identity in S:
        raise InvalidInput("1 may not belong to a connection set")
    return S


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- commands -----------------------------------------------------------------


def cmd_closure(args) -> int:
    group = _group(args)
    C = _connection(group, args.set)
    generating = len(generated_subgroup(group, C)) == group.order
    if not generating and not args.allow_nongenerating:
        print(f"note: the set generates a proper subgroup of {group}", file=sys.stderr)
    part = closure(group, C)
    if args.output == "json":
        _emit(
            _dump({
                "group": str(group),
                "order": group.order,
                "set": [str(g) for g in C],
                "rank": part.rank,
                "trivial": is_trivial(part),
                "basic_sets": part.to_json(),
            }),
            args.out,
        )
    else:
        lines = [f"group: {group} (order {group.order})", f"rank: {part.rank}",
                 f"trivial: {'yes' if is_trivial(part) else 'no'}"]  # fmt: skip
        lines += [f"B{i}: {{{', '.join(b)}}}" for i, b in enumerate(part.to_json())]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _parse_rst(text: str) -> tuple[int, int, int]:
    try:
        r, s, t = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--rst expects three integers r,s,t, got {text!r}") from None
    return r, s, t


def cmd_certify(args) -> int:
    try:
        rule = normalise_rule(args.rule)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None
    r, s, t = _parse_rst(args.rst)
    report = check_spec(args.n, r, s, t, rule)
    if not report:
        print(f"hypothesis '{report.failed}' fails: {report.message}", file=sys.stderr)
        return EXIT_DOMAIN
    mode = args.mode or default_mode(args.n)
    cert = certify(report.spec, mode, args.oracle_limit)
    if args.output == "json":
        _emit(_dump(cert.to_json()), args.out)
    else:
        data = cert.to_json()
        lines = [
            f"D{args.n}: {{{', '.join(data['connecting_set'])}}} (rule {rule})",
            f"mode: {mode}",
        ]
        if data.get("trivial_closure") is not None:
            lines.append(f"closure: rank {data['closure_rank']}, "
                         f"{'trivial' if data['trivial_closure'] else 'not trivial'}")  # fmt: skip
        if "aut_order" in data:
            lines.append(f"|Aut| = {data['aut_order']}")
        lines.append("GRR" if cert.certified else "not certified")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if cert.certified else EXIT_DOMAIN


def _certify_row(spec):
    return certify(spec, "closure")


def cmd_table(args) -> int:
    if args.max < 7:
        raise UsageError("--max must be at least 7")
    specs = table(args.max)
    certs = None
    if args.certify:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                certs = list(pool.map(_certify_row, specs))
        else:
            certs = [_certify_row(spec) for spec in specs]
    rows = []
    for idx, spec in enumerate(specs):
        row = {
            "p": spec.n,
            "r": spec.r,
            "s": spec.s,
            "t": spec.t,
            "connecting_set": [str(g) for g in build_connecting_set(spec)],
        }
        if certs is not None:
            row["certified"] = certs[idx].certified
        rows.append(row)
    if args.output == "json":
        _emit(_dump(rows), args.out)
    else:
        header = f"{'p':>3} {'r':>3} {'s':>3} {'t':>3}  connecting set"
        lines = [header + ("  certified" if certs is not None else "")]
        for row in rows:
            cs = "{" + ", ".join(row["connecting_set"]) + "}"
            line = f"{row['p']:>3} {row['r']:>3} {row['s']:>3} {row['t']:>3}  {cs:<22}"
            if certs is not None:
                line += "  yes" if row["certified"] else "  NO"
            lines.append(line.rstrip())
        for p, note in TABLE_ERRATA.items():
            if p <= args.max:
                lines.append(f"note p={p}: {note}")
        _emit("\n".join(lines) + "\n", args.out)
    if certs is not None and not all(c.certified for c in certs):
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_export(args) -> int:
    group = _group(args)
    if args.partition:
        blocks = [_elements(group, chunk) for chunk in args.partition.split(";") if chunk.strip()]
        if not any(group.identity in b for b in blocks):
            blocks.insert(0, [group.identity])
        part = SchurPartition(group, blocks)
        if part.basic_sets[0] != (group.identity,):
            raise InvalidInput("the identity must form its own basic set")
        dot = export_colour_graph(part)
    elif args.set:
        sets = [_connection(group, s) for s in args.set]
        if args.by_closure:
            dot = export_colour_graph(closure_of_family(group, sets))
        else:
            S = [g for s in sets for g in s]
            if not args.allow_nongenerating and len(generated_subgroup(group, S)) != group.order:
                raise InvalidInput("the set does not generate the group (use --allow-nongenerating)")
            dot = cayley_colour_dot(group, S)
    else:
        raise UsageError("export needs --set or --partition")
    _emit(dot, args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    selected = [it for it in items(args.max_n) if not args.only or it.group in args.only]
    failed = []
    for item, ok, detail in run(selected, args.jobs):
        print(f"{'PASS' if ok else 'FAIL'} {item.id}: {detail}")
        if not ok:
            failed.append(item.id)
    print(f"{len(selected) - len(failed)}/{len(selected)} passed")
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _limit(text: str) -> int:
    value = int(text)
    if value < 4:
        raise argparse.ArgumentTypeError("oracle limit must be at least 4")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schurgrr",
        description="Schur-ring closures and trivalent GRRs of dihedral groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def group_opts(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--dihedral", type=int, metavar="N", help="the dihedral group D_N of order 2N")
        g.add_argument("--cyclic", type=int, metavar="N", help="the cyclic group Z_N")

    def out_opts(p, formats=("text", "json")):
        p.add_argument("--output", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="PATH", help="write to a file instead of stdout")

    p = sub.add_parser("closure", help="compute the Schur-ring closure of a set")
    group_opts(p)
    p.add_argument("--set", required=True, help="comma separated elements, e.g. a,ab^3,b^6")
    p.add_argument("--allow-nongenerating", action="store_true")
    out_opts(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("certify", help="certify {ab^r, ab^s, ab^t} as a GRR of D_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rst", required=True, metavar="R,S,T")
    p.add_argument("--rule", default="3r-2s", help="3r-2s (3r-2s=t) or 3r+s (3r+s=4t)")
    p.add_argument("--mode", choices=("closure", "oracle", "both"),
                   help="default: both for n <= 32, closure above")  # fmt: skip
    p.add_argument("--oracle-limit", type=_limit, default=None,
                   help=f"max vertices for the oracle (default {oracle_limit()})")  # fmt: skip
    out_opts(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table", help="tabulated connecting sets for primes 7..MAX")
    p.add_argument("--max", type=int, default=97)
    p.add_argument("--certify", action="store_true", help="certify every row by closure")
    p.add_argument("--jobs", type=int, default=1)
    out_opts(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("export", help="DOT colour graph")
    group_opts(p)
    p.add_argument("--set", action="append", help="connection set; repeat to give several")
    p.add_argument("--partition", help="explicit basic sets separated by ';'")
    p.add_argument("--by-closure", action="store_true",
                   help="colour by the basic sets of the closure of the given set(s)")  # fmt: skip
    p.add_argument("--allow-nongenerating", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("reproduce", help="run the published examples and claims")
    p.add_argument("--only", action="append", choices=GROUPS)
    p.add_argument("--max-n", type=int, default=19, help="largest D_p checked by the oracle")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpecViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SchurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
