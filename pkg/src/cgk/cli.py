"""Command-line interface: ``cgk count|list|get|id|clusters|verify``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arith import FactoredInt, as_factored
from .clusters import clusters_for
from .counting import breakdown, count_by_cluster
from .enumeration import group_by_id, iter_groups
from .errors import CGroupError
from .identify import id_of_descriptor
from .oracle import cross_check
from .structure import (
    CGroupDescriptor,
    MetacyclicParams,
    PcPresentation,
    descriptor_to_metacyclic,
    descriptor_to_presentation,
    metacyclic_to_descriptor,
    presentation_to_descriptor,
)


class UsageError(Exception):
    pass


def _order(args) -> FactoredInt:
    text = getattr(args, "factored", None) or args.n
    if text is None:
        raise UsageError("an order is required (positional or --factored)")
    return as_factored(text)


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _format(desc: CGroupDescriptor, fmt: str) -> str:
    if fmt == "metacyclic":
        return str(descriptor_to_metacyclic(desc))
    if fmt == "pc":
        return str(descriptor_to_presentation(desc))
    return json.dumps(desc.to_json())


def cmd_count(args) -> None:
    n = _order(args)
    bd = breakdown(n)
    if args.json:
        print(json.dumps({"n": str(n), "count": bd.total,
                          "by_divisor": [[d, c] for d, c in bd.by_divisor]}))
        return
    print(f"C({args.factored or args.n}) = {bd.total}")
    for d, c in bd.by_divisor:
        print(f"  d={d}: {c}")


def cmd_list(args) -> None:
    n = _order(args)
    for i, desc in enumerate(iter_groups(n), 1):
        if args.limit is not None and i > args.limit:
            break
        print(f"{i}\t{_format(desc, args.format)}")


def cmd_get(args) -> None:
    desc = group_by_id(_order(args), args.i)
    print(_format(desc, args.format))


def cmd_id(args) -> None:
    from .concrete import PermutationGroup, id_of_permutation_group

    order = as_factored(args.factored) if args.factored else None
    if args.metacyclic:
        gid = id_of_descriptor(metacyclic_to_descriptor(MetacyclicParams.parse(args.metacyclic), order))
    elif args.perm:
        gid = id_of_permutation_group(PermutationGroup.parse(_read(args.perm)), seed=args.seed)
    elif args.pc:
        gid = id_of_descriptor(presentation_to_descriptor(PcPresentation.parse(_read(args.pc))))
    else:
        gid = id_of_descriptor(CGroupDescriptor.from_json(json.loads(_read(args.descriptor))))
    if args.json:
        print(json.dumps({"n": gid.n, "i": gid.i}))
    else:
        print(f"{gid.n} {gid.i}")


def cmd_clusters(args) -> None:
    n = _order(args)
    rows = [(c, count_by_cluster(n, c)) for c in clusters_for(n, args.d, args.m)]
    if args.json:
        print(json.dumps([dict(c.to_json(), count=k) for c, k in rows]))
        return
    for pos, (c, k) in enumerate(rows, 1):
        print(f"{pos}\t{c}\t{k}")


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit() or int(lo) < 1 or int(lo) > int(hi):
        raise UsageError(f"expected a range A..B with 1 <= A <= B, got {text!r}")
    return int(lo), int(hi)


def _check_one(n: int) -> dict:
    return cross_check(n).to_json()


def cmd_verify(args) -> int:
    lo, hi = _parse_range(args.range)
    ns = list(range(lo, hi + 1))
    if args.sample is not None:
        rng = random.Random(args.seed)
        ns = sorted(rng.sample(ns, min(args.sample, len(ns))))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_check_one, ns, chunksize=16))
    else:
        reports = [_check_one(n) for n in ns]
    failed = [r for r in reports if r["status"] != "pass"]
    if args.json:
        print(json.dumps(reports))
    else:
        for r in failed:
            print(f"FAIL n={r['n']}: {r['counterexample']}")
        print(f"verified {len(reports)} orders, {len(failed)} failures, "
              f"{sum(r['count'] for r in reports)} groups")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cgk", description="Count, construct and identify finite groups with cyclic Sylow subgroups.")
    sub = parser.add_subparsers(dest="command", required=True)
    formats = ["metacyclic", "pc", "json"]

    p = sub.add_parser("count", help="number of C-groups of order n")
    p.add_argument("n", nargs="?")
    p.add_argument("--factored", help='order as "2^2*3*5*13"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("list", help="all C-groups of order n in ID order")
    p.add_argument("n")
    p.add_argument("--format", choices=formats, default="metacyclic")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("get", help="the C-group with ID (n, i)")
    p.add_argument("n")
    p.add_argument("i", type=int)
    p.add_argument("--format", choices=formats, default="metacyclic")
    p.set_defaults(func=cmd_get)

    p = sub.add_parser("id", help="ID of a given C-group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--metacyclic", help='"a,b,r" or "a=.. b=.. r=.."')
    src.add_argument("--perm", metavar="FILE", help="permutation group (JSON or cycles per line); - for stdin")
    src.add_argument("--pc", metavar="FILE", help="polycyclic presentation (JSON or text form)")
    src.add_argument("--descriptor", metavar="FILE", help="descriptor JSON as printed by get --format json")
    p.add_argument("--factored", help="factorization of a*b for --metacyclic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_id)

    p = sub.add_parser("clusters", help="sorted clusters for (n, d, m)")
    p.add_argument("n")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("verify", help="cross-check against the brute-force oracle over A..B")
    p.add_argument("range")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, help="check only this many random orders from the range")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(f"cgk: error: {exc}", file=sys.stderr)
        return 2
    except CGroupError as exc:
        print(f"cgk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"cgk: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
