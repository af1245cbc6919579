"""Command-line front end.

Exit codes: 0 success (or comparison verified), 1 comparison mismatch,
2 usage error, 3 internal arithmetic/assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from .abacus import TooFewBeads, abacus_from_partition, core_and_weight, plus
from .canonical import (
    BasisCache,
    NonIntegralBar,
    SingularSpanningSet,
    StraighteningFailure,
    block_crystal_matrix,
    block_of,
    canonical_basis,
    verify_runner_insertion,
)
from .fock import truncate
from .laurent import NotDivisible, to_string
from .partition import format_partition, parse_partition
from .store import BlockStore

log = logging.getLogger("fockcanon")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    e: int
    k: int | None = None
    alpha: int | None = None
    n: int | None = None
    partition: str | None = None
    fmt: str = "pretty"
    v1: bool = False
    cache_dir: str | None = None
    no_cache: bool = False
    verbosity: int = 0

    def validate(self):
        if self.e is not None and self.e < 2:
            raise UsageError("--e must be at least 2")
        if self.alpha is not None and not 0 <= self.alpha <= self.e:
            raise UsageError(f"--alpha must lie in [0, {self.e}]")
        if self.k is not None and self.k < 1:
            raise UsageError("--k must be at least 1")

    def store(self) -> BlockStore | None:
        if self.no_cache:
            return None
        return BlockStore.from_env(self.cache_dir)


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="block cache directory (overrides $FOCKCANON_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="ignore the on-disk block cache")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="fockcanon", description="Canonical bases of the level-one Fock space.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("abacus", parents=[common], help="draw the abacus of a partition")
    a.add_argument("partition", type=_partition)
    a.add_argument("--e", type=int, required=True)
    a.add_argument("--k", type=int)

    pl = sub.add_parser("plus", parents=[common], help="insert empty runners")
    pl.add_argument("partition", type=_partition)
    pl.add_argument("--e", type=int, required=True)
    pl.add_argument("--k", type=int)
    pl.add_argument("--alpha", type=int, required=True)
    pl.add_argument("--repeat", type=int, default=1)

    b = sub.add_parser("basis", parents=[common], help="expand B_mu in the partition basis")
    b.add_argument("partition", type=_partition)
    b.add_argument("--e", type=int, required=True)
    b.add_argument("--k", type=int, help="truncate to partitions with at most k rows")
    b.add_argument("--format", dest="fmt", choices=["pretty", "json"], default="pretty")

    d = sub.add_parser("decmat", parents=[common], help="crystallised decomposition matrix of a block")
    d.add_argument("--e", type=int, required=True)
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--member", type=_partition, help="any partition in the block")
    g.add_argument("--core", type=_partition)
    d.add_argument("--weight", type=int)
    d.add_argument("--k", type=int, help="only rows/columns with at most k rows")
    d.add_argument("--v1", action="store_true", help="evaluate at v=1")
    d.add_argument("--format", dest="fmt", choices=["pretty", "csv", "json"], default="pretty")
    d.add_argument("--order", choices=["lex", "revcolex"], default="lex")

    c = sub.add_parser("compare", parents=[common], help="check b_{lam mu} = b+_{lam+ mu+}")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--alpha", type=int, required=True)
    c.add_argument("--json", action="store_true", help="print the full JSON report")

    ca = sub.add_parser("cache", parents=[common], help="inspect or clear the block cache")
    ca.add_argument("action", choices=["list", "clear"])
    return p


def _cmd_abacus(args, cfg: RunConfig) -> int:
    lam = args.partition
    k = len(lam) if args.k is None else args.k
    if k < len(lam):
        raise UsageError(f"--k must be at least {len(lam)}")
    A = abacus_from_partition(lam, args.e, k)
    core, weight = core_and_weight(A)
    print(f"{format_partition(lam)}  e={args.e} k={k}")
    if k:
        print(A.render())
    print("beads: " + (",".join(map(str, A.beads)) or "-"))
    print(f"core: {format_partition(core)}  weight: {weight}")
    return EXIT_OK


def _cmd_plus(args, cfg: RunConfig) -> int:
    lam = args.partition
    k = len(lam) if args.k is None else args.k
    if k < len(lam):
        raise UsageError(f"--k must be at least {len(lam)}")
    if args.repeat < 0:
        raise UsageError("--repeat must be non-negative")
    e = args.e
    for _ in range(args.repeat):
        lam = plus(lam, e, k, args.alpha)
        e += 1
    print(format_partition(lam))
    return EXIT_OK


def _cmd_basis(args, cfg: RunConfig) -> int:
    B = canonical_basis(args.partition, args.e).expansion
    if args.k is not None:
        B = truncate(B, args.k)
    if args.fmt == "json":
        print(json.dumps(B.to_json(), sort_keys=True))
    else:
        for lam, c in B.sorted_items():
            print(f"{format_partition(lam, shorthand=False)} : {to_string(c)}")
    return EXIT_OK


def _cmd_decmat(args, cfg: RunConfig) -> int:
    if args.member is not None:
        core, weight = block_of(args.member, args.e)
    else:
        if args.weight is None:
            raise UsageError("--core needs --weight")
        core, weight = args.core, args.weight
        if block_of(core, args.e) != (core, 0):
            raise UsageError(f"{format_partition(core)} is not an {args.e}-core")
    M = block_crystal_matrix(args.e, core, weight, args.k or 0, store=cfg.store(), order=args.order)
    if args.fmt == "csv":
        sys.stdout.write(M.to_csv(args.v1))
    elif args.fmt == "json":
        print(json.dumps(M.to_json(args.v1), sort_keys=True))
    else:
        print(f"e={args.e} core={format_partition(core)} weight={weight} k={args.k or 'all'}")
        print(M.pretty(args.v1))
    return EXIT_OK


def _cmd_compare(args, cfg: RunConfig) -> int:
    report = verify_runner_insertion(args.n, args.e, args.k, args.alpha, BasisCache(), BasisCache())
    if args.json:
        print(report.dumps())
    for row in report.mismatches():
        log.warning(
            "mismatch lam=%s mu=%s: %s vs %s",
            format_partition(row.lam),
            format_partition(row.mu),
            to_string(row.b),
            to_string(row.b_plus),
        )
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _cmd_cache(args, cfg: RunConfig) -> int:
    store = BlockStore.from_env(cfg.cache_dir)
    if store is None:
        raise UsageError("no cache directory: set $FOCKCANON_CACHE or pass --cache-dir")
    if args.action == "list":
        for name, ncols in store.entries():
            print(f"{name}\t{ncols}")
    else:
        print(f"removed {store.clear()} file(s)")
    return EXIT_OK


COMMANDS = {
    "abacus": _cmd_abacus,
    "plus": _cmd_plus,
    "basis": _cmd_basis,
    "decmat": _cmd_decmat,
    "compare": _cmd_compare,
    "cache": _cmd_cache,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        e=getattr(args, "e", None),
        k=getattr(args, "k", None),
        alpha=getattr(args, "alpha", None),
        n=getattr(args, "n", None),
        fmt=getattr(args, "fmt", "pretty"),
        v1=getattr(args, "v1", False),
        cache_dir=args.cache_dir,
        no_cache=args.no_cache,
        verbosity=args.verbose,
    )
    logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbosity, 2), format="%(levelname)s %(message)s")
    try:
        cfg.validate()
        return COMMANDS[args.command](args, cfg)
    except (UsageError, TooFewBeads) as exc:
        print(f"fockcanon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotDivisible, NonIntegralBar, StraighteningFailure, SingularSpanningSet, AssertionError) as exc:
        print(f"fockcanon: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
