"""Command line surface.

Subcommands: ``star`` multiplies two operator files and prints the result in
both component and normal-ordered coordinate form with the oracle agreement
flag; ``square-zero`` reports on H * H within bounds; ``verify`` runs the
named property suite; ``homology`` emits Betti/Euler tables for one cell or
a grid, with the four compatibility-class verdicts when their cells are
covered.

Exit codes: 0 verified/success, 1 verification failure (a witness is
printed), 2 input error, 3 resource truncation.
"""

import argparse
import json
import multiprocessing
import os
import sys

from . import verify
from .homology import (
    RELATION_NAMES, TruncatedComplexError, betti, betti_records, build_complex,
    euler_characteristic, euler_from_betti, is_boundary, is_cycle,
    records_to_csv, records_to_json, relation_class, vertex_bound,
)
from .opspec import SpecError, dump_operator, load_operator
from .weyl import UnreducedError, pq_product, square_zero_report, star_weyl, weyl_to_pq

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_TRUNCATED = 3

CACHE_ENV = "WEYLPROP_CACHE_DIR"


def _cache_dir(args):
    if getattr(args, "cache_dir", None):
        return args.cache_dir
    return os.environ.get(CACHE_ENV)


def cmd_star(args):
    a, _ = load_operator(args.op_a)
    b, _ = load_operator(args.op_b)
    if a.basis != b.basis:
        raise SpecError("operator files use different bases")
    product = star_weyl(a, b, args.gmax, None)
    oracle = pq_product(weyl_to_pq(a), weyl_to_pq(b)).truncate(args.gmax)
    agrees = weyl_to_pq(product) == oracle
    print("normal-ordered: %s" % oracle)
    payload = dump_operator(product)
    payload["oracle_agreement"] = agrees
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print("oracle agreement: %s" % str(agrees).lower())
    return EXIT_OK if agrees else EXIT_FAIL


def cmd_square_zero(args):
    element, reduced = load_operator(args.op)
    if not reduced and not element.is_reduced():
        raise UnreducedError("element has an arity-zero component")
    report = square_zero_report(element, args.gmax, args.aritymax)
    print(report.describe(element.basis))
    return EXIT_OK if report.is_zero else EXIT_FAIL


SUITES = {
    "coassoc": lambda args: verify.run_coassoc(args.mmax, args.nmax, args.genusmax),
    "dsq": lambda args: verify.run_dsq(args.rtsum, args.genusmax, args.pmax),
    "compare-circk": lambda args: verify.run_compare_circ_k(args.aritymax,
                                                            seed=args.seed),
    "theorem": lambda args: verify.run_theorem(args.count, seed=args.seed,
                                               arity_max=min(args.aritymax, 3),
                                               g_max=args.genusmax),
    "star-oracle": lambda args: verify.run_star_oracle(args.count,
                                                       seed=args.seed,
                                                       g_max=args.genusmax),
}


def cmd_verify(args):
    runner = SUITES.get(args.suite)
    if runner is None:
        raise SpecError("unknown suite name %r" % args.suite)
    results = runner(args)
    failures = 0
    for case, ok in results:
        print("%s  %s" % ("ok  " if ok else "FAIL", case))
        if not ok:
            failures += 1
    print("%d cases, %d failures" % (len(results), failures))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _grid_worker(task):
    (r, t, g), p_max, cache_dir = task
    cell = build_complex(r, t, g, p_max=p_max, cache_dir=cache_dir)
    return (r, t, g), betti_records([cell]), cell.truncated


def _relation_verdicts(keys, p_max, cache_dir):
    verdicts = []
    for name in RELATION_NAMES:
        key, vec = relation_class(name)
        if key not in keys:
            continue
        cell = build_complex(*key, p_max=p_max, cache_dir=cache_dir)
        if cell.truncated:
            verdicts.append((name, key, "truncated"))
            continue
        ok = is_cycle(vec, cell) and is_boundary(vec, cell)
        verdicts.append((name, key, "boundary" if ok else "NOT-boundary"))
    return verdicts


def cmd_homology(args):
    cache_dir = _cache_dir(args)
    if args.grid:
        keys = []
        for r in range(1, args.rmax + 1):
            for t in range(1, args.tmax + 1):
                if args.rtsum and r + t > args.rtsum:
                    continue
                for g in range(0, args.genusmax + 1):
                    keys.append((r, t, g))
    else:
        if args.r is None or args.t is None or args.g is None:
            raise SpecError("give --r --t --g or --grid")
        keys = [(args.r, args.t, args.g)]
    tasks = [(key, args.pmax, cache_dir) for key in sorted(keys)]
    if args.jobs > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            raw = pool.map(_grid_worker, tasks)
    else:
        raw = [_grid_worker(task) for task in tasks]
    raw.sort(key=lambda item: item[0])
    records = []
    truncated_cells = []
    for key, recs, truncated in raw:
        records.extend(recs)
        if truncated:
            truncated_cells.append(key)
    if truncated_cells and not args.allow_truncated:
        sys.stderr.write("truncated cells: %s (rerun with --allow-truncated)\n"
                         % truncated_cells)
        return EXIT_TRUNCATED
    if args.format == "csv":
        text = records_to_csv(records)
    else:
        text = records_to_json(records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for name, key, verdict in _relation_verdicts(set(keys), args.pmax, cache_dir):
        print("relation %s at %s: %s" % (name, key, verdict))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weylprop",
        description="exact star products and the graph complex of the "
                    "cofrobenius cobar construction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star", help="star product of two operator files")
    p.add_argument("op_a")
    p.add_argument("op_b")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("square-zero", help="check H * H within bounds")
    p.add_argument("op")
    p.add_argument("--gmax", type=int, default=2)
    p.add_argument("--aritymax", type=int, default=6)
    p.set_defaults(func=cmd_square_zero)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=sorted(SUITES))
    p.add_argument("--mmax", type=int, default=4)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--genusmax", type=int, default=2)
    p.add_argument("--rtsum", type=int, default=6)
    p.add_argument("--pmax", type=int, default=3)
    p.add_argument("--aritymax", type=int, default=3)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", help="Betti/Euler tables per cell")
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--grid", action="store_true")
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--tmax", type=int, default=3)
    p.add_argument("--genusmax", type=int, default=1)
    p.add_argument("--rtsum", type=int, default=0,
                   help="cap r+t inside the grid (0 for no cap)")
    p.add_argument("--pmax", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache-dir")
    p.add_argument("--allow-truncated", action="store_true")
    p.set_defaults(func=cmd_homology)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, UnreducedError, FileNotFoundError, ValueError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT
    except TruncatedComplexError as exc:
        sys.stderr.write("truncated: %s\n" % exc)
        return EXIT_TRUNCATED


if __name__ == "__main__":
    sys.exit(main())
