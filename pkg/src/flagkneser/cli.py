"""Command-line front end: ``flagkneser {alpha,family,verify,export,solve-dimacs}``.

Exit codes: 0 success, 1 certificate failure, 2 usage error, 3 timeout with a bound.
"""

from __future__ import annotations

import argparse
import logging
import sys
from math import comb
from pathlib import Path

from . import __version__
from .families import build_family_i, induction_bound_check, known_alpha
from .formats import (
    CacheEntry,
    ResultsCache,
    cache_path,
    dumps_family,
    now_stamp,
    read_dimacs,
    write_dimacs,
)
from .setcore import ElementSet, GraphSpec, is_independent, opposition_graph
from .shifting import is_left_shifted
from .solver import (
    SolverConfig,
    alpha_bruteforce,
    alpha_exact,
    max_independent_set,
    verify_table2,
)
from .suites import shifting_suite, weight_suite
from .weights import certify_weight_dichotomy, weight_of_aset

EXIT_OK, EXIT_CERT, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _spec(n: int, a: int, b: int) -> GraphSpec:
    if a < 1:
        raise UsageError("a >= 1 required")
    if not a < b < n:
        raise UsageError("need a < b < n")
    if n > 62:
        raise UsageError("n <= 62 required")
    return GraphSpec.of(n, a, b)


def _config(args) -> SolverConfig:
    return SolverConfig(
        time_budget=args.budget,
        use_symmetry=not args.no_symmetry,
        thread_count=args.threads,
        left_shifted=args.left_shifted,
    )


def cmd_alpha(args) -> int:
    spec = _spec(args.n, args.a, args.b)
    if args.threads < 1 or (args.budget is not None and args.budget <= 0):
        raise UsageError("--threads must be >= 1 and --budget > 0")
    known = known_alpha(args.n, args.a, args.b)
    cache = None if args.no_cache else ResultsCache.load(cache_path(args.cache))
    print(f"graph {spec}: {spec.vertex_count} vertices")

    cached = cache.get(args.n, args.a, args.b) if cache else None
    if cached and cached.status == "optimal" and not args.force and not args.brute:
        print(f"alpha = {cached.value} (optimal)")
        print(f"source: cache ({cached.source}, {cached.timestamp})")
        return EXIT_OK

    res = alpha_bruteforce(spec) if args.brute else alpha_exact(spec, _config(args))
    source = "computed"
    if res.status == "optimal":
        print(f"alpha = {res.alpha} (optimal)")
    else:
        print(f"alpha >= {res.alpha} ({res.status})")
    print(f"witness size: {len(res.witness)}")
    print(f"source: {source} (mode {res.stats.mode}, {res.stats.nodes} nodes, "
          f"{res.stats.wall_time:.2f} s)")
    code = EXIT_OK if res.status == "optimal" else EXIT_TIMEOUT
    if known.known:
        via = f" via {known.via.value}" if known.via else ""
        print(f"theorem value: {known.value} ({known.source.value}{via})")
        if res.status == "optimal" and res.alpha != known.value:
            print("MISMATCH between computed and theorem value")
            code = EXIT_CERT
    if args.out:
        Path(args.out).write_text(dumps_family(res.witness))
    if cache is not None:
        cache.put(CacheEntry(args.n, args.a, args.b, res.alpha, res.status, source,
                             round(res.stats.wall_time, 4), __version__, now_stamp()))
        cache.save()
    return code


def cmd_family(args) -> int:
    try:
        fam = build_family_i(args.n, args.a, args.b, args.i)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"F_{args.i}({args.n},{args.a},{args.b}): size {len(fam)}")
    print(f"left-shifted: {str(is_left_shifted(fam)).lower()}")
    if args.check:
        print(f"independent: {str(is_independent(fam)).lower()}")
    if args.out == "-":
        sys.stdout.write(dumps_family(fam))
    elif args.out:
        Path(args.out).write_text(dumps_family(fam))
    return EXIT_OK


def _verify_lemmas(args) -> int:
    failed = False
    for n in (5, 6, 7, 8):
        rep = shifting_suite(n, args.samples, args.seed)
        print(rep.summary())
        failed |= not rep.ok
    for n in (7, 8, 9):
        rep = weight_suite(n, max(1, args.samples // 5), args.seed)
        print(rep.summary())
        failed |= not rep.ok
    f0 = build_family_i(9, 1, 6, 0)
    cert = certify_weight_dichotomy(f0)
    print(f"F_0(9,1,6) {cert.summary()}")
    failed |= not cert.ok
    w1 = weight_of_aset(f0, ElementSet.of(9, [1]))
    floor_ok = len(f0) == 168 and is_left_shifted(f0) and w1 == 21 < comb(8, 3)
    print(f"F_0(9,1,6): size {len(f0)}, left-shifted {is_left_shifted(f0)}, "
          f"weight of {{1}} {w1} < {comb(8, 3)}: {'pass' if floor_ok else 'FAIL'}")
    failed |= not floor_ok
    return EXIT_CERT if failed else EXIT_OK


def _verify_table2(args) -> int:
    if not 5 <= args.table2 <= 10:
        raise UsageError("table rows exist for 5 <= max_n <= 10")
    rows = verify_table2(args.table2, _config(args))
    for r in rows:
        print(f"n={r.n}: expected {r.expected}, got {r.alpha} ({r.solver_status}) "
              f"{r.status} [{r.seconds:.2f} s]")
    passed = sum(r.status == "pass" for r in rows)
    print(f"{passed}/{len(rows)} pass")
    return EXIT_CERT if any(r.status == "fail" for r in rows) else EXIT_OK


def _verify_induction(args) -> int:
    n = args.induction
    if n < 6:
        raise UsageError("--induction needs n >= 6")
    cert = induction_bound_check(n)
    if cert.bound is not None:
        extra = f" = C({n},4)+42" if cert.bound == comb(n, 4) + 42 else ""
        print(f"bound {cert.bound} = C({n - 1},3)+{cert.bound - comb(n - 1, 3)}{extra}, "
              f"alpha {cert.observed}, slack {cert.bound - cert.observed}")
    print(cert.summary())
    return EXIT_CERT if not cert.ok else EXIT_OK


def cmd_verify(args) -> int:
    if args.lemmas:
        return _verify_lemmas(args)
    if args.table2 is not None:
        return _verify_table2(args)
    return _verify_induction(args)


def cmd_export(args) -> int:
    spec = _spec(args.n, args.a, args.b)
    g = opposition_graph(spec)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w")
    try:
        if args.format == "dimacs":
            write_dimacs(g, out)
        else:
            out.write(dumps_family(g.family_of_mask((1 << g.size) - 1)))
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_solve_dimacs(args) -> int:
    with open(args.path) as fh:
        graph = read_dimacs(fh)
    res = max_independent_set(graph.adjacency(),
                              SolverConfig(use_symmetry=False, time_budget=args.budget))
    if res.status == "optimal":
        print(f"alpha = {res.alpha} (optimal)")
        return EXIT_OK
    print(f"alpha >= {res.alpha} ({res.status})")
    return EXIT_TIMEOUT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagkneser", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log solver improvements")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--no-symmetry", action="store_true")
        sp.add_argument("--left-shifted", action="store_true",
                        help="search left-shifted families only")
        sp.add_argument("--budget", type=float, default=None, metavar="S")
        sp.add_argument("--threads", type=int, default=1, metavar="K")

    sp = sub.add_parser("alpha", help="independence number of Gamma(n,a,b)")
    for name in ("n", "a", "b"):
        sp.add_argument(name, type=int)
    sp.add_argument("--brute", action="store_true")
    solver_flags(sp)
    sp.add_argument("--cache", default=None, help="cache file (default $FLAGKNESER_CACHE)")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--force", action="store_true", help="search even if cached")
    sp.add_argument("--out", default=None, help="write the witness family here")
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("family", help="build F_i(n,a,b)")
    for name in ("n", "a", "b", "i"):
        sp.add_argument(name, type=int)
    sp.add_argument("--out", default=None, help="family file ('-' for stdout)")
    sp.add_argument("--check", action="store_true", help="also check independence")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("verify", help="run certificate suites")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--lemmas", action="store_true")
    grp.add_argument("--table2", type=int, nargs="?", const=8, metavar="MAX_N")
    grp.add_argument("--induction", type=int, metavar="N")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=100)
    solver_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="export Gamma(n,a,b)")
    for name in ("n", "a", "b"):
        sp.add_argument(name, type=int)
    sp.add_argument("--format", choices=("dimacs", "family"), default="dimacs")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("solve-dimacs", help="independence number of a DIMACS graph")
    sp.add_argument("path")
    sp.add_argument("--budget", type=float, default=None)
    sp.set_defaults(func=cmd_solve_dimacs)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"flagkneser: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"flagkneser: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
