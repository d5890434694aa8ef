"""Batch verification and computation front end.

Every subcommand prints a deterministic report (text or JSON) and exits 0
when all assertions pass, 1 on a counterexample, 2 on a configuration
error.  Reports are byte-identical across runs and worker counts.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .scalar import ONE, Q, QtScalar, ZERO


def _parse_partition(text):
    parts = tuple(int(p) for p in text.split(",") if p)
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}")
    return parts


def _emit(report, args):
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.format == "text":
        lines = []
        ok = report.get("equal", report.get("ok", False))
        lines.append(f"{report.get('command', 'report')}: "
                     f"{'PASS' if ok else 'FAIL'}")
        for key in sorted(report):
            if key in ("lhs", "rhs", "command"):
                continue
            lines.append(f"  {key} = {json.dumps(report[key], sort_keys=True, default=str)}")
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.get("equal", report.get("ok", False)) else 1


def _omega_slice(payload):
    from .omega import OmegaQuery, omega_series
    n, k, N, D, degrees = payload
    series = omega_series(OmegaQuery(n, k, N, D), t_degrees=degrees)
    return {key: ts.to_json() for key, ts in series.table.items()}


def cmd_verify_main(args):
    from .macdonald import cauchy_macdonald_series
    from .omega import OmegaQuery, omega_series, _series_pair_report
    n, k, N, D = args.n, args.k, args.N, args.D
    scale = (ONE - Q) ** n
    if args.workers > 1:
        from .scalar import MonomialSeries, TSeries
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            chunks = pool.map(_omega_slice,
                              [(n, k, N, D, [d]) for d in range(D + 1)])
        table = {}
        for chunk in chunks:  # merged in degree order: deterministic
            for key, entries in chunk.items():
                coeffs = table.setdefault(key, [ZERO] * (D + 1))
                for entry in entries:
                    num = {(i, 0): c for i, c in enumerate(entry["q_num"]) if c}
                    den = {(i, 0): c for i, c in enumerate(entry["q_den"]) if c}
                    coeffs[entry["t_deg"]] = coeffs[entry["t_deg"]] + QtScalar(num, den)
        rhs = MonomialSeries(N, N, D, {key: TSeries(D, coeffs)
                                       for key, coeffs in table.items()})
    else:
        rhs = omega_series(OmegaQuery(n, k, N, D))
    lhs = cauchy_macdonald_series(n, k, N, D).scale(scale)
    report = _series_pair_report(n, k, N, D, lhs, rhs.scale(scale))
    report["command"] = "verify-main"
    return _emit(report, args)


def cmd_verify_shuffle(args):
    from .shuffle import nabla_en_expansion, parking_sum
    from .symfunc import poly_to_symfunc
    n, k = args.n, args.k
    N = args.N or n
    lhs = nabla_en_expansion(n, k, N)
    rhs = parking_sum(n, k, N)
    report = {"command": "verify-shuffle", "n": n, "k": k, "N": N,
              "equal": lhs == rhs,
              "nabla_schur": str(poly_to_symfunc(lhs, "x", "s")),
              "parking_monomial": str(poly_to_symfunc(rhs, "x", "m"))
              if lhs == rhs else None}
    return _emit(report, args)


def cmd_verify_fulltwist(args):
    from .omega import verify_fulltwist, verify_hilbert
    report = verify_fulltwist(args.n, args.k, args.D)
    report["command"] = "verify-fulltwist"
    if args.hilbert:
        sub = verify_hilbert(args.n, args.k, args.D)
        report["hilbert"] = {"equal": sub["equal"],
                             "first_discrepancy": sub["first_discrepancy"]}
        report["equal"] = report["equal"] and sub["equal"]
    return _emit(report, args)


def cmd_verify_involution(args):
    from .involution import verify_vanishing
    report = verify_vanishing(args.n, args.k, args.D, args.N)
    report["command"] = "verify-involution"
    return _emit(report, args)


def cmd_verify_paff(args):
    from .affine import verify_paff
    report = verify_paff(args.n, args.k, args.D, args.N)
    report["command"] = "verify-paff"
    return _emit(report, args)


def cmd_verify_bundles(args):
    from .bundles import (verify_bundle_counts, verify_bundle_series,
                          verify_product_identity)
    primes = tuple(int(p) for p in args.primes.split(","))
    counts = verify_bundle_counts(args.n, args.mmax, args.lmax, primes,
                                  tuple(range(args.k + 1)))
    series = verify_bundle_series(args.n, max(args.k, 1), args.N, args.D)
    prod = verify_product_identity(min(args.n + 1, 3), args.N, args.D - 1,
                                   args.qdegree)
    report = {"command": "verify-bundles",
              "counts": {"ok": counts["ok"], "cases": counts["cases"],
                         "failures": counts["failures"]},
              "series": series, "product": prod,
              "ok": counts["ok"] and series["equal"] and prod["equal"]}
    return _emit(report, args)


def _all_dyck_paths(n):
    from .labels import DyckPath

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(0, prefix[-1] + 2):
            yield from rec(prefix + [v])

    for area in rec([0]):
        dset = {(i, j) for j in range(1, n + 1)
                for i in range(j - area[j - 1], j)}
        yield DyckPath(n, dset)


def cmd_verify_xi_impl(args):
    from .labels import chromatic, xi_pi
    from .symfunc import plethysm_p_scale, poly_to_symfunc
    n = args.n
    checked = 0
    failure = None
    for path in _all_dyck_paths(n):
        lhs = xi_pi(path, n)
        krom = poly_to_symfunc(chromatic(path, n), alphabet="y")
        scaled = plethysm_p_scale(krom, lambda r: ONE / (ONE - Q ** r))
        rhs = scaled.omega().expand(n, "y").scale((ONE - Q) ** n)
        checked += 1
        if lhs != rhs:
            failure = {"area_sequence": list(path.area_sequence)}
            break
    report = {"command": "verify-xi", "n": n, "paths": checked,
              "ok": failure is None, "failure": failure}
    return _emit(report, args)


def cmd_compute(args):
    from .symfunc import SymFunc, poly_to_symfunc
    if args.what == "macdonald":
        from .macdonald import htilde_schur
        if args.lam is None:
            print("compute macdonald needs --lambda", file=sys.stderr)
            return 2
        report = {"command": "compute-macdonald", "lambda": list(args.lam),
                  "schur": str(htilde_schur(args.lam)), "equal": True}
    elif args.what == "nabla":
        from .macdonald import nabla_power
        out = nabla_power(SymFunc.e(args.n), args.k)
        report = {"command": "compute-nabla", "n": args.n, "k": args.k,
                  "monomial": str(out), "schur": str(out.convert("s")),
                  "equal": True}
    elif args.what == "omega":
        from .omega import OmegaQuery, omega_series
        series = omega_series(OmegaQuery(args.n, args.k, args.N or args.n,
                                         args.D))
        report = {"command": "compute-omega", "n": args.n, "k": args.k,
                  "N": args.N or args.n, "D": args.D,
                  "series": series.to_json(), "equal": True}
    elif args.what == "parking":
        from .shuffle import nabla_en_expansion, parking_sum
        N = args.N or args.n
        lhs = nabla_en_expansion(args.n, args.k, N)
        rhs = parking_sum(args.n, args.k, N)
        report = {"command": "compute-parking", "n": args.n, "k": args.k,
                  "N": N,
                  "parking_monomial": str(poly_to_symfunc(rhs, "x", "m")),
                  "parking_schur": str(poly_to_symfunc(rhs, "x", "s")),
                  "nabla_monomial": str(poly_to_symfunc(lhs, "x", "m")),
                  "nabla_schur": str(poly_to_symfunc(lhs, "x", "s")),
                  "equal": lhs == rhs}
    else:  # pragma: no cover
        return 2
    return _emit(report, args)


def _add_common(sub, n=True, k=True, N=False, D=False):
    sub.add_argument("--format", choices=("json", "text"), default="text")
    sub.add_argument("--out", default=None)
    sub.add_argument("--workers", type=int, default=1)
    if n:
        sub.add_argument("--n", type=int, required=True)
    if k:
        sub.add_argument("--k", type=int, default=1)
    if N:
        sub.add_argument("--N", type=int, default=None)
    if D:
        sub.add_argument("--D", "--t-degree", dest="D", type=int, default=4)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtnabla",
        description="Exact verification of the nabla-operator identities "
                    "and their combinatorial sides.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify-main", help="Macdonald side vs enumerator")
    _add_common(p, N=True, D=True)
    p.set_defaults(fn=cmd_verify_main)

    p = subs.add_parser("verify-shuffle", help="parking sum vs nabla^k e_n")
    _add_common(p, N=True)
    p.set_defaults(fn=cmd_verify_shuffle)

    p = subs.add_parser("verify-fulltwist", help="exponent-sum series vs coefficient extraction")
    _add_common(p, D=True)
    p.add_argument("--hilbert", action="store_true",
                   help="also compare the squarefree coefficient with the "
                        "affine-permutation series")
    p.set_defaults(fn=cmd_verify_fulltwist)

    p = subs.add_parser("verify-involution", help="fixed points, weights, and the signed sum")
    _add_common(p, N=True, D=True)
    p.set_defaults(fn=cmd_verify_involution)

    p = subs.add_parser("verify-paff", help="triples-to-permutations bijection sweep")
    _add_common(p, N=True, D=True)
    p.set_defaults(fn=cmd_verify_paff)

    p = subs.add_parser("verify-bundles", help="counting formulas vs the finite-field oracle")
    _add_common(p, N=True, D=True)
    p.add_argument("--primes", default="2,3")
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--lmax", type=int, default=2)
    p.add_argument("--qdegree", type=int, default=4)
    p.set_defaults(fn=cmd_verify_bundles)

    p = subs.add_parser("verify-xi", help="label generating function vs chromatic route")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_xi_impl)

    p = subs.add_parser("compute", help="render one object")
    p.add_argument("what", choices=("macdonald", "nabla", "omega", "parking"))
    _add_common(p, n=False, k=False, N=True, D=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=_parse_partition, default=None)
    p.set_defaults(fn=cmd_compute)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
