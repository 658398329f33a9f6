"""jacklab command line: coefficient tables, verification suites, censuses, oracle."""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import partitions as P
from .cache import Cache
from .ratfunc import BetaPoly

CSV_COLUMNS = ["n", "nu", "lambda", "kind", "alpha_poly", "beta_poly"]
CENSUS_COLUMNS = ["k", "m", "lambda", "beta_poly", "orientable", "total"]


def _partition_arg(text):
    try:
        return P.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _cache_from(args):
    if args.no_cache:
        return None
    return Cache(args.cache_dir) if args.cache_dir else Cache()


def _emit(rows, columns, fmt, out):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(r)
        text = buf.getvalue()
    else:
        text = json.dumps([dict(zip(columns, map(_jsonable, r))) for r in rows], indent=1) + "\n"
    _write(text, out)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, bool)) or x is None:
        # big integers travel as decimal strings
        return str(x) if isinstance(x, int) and not isinstance(x, bool) and abs(x) >= 2 ** 53 else x
    return str(x)


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _nus(n, nu):
    return [nu] if nu is not None else list(P.partitions_of(n))


# --- coeffs -------------------------------------------------------------------

def _coeff_rows(job):
    kind, n, nu, cache_dir = job
    from .cache import coeff_table_cached
    cache = Cache(cache_dir) if cache_dir else None
    return coeff_table_cached(kind, n, nu, cache).rows()


def cmd_coeffs(args):
    if args.nu is not None and sum(args.nu) != args.n:
        raise SystemExit(f"error: {P.fmt(args.nu)} is not a partition of {args.n}")
    cache = _cache_from(args)
    cache_dir = str(cache.root) if cache else None
    jobs = [(args.kind, args.n, nu, cache_dir) for nu in _nus(args.n, args.nu)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            parts = list(ex.map(_coeff_rows, jobs))
    else:
        parts = [_coeff_rows(j) for j in jobs]
    rows = [r for part in parts for r in part]
    _emit(rows, CSV_COLUMNS, args.format, args.out)
    return 0


# --- oracle -------------------------------------------------------------------

def cmd_oracle(args):
    from .jack import phi_extract, psi_extract
    from .ratfunc import RATZERO

    n = args.n
    if args.nu is not None and sum(args.nu) != n:
        raise SystemExit(f"error: {P.fmt(args.nu)} is not a partition of {n}")
    data = phi_extract(n) if args.kind == "a" else psi_extract(n)
    rows = []
    for nu in _nus(n, args.nu):
        for lam in P.partitions_of(n):
            c = data.get((lam, nu), RATZERO)
            beta = str(c.to_beta()) if c.is_polynomial() else ""
            rows.append((n, P.fmt(nu), P.fmt(lam), args.kind, str(c), beta))
    _emit(rows, CSV_COLUMNS, args.format, args.out)
    return 0


# --- census -------------------------------------------------------------------

def cmd_census(args):
    if args.target == "hypermaps":
        from .hypermaps import census_rows
        if args.k is None or args.m is None:
            raise SystemExit("error: census hypermaps needs --k and --m")
        rows = [(k, m, P.fmt(lam), str(BetaPoly(poly)), o, t)
                for k, m, lam, poly, o, t in census_rows(args.k, args.m)]
        _emit(rows, CENSUS_COLUMNS, args.format, args.out)
        return 0
    from .matchings import weight_polynomial
    if args.n is None or args.nu is None:
        raise SystemExit("error: census matchings needs --n and --nu")
    rows = []
    for lam in P.partitions_of(args.n):
        poly, count, _, _ = weight_polynomial(lam, args.nu)
        rows.append((args.n, P.fmt(args.nu), P.fmt(lam), str(BetaPoly(poly)), count))
    _emit(rows, ["n", "nu", "lambda", "beta_poly", "total"], args.format, args.out)
    return 0


# --- verify -------------------------------------------------------------------

def _verify_omega(args):
    from .powersum import operator_identity_report
    return operator_identity_report(args.degree)


def _verify_identities(args):
    from .jack import identity_suite
    r = identity_suite(args.n_max or 5)
    r["ok"] = not r["failures"]
    r["failures"] = [{"identity": f["identity"], "degree": f["degree"]} for f in r["failures"]]
    return r


def _verify_conjectures(args):
    from .coefficients import conjecture_report
    r = conjecture_report(args.n_max or 8)
    r["ok"] = not r["violations"]
    r["violations"] = [[str(x) for x in v] for v in r["violations"]]
    return r


def _verify_routes(args):
    from .coefficients import coeff_table
    from .jack import phi_extract
    from .ratfunc import RATZERO

    n_max = args.n_max or 7
    bad = []
    checked = 0
    for n in range(1, n_max + 1):
        data = phi_extract(n)
        for nu in P.partitions_of(n):
            tab = coeff_table("a", n, nu)
            for lam in P.partitions_of(n):
                checked += 1
                if tab[lam] != data.get((lam, nu), RATZERO):
                    bad.append([n, P.fmt(nu), P.fmt(lam)])
    return {"n_max": n_max, "checked": checked, "ok": not bad, "mismatches": bad}


def _verify_matchings(args):
    from .coefficients import coeff_table
    from .matchings import census_G, class_algebra_c, in_scope, weight_sum_check

    n_max = args.n_max or 6
    rows = []
    for n in range(1, n_max + 1):
        census = census_G(n)
        for nu in P.partitions_of(n):
            tab = coeff_table("a", n, nu)
            for lam in P.partitions_of(n):
                a = tab[lam]
                total, bip = census.get((lam, nu), (0, 0))
                c = class_algebra_c(lam, (n,), nu)
                ok = a(2) == total and a(1) == bip == c
                if not ok:
                    rows.append({"check": "specialization", "n": n, "nu": P.fmt(nu),
                                 "lambda": P.fmt(lam)})
            if in_scope(nu):
                r = weight_sum_check(n, nu)
                if not r["ok"]:
                    rows.append({"check": "weight", "n": n, "nu": P.fmt(nu),
                                 "lambda": [P.fmt(x["lambda"]) for x in r["rows"] if not x["ok"]]})
    return {"n_max": n_max, "ok": not rows, "failures": rows}


def _verify_hypermaps(args):
    from .hypermaps import theta_sum_check

    if args.k is not None and args.m is not None:
        shapes = [(args.k, args.m)]
    else:
        shapes = ([(1, m) for m in range(1, 9)] + [(2, m) for m in range(1, 4)]
                  + [(3, 1), (3, 2)] + [(k, 1) for k in range(4, 7)])
    out = []
    for k, m in shapes:
        r = theta_sum_check(k, m)
        out.append({"k": k, "m": m, "ok": r["ok"],
                    "bad_lambda": [P.fmt(x["lambda"]) for x in r["rows"] if not x["ok"]]})
    return {"ok": all(x["ok"] for x in out), "shapes": out}


SUITES = {
    "omega": _verify_omega,
    "identities": _verify_identities,
    "conjectures": _verify_conjectures,
    "routes": _verify_routes,
    "matchings": _verify_matchings,
    "hypermaps": _verify_hypermaps,
}


def cmd_verify(args):
    report = SUITES[args.suite](args)
    report = {"suite": args.suite, **report}
    _write(json.dumps(report, indent=1, sort_keys=True, default=str) + "\n", args.out)
    return 0 if report["ok"] else 1


# --- parser ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (default $JACKLAB_CACHE or ~/.cache/jacklab)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, default=1)

    ap = argparse.ArgumentParser(prog="jacklab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="coefficient tables for mu = (n)")
    c.add_argument("--kind", default="a", choices=["a", "h", "a~", "h~", "at", "ht"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--nu", type=_partition_arg, default=None)
    c.set_defaults(func=cmd_coeffs)

    o = sub.add_parser("oracle", parents=[common], help="values from the Jack series")
    o.add_argument("--kind", default="a", choices=["a", "h"])
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--nu", type=_partition_arg, default=None)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("census", parents=[common], help="weight censuses")
    s.add_argument("target", choices=["hypermaps", "matchings"], nargs="?", default="hypermaps")
    s.add_argument("--k", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--nu", type=_partition_arg, default=None)
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--degree", type=int, default=10)
    v.add_argument("--k", type=int)
    v.add_argument("--m", type=int)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        raise SystemExit("error: --jobs must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
