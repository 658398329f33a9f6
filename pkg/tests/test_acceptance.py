"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""

import time
from functools import lru_cache
from math import factorial

from jacklab import partitions as P
from jacklab.coefficients import coeff_table, conjecture_report
from jacklab.hypermaps import labelled_count_formula, rectangle_census, theta_sum_check
from jacklab.jack import identity_suite, phi_extract
from jacklab.matchings import (census_G, class_algebra_c, in_scope, labelled_count_factor,
                               weight_sum_check)
from jacklab.powersum import operator_identity_report
from jacklab.ratfunc import RATZERO, BetaPoly

HYPERMAP_SHAPES = ([(1, m) for m in range(1, 9)] + [(2, m) for m in range(1, 4)]
                   + [(3, 1), (3, 2)] + [(k, 1) for k in range(4, 7)])


@lru_cache(maxsize=None)
def _h_check(k, m):
    return theta_sum_check(k, m)


@lru_cache(maxsize=None)
def _a_check(n, nu):
    return weight_sum_check(n, nu)


def _in_scope_shapes(n_max):
    return [(n, nu) for n in range(1, n_max + 1) for nu in P.partitions_of(n) if in_scope(nu)]


def test_criterion_01_operator_identities(report_line):
    t = time.time()
    r = operator_identity_report(degree=10, pi_max=5)
    dt = time.time() - t
    bad = [c for c in r["checks"] if not c["ok"]]
    ok = r["ok"] and not bad and dt < 10
    report_line(1, "closed Omega_2/Omega_3 and Pi_k identities, degree <= 10", ok,
                f"{len(r['checks'])} checks, {dt:.1f}s")
    assert r["ok"], bad
    assert dt < 10


def test_criterion_02_route_equivalence(report_line):
    bad = []
    checked = 0
    for n in range(1, 8):
        oracle = phi_extract(n)
        for nu in P.partitions_of(n):
            table = coeff_table("a", n, nu)
            for lam in P.partitions_of(n):
                checked += 1
                if table[lam] != oracle.get((lam, nu), RATZERO):
                    bad.append((n, nu, lam))
    report_line(2, "operator route equals Jack series extraction, n <= 7", not bad,
                f"{checked} entries")
    assert not bad


def test_criterion_03_specializations(report_line):
    bad = []
    checked = 0
    for n in range(1, 8):
        census = census_G(n)
        for nu in P.partitions_of(n):
            table = coeff_table("a", n, nu)
            for lam in P.partitions_of(n):
                a = table[lam]
                total, _ = census.get((lam, nu), (0, 0))
                checked += 1
                if a(2) != total:
                    bad.append(("a(2)", n, nu, lam))
                if n <= 6 and a(1) != class_algebra_c(lam, (n,), nu):
                    bad.append(("a(1)", n, nu, lam))
    report_line(3, "a(1) = class algebra count (n <= 6), a(2) = matching count (n <= 7)",
                not bad, f"{checked} entries")
    assert not bad


def test_criterion_04_reference_values(report_line):
    bad = []
    a333 = coeff_table("a", 3, (3,))[(3,)]
    if a333.to_beta() != BetaPoly([1, 1, 2]):
        bad.append(("a^(3)_(3,3)", str(a333)))
    for n in range(1, 9):
        ones = (1,) * n
        if coeff_table("a", n, ones)[(n,)] != 1:
            bad.append(("a^(n)_[1^n]", n))
        if coeff_table("h", n, ones)[(n,)] != 1:
            bad.append(("h^(n)_[1^n]", n))
        polys, _ = rectangle_census(1, n)
        got = [polys[(n,)][t] for t in range(max(polys[(n,)]) + 1)]
        if got != [factorial(n - 1)]:
            bad.append(("hypermap sum for [1^n]", n, got))
    report_line(4, "a^(3)_(3,3)(1+b) = 2b^2+b+1, [1^n] values and (n-1)! sums", not bad)
    assert not bad


def test_criterion_05_polynomiality_and_duality(report_line):
    t = time.time()
    r = conjecture_report(8)
    dt = time.time() - t
    bad = [v for v in r["violations"] if v[0] in ("a-integrality", "h-integrality", "duality")]
    report_line(5, "integrality, degree bounds and duality for n <= 8", not bad,
                f"{r['checked']} (lam, nu) pairs, {dt:.1f}s")
    assert not bad
    assert dt < 600


def test_criterion_06_beta_positivity(report_line):
    r = conjecture_report(8)
    bad = [v for v in r["violations"] if v[0] in ("a-beta", "h-beta")]
    report_line(6, "a and h tables nonnegative integer in beta, n <= 8", not bad,
                f"{r['checked']} (lam, nu) pairs")
    assert not bad


def test_criterion_07_matching_weights(report_line):
    t = time.time()
    bad = []
    shapes = _in_scope_shapes(6)
    for n, nu in shapes:
        r = _a_check(n, nu)
        bad.extend((n, nu, row["lambda"]) for row in r["rows"] if not row["ok"])
    dt = time.time() - t
    report_line(7, "sum of beta^wt over labelled matchings equals a~(1+b), n <= 6", not bad,
                f"{len(shapes)} shapes, {dt:.1f}s")
    assert not bad
    assert dt < 900


def test_criterion_08_hypermap_theta(report_line):
    t = time.time()
    bad = []
    for k, m in HYPERMAP_SHAPES:
        r = _h_check(k, m)
        if not r["ok"]:
            bad.append((k, m, [row["lambda"] for row in r["rows"] if not row["ok"]],
                        len(r["zero_set_violations"]), len(r["range_violations"])))
    dt = time.time() - t
    report_line(8, "sum of beta^theta over labelled star hypermaps equals h~(1+b)", not bad,
                f"{len(HYPERMAP_SHAPES)} shapes, {dt:.1f}s")
    assert not bad
    assert dt < 1200


def test_criterion_09_jack_identities(report_line):
    t = time.time()
    r = identity_suite(5)
    dt = time.time() - t
    names = sorted({c["identity"] for c in r["failures"]})
    ok = not r["failures"] and dt < 60
    report_line(9, "Jack eigenvalue, theta recursion and series identities, degree <= 5", ok,
                f"{r['checks']} checks, {dt:.1f}s" + (f", failing {names}" if names else ""))
    assert not r["failures"]
    assert dt < 60


def test_criterion_10_structural_counts(report_line):
    bad = []
    for n, nu in _in_scope_shapes(6):
        census = census_G(n)
        factor = labelled_count_factor(nu)
        for row in _a_check(n, nu)["rows"]:
            raw = census.get((row["lambda"], nu), (0, 0))[0]
            if row["count"] != factor * raw:
                bad.append(("matchings", n, nu, row["lambda"]))
    for k, m in HYPERMAP_SHAPES:
        for row in _h_check(k, m)["rows"]:
            if row["total"] != labelled_count_formula(row["lambda"], k, m):
                bad.append(("hypermaps", k, m, row["lambda"]))
    report_line(10, "labelled counts match Aut/m1! |G| and (m! k!^m / n) l", not bad)
    assert not bad
