"""Connection coefficients a and h for mu = (n), by the operator route and by recurrences.

Kinds:
  a        a^lam_{n,nu}(alpha)
  h        h^lam_{n,nu}(alpha) = alpha n a / (z_lam alpha^len(lam))
  a~       (Aut_nu / m_1(nu)!) a
  h~       (m! k!^m / n) h, only for rectangular nu = [k^m]
"""

import itertools
from functools import lru_cache
from math import comb, factorial, prod

from . import partitions as P
from .partitions import mult_count, partitions_of, z_of
from .powersum import PSFun, build_commutator_tower
from .ratfunc import ALPHA, RATONE, RATZERO, RatFunc

KINDS = ("a", "h", "a~", "h~")
_KIND_ALIASES = {"at": "a~", "ht": "h~", "atilde": "a~", "htilde": "h~",
                 "ã": "a~", "h̃": "h~"}

_tower = None


def get_tower(N):
    """Shared operator tower; grown (rebuilt) when a larger truncation is needed."""
    global _tower
    if _tower is None or _tower.N < N:
        _tower = build_commutator_tower(max(N, 1))
    return _tower


def canonical_kind(kind):
    kind = _KIND_ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown coefficient kind {kind!r}")
    return kind


class CoeffTable:
    """All lam |- n entries of one coefficient family for fixed (n, nu)."""

    def __init__(self, n, nu, kind, entries):
        self.n = n
        self.nu = tuple(nu)
        self.kind = canonical_kind(kind)
        self.entries = {lam: entries.get(lam, RATZERO) for lam in partitions_of(n)}

    def __getitem__(self, lam):
        return self.entries[P.as_partition(lam)]

    def items(self):
        return self.entries.items()

    def __eq__(self, other):
        return (isinstance(other, CoeffTable) and self.n == other.n and self.nu == other.nu
                and self.kind == other.kind and self.entries == other.entries)

    def rows(self):
        """(n, nu, lam, kind, alpha string, beta string) in enumeration order."""
        out = []
        for lam, c in self.entries.items():
            beta = str(c.to_beta()) if c.is_polynomial() else ""
            out.append((self.n, P.fmt(self.nu), P.fmt(lam), self.kind, str(c), beta))
        return out

    def converted(self, kind):
        kind = canonical_kind(kind)
        if kind == self.kind:
            return self
        a = to_a(self)
        if kind == "a":
            return a
        if kind == "h":
            return h_from_a(a)
        if kind == "a~":
            return tilde_a(a)
        return tilde_h(h_from_a(a))


def _check_nu(n, nu):
    nu = P.as_partition(nu)
    if n < 1 or sum(nu) != n:
        raise ValueError(f"{P.fmt(nu)} is not a partition of {n}")
    return nu


def apply_coefficient_operator(nu, order=None):
    """(1/prod nu_i!) (prod_{i>=2} Omega_{nu_i}) Delta^{nu_1 - 1} (p1/alpha).

    order lists the Omega indices from innermost to outermost; by default the
    smallest part is applied first and nu_2 last.
    """
    n = sum(nu)
    T = get_tower(n)
    f = PSFun.p((1,), RATONE / ALPHA)
    for _ in range(nu[0] - 1):
        f = T.delta(f)
    rest = list(nu[1:])
    if order is None:
        order = list(reversed(rest))
    elif sorted(order) != sorted(rest):
        raise ValueError("order must permute the parts after the first")
    for k in order:
        f = T.omega(k)(f)
    return f.scale(RatFunc.const(1) / prod(factorial(p) for p in nu))


def a_table_main(n, nu, order=None):
    nu = _check_nu(n, nu)
    f = apply_coefficient_operator(nu, order)
    aut = P.aut_of(nu)
    entries = {}
    for lam in partitions_of(n):
        c = f[lam]
        if c:
            entries[lam] = c * (ALPHA ** len(lam)) * RatFunc.const(z_of(lam)) / aut
    return CoeffTable(n, nu, "a", entries)


@lru_cache(maxsize=None)
def _cached_a(n, nu):
    return a_table_main(n, nu)


def a_coeff(lam, nu):
    """a^lam_{n,nu} from the operator route (memoized per table)."""
    nu = P.as_partition(nu)
    return _cached_a(sum(nu), nu)[P.as_partition(lam)]


def h_factor(lam):
    n = sum(lam)
    return ALPHA * n / (ALPHA ** len(lam) * z_of(lam))


def h_from_a(table):
    if table.kind != "a":
        raise ValueError("expected an a-table")
    return CoeffTable(table.n, table.nu, "h",
                      {lam: c * h_factor(lam) for lam, c in table.items() if c})


def a_from_h(table):
    return CoeffTable(table.n, table.nu, "a",
                      {lam: c / h_factor(lam) for lam, c in table.items() if c})


def tilde_a_factor(nu):
    return RatFunc.const(P.aut_of(nu)) / factorial(nu.count(1))


def rect_shape(nu):
    if not nu or len(set(nu)) != 1:
        raise ValueError(f"{P.fmt(nu)} is not rectangular")
    return nu[0], len(nu)


def tilde_h_factor(nu):
    k, m = rect_shape(nu)
    return RatFunc.const(factorial(m) * factorial(k) ** m) / sum(nu)


def tilde_a(table):
    f = tilde_a_factor(table.nu)
    return CoeffTable(table.n, table.nu, "a~", {l: c * f for l, c in table.items() if c})


def tilde_h(table):
    if table.kind == "a":
        table = h_from_a(table)
    f = tilde_h_factor(table.nu)
    return CoeffTable(table.n, table.nu, "h~", {l: c * f for l, c in table.items() if c})


def to_a(table):
    if table.kind == "a":
        return table
    if table.kind == "h":
        return a_from_h(table)
    if table.kind == "a~":
        f = tilde_a_factor(table.nu)
        return CoeffTable(table.n, table.nu, "a", {l: c / f for l, c in table.items() if c})
    f = tilde_h_factor(table.nu)
    h = CoeffTable(table.n, table.nu, "h", {l: c / f for l, c in table.items() if c})
    return a_from_h(h)


def coeff_table(kind, n, nu):
    nu = _check_nu(n, nu)
    return _cached_a(n, nu).converted(kind)


# --- recurrences ------------------------------------------------------------

@lru_cache(maxsize=None)
def recur_ann(lam):
    """a^lam_{n,(n)} by the single-cycle recurrence."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 1:
        return RATONE
    if n < 1:
        raise ValueError("need n >= 1")
    total = RATZERO
    for i, li in enumerate(lam):
        part = RATZERO
        if li > 1:
            part = part + (ALPHA - 1) * (li - 1) * recur_ann(P.merge_down(lam, (li,), 1))
        for d in range(1, li - 1):
            part = part + recur_ann(P.split_up(lam, (li - 1 - d, d), 1))
        for j, lj in enumerate(lam):
            if j != i:
                part = part + ALPHA * lj * recur_ann(P.merge_down(lam, (li, lj), 1))
        total = total + part * li
    return total / n


@lru_cache(maxsize=None)
def recur_hnn(lam):
    """h~^lam_{n,(n)} = (n-1)! h^lam_{n,(n)} by its own recurrence."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 1:
        return RATONE
    total = RATZERO
    vals = sorted(set(lam))
    for i in vals:
        mu = P.merge_down(lam, (i,), 1)
        if mu is not None and i >= 2:
            total = total + (ALPHA - 1) * ((i - 1) ** 2 * mu.count(i - 1)) * recur_hnn(mu)
        for d in range(1, i - 1):
            e = i - 1 - d
            mu = P.split_up(lam, (e, d), 1)
            if mu is not None:
                total = total + ALPHA * (e * d * mult_count(mu, e, d)) * recur_hnn(mu)
    for i in vals:
        for j in vals:
            if mult_count(lam, i, j):
                mu = P.merge_down(lam, (i, j), 1)
                s = i + j - 1
                total = total + RatFunc.const(s * mu.count(s)) * recur_hnn(mu)
    return total


def _ones_base(lam):
    # nu = [1^k]: only the single-part lam survives
    return RATONE if len(lam) == 1 else RATZERO


def recur_ones(lam, rho, k, base=None):
    """a^lam_{n+k, rho u [1^k]} from the a_{n,rho} table (rho without parts 1).

    base(mu) supplies a^mu_{n,rho}; defaults to the recursive dispatcher.
    """
    lam, rho = tuple(lam), tuple(rho)
    if 1 in rho:
        raise ValueError("rho must not contain parts equal to 1")
    n = sum(rho)
    if sum(lam) != n + k:
        raise ValueError("weight mismatch")
    if not rho:
        return _ones_base(lam)
    if base is None:
        base = lambda mu: recursive_a(mu, rho)
    p = len(lam)
    if p > n:
        return RATZERO
    total = RATZERO
    for kappa in _bounded_compositions(k, [l - 1 for l in lam]):
        w = prod(comb(l, ki) for l, ki in zip(lam, kappa))
        total = total + base(P.subtract(lam, kappa)) * w
    return total


def _bounded_compositions(total, caps):
    """Tuples (k_1..k_p) with 0 <= k_i <= caps[i] summing to total."""
    if not caps:
        if total == 0:
            yield ()
        return
    room = sum(caps[1:])
    for first in range(max(0, total - room), min(caps[0], total) + 1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + rest


def recur_twos(lam, rho, l, base=None):
    """a~^lam_{n+2l, rho u [2^l]} by removing one 2-part at a time."""
    lam, rho = tuple(lam), tuple(rho)
    if 1 in rho or 2 in rho:
        raise ValueError("rho must not contain parts 1 or 2")
    if sum(lam) != sum(rho) + 2 * l:
        raise ValueError("weight mismatch")
    if base is None:
        base = lambda mu: recursive_tilde_a(mu, rho)
    return _twos(lam, rho, l, base)


def twos_terms(lam):
    """Linear combination (lam' -> coefficient) expressing a~^lam after one 2-part removal."""
    out = {}

    def put(mu, c):
        if mu is not None and c:
            out[mu] = out.get(mu, RATZERO) + c

    for li in lam:
        if li > 2:
            put(P.merge_down(lam, (li,), 2), (ALPHA - 1) * comb(li, 2))
    for i, j in itertools.combinations(range(len(lam)), 2):
        li, lj = lam[i], lam[j]
        if li + lj > 2:
            put(P.merge_down(lam, (li, lj), 2), ALPHA * (li * lj))
    half = RatFunc.const(1) / 2
    for li in lam:
        for d in range(1, li - 2):
            put(P.split_up(lam, (li - 2 - d, d), 2), half * li)
    return out


def _twos(lam, rho, l, base):
    if l == 0:
        return base(lam)
    if not rho and l == 1:
        # a~_{2,[2]} = a_{2,(2)}
        return recur_ann(lam)
    total = RATZERO
    for mu, c in twos_terms(lam).items():
        total = total + c * _twos(mu, rho, l - 1, base)
    return total


def recur_threes(lam, rho, m, base=None):
    """a~^lam_{n+3m, rho u [3^m]} by removing one 3-part at a time."""
    lam, rho = tuple(lam), tuple(rho)
    if any(p <= 3 for p in rho):
        raise ValueError("rho must not contain parts 1, 2 or 3")
    if sum(lam) != sum(rho) + 3 * m:
        raise ValueError("weight mismatch")
    if base is None:
        base = lambda mu: recursive_tilde_a(mu, rho)
    return _threes(lam, rho, m, base)


def threes_terms(lam):
    """Linear combination (lam' -> coefficient) expressing a~^lam after one 3-part removal."""
    out = {}

    def put(mu, c):
        if mu is not None and c:
            out[mu] = out.get(mu, RATZERO) + c

    b = ALPHA - 1
    idx = range(len(lam))
    for li in lam:
        if li > 3:
            put(P.merge_down(lam, (li,), 3), (2 * b * b + b + 1) * comb(li, 3))
    for i, j, k in itertools.combinations(idx, 3):
        li, lj, lk = lam[i], lam[j], lam[k]
        if li + lj + lk > 3:
            put(P.merge_down(lam, (li, lj, lk), 3), (2 * b * b + 4 * b + 2) * (li * lj * lk))
    third = RatFunc.const(1) / 3
    for li in lam:
        for d in range(1, li):
            for f in range(1, li):
                if li - 3 - d - f >= 1:
                    put(P.split_up(lam, (f, d, li - 3 - d - f), 3), third * li)
    for i, j in itertools.combinations(idx, 2):
        li, lj = lam[i], lam[j]
        if li + lj > 3:
            put(P.merge_down(lam, (li, lj), 3), (b * b + b) * (li * lj * (li + lj - 2)))
    for i, j in itertools.combinations(idx, 2):
        li, lj = lam[i], lam[j]
        rest = P.remove_parts(lam, (li, lj))
        for d in range(1, li + lj - 3):
            put(P.union(rest, (d, li + lj - 3 - d)), (b + 1) * (li * lj))
    for li in lam:
        for d in range(1, li - 3):
            put(P.split_up(lam, (d, li - 3 - d), 3), b * comb(li, 2))
    return out


def _threes(lam, rho, m, base):
    if m == 0:
        return base(lam)
    if not rho and m == 1:
        return recur_ann(lam)
    total = RATZERO
    for mu, c in threes_terms(lam).items():
        total = total + c * _threes(mu, rho, m - 1, base)
    return total


def in_recurrence_scope(nu):
    return sum(1 for p in nu if p > 3) <= 1


def _split_nu(nu):
    big = tuple(p for p in nu if p > 3)
    return big, nu.count(3), nu.count(2), nu.count(1)


@lru_cache(maxsize=None)
def recursive_tilde_a(lam, nu):
    """a~^lam_{n,nu} assembled purely from the recurrences (nu in scope)."""
    lam, nu = tuple(lam), tuple(nu)
    if sum(lam) != sum(nu):
        return RATZERO
    big, c3, c2, c1 = _split_nu(nu)
    if len(big) > 1:
        raise ValueError(f"{P.fmt(nu)} has more than one part larger than 3")
    if c1:
        rho = tuple(p for p in nu if p > 1)
        a = recur_ones(lam, rho, c1, base=lambda mu: recursive_a(mu, rho))
        return a * tilde_a_factor(nu)
    if c2:
        rho = tuple(p for p in nu if p > 2)
        return recur_twos(lam, rho, c2)
    if c3:
        return recur_threes(lam, big, c3)
    if not big:
        return RATONE if not lam else RATZERO
    return recur_ann(lam)


def recursive_a(lam, nu):
    nu = tuple(nu)
    if not nu:
        return RATONE if not lam else RATZERO
    return recursive_tilde_a(tuple(lam), nu) / tilde_a_factor(nu)


def recur_h2m(lam):
    """h~^lam_{2m,[2^m]} by its recurrence."""
    lam = tuple(lam)
    n = sum(lam)
    if n % 2:
        raise ValueError("weight must be even")
    return _h2m(lam)


@lru_cache(maxsize=None)
def _h2m(lam):
    n = sum(lam)
    if n == 2:
        return recur_ann(lam) * h_factor(lam)
    total = RATZERO
    vals = sorted(set(lam))
    for i in vals:
        mu = P.merge_down(lam, (i,), 2)
        if mu is not None and i > 2:
            total = total + (ALPHA - 1) * ((i - 1) * (i - 2) * mu.count(i - 2)) * _h2m(mu)
    for i in vals:
        for j in vals:
            if mult_count(lam, i, j) and i + j > 2:
                mu = P.merge_down(lam, (i, j), 2)
                s = i + j - 2
                total = total + RatFunc.const(s * mu.count(s)) * _h2m(mu)
    for i in vals:
        for d in range(1, i - 2):
            e = i - 2 - d
            mu = P.split_up(lam, (e, d), 2)
            total = total + ALPHA * (e * d * mult_count(mu, e, d)) * _h2m(mu)
    return total


def recur_h3m(lam):
    """h~^lam_{3m,[3^m]} by its recurrence."""
    lam = tuple(lam)
    if sum(lam) % 3:
        raise ValueError("weight must be a multiple of 3")
    return _h3m(lam)


def _h33(lam):
    return recur_ann(lam) * h_factor(lam) * 2


@lru_cache(maxsize=None)
def _h3m(lam):
    n = sum(lam)
    if n == 3:
        return _h33(lam)
    c1 = 3 * _h33((3,))
    c2 = _h33((2, 1)) / 2
    c3 = 6 * ALPHA * (recur_ann((2,)) * h_factor((2,))) / 2
    c4 = 6 * ALPHA * (recur_ann((1, 1)) * h_factor((1, 1))) / 2
    c5 = 2 * ALPHA * ALPHA
    c6 = _h33((1, 1, 1))
    vals = sorted(set(lam))
    total = RATZERO
    for i in vals:
        mu = P.merge_down(lam, (i,), 3)
        if mu is not None and i > 3:
            total = total + c1 * (comb(i - 1, 3) * mu.count(i - 3)) * _h3m(mu)
    for i in vals:
        for j in vals:
            if mult_count(lam, i, j) and i + j > 3:
                mu = P.merge_down(lam, (i, j), 3)
                s = i + j - 3
                total = total + c2 * ((s + 1) * s * mu.count(s)) * _h3m(mu)
    for i in vals:
        for d in range(1, i - 3):
            e = i - 3 - d
            mu = P.split_up(lam, (e, d), 3)
            total = total + c3 * ((i - 1) * e * d * mult_count(mu, e, d)) * _h3m(mu)
    for i in vals:
        for j in vals:
            if not mult_count(lam, i, j):
                continue
            rest = P.remove_parts(lam, (i, j))
            for d in range(1, i + j - 3):
                e = i + j - 3 - d
                mu = P.union(rest, (e, d))
                total = total + c4 * (e * d * mult_count(mu, e, d)) * _h3m(mu)
    for i in vals:
        for d in range(1, i):
            for f in range(1, i):
                e = i - 3 - d - f
                if e >= 1:
                    mu = P.split_up(lam, (e, d, f), 3)
                    total = total + c5 * (e * d * f * mult_count(mu, e, d, f)) * _h3m(mu)
    for i, j, k in itertools.product(vals, repeat=3):
        if mult_count(lam, i, j, k) and i + j + k > 3:
            mu = P.merge_down(lam, (i, j, k), 3)
            s = i + j + k - 3
            total = total + c6 * (s * mu.count(s)) * _h3m(mu)
    return total


# --- polynomiality / positivity / duality checks ---------------------------

def duality_holds(c, lam, n, nu):
    """alpha^l a(1/alpha) == (-alpha)^(-n+1+l+len(nu)) alpha^-l a(alpha), l = len(lam)."""
    l = len(lam)
    lhs = ALPHA ** l * c.invert_variable()
    e = -n + 1 + l + len(nu)
    rhs = (-ALPHA) ** e * ALPHA ** (-l) * c
    return lhs == rhs


def _int_poly_deg(x):
    """Degree of an integer polynomial, or None when x is not one."""
    if x.den != (1,):
        return None
    return x.degree()


def conjecture_report(n_max, n_min=1):
    """Integrality, degree, beta-positivity and duality checks for n_min <= n <= n_max."""
    violations = []
    checked = 0
    for n in range(n_min, n_max + 1):
        for nu in partitions_of(n):
            a_tab = coeff_table("a", n, nu)
            h_tab = h_from_a(a_tab)
            aut = P.aut_of(nu)
            nufac = prod(factorial(p) for p in nu)
            for lam in partitions_of(n):
                checked += 1
                a = a_tab[lam]
                h = h_tab[lam]
                scaled_a = a * (aut * P.class_size(lam))
                d = _int_poly_deg(scaled_a)
                if d is None or (a and d > n - len(nu)):
                    violations.append(("a-integrality", n, nu, lam, str(scaled_a)))
                scaled_h = h * (aut * nufac)
                d = _int_poly_deg(scaled_h)
                if d is None or (h and d > n + 1 - len(lam) - len(nu)):
                    violations.append(("h-integrality", n, nu, lam, str(scaled_h)))
                for tag, x in (("a-beta", a), ("h-beta", h)):
                    if not x.is_polynomial():
                        violations.append((tag, n, nu, lam, str(x)))
                        continue
                    bp = x.to_beta()
                    if not (bp.is_integer() and bp.is_nonnegative()):
                        violations.append((tag, n, nu, lam, bp.serialize()))
                if not duality_holds(a, lam, n, nu):
                    violations.append(("duality", n, nu, lam, str(a)))
    return {"n_max": n_max, "checked": checked, "violations": violations}
