"""Jack symmetric functions by Gram-Schmidt, the Cauchy-type series and its log.

Used as an independent oracle for the operator route: nothing here calls the
commutator tower except the identity suite, which checks relations between
the two worlds.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import partitions as P
from .partitions import partitions_of, z_of
from .powersum import (PSFun, E2, D_alpha, build_commutator_tower, inner, partial)
from .ratfunc import ALPHA, RATONE, RATZERO, RatFunc


@lru_cache(maxsize=None)
def _r_entry(mu, lam):
    """Number of maps f: parts(mu) -> positions(lam) with fibre sums equal to lam."""
    return _count_fill(tuple(mu), tuple(lam))


def _count_fill(mu, targets):
    if not mu:
        return 1 if all(t == 0 for t in targets) else 0
    first, rest = mu[0], mu[1:]
    total = 0
    for i, t in enumerate(targets):
        if t >= first:
            nt = targets[:i] + (t - first,) + targets[i + 1:]
            total += _count_fill(rest, nt)
    return total


@lru_cache(maxsize=None)
def transition(n):
    """(R, S): p = R m and m = S p as dict-of-dict Fractions."""
    parts = list(partitions_of(n))
    R = {mu: {} for mu in parts}
    for mu in parts:
        for lam in parts:
            if P.dominates(lam, mu):
                c = _r_entry(mu, lam)
                if c:
                    R[mu][lam] = c
    # R is lower triangular when rows/cols follow dominance; solve for S column
    # by column with a linear extension (reverse-lex order is one).
    order = parts  # decreasing in reverse lex, compatible with dominance
    S = {lam: {} for lam in parts}
    # m_lam = (p_lam - sum_{nu > lam} R[lam][nu] m_nu) / R[lam][lam]
    for lam in order:
        acc = {lam: Fraction(1)}
        for nu, c in R[lam].items():
            if nu != lam:
                for rho, s in S[nu].items():
                    acc[rho] = acc.get(rho, 0) - c * s
        diag = R[lam][lam]
        S[lam] = {rho: v / diag for rho, v in acc.items() if v}
    return R, S


def monomial(lam):
    """m_lam in the power-sum basis."""
    _, S = transition(sum(lam))
    return PSFun({mu: RatFunc.const(c) for mu, c in S[tuple(lam)].items()})


def to_monomial(f, n):
    """Coefficients of a homogeneous degree-n PSFun in the monomial basis."""
    R, _ = transition(n)
    out = {}
    for mu, c in f.items():
        for lam, r in R[mu].items():
            v = out.get(lam, RATZERO) + c * r
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
    return out


class JackExpansion:
    def __init__(self, lam, J, norm):
        self.lam = lam
        self.J = J
        self.norm = norm

    @property
    def theta(self):
        return self.J.terms

    def __repr__(self):
        return f"JackExpansion({P.fmt(self.lam)})"


@lru_cache(maxsize=None)
def jack_gram_schmidt(n, scale=None):
    """Jack functions J_lam, lam |- n, normalized so [m_{1^n}] J = n!.

    scale, if given, is a callable lam -> RatFunc applied afterwards; used to
    test that the series extraction does not depend on normalization.
    """
    parts = list(partitions_of(n))
    ascending = list(reversed(parts))
    mons = {lam: monomial(lam) for lam in parts}
    basis = []
    out = {}
    for lam in ascending:
        f = mons[lam]
        for mu, g, gg in basis:
            c = inner(f, g)
            if c:
                f = f - g.scale(c / gg)
        basis.append((lam, f, inner(f, f)))
    one = tuple([1] * n)
    for lam, f, gg in basis:
        lead = to_monomial(f, n).get(one, RATZERO)
        c = RatFunc.const(factorial(n)) / lead
        J = f.scale(c)
        if scale is not None:
            J = J.scale(scale(lam))
        out[lam] = JackExpansion(lam, J, inner(J, J))
    return out


def jack(lam):
    lam = tuple(lam)
    if not lam:
        return JackExpansion((), PSFun.p((), 1), RATONE)
    return jack_gram_schmidt(sum(lam))[lam]


def triangularity_defects(n):
    """Pairs (lam, mu) with [m_mu] J_lam != 0 although mu is not dominated by lam."""
    bad = []
    for lam, e in jack_gram_schmidt(n).items():
        for mu in to_monomial(e.J, n):
            if not P.dominates(lam, mu):
                bad.append((lam, mu))
    return bad


def theta(lam, mu):
    return jack(lam).J[tuple(mu)]


def eigenvalue_index(n):
    return tuple([2] + [1] * (n - 2)) if n >= 2 else None


def theta_eig(lam):
    """theta^lam_{[1^{n-2} 2]}, zero for n < 2."""
    idx = eigenvalue_index(sum(lam))
    return theta(lam, idx) if idx else RATZERO


# --- the series Phi and Psi -------------------------------------------------

def _tri_mul(a, b):
    out = {}
    for (l1, m1, n1), c1 in a.items():
        for (l2, m2, n2), c2 in b.items():
            key = (P.union(l1, l2), P.union(m1, m2), P.union(n1, n2))
            v = out.get(key, RATZERO) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@lru_cache(maxsize=None)
def phi_component(d, mu_filter=None):
    """Degree-d part of Phi as {(lam, mu, nu): coefficient}."""
    if d == 0:
        return {((), (), ()): RATONE}
    jacks = jack_gram_schmidt(d)
    parts = list(partitions_of(d))
    mus = parts if mu_filter is None else [mu_filter]
    out = {}
    for g, e in jacks.items():
        th = e.theta
        inv = RATONE / e.norm
        for mu in mus:
            tm = th.get(mu)
            if not tm:
                continue
            tm = tm * inv
            for lam, tl in th.items():
                tlm = tl * tm
                for nu, tn in th.items():
                    key = (lam, mu, nu)
                    v = out.get(key, RATZERO) + tlm * tn
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def phi_a(n, mu=None):
    """a^lam_{mu,nu} from Phi: dict (lam, mu, nu) -> RatFunc (mu fixed if given)."""
    mu = None if mu is None else tuple(mu)
    comp = phi_component(n, mu)
    return {k: c * z_of(k[0]) * ALPHA ** len(k[0]) for k, c in comp.items()}


@lru_cache(maxsize=None)
def log_phi_component(d):
    """Degree-d part of log Phi via d L_d = d Phi_d - sum_{k<d} k L_k Phi_{d-k}."""
    acc = {k: c * d for k, c in phi_component(d).items()}
    for k in range(1, d):
        prod = _tri_mul(log_phi_component(k), phi_component(d - k))
        for key, c in prod.items():
            v = acc.get(key, RATZERO) - c * k
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return {key: c / d for key, c in acc.items()}


def psi_h(n):
    """h^lam_{mu,nu}: coefficients of alpha t d/dt log Phi in degree n."""
    return {k: c * ALPHA * n for k, c in log_phi_component(n).items()}


def phi_extract(n, nu=None):
    """a^lam_{(n),nu} for all lam (nu fixed if given) as {(lam, nu): RatFunc}."""
    data = phi_a(n, (n,))
    out = {}
    for (lam, mu, nu2), c in data.items():
        if nu is None or nu2 == tuple(nu):
            out[(lam, nu2)] = c
    return out


def psi_extract(n):
    data = psi_h(n)
    return {(lam, nu): c for (lam, mu, nu), c in data.items() if mu == (n,)}


# --- identity suite ------------------------------------------------------------

def _bilinear(pairs):
    """sum of coefficient * f(x) g(y) as {(lam_x, lam_y): RatFunc}."""
    out = {}
    for c, fx, gy in pairs:
        if not c:
            continue
        for lx, cx in fx.items():
            cc = c * cx
            for ly, cy in gy.items():
                key = (lx, ly)
                v = out.get(key, RATZERO) + cc * cy
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def _theta_n(lam):
    return theta(lam, (sum(lam),))


def _diff(a, b):
    keys = set(a) | set(b)
    return {k: a.get(k, RATZERO) - b.get(k, RATZERO) for k in keys
            if a.get(k, RATZERO) != b.get(k, RATZERO)}


def identity_suite(n_max):
    """Jack identities up to degree n_max.

    eigenvalue        D J = theta_eig J
    theta-recursion   theta_(n) of gamma + box from theta_(n) of gamma
    delta-e2perp      Delta on the small side matches E2_perp on the large side
    p1perp-e2         alpha d/dp_1 on the large side matches E2 on the small side
    omega-pi(k)       Omega_k on the small side matches Pi_k on the large side, k <= 3
    Pi_k              Pi_k = k! d/dp_k
    """
    results = []
    T = build_commutator_tower(n_max + 1)
    D = D_alpha(n_max)

    def record(name, deg, ok, detail=None):
        results.append({"identity": name, "degree": deg, "ok": ok,
                        "detail": None if ok else detail})

    for n in range(1, n_max + 1):
        for lam in partitions_of(n):
            J = jack(lam).J
            lhs = D(J)
            rhs = J.scale(theta_eig(lam))
            record("eigenvalue", n, lhs == rhs, {"lam": lam, "diff": _diff(lhs.terms, rhs.terms)})
    for n in range(1, n_max):
        for g in partitions_of(n):
            th_g = _theta_n(g)
            eg = theta_eig(g)
            for i in range(len(g) + 1):
                up = list(g) + [0]
                up[i] += 1
                if i > 0 and up[i] > up[i - 1]:
                    continue
                gi = P.normalize(up)
                lhs = _theta_n(gi)
                rhs = th_g * (theta_eig(gi) - eg)
                record("theta-recursion", n + 1, lhs == rhs, {"gamma": g, "i": i + 1})
    E2p = T.e2_perp
    E2op = E2(n_max + 1)
    p1perp = partial(1, n_max + 1).scaled(ALPHA)
    for n in range(1, n_max):
        big = [(jack(r), _theta_n(r)) for r in partitions_of(n + 1)]
        small = [(jack(g), _theta_n(g)) for g in partitions_of(n)]
        # Delta against E2_perp
        lhs = _bilinear([(t / e.norm, e.J, E2p(e.J)) for e, t in big])
        rhs = _bilinear([(t / e.norm, T.delta(e.J), e.J) for e, t in small])
        record("delta-e2perp", n, lhs == rhs, {"diff": _diff(lhs, rhs)})
        # d/dp_1 against E2
        lhs = _bilinear([(t / e.norm, e.J, p1perp(e.J)) for e, t in big])
        rhs = _bilinear([(t * ALPHA / e.norm, E2op(e.J), e.J) for e, t in small])
        record("p1perp-e2", n, lhs == rhs, {"diff": _diff(lhs, rhs)})
    for k in range(1, 4):
        for n in range(1, n_max - k + 1):
            big = [(jack(r), _theta_n(r)) for r in partitions_of(n + k)]
            small = [(jack(g), _theta_n(g)) for g in partitions_of(n)]
            lhs = _bilinear([(t / e.norm, e.J, T.pi(k)(e.J)) for e, t in big])
            rhs = _bilinear([(t / e.norm, T.omega(k)(e.J), e.J) for e, t in small])
            record(f"omega-pi(k={k})", n + k, lhs == rhs, {"diff": _diff(lhs, rhs)})
    from .powersum import operators_equal
    for k in range(1, n_max + 1):
        ok, where = operators_equal(T.pi(k), partial(k, T.N, factorial(k)), n_max)
        record(f"Pi{k}", n_max, ok, where)
    failures = [r for r in results if not r["ok"]]
    return {"n_max": n_max, "checks": len(results), "failures": failures}


def orthogonality_defects(n):
    js = jack_gram_schmidt(n)
    bad = []
    keys = list(js)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if inner(js[a].J, js[b].J):
                bad.append((a, b))
    return bad
