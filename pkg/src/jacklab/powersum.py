"""Symmetric functions in the power-sum basis and the differential-operator calculus.

A PSFun is a sparse map partition -> RatFunc.  Operators are linear maps given
column by column (image of each p_lam); columns are computed lazily and cached,
so compositions and commutators only pay for the degrees that are touched.
"""

import itertools
import json
from collections import Counter
from math import factorial

from .partitions import mult_count, partitions_of, remove_parts, union, z_of
from .ratfunc import ALPHA, RATONE, RATZERO, RatFunc, ratfunc


def _acc(d, key, c):
    v = d.get(key)
    v = c if v is None else v + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class PSFun:
    """Finite linear combination of power sums p_lam with RatFunc coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for lam, c in terms.items():
                c = ratfunc(c)
                if c:
                    self.terms[tuple(lam)] = c

    @classmethod
    def p(cls, lam, coeff=1):
        return cls({tuple(lam): coeff})

    @classmethod
    def _raw(cls, terms):
        out = cls.__new__(cls)
        out.terms = terms
        return out

    def __getitem__(self, lam):
        return self.terms.get(tuple(lam), RATZERO)

    def coeff(self, lam):
        return self[lam]

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({sum(lam) for lam in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def component(self, d):
        return PSFun._raw({lam: c for lam, c in self.terms.items() if sum(lam) == d})

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            _acc(out, lam, c)
        return PSFun._raw(out)

    def __neg__(self):
        return PSFun._raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = ratfunc(c)
        if not c:
            return PSFun()
        return PSFun._raw({lam: v * c for lam, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PSFun):
            out = {}
            for l1, c1 in self.terms.items():
                for l2, c2 in other.terms.items():
                    _acc(out, union(l1, l2), c1 * c2)
            return PSFun._raw(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PSFun):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"PSFun({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for lam in sorted(self.terms, key=lambda l: (-sum(l), l), reverse=False):
            bits.append(f"({self.terms[lam]})*p[{','.join(map(str, lam))}]")
        return " + ".join(bits)

    def to_json(self):
        return {",".join(map(str, lam)): str(c) for lam, c in sorted(self.terms.items())}


def inner(f, g, alpha=ALPHA):
    """Deformed Hall product <p_lam, p_mu> = alpha^len(lam) z_lam delta."""
    out = RATZERO
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            out = out + c * d * alpha ** len(lam) * z_of(lam)
    return out


class OperatorDomainError(ValueError):
    pass


class GradedOperator:
    """Linear operator shifting degree by a fixed amount, truncated at max_degree.

    The action on p_lam is produced by col_fn(lam) -> dict and cached.
    """

    def __init__(self, shift, col_fn, max_degree, name="op"):
        self.shift = shift
        self.max_degree = max_degree
        self.name = name
        self._col_fn = col_fn
        self._cols = {}

    def defined_on(self, d):
        return 0 <= d <= self.max_degree and 0 <= d + self.shift <= self.max_degree

    def column(self, lam):
        lam = tuple(lam)
        col = self._cols.get(lam)
        if col is None:
            if not self.defined_on(sum(lam)):
                raise OperatorDomainError(
                    f"{self.name}: degree {sum(lam)} outside truncation {self.max_degree}")
            col = self._col_fn(lam)
            self._cols[lam] = col
        return col

    def apply(self, f):
        out = {}
        for lam, c in f.terms.items():
            for mu, e in self.column(lam).items():
                _acc(out, mu, c * e)
        return PSFun._raw(out)

    __call__ = apply

    def compose(self, other):
        """self after other."""
        if self.max_degree != other.max_degree:
            raise ValueError("truncation mismatch")

        def col(lam):
            return self.apply(PSFun._raw(dict(other.column(lam)))).terms

        return GradedOperator(self.shift + other.shift, col, self.max_degree,
                              f"({self.name}*{other.name})")

    def __matmul__(self, other):
        return self.compose(other)

    def combine(self, other, sign=1):
        if self.shift != other.shift:
            raise ValueError("shift mismatch")

        def col(lam):
            out = dict(self.column(lam))
            for mu, c in other.column(lam).items():
                _acc(out, mu, c if sign > 0 else -c)
            return out

        op = "+" if sign > 0 else "-"
        return GradedOperator(self.shift, col, self.max_degree,
                              f"({self.name}{op}{other.name})")

    def __add__(self, other):
        return self.combine(other, 1)

    def __sub__(self, other):
        return self.combine(other, -1)

    def scaled(self, c):
        c = ratfunc(c)

        def col(lam):
            return {mu: v * c for mu, v in self.column(lam).items()} if c else {}

        return GradedOperator(self.shift, col, self.max_degree, f"{c}*{self.name}")

    def domain(self):
        return [d for d in range(self.max_degree + 1) if self.defined_on(d)]

    def materialize(self, up_to=None):
        top = self.max_degree if up_to is None else up_to
        for d in self.domain():
            if d > top:
                break
            for lam in partitions_of(d):
                self.column(lam)
        return self

    def to_json(self, up_to=None):
        """degree -> list of [input, output, coefficient string]."""
        self.materialize(up_to)
        out = {}
        for lam in sorted(self._cols, key=lambda l: (sum(l), l)):
            rows = out.setdefault(str(sum(lam)), [])
            for mu, c in sorted(self._cols[lam].items()):
                rows.append([",".join(map(str, lam)), ",".join(map(str, mu)), str(c)])
        return json.dumps({"name": self.name, "shift": self.shift, "columns": out},
                          sort_keys=True)


def commutator(a, b):
    g = (a @ b) - (b @ a)
    g.name = f"[{a.name},{b.name}]"
    return g


def operators_equal(a, b, up_to):
    """Compare two operators on every p_lam with |lam| <= up_to.

    Returns (True, None) or (False, (lam, diff)) for the first mismatch.
    """
    if a.shift != b.shift:
        return False, ("shift", a.shift, b.shift)
    for d in range(up_to + 1):
        if not (a.defined_on(d) and b.defined_on(d)):
            continue
        for lam in partitions_of(d):
            ca, cb = a.column(lam), b.column(lam)
            if ca != cb:
                diff = dict(ca)
                for mu, c in cb.items():
                    _acc(diff, mu, -c)
                return False, (lam, diff)
    return True, None


# --- elementary column builders -------------------------------------------

def _values(lam):
    return sorted(set(lam))


def _drop(lam, parts):
    return remove_parts(lam, parts)


def _add(rest, parts):
    return union(rest, tuple(p for p in parts if p))


def d_alpha_column(lam):
    out = {}
    half = RatFunc((1,), (2,))
    cnt = Counter(lam)
    # (alpha-1)/2 sum i(i-1) p_i d_i
    diag = sum(i * (i - 1) * m for i, m in cnt.items())
    if diag:
        _acc(out, lam, (ALPHA - 1) * half * diag)
    # alpha/2 sum ij p_{i+j} d_i d_j
    vals = _values(lam)
    for i in vals:
        for j in vals:
            c = mult_count(lam, i, j)
            if c:
                _acc(out, _add(_drop(lam, (i, j)), (i + j,)), ALPHA * half * (c * i * j))
    # 1/2 sum (i+j) p_i p_j d_{i+j}
    for s, m in cnt.items():
        rest = _drop(lam, (s,))
        for i in range(1, s):
            _acc(out, _add(rest, (i, s - i)), half * (s * m))
    return out


def p1_over_alpha_column(lam):
    return {union(lam, (1,)): RATONE / ALPHA}


def e2_column(lam):
    out = {}
    for i, m in Counter(lam).items():
        _acc(out, _add(_drop(lam, (i,)), (i + 1,)), RatFunc.const(i * m))
    return out


def e2_perp_column(lam):
    out = {}
    for s, m in Counter(lam).items():
        if s >= 2:
            _acc(out, _add(_drop(lam, (s,)), (s - 1,)), RatFunc.const(s * m))
    return out


def partial_column(k, scale=1):
    def col(lam):
        m = lam.count(k)
        if not m:
            return {}
        return {_drop(lam, (k,)): RatFunc.const(scale * m)}
    return col


def D_alpha(N):
    return GradedOperator(0, d_alpha_column, N, "D")


def p1_over_alpha(N):
    return GradedOperator(1, p1_over_alpha_column, N, "p1/a")


def E2(N):
    return GradedOperator(1, e2_column, N, "E2")


def E2_perp(N):
    return GradedOperator(-1, e2_perp_column, N, "E2perp")


def partial(k, N, scale=1):
    name = f"d{k}" if scale == 1 else f"{scale}*d{k}"
    return GradedOperator(-k, partial_column(k, scale), N, name)


def p1_perp(N):
    """Adjoint of multiplication by p1: alpha times the p1 derivative."""
    return partial(1, N).scaled(ALPHA)


def apply_D_alpha(f, N=None):
    N = max(f.degrees() or [0]) if N is None else N
    return D_alpha(N).apply(f)


def apply_E2(f, N=None):
    N = max(f.degrees() or [0]) + 1 if N is None else N
    return E2(N).apply(f)


def apply_E2_perp(f, N=None):
    N = max(f.degrees() or [0]) if N is None else N
    return E2_perp(N).apply(f)


# --- closed forms of the first three Omegas -------------------------------

def _compositions(total, parts):
    """Ordered tuples of `parts` positive ints summing to total."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def omega1_column(lam):
    return e2_column(lam)


def omega2_column(lam):
    out = {}
    cnt = Counter(lam)
    vals = _values(lam)
    # (alpha-1) sum (i-1)(i-2) p_i d_{i-2}
    for s, m in cnt.items():
        i = s + 2
        _acc(out, _add(_drop(lam, (s,)), (i,)), (ALPHA - 1) * ((i - 1) * (i - 2) * m))
    # sum (i+j-2) p_i p_j d_{i+j-2}
    for s, m in cnt.items():
        rest = _drop(lam, (s,))
        for i, j in _compositions(s + 2, 2):
            _acc(out, _add(rest, (i, j)), RatFunc.const(s * m))
    # alpha sum ij p_{i+j+2} d_i d_j
    for i in vals:
        for j in vals:
            c = mult_count(lam, i, j)
            if c:
                _acc(out, _add(_drop(lam, (i, j)), (i + j + 2,)), ALPHA * (c * i * j))
    return out


def omega3_column(lam):
    out = {}
    cnt = Counter(lam)
    vals = _values(lam)
    b = ALPHA - 1
    c1 = 2 * b * b + ALPHA
    for s, m in cnt.items():
        i = s + 3
        _acc(out, _add(_drop(lam, (s,)), (i,)), c1 * ((i - 1) * (i - 2) * (i - 3) * m))
    for s, m in cnt.items():
        rest = _drop(lam, (s,))
        for i, j in _compositions(s + 3, 2):
            _acc(out, _add(rest, (i, j)), 3 * b * ((s + 1) * s * m))
    for i in vals:
        for j in vals:
            c = mult_count(lam, i, j)
            if not c:
                continue
            rest = _drop(lam, (i, j))
            _acc(out, _add(rest, (i + j + 3,)), 3 * ALPHA * b * (c * i * j * (i + j + 2)))
            for k in range(1, i + j + 3):
                _acc(out, _add(rest, (i + j - k + 3, k)), 3 * ALPHA * (c * i * j))
    for i, j, k in itertools.product(vals, repeat=3):
        c = mult_count(lam, i, j, k)
        if c:
            _acc(out, _add(_drop(lam, (i, j, k)), (i + j + k + 3,)),
                 2 * ALPHA * ALPHA * (c * i * j * k))
    for s, m in cnt.items():
        rest = _drop(lam, (s,))
        for trip in _compositions(s + 3, 3):
            _acc(out, _add(rest, trip), RatFunc.const(2 * s * m))
    return out


_CLOSED = {1: omega1_column, 2: omega2_column, 3: omega3_column}


def omega_closed(k, N):
    if k not in _CLOSED:
        raise ValueError("closed forms are available for k = 1, 2, 3 only")
    return GradedOperator(k, _CLOSED[k], N, f"Omega{k}_closed")


class Tower:
    """D, Delta, Omega_k and Pi_k on degrees up to N, built from commutators."""

    def __init__(self, N):
        self.N = N
        self.D = D_alpha(N)
        self.p1a = p1_over_alpha(N)
        self.e2_perp = E2_perp(N)
        self._omega = {1: commutator(self.D, self.p1a)}
        self._omega[1].name = "Omega1"
        self.delta = commutator(self.D, self._omega[1])
        self.delta.name = "Delta"
        self._pi = {1: partial(1, N)}
        self._pi[1].name = "Pi1"

    def _check(self, k):
        if k < 1 or k > self.N:
            raise OperatorDomainError(f"index {k} outside truncation {self.N}")

    def omega(self, k):
        self._check(k)
        if k not in self._omega:
            prev = self.omega(k - 1)
            op = commutator(self.delta, prev)
            op.name = f"Omega{k}"
            self._omega[k] = op
        return self._omega[k]

    def pi(self, k):
        self._check(k)
        if k not in self._pi:
            op = commutator(self.pi(k - 1), self.e2_perp)
            op.name = f"Pi{k}"
            self._pi[k] = op
        return self._pi[k]


def build_commutator_tower(N):
    if N < 1:
        raise ValueError("N must be at least 1")
    return Tower(N)


def operator_identity_report(degree=10, pi_max=5):
    """Closed Omega_2, Omega_3 against the commutator tower, and Pi_k = k! d/dp_k."""
    T = build_commutator_tower(degree + 3)
    checks = []
    for k in (1, 2, 3):
        ok, where = operators_equal(omega_closed(k, T.N), T.omega(k), degree)
        checks.append({"identity": f"Omega{k} closed form", "ok": ok,
                       "first_difference": None if ok else _where(where)})
    for k in range(1, pi_max + 1):
        ok, where = operators_equal(T.pi(k), partial(k, T.N, factorial(k)), degree)
        checks.append({"identity": f"Pi{k} = {k}! d/dp{k}", "ok": ok,
                       "first_difference": None if ok else _where(where)})
    return {"degree": degree, "ok": all(c["ok"] for c in checks), "checks": checks}


def _where(where):
    if where[0] == "shift":
        return {"shift": list(where[1:])}
    lam, diff = where
    return {"lambda": list(lam),
            "difference": {",".join(map(str, mu)): str(c) for mu, c in sorted(diff.items())}}
