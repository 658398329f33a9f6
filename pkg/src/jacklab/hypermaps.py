"""Labelled star hypermaps as rotation systems with twisted edges.

Edges are 0..n-1 (label minus one); edge 0 is the root.  Black vertices are
the consecutive blocks of edge labels given by `degs`.  A map is stored as

    white   cyclic order of all edges at the white vertex, starting at 0
    black   one cyclic order per block, each starting at its smallest edge
    twist   one bit per edge

The white vertex keeps a fixed local orientation (it carries the root), so
the only equivalence is flipping a black vertex: reverse its rotation and
toggle the twists of its edges.  The canonical form has twist 0 on the
smallest edge of every block.
"""

import itertools
import json
from collections import Counter, defaultdict
from functools import lru_cache
from math import factorial

from . import partitions as P

LEAF, CROSS_BORDER, BORDER, HANDLE = "leaf", "cross-border", "border", "handle"
ENUM_BUDGET = 8


class BudgetExceeded(ValueError):
    pass


def _blocks(degs):
    out = []
    start = 0
    for d in degs:
        out.append(range(start, start + d))
        start += d
    return out


def _rotate_to_min(rot):
    i = rot.index(min(rot))
    return tuple(rot[i:] + rot[:i])


class StarHypermap:
    __slots__ = ("degs", "white", "black", "twist", "_faces", "_orient")

    def __init__(self, degs, white, black, twist, canonical=False):
        self.degs = tuple(degs)
        self.white = tuple(white)
        self.black = tuple(tuple(r) for r in black)
        self.twist = tuple(twist)
        self._faces = None
        self._orient = None
        if not canonical:
            self._canonicalize()

    def _canonicalize(self):
        n = len(self.twist)
        if sorted(self.white) != list(range(n)):
            raise ValueError("white rotation must list every edge once")
        if sum(self.degs) != n or len(self.black) != len(self.degs):
            raise ValueError("black rotations do not match degrees")
        twist = list(self.twist)
        black = []
        for blk, rot in zip(_blocks(self.degs), self.black):
            if sorted(rot) != list(blk):
                raise ValueError(f"black rotation {rot} does not match block {list(blk)}")
            rot = list(rot)
            if twist[blk.start]:
                for e in blk:
                    twist[e] ^= 1
                rot.reverse()
            black.append(_rotate_to_min(rot))
        self.white = _rotate_to_min(list(self.white)) if n else ()
        self.black = tuple(black)
        self.twist = tuple(twist)

    @property
    def n(self):
        return len(self.twist)

    @property
    def nu(self):
        return P.normalize(self.degs)

    def key(self):
        return (self.degs, self.white, self.black, self.twist)

    def __eq__(self, other):
        return isinstance(other, StarHypermap) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"StarHypermap{self.key()}"

    def to_dict(self):
        return {
            "degrees": list(self.degs),
            "white": [e + 1 for e in self.white],
            "black": [[e + 1 for e in r] for r in self.black],
            "twists": list(self.twist),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["degrees"], [e - 1 for e in d["white"]],
                   [[e - 1 for e in r] for r in d["black"]], d["twists"])

    # flags (edge, end, side) -> 4 e + 2 end + side; end 0 white, 1 black
    def _involutions(self):
        n = self.n
        nxt = [[0] * n, [0] * n]
        prv = [[0] * n, [0] * n]
        for end, rots in ((0, (self.white,)), (1, self.black)):
            for rot in rots:
                k = len(rot)
                for i, e in enumerate(rot):
                    nxt[end][e] = rot[(i + 1) % k]
                    prv[end][e] = rot[i - 1]
        t0 = [0] * (4 * n)
        t1 = [0] * (4 * n)
        for e in range(n):
            for end in (0, 1):
                for s in (0, 1):
                    f = 4 * e + 2 * end + s
                    t0[f] = 4 * e + 2 * (1 - end) + (s ^ 1 ^ self.twist[e])
                    if s:
                        t1[f] = 4 * nxt[end][e] + 2 * end
                    else:
                        t1[f] = 4 * prv[end][e] + 2 * end + 1
        return t0, t1

    def faces(self):
        """Face orbits as sorted flag lists."""
        if self._faces is None:
            t0, t1 = self._involutions()
            seen = [False] * len(t0)
            out = []
            for s in range(len(t0)):
                if seen[s]:
                    continue
                orb = []
                stack = [s]
                seen[s] = True
                while stack:
                    f = stack.pop()
                    orb.append(f)
                    for g in (t0[f], t1[f]):
                        if not seen[g]:
                            seen[g] = True
                            stack.append(g)
                out.append(sorted(orb))
            self._faces = out
        return self._faces

    def face_degrees(self):
        return P.normalize(len(f) // 4 for f in self.faces())

    def is_orientable(self):
        if self._orient is None:
            t0, t1 = self._involutions()
            col = [-1] * len(t0)
            ok = True
            for s in range(len(t0)):
                if col[s] >= 0:
                    continue
                col[s] = 0
                stack = [s]
                while stack and ok:
                    f = stack.pop()
                    for g in (t0[f], t1[f], f ^ 1):
                        if col[g] < 0:
                            col[g] = col[f] ^ 1
                            stack.append(g)
                        elif col[g] == col[f]:
                            ok = False
                            break
                if not ok:
                    break
            self._orient = ok
        return self._orient

    def euler_characteristic(self):
        return 1 + len(self.degs) - self.n + len(self.faces())


def face_degrees(M):
    return M.face_degrees()


def is_orientable(M):
    return M.is_orientable()


def delete_root(M):
    """Remove edge 0, shift labels down by one, re-canonicalize."""
    if M.n == 0:
        raise ValueError("empty map has no root")
    degs = list(M.degs)
    black = [list(r) for r in M.black]
    black[0].remove(0)
    degs[0] -= 1
    if degs[0] == 0:
        degs.pop(0)
        black.pop(0)
    white = [e - 1 for e in M.white if e]
    black = [[e - 1 for e in r] for r in black]
    return StarHypermap(degs, white, black, M.twist[1:])


def twist_root(M, check=True):
    if check and classify_root(M) != HANDLE:
        raise ValueError("twist_root is defined for handle roots only")
    tw = list(M.twist)
    tw[0] ^= 1
    return StarHypermap(M.degs, M.white, M.black, tw)


def classify_root(M):
    if M.degs[0] == 1:
        return LEAF
    a = len(M.faces())
    b = len(delete_root(M).faces())
    if b == a:
        return CROSS_BORDER
    if b == a - 1:
        return BORDER
    if b == a + 1:
        return HANDLE
    raise AssertionError(f"face count jumped from {a} to {b}")


def _handle_gets_extra(M):
    """Which member of {M, tau(M)} carries the extra 1 for a handle root.

    The orientable member (at most one exists) gets 0; otherwise the member
    with the lexicographically smaller canonical encoding gets 0.
    """
    T = twist_root(M, check=False)
    if M.is_orientable():
        return 0
    if T.is_orientable():
        return 1
    return 0 if M.key() < T.key() else 1


_THETA = {}


def theta(M, trace=None):
    """Measure of non-orientability by iterated root deletion."""
    if trace is None:
        return _theta_cached(M)
    total = 0
    while M.n:
        cls = classify_root(M)
        add = 0
        if cls == CROSS_BORDER:
            add = 1
        elif cls == HANDLE:
            add = _handle_gets_extra(M)
        trace.append((cls, add))
        total += add
        M = delete_root(M)
    return total


def _theta_cached(M):
    k = M.key()
    v = _THETA.get(k)
    if v is not None:
        return v
    if M.n == 0:
        return 0
    Mp = delete_root(M)
    base = _theta_cached(Mp)
    if M.degs[0] == 1:
        v = base
    else:
        a, b = len(M.faces()), len(Mp.faces())
        if b == a:
            v = base + 1
        elif b == a - 1:
            v = base
        elif b == a + 1:
            v = base + _handle_gets_extra(M)
        else:
            raise AssertionError("face count jumped by more than one")
    _THETA[k] = v
    return v


def enumerate_labelled(n, nu=None, degs=None):
    """All labelled star hypermaps with black degrees given as a rectangle nu = [k^m]
    (or an explicit block composition `degs`), one canonical representative each."""
    if degs is None:
        nu = P.as_partition(nu)
        if len(set(nu)) != 1:
            raise ValueError("labelled enumeration is for rectangular nu = [k^m]")
        degs = nu
    degs = tuple(degs)
    if sum(degs) != n:
        raise ValueError("degrees must sum to n")
    if n > ENUM_BUDGET:
        raise BudgetExceeded(f"n={n} exceeds enumeration budget {ENUM_BUDGET}")
    blocks = _blocks(degs)
    free = [e for blk in blocks for e in list(blk)[1:]]
    black_choices = [
        [(blk.start,) + p for p in itertools.permutations(list(blk)[1:])]
        for blk in blocks
    ]
    for rest in itertools.permutations(range(1, n)):
        white = (0,) + rest
        for black in itertools.product(*black_choices):
            for bits in itertools.product((0, 1), repeat=len(free)):
                tw = [0] * n
                for e, t in zip(free, bits):
                    tw[e] = t
                yield StarHypermap(degs, white, black, tw, canonical=True)


def rectangle_census(k, m):
    """{lam: Counter(theta)} plus orientable and total counts per lam."""
    n = k * m
    polys = defaultdict(Counter)
    orient = Counter()
    for M in enumerate_labelled(n, (k,) * m):
        lam = M.face_degrees()
        polys[lam][theta(M)] += 1
        orient[lam] += M.is_orientable()
    return polys, orient


def _as_list(counter):
    if not counter:
        return []
    top = max(counter)
    return [counter[i] for i in range(top + 1)]


def theta_sum_check(k, m):
    """Compare sum beta^theta over L~^lam_{[k^m]} with h~(1+beta) for every lam."""
    from .coefficients import coeff_table

    n = k * m
    nu = (k,) * m
    table = coeff_table("h~", n, nu)
    zero_bad = []
    range_bad = []
    for M in enumerate_labelled(n, nu):
        t = theta(M)
        if (t == 0) != M.is_orientable():
            zero_bad.append(M)
        if not 0 <= t <= n + 1 - len(M.face_degrees()) - m:
            range_bad.append(M)
    polys, orient = rectangle_census(k, m)
    rows = []
    for lam in P.partitions_of(n):
        got = _as_list(polys.get(lam, Counter()))
        want = [int(c) for c in table.entries[lam].to_beta().coeffs]
        rows.append({"lambda": lam, "sum": got, "expected": want,
                     "orientable": orient[lam], "total": sum(got),
                     "ok": got == want})
    return {
        "k": k, "m": m, "n": n,
        "ok": all(r["ok"] for r in rows) and not zero_bad and not range_bad,
        "rows": rows,
        "zero_set_violations": [M.to_dict() for M in zero_bad[:3]],
        "range_violations": [M.to_dict() for M in range_bad[:3]],
    }


def labelled_count_formula(lam, k, m):
    """(m! k!^m / n) * l^lam_{n,[k^m]} with l counted as |G^{(n)}_{lam,[k^m]}|."""
    lam = P.as_partition(lam)
    l = _single_cycle_census(k, m).get(lam, 0)
    n = k * m
    num = factorial(m) * factorial(k) ** m * l
    if num % n:
        raise AssertionError("count formula is not integral")
    return num // n


@lru_cache(maxsize=None)
def _single_cycle_census(k, m):
    """Counter lam -> #{delta : Lambda(b_(n), delta) = [k^m], Lambda(g_n, delta) = lam}."""
    from .matchings import b_matching, cycle_type, g_matching, matchings_of_type

    n = k * m
    g = g_matching(n)
    return Counter(cycle_type(g, d) for d in matchings_of_type(b_matching((n,)), (k,) * m))


# --- monopoles: the k = 2 backend --------------------------------------------------

class Monopole:
    """One vertex, m loops; loop j owns half-edges 2j and 2j+1.

    `rot` is the cyclic order of the 2m half-edges starting at 0; `twist` has
    one bit per loop.
    """

    __slots__ = ("rot", "twist", "_faces")

    def __init__(self, rot, twist):
        self.rot = _rotate_to_min(list(rot)) if rot else ()
        self.twist = tuple(twist)
        self._faces = None

    @property
    def m(self):
        return len(self.twist)

    def key(self):
        return (self.rot, self.twist)

    def _involutions(self):
        h = len(self.rot)
        nxt = [0] * h
        prv = [0] * h
        for i, x in enumerate(self.rot):
            nxt[x] = self.rot[(i + 1) % h]
            prv[x] = self.rot[i - 1]
        t0 = [0] * (2 * h)
        t1 = [0] * (2 * h)
        for x in range(h):
            for s in (0, 1):
                f = 2 * x + s
                t0[f] = 2 * (x ^ 1) + (s ^ 1 ^ self.twist[x // 2])
                t1[f] = 2 * nxt[x] if s else 2 * prv[x] + 1
        return t0, t1

    def faces(self):
        if self._faces is None:
            t0, t1 = self._involutions()
            seen = [False] * len(t0)
            out = []
            for s in range(len(t0)):
                if seen[s]:
                    continue
                orb = [s]
                seen[s] = True
                i = 0
                while i < len(orb):
                    f = orb[i]
                    i += 1
                    for g in (t0[f], t1[f]):
                        if not seen[g]:
                            seen[g] = True
                            orb.append(g)
                out.append(orb)
            self._faces = out
        return self._faces

    def face_degrees(self):
        # each hypermap edge is one half-edge here, with two sides per flag pair
        return P.normalize(len(f) // 2 for f in self.faces())

    def is_orientable(self):
        t0, t1 = self._involutions()
        col = [-1] * len(t0)
        for s in range(len(t0)):
            if col[s] >= 0:
                continue
            col[s] = 0
            stack = [s]
            while stack:
                f = stack.pop()
                for g in (t0[f], t1[f], f ^ 1):
                    if col[g] < 0:
                        col[g] = col[f] ^ 1
                        stack.append(g)
                    elif col[g] == col[f]:
                        return False
        return True

    def delete_root(self):
        rot = [x - 2 for x in self.rot if x > 1]
        return Monopole(rot, self.twist[1:])

    def twist_root(self):
        return Monopole(self.rot, (self.twist[0] ^ 1,) + self.twist[1:])


_MTHETA = {}


def monopole_theta(M):
    k = M.key()
    if k in _MTHETA:
        return _MTHETA[k]
    if M.m == 0:
        return 0
    Mp = M.delete_root()
    base = monopole_theta(Mp)
    # a bare vertex bounds one face
    a, b = len(M.faces()), max(1, len(Mp.faces()))
    if b == a:
        v = base + 1
    elif b == a - 1:
        v = base
    elif b == a + 1:
        T = M.twist_root()
        if M.is_orientable():
            v = base
        elif T.is_orientable():
            v = base + 1
        else:
            v = base + (0 if M.key() < T.key() else 1)
    else:
        raise AssertionError("face count jumped by more than one")
    _MTHETA[k] = v
    return v


def enumerate_monopoles(m):
    h = 2 * m
    for rest in itertools.permutations(range(1, h)):
        for bits in itertools.product((0, 1), repeat=m):
            yield Monopole((0,) + rest, bits)


def monopole_census(m):
    polys = defaultdict(Counter)
    for M in enumerate_monopoles(m):
        polys[M.face_degrees()][monopole_theta(M)] += 1
    return polys


def hypermap_to_monopole(M):
    """Contract every degree-2 black vertex of M into a loop."""
    if any(d != 2 for d in M.degs):
        raise ValueError("needs all black degrees equal to 2")
    # in block (2j, 2j+1) the twist of the loop is the parity of the two edge twists
    tw = [M.twist[2 * j] ^ M.twist[2 * j + 1] for j in range(len(M.degs))]
    return Monopole(M.white, tw)


def census_rows(k, m):
    """Rows (k, m, lam, beta poly, orientable count, total count) for export."""
    polys, orient = rectangle_census(k, m)
    n = k * m
    out = []
    for lam in P.partitions_of(n):
        poly = _as_list(polys.get(lam, Counter()))
        out.append((k, m, lam, poly, orient[lam], sum(poly)))
    return out


def witness(M):
    trace = []
    t = theta(M, trace)
    d = M.to_dict()
    d.update({"lambda": list(M.face_degrees()), "orientable": M.is_orientable(),
              "theta": t, "trace": [c for c, _ in trace]})
    return json.dumps(d, sort_keys=True)
