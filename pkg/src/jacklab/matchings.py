"""Matchings on V_n = {1, 1^, ..., n, n^} and the weight statistic wt.

Vertices are ints: k -> 2(k-1), k^ -> 2(k-1)+1, so hat status is the low bit
and the canonical matching g_n is v <-> v ^ 1.  A matching is a tuple `mate`
of length 2n with mate[mate[v]] == v.
"""

import itertools
import json
from collections import Counter, defaultdict
from functools import lru_cache
from math import factorial

from . import partitions as P
from .coefficients import recur_ann, threes_terms, twos_terms
from .ratfunc import to_beta

ENUM_BUDGET = 8


class BudgetExceeded(ValueError):
    pass


class OutOfScope(ValueError):
    pass


def vertex_name(v):
    k = v // 2 + 1
    return f"{k}^" if v & 1 else str(k)


def g_matching(n):
    return tuple(v ^ 1 for v in range(2 * n))


def b_matching(lam):
    n = sum(lam)
    mate = [0] * (2 * n)
    start = 0
    for part in lam:
        for j in range(part):
            hat = 2 * (start + j) + 1
            nxt = 2 * (start + (j + 1) % part)
            mate[hat] = nxt
            mate[nxt] = hat
        start += part
    return tuple(mate)


def canonical_pair(n, lam):
    lam = P.as_partition(lam)
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    return g_matching(n), b_matching(lam)


def pairs(mate):
    return [(v, w) for v, w in enumerate(mate) if v < w]


def from_pairs(prs, n=None):
    if n is None:
        n = len(prs)
    mate = [-1] * (2 * n)
    for v, w in prs:
        mate[v] = w
        mate[w] = v
    if -1 in mate:
        raise ValueError("not a perfect matching")
    return tuple(mate)


def is_bipartite(mate):
    return all((v ^ w) & 1 for v, w in enumerate(mate))


def nonbipartite_edges(mate):
    return sum(1 for v, w in enumerate(mate) if v < w and not (v ^ w) & 1)


def union_cycles(d1, d2, verts=None):
    """Cycles of d1 u d2 as vertex lists, each starting at its smallest vertex."""
    if verts is None:
        verts = range(len(d1))
    seen = set()
    out = []
    for s in sorted(verts):
        if s in seen:
            continue
        cyc = []
        x = s
        while True:
            cyc.append(x)
            seen.add(x)
            y = d1[x]
            cyc.append(y)
            seen.add(y)
            x = d2[y]
            if x == s:
                break
        out.append(cyc)
    return out


def cycle_type(d1, d2):
    """Lambda(d1, d2): half lengths of the cycles of the union."""
    return P.normalize(len(c) // 2 for c in union_cycles(d1, d2))


def all_matchings(n):
    mate = [-1] * (2 * n)

    def rec():
        try:
            v = mate.index(-1)
        except ValueError:
            yield tuple(mate)
            return
        for w in range(v + 1, 2 * n):
            if mate[w] == -1:
                mate[v], mate[w] = w, v
                yield from rec()
                mate[v] = mate[w] = -1

    yield from rec()


def single_cycle_matchings(n):
    """All delta with Lambda(g_n, delta) = (n), built by walking the cycle from vertex 0."""
    if n == 0:
        yield ()
        return
    mate = [-1] * (2 * n)
    used = [False] * n
    used[0] = True

    def rec(end, left):
        if left == 0:
            mate[end], mate[0] = 0, end
            yield tuple(mate)
            mate[end] = mate[0] = -1
            return
        for k in range(1, n):
            if used[k]:
                continue
            used[k] = True
            for e in (2 * k, 2 * k + 1):
                mate[end], mate[e] = e, end
                yield from rec(e ^ 1, left - 1)
                mate[end] = mate[e] = -1
            used[k] = False

    yield from rec(1, n - 1)


def matchings_of_type(ref, nu):
    """All delta with Lambda(ref, delta) = nu, built one cycle at a time."""
    nu = P.as_partition(nu)
    size = len(ref)
    if 2 * sum(nu) != size:
        raise ValueError(f"{P.fmt(nu)} does not fit {size} points")
    mate = [-1] * size
    left = Counter(nu)

    def walk(s, x, steps):
        # x is the open end of the current cycle started at s
        if steps == 1:
            y = ref[s]
            if mate[y] == -1:
                mate[x], mate[y] = y, x
                yield from fill()
                mate[x] = mate[y] = -1
            return
        for y in range(size):
            if mate[y] != -1 or y == x or ref[y] == s:
                continue
            mate[x], mate[y] = y, x
            yield from walk(s, ref[y], steps - 1)
            mate[x] = mate[y] = -1

    def fill():
        try:
            s = mate.index(-1)
        except ValueError:
            yield tuple(mate)
            return
        for k in sorted(left):
            if left[k]:
                left[k] -= 1
                yield from walk(s, s, k)
                left[k] += 1

    yield from fill()


def enumerate_G(lam, mu, nu, budget=ENUM_BUDGET):
    """Yield (delta, bipartite) for delta in G^lam_{mu,nu}."""
    lam, mu, nu = (P.as_partition(x) for x in (lam, mu, nu))
    n = sum(lam)
    if n > budget:
        raise BudgetExceeded(f"n={n} exceeds enumeration budget {budget}")
    g = g_matching(n)
    b = b_matching(lam)
    source = single_cycle_matchings(n) if mu == (n,) else all_matchings(n)
    for d in source:
        if cycle_type(g, d) == mu and cycle_type(b, d) == nu:
            yield d, is_bipartite(d)


@lru_cache(maxsize=None)
def census_G(n, mu=None):
    """{(lam, nu): (|G^lam_{mu,nu}|, bipartite count)} for all lam, nu."""
    if n > ENUM_BUDGET:
        raise BudgetExceeded(f"n={n} exceeds enumeration budget {ENUM_BUDGET}")
    mu = (n,) if mu is None else P.as_partition(mu)
    g = g_matching(n)
    bs = {lam: b_matching(lam) for lam in P.partitions_of(n)}
    out = defaultdict(lambda: [0, 0])
    source = single_cycle_matchings(n) if mu == (n,) else all_matchings(n)
    for d in source:
        if mu != (n,) and cycle_type(g, d) != mu:
            continue
        bip = is_bipartite(d)
        for lam, b in bs.items():
            rec = out[(lam, cycle_type(b, d))]
            rec[0] += 1
            rec[1] += bip
    return {k: tuple(v) for k, v in out.items()}


def _perm_of_type(lam):
    perm = []
    start = 0
    for part in lam:
        perm.extend(start + (j + 1) % part for j in range(part))
        start += part
    return tuple(perm)


@lru_cache(maxsize=None)
def _perms_by_type(n):
    out = defaultdict(list)
    for s in itertools.permutations(range(n)):
        out[P.cycle_type(s)].append(s)
    return out


def class_algebra_c(lam, mu, nu, budget=7):
    """[C_lam] C_mu C_nu: pairs (s, t) of types mu, nu with s t equal to a fixed pi of type lam."""
    lam, mu, nu = (P.as_partition(x) for x in (lam, mu, nu))
    n = sum(lam)
    if n > budget:
        raise BudgetExceeded(f"n={n} exceeds class algebra budget {budget}")
    if sum(mu) != n or sum(nu) != n:
        return 0
    pi = _perm_of_type(lam)
    count = 0
    for s in _perms_by_type(n)[mu]:
        inv = [0] * n
        for i, x in enumerate(s):
            inv[x] = i
        # (s t)(x) = s(t(x)) = pi(x)  =>  t = s^-1 pi
        t = tuple(inv[pi[x]] for x in range(n))
        if P.cycle_type(t) == nu:
            count += 1
    return count


# --- deletion ----------------------------------------------------------------

def _contract(g, delta, removed):
    """Gray partners after deleting `removed` (closed under delta)."""
    out = {}
    for w in range(len(g)):
        if w in removed:
            continue
        x = g[w]
        while x in removed:
            x = g[delta[x]]
        out[w] = x
    return out


def _relabel(gp, bp):
    """Renumber surviving vertices so (g', b') become (g_{n'}, b_{lam'}).

    Cycles are ordered by decreasing length, ties by smallest old vertex.
    Each cycle starts at its smallest old non-hat vertex when the old hat
    status is still a proper colouring of it, otherwise at its smallest vertex.
    """
    cycles = union_cycles(gp, bp, gp.keys())
    cycles.sort(key=lambda c: (-len(c), c[0]))
    new = {}
    pos = 0
    lam = []
    for cyc in cycles:
        proper = all((x ^ gp[x]) & 1 and (x ^ bp[x]) & 1 for x in cyc)
        if proper:
            s = min(x for x in cyc if not x & 1)
        else:
            s = cyc[0]
        k = len(cyc) // 2
        x = s
        for j in range(k):
            new[x] = 2 * (pos + j)
            y = gp[x]
            new[y] = 2 * (pos + j) + 1
            x = bp[y]
        assert x == s
        pos += k
        lam.append(k)
    return tuple(lam), new


def delete_vertices(lam, delta, removed):
    """Delete a delta-closed union of b_lam u delta cycles; return (lam', delta', relabel map)."""
    n = sum(lam)
    g = g_matching(n)
    b = b_matching(lam)
    removed = frozenset(removed)
    gp = _contract(g, delta, removed)
    bp = {w: b[w] for w in gp}
    if any(x in removed for x in bp.values()):
        raise ValueError("removed set is not a union of b u delta cycles")
    lam2, new = _relabel(gp, bp)
    mate = [0] * len(gp)
    for w in gp:
        mate[new[w]] = new[delta[w]]
    return lam2, tuple(mate), new


def delete_edges_stepwise(lam, delta, edges):
    """Apply the single-edge deletion steps in the given order on old labels.

    Each step removes u and delta(u), joins their former gray partners by a
    gray edge and, unless delta(u) = b(u), their black partners by a black
    edge.  Returns the surviving (gray, black) partner dicts.
    """
    n = sum(lam)
    g = dict(enumerate(g_matching(n)))
    b = dict(enumerate(b_matching(lam)))
    for u, x in edges:
        gu, gx = g[u], g[x]
        bu, bx = b[u], b[x]
        for v in (u, x):
            del g[v]
            del b[v]
        if gu != x:
            g[gu], g[gx] = gx, gu
        if bu != x:
            b[bu], b[bx] = bx, bu
    return g, b


# --- labelled matchings ---------------------------------------------------------

class LabelledMatching:
    """delta in G^lam_{n,nu} with a labelling of its b u delta cycles of length > 2.

    `labels` runs parallel to `cycles` (sorted by smallest vertex); 2-cycles
    carry label 0.
    """

    __slots__ = ("lam", "nu", "delta", "labels", "_cycles")

    def __init__(self, lam, delta, labels=None):
        self.lam = P.as_partition(lam)
        self.delta = tuple(delta)
        self._cycles = union_cycles(b_matching(self.lam), self.delta)
        self.nu = P.normalize(len(c) // 2 for c in self._cycles)
        if labels is None:
            counters = Counter()
            labels = []
            for c in self._cycles:
                k = len(c) // 2
                if k == 1:
                    labels.append(0)
                else:
                    counters[k] += 1
                    labels.append(counters[k])
        self.labels = tuple(labels)

    @property
    def n(self):
        return sum(self.lam)

    @property
    def cycles(self):
        return self._cycles

    @property
    def bipartite(self):
        return is_bipartite(self.delta)

    def key(self):
        return (self.lam, self.delta, self.labels)

    def __eq__(self, other):
        return isinstance(other, LabelledMatching) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LabelledMatching({P.fmt(self.lam)}; {self.to_json()})"

    def to_dict(self, weight=None):
        out = {
            "lambda": list(self.lam),
            "nu": list(self.nu),
            "pairs": [[vertex_name(v), vertex_name(w)] for v, w in pairs(self.delta)],
            "labels": [
                {"cycle": [vertex_name(v) for v in c], "label": l}
                for c, l in zip(self._cycles, self.labels) if l
            ],
            "bipartite": self.bipartite,
        }
        if weight is not None:
            out["wt"] = weight
        return out

    def to_json(self, weight=None):
        return json.dumps(self.to_dict(weight), sort_keys=True)


def enumerate_labelled(lam, nu):
    lam, nu = P.as_partition(lam), P.as_partition(nu)
    n = sum(lam)
    for d, _ in enumerate_G(lam, (n,), nu):
        cycles = union_cycles(b_matching(lam), d)
        groups = defaultdict(list)
        for idx, c in enumerate(cycles):
            k = len(c) // 2
            if k > 1:
                groups[k].append(idx)
        sizes = sorted(groups)
        for choice in itertools.product(
                *(itertools.permutations(range(1, len(groups[k]) + 1)) for k in sizes)):
            labels = [0] * len(cycles)
            for k, perm in zip(sizes, choice):
                for idx, l in zip(groups[k], perm):
                    labels[idx] = l
            yield LabelledMatching(lam, d, labels)


def labelled_count_factor(nu):
    nu = P.as_partition(nu)
    return P.aut_of(nu) // factorial(P.mult(nu, 1))


def _target_cycle(lm):
    nu = lm.nu
    i = min(nu)
    if i == 1:
        return 1, [c for c in lm.cycles if len(c) == 2]
    best = max((l, idx) for idx, (c, l) in enumerate(zip(lm.cycles, lm.labels))
               if len(c) == 2 * i)
    return i, [lm.cycles[best[1]]]


def edge_delete(lm):
    """Delete the target cycle(s) of lm: all 2-cycles if nu has a part 1,
    otherwise the 2i-cycle with the greatest label, i the smallest part of nu.

    Returns (LabelledMatching on n - |deleted| / 2 points, deleted vertex set).
    """
    if lm.n == 0:
        raise ValueError("nothing to delete")
    i, cyc = _target_cycle(lm)
    removed = frozenset(v for c in cyc for v in c)
    if len(removed) == 2 * lm.n:
        raise ValueError("deletion would remove every vertex")
    lam2, d2, new = delete_vertices(lm.lam, lm.delta, removed)
    old_label = {}
    for c, l in zip(lm.cycles, lm.labels):
        if l and c[0] not in removed:
            old_label[new[c[0]]] = l
    res = LabelledMatching(lam2, d2)
    labels = []
    for c in res.cycles:
        if len(c) == 2:
            labels.append(0)
        else:
            labels.append(next(old_label[v] for v in c if v in old_label))
    res.labels = tuple(labels)
    return res, removed


# --- weights -----------------------------------------------------------------

def _closes_cycle(g, delta_part):
    """True when gray edges plus the given delta edges contain a closed cycle."""
    verts = set(delta_part)
    for v in list(verts):
        verts.add(g[v])
    adj = defaultdict(list)
    for v in verts:
        if g[v] in verts:
            adj[v].append(g[v])
    for v, w in delta_part.items():
        adj[v].append(w)
    seen = set()
    for s in verts:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if all(len(adj[x]) == 2 for x in comp):
            return True
    return False


def _cycle_matchings(ends):
    """Matchings on the endpoints of the given black edges closing them into one cycle."""
    k = len(ends)
    first = ends[0]
    for order in itertools.permutations(range(1, k)):
        for flips in itertools.product((0, 1), repeat=k - 1):
            seq = [first] + [ends[j] if not f else ends[j][::-1]
                             for j, f in zip(order, flips)]
            d = {}
            for a, bnext in zip(seq, seq[1:] + seq[:1]):
                d[a[1]] = bnext[0]
                d[bnext[0]] = a[1]
            yield d


@lru_cache(maxsize=None)
def placement_table(lam, i):
    """Weights for deleting one 2i-cycle of b_lam u delta, i in {2, 3}.

    A placement is the set of delta edges on one 2i-cycle.  Placements are
    grouped by the shape lam' they leave; in each group the bipartite ones get
    weight 0 and the rest receive the beta-coefficients of the recurrence
    coefficient of a~^{lam'}, in lexicographic order of the placement.
    """
    lam = P.as_partition(lam)
    n = sum(lam)
    if n <= i:
        raise ValueError("placement table needs n > i")
    g = g_matching(n)
    b = b_matching(lam)
    black = [(h, b[h]) for h in range(1, 2 * n, 2)]
    seen = set()
    groups = defaultdict(list)
    for combo in itertools.combinations(black, i):
        for d in _cycle_matchings(list(combo)):
            key = tuple(sorted((v, w) for v, w in d.items() if v < w))
            if key in seen:
                continue
            seen.add(key)
            if _closes_cycle(g, d):
                continue
            full = dict(d)
            gp = _contract(g, full, frozenset(d))
            bp = {w: b[w] for w in gp}
            lam2, _ = _relabel(gp, bp)
            bip = all((v ^ w) & 1 for v, w in key)
            groups[P.normalize(lam2)].append((not bip, key))
    terms = twos_terms(lam) if i == 2 else threes_terms(lam)
    table = {}
    for lam2 in set(groups) | set(terms):
        coeffs = to_beta(terms[lam2]).coeffs if lam2 in terms else None
        members = sorted(groups.get(lam2, []))
        want = [] if coeffs is None else coeffs
        if any(c.denominator != 1 or c < 0 for c in want):
            raise AssertionError(f"non-integral target for {lam}->{lam2}: {want}")
        ws = []
        for deg, c in enumerate(want):
            ws.extend([deg] * int(c))
        nbip = sum(1 for nb, _ in members if not nb)
        if len(ws) != len(members) or ws.count(0) != nbip:
            raise AssertionError(
                f"placement count mismatch for {lam} -> {lam2} (i={i}): "
                f"{len(members)} placements, {nbip} bipartite, target {want}")
        for (nb, key), w in zip(members, ws):
            table[key] = w
    return table


@lru_cache(maxsize=None)
def base_weights(lam):
    """wt on G^lam_{n,(n)}: bipartite matchings get 0, the rest are ordered by
    (number of non-bipartite edges, pairs) and receive the beta-coefficients of
    a^lam_{n,(n)} in increasing weight."""
    lam = P.as_partition(lam)
    n = sum(lam)
    coeffs = to_beta(recur_ann(lam)).coeffs
    ws = []
    for deg, c in enumerate(coeffs):
        ws.extend([deg] * int(c))
    members = sorted((nonbipartite_edges(d), d) for d, _ in enumerate_G(lam, (n,), (n,)))
    if len(members) != len(ws) or ws.count(0) != sum(1 for k, _ in members if k == 0):
        raise AssertionError(f"base count mismatch at {lam}")
    return {d: w for (_, d), w in zip(members, ws)}


def in_scope(nu):
    return P.at_most_one_big_part(P.as_partition(nu))


def weight(lm, trace=None):
    """wt of a labelled matching; `trace`, if a list, collects (i, lam, added weight)."""
    if not in_scope(lm.nu):
        raise OutOfScope(f"nu={lm.nu} has more than one part above 3")
    total = 0
    while True:
        nu = lm.nu
        if len(nu) == 1:
            w = base_weights(lm.lam)[lm.delta]
            if trace is not None:
                trace.append((nu[0], lm.lam, w))
            return total + w
        if all(p == 1 for p in nu):
            # delta = b_lam with lam = (n): bipartite
            return total
        i, cyc = _target_cycle(lm)
        w = 0
        if i > 1:
            key = tuple(sorted((v, lm.delta[v]) for v in cyc[0] if v < lm.delta[v]))
            w = placement_table(lm.lam, i)[key]
        if trace is not None:
            trace.append((i, lm.lam, w))
        total += w
        lm, _ = edge_delete(lm)


def weight_polynomial(lam, nu):
    """Sum of beta^wt over G~^lam_nu as a coefficient list, plus the counts."""
    coeffs = Counter()
    bad_zero = []
    too_big = []
    count = 0
    nu = P.as_partition(nu)
    bound = sum(nu) - len(nu)
    for lm in enumerate_labelled(lam, nu):
        w = weight(lm)
        coeffs[w] += 1
        count += 1
        if (w == 0) != lm.bipartite:
            bad_zero.append(lm)
        if not 0 <= w <= bound:
            too_big.append(lm)
    top = max(coeffs) if coeffs else -1
    return [coeffs[k] for k in range(top + 1)], count, bad_zero, too_big


def weight_sum_check(n, nu):
    """Compare sum beta^wt with a~(1 + beta) for every lam |- n."""
    from .coefficients import coeff_table

    nu = P.as_partition(nu)
    if sum(nu) != n:
        raise ValueError(f"{nu} is not a partition of {n}")
    if not in_scope(nu):
        raise OutOfScope(f"nu={nu} has more than one part above 3")
    table = coeff_table("a~", n, nu)
    rows = []
    for lam in P.partitions_of(n):
        poly, count, bad_zero, too_big = weight_polynomial(lam, nu)
        want = [int(c) for c in to_beta(table.entries[lam]).coeffs]
        while want and want[-1] == 0:
            want.pop()
        rows.append({
            "lambda": lam,
            "sum": poly,
            "expected": want,
            "count": count,
            "ok": poly == want and not bad_zero and not too_big,
            "zero_set_violations": [m.to_dict() for m in bad_zero[:3]],
            "range_violations": [m.to_dict() for m in too_big[:3]],
        })
    return {"n": n, "nu": nu, "ok": all(r["ok"] for r in rows), "rows": rows}
