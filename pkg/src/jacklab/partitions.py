"""Integer partitions as weakly decreasing tuples of positive ints.

Part surgery used by the recurrences lives here too.  Every surgery helper
returns None when the requested operation does not exist.
"""

import re
from collections import Counter
from functools import lru_cache
from math import factorial, prod


def normalize(parts):
    """Sort decreasing and drop zero parts.  Negative parts are an error."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((p for p in parts if p), reverse=True))


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse(text):
    """Read "4,2,1", "4 2 1", "[2^3]" or "[3,2^2,1]"."""
    s = text.strip()
    if s.startswith(("[", "(")) and s.endswith(("]", ")")):
        s = s[1:-1]
    s = s.strip()
    if not s:
        return ()
    parts = []
    for tok in re.split(r"[,\s]+", s):
        if not tok:
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad partition token {tok!r} in {text!r}")
        part = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) else 1
        if part == 0:
            raise ValueError(f"zero part in {text!r}")
        parts.extend([part] * reps)
    return normalize(parts)


def as_partition(x):
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, int):
        return normalize([x])
    return normalize(x)


def fmt(lam):
    return ",".join(str(p) for p in lam)


def fmt_exp(lam):
    """Exponent notation, e.g. (2,2,2,1) -> "[2^3 1]"."""
    out = []
    for part, m in sorted(Counter(lam).items(), reverse=True):
        out.append(str(part) if m == 1 else f"{part}^{m}")
    return "[" + " ".join(out) + "]"


def weight(lam):
    return sum(lam)


def multiplicities(lam):
    return Counter(lam)


def mult(lam, i):
    return lam.count(i)


def z_of(lam):
    out = 1
    for part, m in Counter(lam).items():
        out *= part ** m * factorial(m)
    return out


def aut_of(lam):
    return prod(factorial(m) for m in Counter(lam).values())


def class_size(lam):
    """Number of permutations of cycle type lam."""
    return factorial(sum(lam)) // z_of(lam)


def mult_count(lam, *idx):
    """Ordered ways to pick a part equal to idx[0], then idx[1], and so on."""
    if not idx:
        raise ValueError("need at least one index")
    c = Counter(lam)
    used = Counter()
    out = 1
    for i in idx:
        f = c.get(i, 0) - used[i]
        if f <= 0:
            return 0
        out *= f
        used[i] += 1
    return out


def remove_parts(lam, parts):
    """lam with one copy of each value in parts removed, or None."""
    rest = list(lam)
    for p in parts:
        try:
            rest.remove(p)
        except ValueError:
            return None
    return tuple(rest)


def union(lam, rho):
    return tuple(sorted(lam + tuple(rho), reverse=True))


def subtract(lam, kappa):
    """Componentwise lam - kappa (kappa padded with zeros), resorted."""
    if len(kappa) > len(lam):
        return None
    out = []
    for i, p in enumerate(lam):
        q = p - (kappa[i] if i < len(kappa) else 0)
        if q < 0:
            return None
        out.append(q)
    return normalize(out)


def merge_down(lam, parts, r):
    """Replace the given parts by a single part sum(parts) - r."""
    rest = remove_parts(lam, parts)
    if rest is None:
        return None
    new = sum(parts) - r
    if new < 0:
        return None
    if new == 0:
        return rest
    return union(rest, (new,))


def split_up(lam, parts, r):
    """Replace a part equal to sum(parts) + r by the given parts."""
    if any(p <= 0 for p in parts):
        return None
    rest = remove_parts(lam, (sum(parts) + r,))
    if rest is None:
        return None
    return union(rest, tuple(parts))


# surgery codes: number of arrows is the shift r, direction picks merge/split
_CODES = {
    "↓": ("down", 1), "↓↓": ("down", 2), "↓↓↓": ("down", 3),
    "↑": ("up", 1), "↑↑": ("up", 2), "↑↑↑": ("up", 3),
    "d": ("down", 1), "dd": ("down", 2), "ddd": ("down", 3),
    "u": ("up", 1), "uu": ("up", 2), "uuu": ("up", 3),
}


def surgery(lam, code, *idx):
    """Apply a named part surgery; see module docstring.

    down codes merge the listed parts into one part of size sum - r,
    up codes split a part of size sum + r into the listed parts.
    """
    try:
        kind, r = _CODES[code]
    except KeyError:
        raise ValueError(f"unknown surgery code {code!r}") from None
    lam = tuple(lam)
    if kind == "down":
        return merge_down(lam, idx, r)
    return split_up(lam, idx, r)


def _parts_desc(n, maxpart):
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _parts_desc(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _all_partitions(n):
    return tuple(_parts_desc(n, n))


def partitions_of(n, constraint=None):
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        return iter(())
    ps = _all_partitions(n)
    if constraint is None:
        return iter(ps)
    return (p for p in ps if constraint(p))


def at_most_one_big_part(lam, bound=3):
    return sum(1 for p in lam if p > bound) <= 1


def dominates(lam, mu):
    """lam >= mu in dominance order (same weight assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def rectangle(k, m):
    return (k,) * m


def cycle_type(perm):
    """Cycle type of a permutation given as a sequence of images of 0..n-1."""
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        c = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            c += 1
        out.append(c)
    return normalize(out)
