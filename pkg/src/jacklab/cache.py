"""On-disk JSON cache for coefficient tables and Jack theta tables.

Each entry is one file holding the format version, the entry kind and key,
the payload, and a sha256 of the canonical payload encoding.  A missing
file, a version mismatch or a bad checksum all count as a miss.
"""

import hashlib
import json
import os
from pathlib import Path

from . import partitions as P
from .ratfunc import RatFunc

CACHE_VERSION = 1
ENV_VAR = "JACKLAB_CACHE"


class CacheError(OSError):
    pass


def default_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "jacklab"


def _canonical(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def checksum(payload):
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


class Cache:
    def __init__(self, root=None, version=CACHE_VERSION):
        self.root = Path(root) if root is not None else default_dir()
        self.version = version
        self.hits = 0
        self.misses = 0

    def path(self, kind, key):
        digest = hashlib.sha256(f"{kind}|{key}".encode()).hexdigest()[:24]
        return self.root / f"{kind}-{digest}.json"

    def load(self, kind, key):
        p = self.path(kind, key)
        try:
            with open(p) as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            self.misses += 1
            return None
        except (OSError, ValueError):
            self.misses += 1
            return None
        ok = (isinstance(doc, dict) and doc.get("version") == self.version
              and doc.get("kind") == kind and doc.get("key") == key
              and doc.get("checksum") == checksum(doc.get("payload")))
        if not ok:
            self.misses += 1
            return None
        self.hits += 1
        return doc["payload"]

    def store(self, kind, key, payload):
        p = self.path(kind, key)
        doc = {"version": self.version, "kind": kind, "key": key,
               "payload": payload, "checksum": checksum(payload)}
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            tmp = p.with_suffix(".tmp")
            with open(tmp, "w") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, p)
        except OSError as e:
            raise CacheError(f"cannot write cache file {p}: {e}") from e
        return p


def coeff_table_cached(kind, n, nu, cache=None):
    """coeff_table with the underlying a-table read from / written to `cache`."""
    from .coefficients import CoeffTable, coeff_table

    nu = P.as_partition(nu)
    if cache is None:
        return coeff_table(kind, n, nu)
    key = f"a|{n}|{P.fmt(nu)}"
    payload = cache.load("coeff-table", key)
    if payload is not None:
        entries = {P.parse(lam): RatFunc.parse(s) for lam, s in payload.items()}
        return CoeffTable(n, nu, "a", entries).converted(kind)
    table = coeff_table("a", n, nu)
    cache.store("coeff-table", key, {P.fmt(lam): str(c) for lam, c in table.items()})
    return table.converted(kind)


def jack_theta_cached(n, cache=None):
    """{lam: {mu: RatFunc}} theta tables for all lam |- n."""
    from .jack import jack_gram_schmidt

    def compute():
        return {lam: dict(e.theta) for lam, e in jack_gram_schmidt(n).items()}

    if cache is None:
        return compute()
    key = f"theta|{n}"
    payload = cache.load("jack-theta", key)
    if payload is not None:
        return {P.parse(lam): {P.parse(mu): RatFunc.parse(s) for mu, s in row.items()}
                for lam, row in payload.items()}
    table = compute()
    cache.store("jack-theta", key, {
        P.fmt(lam): {P.fmt(mu): str(c) for mu, c in row.items()} for lam, row in table.items()
    })
    return table
