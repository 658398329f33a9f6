"""Exact rational functions in one indeterminate (alpha) over the integers.

Polynomials are tuples of ints, constant term first, with no trailing zeros.
The zero polynomial is the empty tuple.
"""

import re
from fractions import Fraction
from math import comb, gcd

ZERO = ()
ONE = (1,)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def pneg(a):
    return tuple(-x for x in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ZERO
    if len(b) == 1:
        k = b[0]
        return tuple(x * k for x in a)
    if len(a) == 1:
        k = a[0]
        return tuple(x * k for x in b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def pscale(a, k):
    if k == 0:
        return ZERO
    return tuple(x * k for x in a)


def content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _valuation(a):
    for i, x in enumerate(a):
        if x:
            return i
    return len(a)


def pexactdiv(a, b):
    """a / b over the integers, assuming b divides a exactly."""
    if len(b) == 1:
        return tuple(x // b[0] for x in a)
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        qc, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[k - db] = qc
        for j, y in enumerate(b):
            a[k - db + j] -= qc * y
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _prem(a, b):
    # pseudo-remainder of a by b
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a = list(_trim(a))
    return tuple(a)


def _primitive(a):
    if not a:
        return a
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def pgcd(a, b):
    """Primitive gcd with positive leading coefficient (ignores integer content)."""
    if not a:
        return _primitive(b)
    if not b:
        return _primitive(a)
    va, vb = _valuation(a), _valuation(b)
    v = min(va, vb)
    a, b = _primitive(a[va:]), _primitive(b[vb:])
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        a, b = b, _primitive(r)
        if not b:
            break
    if not b:
        g = a
    else:
        g = ONE
    return (0,) * v + _primitive(g)


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pcompose_shift(a, s):
    """Return a(x + s) as a Fraction-free list when s is an integer."""
    out = [0] * len(a)
    for k, c in enumerate(a):
        if not c:
            continue
        for j in range(k + 1):
            out[j] += c * comb(k, j) * s ** (k - j)
    return out


def _fmt_poly(a, var):
    if not a:
        return "0"
    pieces = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        m = abs(c)
        if k == 0:
            body = str(m)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if m == 1 else f"{m}*{mono}"
        pieces.append((sign, body))
    s = "".join(sg + b for sg, b in pieces)
    return s[1:] if s.startswith("+") else s


_TERM = re.compile(r"([+-]?)(\d*)(\*?)([a-z]?)(?:\^(\d+))?")


def _parse_poly(s, var):
    s = s.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {s!r}")
        sign, num, star, v, exp = m.groups()
        if v and v != var:
            raise ValueError(f"unexpected variable {v!r} in {s!r}")
        if not num and not v:
            raise ValueError(f"cannot parse polynomial {s!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if v else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    top = max(coeffs)
    return _trim([coeffs.get(i, 0) for i in range(top + 1)])


class RatFunc:
    """Element of Q(alpha) kept in lowest terms num/den with den monic-up-to-sign positive."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=ZERO, den=ONE, _canonical=False):
        if isinstance(num, int):
            num = (num,) if num else ZERO
        if isinstance(den, int):
            den = (den,)
        if not _canonical:
            num, den = _normalize(_trim(num), _trim(den))
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c):
        if isinstance(c, Fraction):
            return cls((c.numerator,), (c.denominator,))
        return cls((c,) if c else ZERO, ONE, _canonical=True)

    @classmethod
    def poly(cls, coeffs):
        return cls(_trim(coeffs), ONE)

    @classmethod
    def parse(cls, s):
        s = s.strip()
        if "/" in s:
            top, bot = _split_fraction(s)
            return cls(_parse_poly(top, "a"), _parse_poly(bot, "a"))
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        return cls(_parse_poly(s, "a"), ONE)

    # predicates
    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return len(self.den) == 1

    def degree(self):
        """Degree of the numerator minus degree of the denominator (-1 for zero)."""
        if not self.num:
            return -1
        return (len(self.num) - 1) - (len(self.den) - 1)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatFunc(padd(self.num, other.num), ONE, _canonical=True)
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RATZERO
        if self.den == ONE and other.den == ONE:
            return RatFunc(pmul(self.num, other.num), ONE, _canonical=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RATONE / (self ** (-k))
        out = RATONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __call__(self, x):
        """Evaluate at an exact number; returns a Fraction."""
        d = peval(self.den, Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return Fraction(peval(self.num, Fraction(x))) / d

    def invert_variable(self):
        """Substitute alpha -> 1/alpha."""
        if not self.num:
            return self
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num = tuple(reversed(self.num)) + ZERO
        den = tuple(reversed(self.den))
        if dd > dn:
            num = (0,) * (dd - dn) + num
        elif dn > dd:
            den = (0,) * (dn - dd) + den
        return RatFunc(num, den)

    def coeffs(self):
        """Integer coefficients of a polynomial value, constant first."""
        if self.den != ONE:
            raise ValueError(f"not an integer polynomial: denominator {_fmt_poly(self.den, 'a')}")
        return list(self.num)

    def to_beta(self):
        if len(self.den) != 1:
            raise ValueError(f"not a polynomial: denominator {_fmt_poly(self.den, 'a')}")
        d = self.den[0]
        return BetaPoly([Fraction(c, d) for c in pcompose_shift(self.num, 1)])

    def __str__(self):
        top = _fmt_poly(self.num, "a")
        if self.den == ONE:
            return top
        return f"({top})/({_fmt_poly(self.den, 'a')})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _split_fraction(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            top, bot = s[:i].strip(), s[i + 1:].strip()
            return _strip_parens(top), _strip_parens(bot)
    raise ValueError(f"cannot parse rational function {s!r}")


def _strip_parens(s):
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ZERO, ONE
    if len(den) > 1:
        # strip common powers of alpha, then the general gcd
        v = min(_valuation(num), _valuation(den))
        if v:
            num, den = num[v:], den[v:]
        if len(den) > 1:
            g = pgcd(num, den)
            if len(g) > 1:
                num, den = pexactdiv(num, g), pexactdiv(den, g)
    c = gcd(content(num), content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc.const(x)
    if isinstance(x, Fraction):
        return RatFunc.const(x)
    return NotImplemented


RATZERO = RatFunc(ZERO, ONE, _canonical=True)
RATONE = RatFunc(ONE, ONE, _canonical=True)
ALPHA = RatFunc((0, 1), ONE, _canonical=True)
BETA = RatFunc((-1, 1), ONE, _canonical=True)


def ratfunc(x):
    """Coerce ints, Fractions and strings to RatFunc."""
    if isinstance(x, str):
        return RatFunc.parse(x)
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")
    return r


class BetaPoly:
    """Polynomial in beta = alpha - 1 with exact rational coefficients, constant first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def degree(self):
        return len(self.coeffs) - 1

    def is_integer(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self):
        return all(c >= 0 for c in self.coeffs)

    def to_alpha(self):
        # p(beta) with beta = alpha - 1
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        return RatFunc(tuple(pcompose_shift(ints, -1)), (den,))

    def __call__(self, x):
        return sum((c * Fraction(x) ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, BetaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == BetaPoly(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return BetaPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                         for i in range(n)])

    def serialize(self):
        """Constant-first list form, e.g. "[1,1,2]"."""
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    @classmethod
    def deserialize(cls, s):
        s = s.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"bad beta polynomial {s!r}")
        body = s[1:-1].strip()
        if not body:
            return cls([])
        return cls([Fraction(t) for t in body.split(",")])

    def __str__(self):
        if self.is_integer():
            return _fmt_poly(tuple(int(c) for c in self.coeffs), "b")
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("*b" if k == 1 else f"*b^{k}")
                parts.append(f"({c}){mono}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"BetaPoly({self.serialize()})"


def from_beta(bp):
    if not isinstance(bp, BetaPoly):
        bp = BetaPoly(bp)
    return bp.to_alpha()


def to_beta(x):
    return ratfunc(x).to_beta()


def poly_report(x):
    x = ratfunc(x)
    if len(x.den) != 1:
        return {"is_polynomial": False, "degree": None, "integer_coeffs": False,
                "beta_nonnegative": False, "beta_integer": False}
    bp = x.to_beta()
    return {
        "is_polynomial": True,
        "degree": x.degree(),
        "integer_coeffs": x.den == ONE,
        "beta_nonnegative": bp.is_nonnegative(),
        "beta_integer": bp.is_integer(),
    }
