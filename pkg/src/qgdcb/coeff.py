"""Exact coefficients in Z[v^(1/2), v^(-1/2)] and its fraction field.

Exponents are stored in half units, so ``v`` is the monomial with half
exponent 2 and ``v^(1/2)`` the one with half exponent 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd


class CoeffError(ArithmeticError):
    pass


class LaurentHalf:
    """Laurent polynomial in v^(1/2) with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, terms=None):
        c = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for h, a in items:
                if a:
                    h = int(h)
                    s = c.get(h, 0) + int(a)
                    if s:
                        c[h] = s
                    else:
                        c.pop(h, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, n):
        return cls._raw({0: int(n)} if n else {})

    @classmethod
    def vpow(cls, half_exp, coeff=1):
        """coeff * v^(half_exp/2)."""
        return cls._raw({int(half_exp): int(coeff)} if coeff else {})

    @property
    def terms(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_const(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def const_term(self):
        return self._c.get(0, 0)

    def is_monomial(self):
        return len(self._c) == 1

    def min_exp(self):
        return min(self._c)

    def max_exp(self):
        return max(self._c)

    def integral_exponents(self):
        return all(h % 2 == 0 for h in self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentHalf):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for h, a in other._c.items():
            s = c.get(h, 0) + a
            if s:
                c[h] = s
            else:
                del c[h]
        return LaurentHalf._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalf._raw({h: -a for h, a in self._c.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentHalf._raw({})
            return LaurentHalf._raw({h: a * other for h, a in self._c.items()})
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        c = {}
        for h1, a1 in self._c.items():
            for h2, a2 in other._c.items():
                h = h1 + h2
                s = c.get(h, 0) + a1 * a2
                if s:
                    c[h] = s
                else:
                    del c[h]
        return LaurentHalf._raw(c)

    __rmul__ = __mul__

    def shift(self, half_exp):
        """Multiply by v^(half_exp/2)."""
        if not half_exp:
            return self
        return LaurentHalf._raw({h + half_exp: a for h, a in self._c.items()})

    def __pow__(self, n):
        if n < 0:
            if self.is_monomial():
                (h, a), = self._c.items()
                if a in (1, -1):
                    return LaurentHalf._raw({h * n: a ** (-n)})
            raise CoeffError("only units can be inverted in the Laurent ring")
        out = LaurentHalf.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        return LaurentHalf._raw({-h: a for h, a in self._c.items()})

    def is_bar_invariant(self):
        return self == self.bar()

    def content(self):
        g = 0
        for a in self._c.values():
            g = gcd(g, a)
        return g

    def divmod_exact(self, other):
        """Return q with self == q * other, or raise CoeffError."""
        other = _as_laurent(other)
        if other is None or other.is_zero():
            raise CoeffError("division by zero")
        if self.is_zero():
            return self
        if other.is_monomial():
            (h, a), = other._c.items()
            c = {}
            for h1, a1 in self._c.items():
                q, r = divmod(a1, a)
                if r:
                    raise CoeffError("inexact division")
                c[h1 - h] = q
            return LaurentHalf._raw(c)
        rem = dict(self._c)
        top = other.max_exp()
        lead = other._c[top]
        low = other.min_exp()
        quot = {}
        while rem:
            h = max(rem)
            if h - top < min(rem) - low:
                raise CoeffError("inexact division")
            q, r = divmod(rem[h], lead)
            if r:
                raise CoeffError("inexact division")
            quot[h - top] = q
            for h2, a2 in other._c.items():
                k = h - top + h2
                s = rem.get(k, 0) - q * a2
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return LaurentHalf._raw(quot)

    def evaluate(self, x):
        """Evaluate at v^(1/2) = x (any numeric type supporting powers)."""
        return sum(a * x ** h for h, a in self._c.items())

    def nonneg_coeffs(self):
        return all(a >= 0 for a in self._c.values())

    def split(self, positive=True):
        """Part with strictly positive (or strictly negative) exponents."""
        if positive:
            return LaurentHalf._raw({h: a for h, a in self._c.items() if h > 0})
        return LaurentHalf._raw({h: a for h, a in self._c.items() if h < 0})

    def to_json(self):
        return [[h, str(a)] for h, a in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data):
        return cls({int(h): int(a) for h, a in data})

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentHalf({format_laurent(self)!r})"


def _vpow_text(h):
    if h % 2 == 0:
        k = h // 2
        return "v" if k == 1 else f"v^{k}"
    return f"v^({h}/2)"


def format_laurent(p):
    """Render with ascending exponents, e.g. ``v^-1 - v`` or ``v^-2 + 2 + v^2``."""
    if p.is_zero():
        return "0"
    out = []
    for h, a in p.items():
        sign = "-" if a < 0 else "+"
        m = abs(a)
        if h == 0:
            body = str(m)
        elif m == 1:
            body = _vpow_text(h)
        else:
            body = f"{m}*{_vpow_text(h)}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _as_laurent(x):
    if isinstance(x, LaurentHalf):
        return x
    if isinstance(x, int):
        return LaurentHalf.const(x)
    return None


# --- polynomial gcd helpers (exponents shifted to be nonnegative) -----------

def _to_dense(p, low):
    top = p.max_exp()
    return [ZZ(p._c.get(h, 0)) for h in range(top, low - 1, -1)]


def _laurent_gcd(a, b):
    """Gcd in Z[v^(1/2)] of two nonzero polynomials, normalised to min exponent 0."""
    if a.is_monomial() or b.is_monomial():
        g = gcd(a.content(), b.content())
        return LaurentHalf.const(g)
    da = _to_dense(a, a.min_exp())
    db = _to_dense(b, b.min_exp())
    g = dup_gcd(da, db, ZZ)
    n = len(g) - 1
    return LaurentHalf._raw({n - k: int(c) for k, c in enumerate(g) if c})


class RatFunc:
    """Element of Q(v^(1/2)) stored as a reduced fraction num/den.

    The denominator has lowest exponent 0, a positive leading coefficient and
    is coprime to the numerator.  A denominator equal to 1 means the value is
    a Laurent polynomial.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            q = num if den is None else num / as_ratfunc(den)
            self.num, self.den, self._hash = q.num, q.den, None
            return
        if isinstance(num, (int, Fraction)):
            if isinstance(num, Fraction):
                n = LaurentHalf.const(num.numerator)
                d = LaurentHalf.const(num.denominator)
                num, den = n, d if den is None else d * _as_laurent(den)
            else:
                num = LaurentHalf.const(num)
        if den is None:
            self.num, self.den = num, _ONE
        else:
            if isinstance(den, int):
                den = LaurentHalf.const(den)
            self.num, self.den = _normalise(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def vpow(cls, half_exp, coeff=1):
        return cls._raw(LaurentHalf.vpow(half_exp, coeff), _ONE)

    @classmethod
    def const(cls, n):
        if isinstance(n, Fraction):
            return cls(n)
        return cls._raw(LaurentHalf.const(n), _ONE)

    def is_laurent(self):
        return self.den is _ONE or self.den == _ONE

    def to_laurent(self):
        if not self.is_laurent():
            raise CoeffError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentHalf, int)):
            return self.is_laurent() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            if self.is_laurent():
                return RatFunc._raw(self.num + other.num, _ONE)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if self.is_laurent():
                return RatFunc._raw(self.num * other, _ONE)
            return RatFunc(self.num * other, self.den)
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if self.is_laurent() and other.is_laurent():
            return RatFunc._raw(self.num * other.num, _ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(v^(1/2))")
        if self.is_laurent() and other.is_laurent() and other.num.is_monomial():
            (h, a), = other.num._c.items()
            if a in (1, -1):
                return RatFunc._raw(self.num.shift(-h) * a, _ONE)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc.const(1) / (self ** (-n))
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, half_exp):
        return RatFunc._raw(self.num.shift(half_exp), self.den) if self.is_laurent() \
            else RatFunc(self.num.shift(half_exp), self.den)

    def bar(self):
        if self.is_laurent():
            return RatFunc._raw(self.num.bar(), _ONE)
        return RatFunc(self.num.bar(), self.den.bar())

    def evaluate(self, x):
        return self.num.evaluate(x) / self.den.evaluate(x)

    def to_json(self):
        if self.is_laurent():
            return self.num.to_json()
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            return cls(LaurentHalf.from_json(data["num"]), LaurentHalf.from_json(data["den"]))
        return cls(LaurentHalf.from_json(data))

    def __str__(self):
        if self.is_laurent():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


_ONE = LaurentHalf.const(1)


def _as_rat(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentHalf):
        return RatFunc._raw(x, _ONE)
    if isinstance(x, int):
        return RatFunc._raw(LaurentHalf.const(x), _ONE)
    if isinstance(x, Fraction):
        return RatFunc(x)
    return None


def _normalise(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, _ONE
    shift = den.min_exp()
    num = num.shift(-shift)
    den = den.shift(-shift)
    if den == _ONE:
        return num, _ONE
    g = _laurent_gcd(num, den)
    if not g == _ONE:
        num = num.divmod_exact(g)
        den = den.divmod_exact(g)
    if den._c[den.max_exp()] < 0:
        num, den = -num, -den
    if den == _ONE:
        return num, _ONE
    return num, den


def as_ratfunc(x):
    r = _as_rat(x)
    if r is None:
        raise TypeError(f"cannot use {type(x).__name__} as a coefficient")
    return r


V = RatFunc.vpow(2)
VINV = RatFunc.vpow(-2)
VHALF = RatFunc.vpow(1)


def vpow(k):
    """v^k for integer or half-integer k (Fraction allowed)."""
    h = Fraction(k) * 2
    if h.denominator != 1:
        raise CoeffError(f"exponent {k} is not a multiple of 1/2")
    return RatFunc.vpow(int(h))


def bar_coeff(x):
    return as_ratfunc(x).bar()


@lru_cache(maxsize=None)
def qint(r):
    """Quantum integer [r] = (v^r - v^-r)/(v - v^-1), with [-r] = -[r]."""
    if r == 0:
        return LaurentHalf.const(0)
    if r < 0:
        return -qint(-r)
    return LaurentHalf({2 * (r - 1 - 2 * k): 1 for k in range(r)})


@lru_cache(maxsize=None)
def qfactorial(n):
    out = LaurentHalf.const(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(m, r):
    """Quantum binomial for any integer m and r >= 0 (zero when r < 0)."""
    if r < 0:
        return LaurentHalf.const(0)
    num = LaurentHalf.const(1)
    for k in range(r):
        num = num * qint(m - k)
    return num.divmod_exact(qfactorial(r))


def exact_div(p, q):
    """Exact quotient of Laurent polynomials; raises CoeffError if inexact."""
    return _as_laurent(p).divmod_exact(_as_laurent(q))


def verify_binomial_identities(xmax=6, ymax=6, nmax=6):
    """Check the reflection and Vandermonde-type identities on a box.

    Returns a dict with the number of cases checked and a list of failures
    (each failure is a tuple naming the identity and its arguments).
    """
    failures = []
    checked = 0
    for n in range(nmax + 1):
        for x in range(-xmax, xmax + 1):
            checked += 1
            sign = -1 if n % 2 else 1
            if qbinom(x, n) != qbinom(n - x - 1, n) * sign:
                failures.append(("reflection", x, n))
            for y in range(-ymax, ymax + 1):
                checked += 1
                total = LaurentHalf.const(0)
                for k in range(n + 1):
                    e = x * k - y * (n - k)
                    total = total + (qbinom(x, n - k) * qbinom(y, k)).shift(2 * e)
                if total != qbinom(x + y, n):
                    failures.append(("vandermonde", x, y, n))
    return {"checked": checked, "failures": failures}
