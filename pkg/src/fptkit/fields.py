"""Exact arithmetic in F_p, F_p[t] and F_p(t).

Polynomials are stored sparsely as ``{exponent: coefficient}`` with no zero
coefficients, so monomials such as ``t^(2^24)`` cost one dictionary entry.
Operations that genuinely need a dense representation (long division, gcd)
switch to coefficient lists internally.

Elements of F_p are plain ``int`` values in ``range(p)``.
"""

from __future__ import annotations

import re
from functools import total_ordering

from .errors import ParseError

__all__ = [
    "INF",
    "NEG_INF",
    "MAX_PRIME",
    "check_prime",
    "FpPoly",
    "RatFunc",
    "poly_gcd",
    "poly_xgcd",
    "inverse_mod",
    "modpow_quotient",
    "is_irreducible",
    "iter_irreducibles",
    "irreducibles",
    "parse_ratfunc",
    "parse_poly",
    "parse_expression",
]

MAX_PRIME = 251

# divmod on a dividend above this degree would allocate a dense list that big
DENSE_LIMIT = 1 << 20


@total_ordering
class _Infinity:
    """Signed infinity that compares correctly against ints.

    Used for the degree of the zero polynomial and the valuation of zero.
    """

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("inf", self.sign))

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, k):
        if isinstance(k, int) and k > 0:
            return self
        raise ArithmeticError("infinity may only be scaled by a positive integer")

    __rmul__ = __mul__

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "+inf" if self.sign > 0 else "-inf"


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def check_prime(p):
    if not isinstance(p, int) or p < 2 or p > MAX_PRIME:
        raise ValueError(f"modulus must be a prime in [2, {MAX_PRIME}], got {p!r}")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")
    return p


# -- dense helpers (coefficient lists, lowest degree first) -----------------

def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _ddivmod(a, b, p):
    """Long division of dense lists; b must be nonzero and trimmed."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    bterms = [(k, c) for k, c in enumerate(b[:-1]) if c]
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if not c:
            continue
        c = c * inv % p
        s = k - db
        q[s] = c
        for j, bj in bterms:
            a[s + j] -= c * bj
    r = [x % p for x in a[:db]]
    return q, _trim(r)


def _dmod(a, b, p):
    return _ddivmod(a, b, p)[1]


def _dmul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    bnz = [(j, c) for j, c in enumerate(b) if c]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in bnz:
                r[i + j] += ai * bj
    return _trim([x % p for x in r])


def _dmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _dgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _dmod(a, b, p)
    return _dmonic(a, p)


# -- polynomials -------------------------------------------------------------

class FpPoly:
    """Immutable sparse polynomial in ``t`` over F_p."""

    __slots__ = ("p", "_c", "_hash")

    def __init__(self, p, coeffs=0):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        elif isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        c = {}
        for e, v in coeffs.items():
            if e < 0:
                raise ValueError("negative exponent in polynomial")
            v %= p
            if v:
                c[e] = v
        self.p = p
        self._c = c
        self._hash = None

    @classmethod
    def _make(cls, p, c):
        obj = object.__new__(cls)
        obj.p = p
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def _from_dense(cls, p, a):
        return cls._make(p, {e: v for e, v in enumerate(a) if v})

    @classmethod
    def monomial(cls, p, e, c=1):
        c %= p
        return cls._make(p, {e: c} if c else {})

    @classmethod
    def t(cls, p):
        return cls._make(p, {1: 1})

    @classmethod
    def from_int(cls, p, n):
        """Polynomial whose coefficient vector is the base-p expansion of n."""
        c, e = {}, 0
        while n:
            n, d = divmod(n, p)
            if d:
                c[e] = d
            e += 1
        return cls._make(p, c)

    def to_int(self):
        """Inverse of :meth:`from_int` (the polynomial evaluated at t = p)."""
        return sum(v * self.p**e for e, v in self._c.items())

    # -- inspection

    @property
    def degree(self):
        return max(self._c) if self._c else NEG_INF

    @property
    def lc(self):
        return self._c[max(self._c)] if self._c else 0

    @property
    def nterms(self):
        return len(self._c)

    def coeff(self, e):
        return self._c.get(e, 0)

    def terms(self):
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._c.items(), reverse=True)

    def exponents(self):
        return self._c.keys()

    def is_zero(self):
        return not self._c

    def is_one(self):
        return self._c == {0: 1}

    def is_constant(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def is_monic(self):
        return self.lc == 1

    def dense(self):
        if not self._c:
            return []
        d = self.degree
        if d > DENSE_LIMIT:
            raise OverflowError(f"refusing dense expansion of degree {d}")
        a = [0] * (d + 1)
        for e, v in self._c.items():
            a[e] = v
        return a

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other % self.p} if other % self.p else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self._c.items())))
        return self._hash

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpPoly(self.p, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.p
        if len(other._c) > len(self._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        c = dict(a)
        for e, v in b.items():
            s = (c.get(e, 0) + v) % p
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return FpPoly._make(p, c)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return FpPoly._make(p, {e: p - v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, k):
        p = self.p
        k %= p
        if not k:
            return FpPoly._make(p, {})
        if k == 1:
            return self
        return FpPoly._make(p, {e: v * k % p for e, v in self._c.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return FpPoly._make(self.p, {e + k: v for e, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.p
        a, b = self._c, other._c
        if not a or not b:
            return FpPoly._make(p, {})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if cb == 1:
                return FpPoly._make(p, {e + eb: v for e, v in a.items()})
            return FpPoly._make(p, {e + eb: v * cb % p for e, v in a.items()})
        r = {}
        get = r.get
        bl = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bl:
                k = ea + eb
                r[k] = get(k, 0) + ca * cb
        return FpPoly._make(p, {e: v % p for e, v in r.items() if v % p})

    __rmul__ = __mul__

    def frobenius(self, k=1):
        """Return self^(p^k); coefficients are fixed because F_p is perfect."""
        q = self.p**k
        return FpPoly._make(self.p, {e * q: v for e, v in self._c.items()})

    def pth_root(self):
        """Inverse of :meth:`frobenius` with k = 1, or None if not a p-th power."""
        p = self.p
        if any(e % p for e in self._c):
            return None
        return FpPoly._make(p, {e // p: v for e, v in self._c.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        p = self.p
        if n == 0:
            return FpPoly._make(p, {0: 1})
        if len(self._c) == 1:
            (e, v), = self._c.items()
            return FpPoly._make(p, {e * n: pow(v, n, p)})
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        result = FpPoly._make(p, {0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result.frobenius(k) if k else result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        if len(other._c) == 1 and len(self._c) and all(
            e >= other.degree for e in self._c
        ):
            # division by a monomial with zero remainder
            (eb, cb), = other._c.items()
            inv = pow(cb, -1, p)
            return FpPoly._make(p, {e - eb: v * inv % p for e, v in self._c.items()}), FpPoly._make(p, {})
        if self.degree < other.degree:
            return FpPoly._make(p, {}), self
        q, r = _ddivmod(self.dense(), other.dense(), p)
        return FpPoly._from_dense(p, q), FpPoly._from_dense(p, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if self.degree < other.degree:
            return self
        if self.degree > 4 * other.degree + 64 and len(self._c) * 8 < self.degree:
            return _sparse_mod(self, other)
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self):
        if not self._c:
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def __call__(self, x):
        """Evaluate at x in F_p."""
        p = self.p
        return sum(v * pow(x, e, p) for e, v in self._c.items()) % p

    # -- display

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.terms():
            if e == 0:
                parts.append(str(v))
                continue
            mono = "t" if e == 1 else f"t^{e}"
            parts.append(mono if v == 1 else f"{v}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FpPoly({self.p}, {self})"


def _sparse_mod(f, m):
    """f mod m reducing each monomial by square-and-multiply."""
    p = f.p
    md = m.dense()
    acc = []
    cache = {}
    tmod = _dmod([0, 1], md, p)
    for e, v in f._c.items():
        r = cache.get(e)
        if r is None:
            r = _dpowmod(tmod, e, md, p)
            cache[e] = r
        acc = _dadd(acc, [x * v % p for x in r], p)
    return FpPoly._from_dense(p, acc)


def _dadd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, x in enumerate(b):
        r[i] = (r[i] + x) % p
    return _trim(r)


def _dpowmod(base, e, md, p):
    result = [1] if len(md) > 1 else []
    base = _dmod(base, md, p)
    while e:
        if e & 1:
            result = _dmod(_dmul(result, base, p), md, p)
        e >>= 1
        if e:
            base = _dmod(_dmul(base, base, p), md, p)
    return result


def modpow_quotient(base, e, modulus):
    """Return base^e mod modulus by square-and-multiply.

    ``base`` may be a huge sparse polynomial; it is reduced monomial by
    monomial first, and base^e itself is never formed.
    """
    if not isinstance(e, int) or e < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if modulus.degree < 1:
        raise ValueError("modulus must be nonconstant")
    p = modulus.p
    md = modulus.dense()
    b = (base % modulus).dense()
    return FpPoly._from_dense(p, _dpowmod(b, e, md, p))


def poly_gcd(a, b):
    """Monic gcd (zero if both inputs are zero)."""
    p = a.p
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return FpPoly._make(p, {0: 1})
    if a.degree > DENSE_LIMIT and a.nterms * 8 < a.degree:
        a = a % b
    elif b.degree > DENSE_LIMIT and b.nterms * 8 < b.degree:
        b = b % a
    return FpPoly._from_dense(p, _dgcd(a.dense(), b.dense(), p))


def poly_xgcd(a, b):
    """Return (g, s, u) with g = s*a + u*b monic."""
    p = a.p
    zero, one = FpPoly(p, 0), FpPoly(p, 1)
    r0, r1, s0, s1, u0, u1 = a, b, one, zero, zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if not r0:
        return r0, s0, u0
    inv = pow(r0.lc, -1, p)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def inverse_mod(a, m):
    g, s, _ = poly_xgcd(a % m, m)
    if not g.is_one():
        raise ZeroDivisionError(f"{a} is not invertible modulo {m}")
    return s % m


# -- irreducibles -------------------------------------------------------------

def is_irreducible(f):
    """Ben-Or test: f of degree d is irreducible iff gcd(t^(p^i) - t, f) = 1 for i <= d/2."""
    d = f.degree
    if d == NEG_INF or d < 1:
        return False
    if d == 1:
        return True
    p = f.p
    md = f.monic().dense()
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _dpowmod(h, p, md, p)
        diff = _dadd(h, [0, p - 1], p)
        if len(_dgcd(md, diff, p)) != 1:
            return False
    return True


_IRR_CACHE = {}  # p -> (found list, next integer code to test)


def _extend_irreducibles(p):
    found, code = _IRR_CACHE.setdefault(p, ([], p))
    while True:
        f = FpPoly.from_int(p, code)
        if f.lc != 1:
            # past the monic block of this degree
            code = p ** (f.degree + 1)
            continue
        code += 1
        if is_irreducible(f):
            found.append(f)
            _IRR_CACHE[p] = (found, code)
            return f


def iter_irreducibles(p, max_degree=None):
    """Yield monic irreducibles ordered by degree, then by coefficient vector.

    The coefficient vector is read as a base-p integer with the leading
    coefficient most significant, i.e. the polynomial evaluated at t = p.
    """
    check_prime(p)
    i = 0
    while True:
        found = _IRR_CACHE.get(p, ([], p))[0]
        f = found[i] if i < len(found) else _extend_irreducibles(p)
        if max_degree is not None and f.degree > max_degree:
            return
        yield f
        i += 1


def irreducibles(p, k):
    """The first k monic irreducibles of F_p[t]."""
    out = []
    if k <= 0:
        return out
    for f in iter_irreducibles(p):
        out.append(f)
        if len(out) == k:
            break
    return out


# -- rational functions ---------------------------------------------------------

class RatFunc:
    """Element of F_p(t) in canonical form: coprime numerator, monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, p=None):
        if isinstance(num, int):
            if p is None:
                raise ValueError("an integer numerator needs p")
            num = FpPoly(p, num)
        p = num.p
        if den is None:
            den = FpPoly._make(p, {0: 1})
        elif isinstance(den, int):
            den = FpPoly(p, den)
        if den.p != p:
            raise ValueError(f"characteristic mismatch: {p} vs {den.p}")
        if not den:
            raise ZeroDivisionError("division by zero polynomial")
        if not num:
            den = FpPoly._make(p, {0: 1})
        elif not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = pow(lc, -1, p)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def t(cls, p):
        return cls._make(FpPoly.t(p), FpPoly._make(p, {0: 1}))

    @classmethod
    def const(cls, p, c):
        return cls._make(FpPoly(p, c), FpPoly._make(p, {0: 1}))

    @property
    def p(self):
        return self.num.p

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def height(self):
        return max(self.num.degree if self.num else 0, self.den.degree)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, FpPoly)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return RatFunc.const(self.p, other)
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return RatFunc._make(other, FpPoly._make(self.p, {0: 1}))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a:
            return other
        if not c:
            return self
        if b == d:
            return RatFunc(a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return RatFunc._make_monic(a * d + b * c, b * d)
        s = d // g
        return RatFunc(a * s + c * (b // g), b * s)

    __radd__ = __add__

    @staticmethod
    def _make_monic(num, den):
        # caller guarantees gcd(num, den) = 1
        p = num.p
        if not num:
            return RatFunc._make(num, FpPoly._make(p, {0: 1}))
        lc = den.lc
        if lc != 1:
            inv = pow(lc, -1, p)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._make(num, den)

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return RatFunc._make(FpPoly._make(self.p, {}), FpPoly._make(self.p, {0: 1}))
        if b.is_one() and d.is_one():
            return RatFunc._make(a * c, b)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_one():
            a, d = a // g1, d // g1
        if not g2.is_one():
            c, b = c // g2, b // g2
        return RatFunc._make_monic(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero polynomial")
        return RatFunc._make_monic(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._make(self.num**n, self.den**n)

    def frobenius(self, k=1):
        return RatFunc._make(self.num.frobenius(k), self.den.frobenius(k))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if self.num.nterms > 1:
            n = f"({n})"
        if self.den.nterms > 1 or self.den.lc != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self.p}, {self})"


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected input", pos)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over ``+ - * / ^`` with parentheses.

    ``symbol(name, pos)`` resolves identifiers and ``constant(n)`` builds
    integer literals; all other arithmetic uses the values' operators.
    """

    def __init__(self, text, symbol, constant):
        self.tokens = _tokenize(text)
        self.i = 0
        self.symbol = symbol
        self.constant = constant

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.peek()[2])
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    try:
                        value = value / rhs
                    except ZeroDivisionError:
                        raise ZeroDivisionError(
                            f"division by zero polynomial at position {pos}"
                        ) from None
            else:
                return value

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            operand = self.factor()
            return -operand if val == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base**exp
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.constant(val)
        if kind == "name":
            return self.symbol(val, pos)
        if kind == "op" and val == "(":
            value = self.expr()
            kind, val2, pos2 = self.take()
            if not (kind == "op" and val2 == ")"):
                raise ParseError("expected ')'", pos2)
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_expression(text, symbol, constant):
    return _Parser(text, symbol, constant).parse()


def parse_ratfunc(text, p):
    """Parse a field element such as ``"(t^2+t)/(t+1)"``."""
    check_prime(p)

    def symbol(name, pos):
        if name != "t":
            raise ParseError(f"unknown symbol {name!r}", pos)
        return RatFunc.t(p)

    return parse_expression(text, symbol, lambda n: RatFunc.const(p, n))


def parse_poly(text, p):
    r = parse_ratfunc(text, p)
    if not r.is_polynomial():
        raise ValueError(f"{text!r} is not a polynomial")
    return r.num
