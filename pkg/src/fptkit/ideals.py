"""Polynomial ideals over K = F_p(t).

Multivariate polynomials in X0..XN with F_p(t) coefficients, Buchberger's
algorithm with the Gebauer-Moeller pair update, and the ideal operations
built on it: coefficient-wise Hasse derivations, the test for closure
under D^(1), ..., D^(p^m - 1), descent to generators with p^m-th power
coefficients, intersections by elimination, and vanishing ideals of
finite point sets in projective space.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, reduce

from .derivation import (
    DEFAULT_POWER_BOUND,
    _check_bound,
    delta_m,
    hasse_derivatives,
    pm_power_root,
)
from .errors import NotDClosed, ParseError
from .fields import FpPoly, RatFunc, check_prime, parse_expression

__all__ = [
    "MultiPoly",
    "PolyIdeal",
    "monomial_key",
    "parse_multipoly",
    "parse_generators",
    "groebner_basis",
    "normal_form",
    "hasse_derive_multi",
    "RationalityCertificate",
    "is_pm_rational",
    "descend_generators",
    "intersect_ideals",
    "vanishing_ideal",
]


# -- monomial orders ---------------------------------------------------------

def _grevlex(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex(m):
    return m


def _grlex(m):
    return (sum(m),) + m


def _elim1(m):
    # eliminates the first variable: block order (X0) > (X1..XN, grevlex)
    return (m[0],) + _grevlex(m[1:])


_ORDERS = {"grevlex": _grevlex, "lex": _lex, "grlex": _grlex, "elim1": _elim1}


def monomial_key(order):
    """Sort key for the named order; larger key means larger monomial."""
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


# -- polynomials -------------------------------------------------------------

def _mono_str(m):
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(f"X{k}")
        elif e:
            parts.append(f"X{k}^{e}")
    return "*".join(parts)


class MultiPoly:
    """Sparse polynomial in X0..X(nvars-1) with F_p(t) coefficients."""

    __slots__ = ("p", "nvars", "terms", "_lm", "_hash")

    def __init__(self, p, nvars, terms=None):
        self.p = p
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._lm = {}
        self._hash = None

    @classmethod
    def _make(cls, p, nvars, terms):
        obj = object.__new__(cls)
        obj.p = p
        obj.nvars = nvars
        obj.terms = terms
        obj._lm = {}
        obj._hash = None
        return obj

    @classmethod
    def var(cls, p, nvars, k):
        m = tuple(1 if j == k else 0 for j in range(nvars))
        return cls._make(p, nvars, {m: RatFunc.const(p, 1)})

    @classmethod
    def const(cls, p, nvars, c):
        c = c if isinstance(c, RatFunc) else RatFunc.const(p, c) if isinstance(c, int) else RatFunc(c)
        return cls(p, nvars, {(0,) * nvars: c})

    # -- inspection

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, RatFunc)):
            return self == MultiPoly.const(self.p, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self.terms.items())))
        return self._hash

    @property
    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def is_scalar(self):
        return not self.terms or set(self.terms) == {(0,) * self.nvars}

    def coefficients(self):
        return list(self.terms.values())

    def leading_monomial(self, order="grevlex"):
        lm = self._lm.get(order)
        if lm is None:
            lm = max(self.terms, key=monomial_key(order))
            self._lm[order] = lm
        return lm

    def leading_coefficient(self, order="grevlex"):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order="grevlex"):
        if not self.terms:
            return self
        inv = self.leading_coefficient(order).inverse()
        return self._make(self.p, self.nvars, {m: c * inv for m, c in self.terms.items()})

    def map_coefficients(self, fn):
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return MultiPoly._make(self.p, self.nvars, out)

    def drop_first_variable(self):
        return MultiPoly._make(self.p, self.nvars - 1, {m[1:]: c for m, c in self.terms.items()})

    def add_first_variable(self, e=0):
        return MultiPoly._make(self.p, self.nvars + 1, {(e,) + m: c for m, c in self.terms.items()})

    def __call__(self, point):
        """Evaluate at a point with coordinates in F_p(t)."""
        total = RatFunc.const(self.p, 0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term = term * (x if isinstance(x, RatFunc) else RatFunc.const(self.p, x)) ** e
            total = total + term
        return total

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars or other.p != self.p:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, RatFunc, FpPoly)):
            return MultiPoly.const(self.p, self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._make(self.p, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.p, self.nvars, {m: -c for m, c in self.terms.items()})

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
        if isinstance(other, (int, RatFunc, FpPoly)):
            c = other if isinstance(other, RatFunc) else RatFunc.const(self.p, other) if isinstance(other, int) else RatFunc(other)
            if not c:
                return MultiPoly._make(self.p, self.nvars, {})
            return MultiPoly._make(self.p, self.nvars, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._make(self.p, self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_scalar():
                raise ValueError("can only divide by elements of the coefficient field")
            other = other.terms.get((0,) * self.nvars)
            if other is None:
                raise ZeroDivisionError("division by zero polynomial")
        if isinstance(other, int):
            other = RatFunc.const(self.p, other)
        if isinstance(other, FpPoly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.const(self.p, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift_mul(self, mono, c):
        """c * X^mono * self."""
        return MultiPoly._make(
            self.p,
            self.nvars,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_grevlex, reverse=True):
            c = self.terms[m]
            ms = _mono_str(m)
            cs = str(c)
            if not ms:
                parts.append(f"({cs})" if c.num.nterms > 1 and not c.is_polynomial() else cs)
            elif c == 1:
                parts.append(ms)
            else:
                if c.num.nterms > 1 or not c.is_polynomial():
                    cs = f"({cs})"
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.p}, {self.nvars}, {self})"


_VAR = re.compile(r"X(\d+)")


def parse_multipoly(text, p, nvars=None):
    """Parse a polynomial in X0..XN over F_p(t), e.g. ``"X0 + t^2*X1"``."""
    check_prime(p)
    if nvars is None:
        nvars = max((int(k) + 1 for k in _VAR.findall(text)), default=1)

    def symbol(name, pos):
        if name == "t":
            return MultiPoly.const(p, nvars, RatFunc.t(p))
        m = _VAR.fullmatch(name)
        if m and int(m.group(1)) < nvars:
            return MultiPoly.var(p, nvars, int(m.group(1)))
        raise ParseError(f"unknown symbol {name!r}", pos)

    return parse_expression(text, symbol, lambda n: MultiPoly.const(p, nvars, n))


def parse_generators(text, p, nvars=None):
    """Generators from text with one polynomial per line.

    Blank lines and ``#`` comments are skipped; all generators share the
    variable count of the largest index that appears.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if nvars is None:
        nvars = max((int(k) + 1 for ln in lines for k in _VAR.findall(ln)), default=1)
    return [parse_multipoly(ln, p, nvars) for ln in lines]


# -- Groebner bases ----------------------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _reduce(terms, basis, key, lms):
    """Full reduction of a term dict by monic polynomials ``basis``."""
    f = dict(terms)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for g, gm in zip(basis, lms):
            if _divides(gm, m):
                shift = tuple(a - b for a, b in zip(m, gm))
                for gmono, gc in g.terms.items():
                    if gmono == gm:
                        continue
                    nm = tuple(a + b for a, b in zip(gmono, shift))
                    delta = c * gc
                    v = f.get(nm)
                    nv = -delta if v is None else v - delta
                    if nv:
                        f[nm] = nv
                    else:
                        f.pop(nm, None)
                break
        else:
            rem[m] = c
    return rem


def _spoly(f, g, fm, gm):
    l = _lcm(fm, gm)
    one = RatFunc.const(f.p, 1)
    a = f.shift_mul(tuple(x - y for x, y in zip(l, fm)), one)
    b = g.shift_mul(tuple(x - y for x, y in zip(l, gm)), one)
    return a - b


def _buchberger(gens, order):
    key = monomial_key(order)
    polys = []  # every basis element ever added
    lms = []
    active = []  # indices of the current basis (Gebauer-Moeller G)
    pairs = []

    def update(h):
        hm = lms[h]
        cands = [(h, g) for g in active]
        kept = []
        for idx, (_, g) in enumerate(cands):
            l = _lcm(hm, lms[g])
            if _coprime(hm, lms[g]):
                kept.append((h, g))
                continue
            others = [x for _, x in cands[idx + 1:]] + [x for _, x in kept]
            if not any(_divides(_lcm(hm, lms[x]), l) for x in others):
                kept.append((h, g))
        new_pairs = [(a, b) for a, b in kept if not _coprime(lms[a], lms[b])]
        old = []
        for a, b in pairs:
            l = _lcm(lms[a], lms[b])
            if (
                _divides(hm, l)
                and _lcm(lms[a], hm) != l
                and _lcm(hm, lms[b]) != l
            ):
                continue
            old.append((a, b))
        pairs[:] = old + new_pairs
        active[:] = [g for g in active if not _divides(hm, lms[g])] + [h]

    def add(poly):
        poly = poly.monic(order)
        polys.append(poly)
        lms.append(poly.leading_monomial(order))
        update(len(polys) - 1)

    for g in gens:
        if not g:
            continue
        basis = [polys[i] for i in active]
        rem = _reduce(g.terms, basis, key, [lms[i] for i in active])
        if rem:
            add(MultiPoly._make(g.p, g.nvars, rem))

    while pairs:
        # normal selection strategy: smallest lcm first
        best = min(range(len(pairs)), key=lambda k: key(_lcm(lms[pairs[k][0]], lms[pairs[k][1]])))
        a, b = pairs.pop(best)
        s = _spoly(polys[a], polys[b], lms[a], lms[b])
        if not s:
            continue
        rem = _reduce(s.terms, [polys[i] for i in active], key, [lms[i] for i in active])
        if rem:
            add(MultiPoly._make(s.p, s.nvars, rem))

    basis = [polys[i] for i in active]
    bl = [lms[i] for i in active]
    # interreduce into the reduced basis
    reduced = []
    for k, g in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        olms = bl[:k] + bl[k + 1:]
        tail = _reduce({m: c for m, c in g.terms.items() if m != bl[k]}, others, key, olms)
        tail[bl[k]] = g.terms[bl[k]]
        reduced.append(MultiPoly._make(g.p, g.nvars, tail))
    reduced.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return reduced


class PolyIdeal:
    """Ideal of F_p(t)[X0..XN] given by generators; the reduced basis is cached."""

    def __init__(self, generators, order="grevlex", *, nvars=None, p=None):
        gens = tuple(generators)
        if gens:
            nvars = gens[0].nvars if nvars is None else nvars
            p = gens[0].p if p is None else p
        if nvars is None or p is None:
            raise ValueError("an ideal without generators needs nvars and p")
        for g in gens:
            if g.nvars != nvars or g.p != p:
                raise ValueError("generators must share variable count and characteristic")
        monomial_key(order)
        self.generators = gens
        self.order = order
        self.nvars = nvars
        self.p = p

    @cached_property
    def basis(self):
        """The reduced Groebner basis (computed once)."""
        return tuple(_buchberger(self.generators, self.order))

    def normal_form(self, f):
        key = monomial_key(self.order)
        lms = [g.leading_monomial(self.order) for g in self.basis]
        return MultiPoly._make(f.p, f.nvars, _reduce(f.terms, self.basis, key, lms))

    def __contains__(self, f):
        return not self.normal_form(f)

    def is_unit(self):
        return any(g.is_scalar() for g in self.basis)

    def __eq__(self, other):
        if not isinstance(other, PolyIdeal):
            return NotImplemented
        if other.order != self.order:
            other = PolyIdeal(other.generators, self.order, nvars=other.nvars, p=other.p)
        return self.nvars == other.nvars and self.p == other.p and self.basis == other.basis

    __hash__ = None

    def __repr__(self):
        return f"PolyIdeal([{', '.join(map(str, self.generators))}], order={self.order!r})"


def groebner_basis(ideal):
    return list(ideal.basis)


def normal_form(f, ideal):
    return ideal.normal_form(f)


# -- derivations on ideals ----------------------------------------------------

def hasse_derive_multi(i, f):
    """Apply D^(i) to every coefficient; the variables X_k are constants."""
    i = int(i)
    return f.map_coefficients(lambda c: hasse_derivatives(c, i)[i])


def _all_derivatives(f, n):
    """[D^(0)(f), ..., D^(n)(f)] sharing one recursion per coefficient."""
    per_coeff = {m: hasse_derivatives(c, n) for m, c in f.terms.items()}
    out = []
    for i in range(n + 1):
        out.append(
            MultiPoly._make(f.p, f.nvars, {m: ds[i] for m, ds in per_coeff.items() if ds[i]})
        )
    return out


@dataclass
class RationalityCertificate:
    """Outcome of :func:`is_pm_rational`.

    ``witnesses`` holds ``(i, g, remainder)`` for every basis element g
    whose derivative D^(i)(g) has the nonzero normal form ``remainder``.
    """

    rational: bool
    m: int
    tested: tuple
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.rational


def is_pm_rational(ideal, m, *, reduced_tests=False, bound=DEFAULT_POWER_BOUND, first_only=False):
    """Whether D^(i)(I) is contained in I for all 1 <= i < p^m.

    Checking the reduced basis suffices by the Leibniz rule.  With
    ``reduced_tests`` only the indices p^0, ..., p^(m-1) are tried; every
    other D^(i) below p^m is a unit multiple of a composition of those.
    """
    p = ideal.p
    q = _check_bound(p, m, bound)
    tests = tuple(p**s for s in range(m)) if reduced_tests else tuple(range(1, q))
    witnesses = []
    top = max(tests, default=0)
    for g in ideal.basis:
        ders = _all_derivatives(g, top)
        for i in tests:
            d = ders[i]
            if not d:
                continue
            r = ideal.normal_form(d)
            if r:
                witnesses.append((i, g, r))
                if first_only:
                    return RationalityCertificate(False, m, tests, witnesses)
    return RationalityCertificate(not witnesses, m, tests, witnesses)


def descend_generators(ideal, m, bound=DEFAULT_POWER_BOUND):
    """Generators of the ideal whose coefficients are all p^m-th powers.

    For each reduced basis element f: make f monic, emit
    g = sum_a delta_m(c_a) X^a (= f + sum_{i>=1} (-t)^i D^(i)(f)), replace
    f by f - g, repeat until f = 0.  Because delta_m(1) = 1 the leading
    term cancels, so the leading monomial strictly drops each round.
    Raises NotDClosed when the ideal is not closed under the derivations.
    """
    cert = is_pm_rational(ideal, m, bound=bound)
    if not cert:
        raise NotDClosed(cert)
    order = ideal.order
    out = []
    for f in ideal.basis:
        while f:
            f = f.monic(order)
            g = f.map_coefficients(lambda c: delta_m(c, m, bound))
            out.append(g)
            f = f - g
    for g in out:
        for c in g.coefficients():
            if pm_power_root(c, m) is None:
                raise AssertionError(f"descended coefficient {c} is not a p^{m}-th power")
    return out


# -- intersections and vanishing ideals ----------------------------------------

def intersect_ideals(I, J):
    """I cap J by eliminating w from w*I + (1 - w)*J."""
    if I.nvars != J.nvars or I.p != J.p:
        raise ValueError("ideals live in different rings")
    p, n = I.p, I.nvars
    w = MultiPoly.var(p, n + 1, 0)
    one = MultiPoly.const(p, n + 1, 1)
    gens = [w * f.add_first_variable() for f in I.generators]
    gens += [(one - w) * g.add_first_variable() for g in J.generators]
    basis = _buchberger(gens, "elim1")
    kept = [g.drop_first_variable() for g in basis if all(m[0] == 0 for m in g.terms)]
    return PolyIdeal(kept, I.order, nvars=n, p=p)


def _point_ideal(point, p):
    n = len(point)
    X = [MultiPoly.var(p, n, k) for k in range(n)]
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            g = X[i] * point[j] - X[j] * point[i]
            if g:
                gens.append(g)
    return PolyIdeal(gens, nvars=n, p=p)


def vanishing_ideal(points, N=None, p=None):
    """Homogeneous ideal of a finite set of points in P^N(F_p(t)).

    Each point contributes the ideal of 2x2 minors X_i P_j - X_j P_i; the
    result is the intersection of those.
    """
    pts = []
    for pt in points:
        coords = []
        for x in pt:
            if isinstance(x, RatFunc):
                p = x.p if p is None else p
            coords.append(x)
        pts.append(coords)
    if p is None:
        raise ValueError("cannot infer p; pass p explicitly")
    check_prime(p)
    if not pts:
        raise ValueError("need at least one point")
    if N is None:
        N = len(pts[0]) - 1
    norm = []
    for coords in pts:
        if len(coords) != N + 1:
            raise ValueError(f"point {coords} does not have {N + 1} coordinates")
        coords = [x if isinstance(x, RatFunc) else RatFunc.const(p, x) for x in coords]
        if not any(coords):
            raise ValueError("the zero vector is not a projective point")
        norm.append(coords)
    return reduce(intersect_ideals, (_point_ideal(c, p) for c in norm))
