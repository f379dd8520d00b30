"""Places of F_p(t), valuations, truncated local expansions, Cauchy profiles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Optional, Union

from .fields import (
    INF,
    FpPoly,
    RatFunc,
    check_prime,
    inverse_mod,
    is_irreducible,
    modpow_quotient,
    parse_poly,
    parse_ratfunc,
)

__all__ = [
    "Place",
    "parse_place",
    "valuation",
    "poly_order",
    "LaurentExpansion",
    "local_expansion",
    "residue_order",
    "valuation_t_power_difference",
    "cauchy_profile",
    "exm0_sequence",
    "exm1_sequence",
]

# below this degree ord_pi is found by plain repeated division
_DIVISION_DEGREE = 1 << 12


@dataclass(frozen=True)
class Place:
    """A place of F_p(t): a monic irreducible polynomial, or infinity (poly None)."""

    p: int
    poly: Optional[FpPoly] = None

    def __post_init__(self):
        check_prime(self.p)
        if self.poly is not None:
            if self.poly.p != self.p:
                raise ValueError("place polynomial has the wrong characteristic")
            if not self.poly.is_monic() or not is_irreducible(self.poly):
                raise ValueError(f"{self.poly} is not a monic irreducible")

    @classmethod
    def infinite(cls, p):
        return cls(p)

    @classmethod
    def finite(cls, poly):
        return cls(poly.p, poly)

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    @property
    def residue_size(self):
        return self.p**self.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, 0)
        return (0, self.poly.degree, self.poly.to_int())

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def __repr__(self):
        return f"Place({self.p}, {self})"


def parse_place(text, p):
    text = text.strip()
    if text == "inf":
        return Place.infinite(p)
    return Place.finite(parse_poly(text, p))


def poly_order(f, pi):
    """Largest k with pi^k dividing f (INF for f = 0).

    Huge sparse inputs are first reduced to a non-p-th power by taking
    p-th roots (ord_pi(g^p) = p * ord_pi(g)); the remaining order is then
    found by reducing modulo pi, pi^2, ... monomial by monomial.
    """
    if not f:
        return INF
    if pi.nterms == 1:  # pi = t
        return min(f.exponents())
    p = f.p
    mult = 1
    while not f.is_constant():
        root = f.pth_root()
        if root is None:
            break
        f = root
        mult *= p
    if f.is_constant():
        return 0
    k = 0
    if f.degree <= _DIVISION_DEGREE:
        while True:
            q, r = divmod(f, pi)
            if r:
                return mult * k
            f = q
            k += 1
    modulus = pi
    while not (f % modulus):
        k += 1
        modulus = modulus * pi
    return mult * k


def valuation(r, v):
    """Discrete valuation of r at the place v; INF for r = 0."""
    if isinstance(r, FpPoly):
        r = RatFunc(r)
    if not r:
        return INF
    if v.is_infinite:
        return r.den.degree - r.num.degree
    return poly_order(r.num, v.poly) - poly_order(r.den, v.poly)


@dataclass(frozen=True)
class LaurentExpansion:
    """Truncated expansion sum_k c_k * u^(lead + k) in a uniformizer u.

    u is the place polynomial for finite places and 1/t at infinity.
    Coefficients are residue-field elements (polynomials of degree below
    the place degree).  For the zero element ``lead_valuation`` is INF and
    all coefficients vanish.
    """

    place: Place
    lead_valuation: object
    coefficients: tuple
    precision: int

    def truncation(self):
        p = self.place.p
        total = RatFunc.const(p, 0)
        if self.lead_valuation == INF:
            return total
        t = RatFunc.t(p)
        u = t.inverse() if self.place.is_infinite else RatFunc(self.place.poly)
        for k, c in enumerate(self.coefficients):
            if c:
                total = total + RatFunc(c) * u ** (self.lead_valuation + k)
        return total


def local_expansion(r, v, precision):
    if precision < 1:
        raise ValueError("precision must be at least 1")
    p = v.p
    if not r:
        zeros = tuple(FpPoly(p, 0) for _ in range(precision))
        return LaurentExpansion(v, INF, zeros, precision)
    if v.is_infinite:
        # r(t) = u^(deg den - deg num) * revnum(u) / revden(u), u = 1/t
        lead = r.den.degree - r.num.degree
        rev_num = FpPoly(p, list(reversed(r.num.dense())))
        rev_den = FpPoly(p, list(reversed(r.den.dense())))
        modulus = FpPoly.monomial(p, precision)
        series = (rev_num * inverse_mod(rev_den, modulus)) % modulus
        coeffs = tuple(FpPoly(p, series.coeff(k)) for k in range(precision))
        return LaurentExpansion(v, lead, coeffs, precision)
    pi = v.poly
    lead = valuation(r, v)
    unit = r / RatFunc(pi) ** lead
    modulus = pi**precision
    series = (unit.num * inverse_mod(unit.den, modulus)) % modulus
    coeffs = []
    for _ in range(precision):
        series, digit = divmod(series, pi)
        coeffs.append(digit)
    return LaurentExpansion(v, lead, tuple(coeffs), precision)


def _factor_int(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _prime_factors(n):
    return tuple(_factor_int(n))


def residue_order(f, place):
    """Multiplicative order of f modulo the place polynomial."""
    pi = place.poly
    if not (f % pi):
        raise ValueError(f"{f} vanishes at {place}")
    n = place.residue_size - 1
    order = n
    for ell in _prime_factors(n):
        while order % ell == 0 and modpow_quotient(f, order // ell, pi).is_one():
            order //= ell
    return order


def valuation_t_power_difference(a, b, v):
    """v(t^a - t^b) from the residue order of t, never forming t^a.

    Write a - b = p^s * u with p not dividing u.  Then
    t^a - t^b = t^b (t^u - 1)^(p^s), and t^u - 1 is separable, so the
    valuation at a finite place other than t is p^s when the order of t
    in the residue field divides u, and 0 otherwise.
    """
    if a == b:
        return INF
    if a < b:
        a, b = b, a
    if v.is_infinite:
        return -a
    if v.poly.nterms == 1:
        return b
    p = v.p
    u, s = a - b, 0
    while u % p == 0:
        u //= p
        s += 1
    return p**s if u % residue_order(FpPoly.t(p), v) == 0 else 0


Sequence = Union[Callable[[int], RatFunc], str]


def _as_callable(seq, p):
    if callable(seq):
        return seq
    if isinstance(seq, str):
        return lambda n: parse_ratfunc(seq.format(n=n), p)
    raise TypeError("sequence must be a callable n -> RatFunc or a format string in {n}")


def cauchy_profile(seq, v, n_max):
    """Valuations of x_(n+1) - x_n at v for n = 1 .. n_max - 1.

    ``seq`` is a callable ``n -> RatFunc`` (see :func:`exm0_sequence`,
    :func:`exm1_sequence`) or a template such as ``"t^{n} + 1"`` whose
    ``{n}`` fields are substituted before parsing.
    """
    f = _as_callable(seq, v.p)
    terms = [f(n) for n in range(1, n_max + 1)]
    return [valuation(b - a, v) for a, b in zip(terms, terms[1:])]


def exm1_sequence(p):
    """n -> t^(p^(n!)), stored as a single sparse monomial."""
    check_prime(p)

    def term(n):
        return RatFunc(FpPoly.monomial(p, p ** factorial(n)))

    return term


def exm0_sequence(p, a, b, alpha):
    """n -> ((P_n)^n + a) / ((P_n)^(2n) + b) + alpha, P_n the product of the first n irreducibles."""
    from .fields import irreducibles

    a, b = RatFunc(a), RatFunc(b)
    if not b:
        raise ValueError("b must be nonzero")

    def term(n):
        prod = FpPoly(p, 1)
        for pi in irreducibles(p, n):
            prod = prod * pi
        pn = RatFunc(prod**n)
        return (pn + a) / (pn * pn + b) + alpha

    return term
