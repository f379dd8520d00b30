"""The iterative (Hasse-Schmidt) derivation on F_p(t).

On monomials ``D^(j)(t^i) = C(i, j) t^(i - j)``; on a quotient ``f/g`` the
value is forced by the Leibniz rule and computed by the recursion

    D^(i)(f/g) = (D^(i)(f) - sum_{j<i} D^(j)(f/g) D^(i-j)(g)) / g.

``delta_m`` sums ``(-t)^i D^(i)`` over ``i < p^m`` and always lands in the
subfield of p^m-th powers, which ``pm_power_root`` recognises through the
joint kernel of D^(1), ..., D^(p^m - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import BoundExceeded
from .fields import FpPoly, RatFunc

__all__ = [
    "DEFAULT_POWER_BOUND",
    "base_p_digits",
    "DerivationIndex",
    "lucas_binom",
    "poly_hasse_derive",
    "hasse_derive",
    "hasse_derivatives",
    "c_coeff",
    "delta_m",
    "in_derivation_kernel",
    "pm_power_root",
    "pm_power_root_direct",
]

DEFAULT_POWER_BOUND = 512


def base_p_digits(i, p):
    """Digits of i in base p, least significant first (empty for 0)."""
    digits = []
    while i:
        i, d = divmod(i, p)
        digits.append(d)
    return digits


@dataclass(frozen=True)
class DerivationIndex:
    """Index i of D^(i), with its base-p digits."""

    value: int
    p: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("derivation index must be nonnegative")

    @property
    def digits(self):
        return tuple(base_p_digits(self.value, self.p))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


def lucas_binom(i, j, p):
    """C(i, j) mod p as the product of digitwise binomials."""
    if j < 0 or j > i:
        return 0
    result = 1
    while j:
        i, a = divmod(i, p)
        j, b = divmod(j, p)
        if b > a:
            return 0
        result = result * comb(a, b) % p
    return result


def poly_hasse_derive(i, f):
    """D^(i) of a polynomial by the monomial rule."""
    p = f.p
    if i == 0:
        return f
    out = {}
    for e, c in f._c.items():
        if e >= i:
            b = lucas_binom(e, i, p)
            if b:
                out[e - i] = c * b % p
    return FpPoly._make(p, out)


def _leibniz_numerators(r, n):
    """Polynomials P_0..P_n with D^(i)(r) = P_i / g^(i+1), g = r.den.

    From g * H_i = F_i - sum_{k=1}^{i} G_k H_(i-k) where F, G, H are the
    derivatives of numerator, denominator and r; G_k vanishes for
    k > deg g so the sum is short.
    """
    f, g = r.num, r.den
    dg = g.degree
    F = [poly_hasse_derive(k, f) for k in range(n + 1)]
    G = [poly_hasse_derive(k, g) for k in range(min(n, dg) + 1)]
    gpow = [FpPoly(g.p, 1)]
    for _ in range(n):
        gpow.append(gpow[-1] * g)
    P = []
    for i in range(n + 1):
        acc = F[i] * gpow[i] if F[i] else FpPoly(g.p, 0)
        for k in range(1, min(i, dg) + 1):
            if G[k] and P[i - k]:
                acc = acc - G[k] * P[i - k] * gpow[k - 1]
        P.append(acc)
    return P, gpow


def hasse_derivatives(r, n):
    """[D^(0)(r), ..., D^(n)(r)]."""
    if r.is_polynomial():
        return [RatFunc._make(poly_hasse_derive(i, r.num), r.den) for i in range(n + 1)]
    P, gpow = _leibniz_numerators(r, n)
    g = r.den
    return [RatFunc(P[i], gpow[i] * g) for i in range(n + 1)]


def hasse_derive(i, r):
    """D^(i)(r) for r in F_p(t) (an FpPoly argument is treated as r/1)."""
    i = int(i)
    if isinstance(r, FpPoly):
        r = RatFunc(r)
    if r.is_polynomial():
        return RatFunc._make(poly_hasse_derive(i, r.num), r.den)
    return hasse_derivatives(r, i)[i]


def c_coeff(i, p):
    """The unit c_i with prod_n (D^(p^n))^(i_n) = c_i D^(i)."""
    i = int(i)
    c, prefix = 1, 0
    for n, d in enumerate(base_p_digits(i, p)):
        pn = p**n
        prefix += d * pn
        c = c * lucas_binom(prefix, d * pn, p) % p
        for a in range(1, d + 1):
            c = c * lucas_binom(a * pn, pn, p) % p
    return c


def _check_bound(p, m, bound):
    if m < 0:
        raise ValueError("m must be nonnegative")
    q = p**m
    if q > bound:
        raise BoundExceeded(f"p^m = {q} exceeds the configured bound {bound}")
    return q


def delta_m(c, m, bound=DEFAULT_POWER_BOUND):
    """sum_{i < p^m} (-t)^i D^(i)(c); the result is a p^m-th power."""
    p = c.p
    q = _check_bound(p, m, bound)
    minus_t = FpPoly.monomial(p, 1, p - 1)
    if c.is_polynomial():
        acc = FpPoly(p, 0)
        for i in range(q):
            d = poly_hasse_derive(i, c.num)
            if d:
                acc = acc + minus_t**i * d
        return RatFunc._make(acc, c.den)
    # common denominator g^q: term i contributes (-t)^i P_i g^(q-1-i)
    P, gpow = _leibniz_numerators(c, q - 1)
    acc = FpPoly(p, 0)
    for i in range(q):
        if P[i]:
            acc = acc + minus_t**i * P[i] * gpow[q - 1 - i]
    return RatFunc(acc, gpow[q - 1] * c.den)


def in_derivation_kernel(c, m):
    """True iff D^(l)(c) = 0 for every 1 <= l < p^m."""
    q = c.p**m
    if q == 1:
        return True
    if c.is_polynomial():
        return all(not poly_hasse_derive(l, c.num) for l in range(1, q))
    P, _ = _leibniz_numerators(c, q - 1)
    return all(not P[l] for l in range(1, q))


def pm_power_root_direct(c, m):
    """r with r^(p^m) = c read off the exponents, or None.

    In reduced form c is a p^m-th power exactly when every exponent of
    numerator and denominator is divisible by p^m.
    """
    q = c.p**m
    num, den = c.num, c.den
    if any(e % q for e in num.exponents()) or any(e % q for e in den.exponents()):
        return None
    p = c.p
    return RatFunc._make(
        FpPoly._make(p, {e // q: v for e, v in num._c.items()}),
        FpPoly._make(p, {e // q: v for e, v in den._c.items()}),
    )


def pm_power_root(c, m):
    """The p^m-th root of c, or None when c is not a p^m-th power.

    The decision is the derivation-kernel test; the exponent test is run
    alongside and any disagreement is an internal error.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    in_kernel = in_derivation_kernel(c, m)
    root = pm_power_root_direct(c, m)
    if in_kernel != (root is not None):
        raise AssertionError(f"kernel test and exponent test disagree on {c}")
    return root
