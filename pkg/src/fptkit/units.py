"""S-unit groups of F_p(t), local m-th power residues, and the p-power filtration.

For a finite set T of places containing infinity, the T-units are
F_p^* x (free abelian group on the finite places of T).  Everything here
works on that exponent lattice: reduction into residue fields with
brute-force discrete logs, the greedy search for places that detect
O_T^*/(O_T^*)^m, and the chain U_n = H cap (K^*)^(p^n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Optional

from .errors import BoundExceeded, NotAnSUnit, NotAUnitAt
from .fields import FpPoly, RatFunc, inverse_mod, iter_irreducibles, modpow_quotient
from .places import Place, poly_order, residue_order

__all__ = [
    "DLOG_BOUND",
    "SUnitGroup",
    "SUnitVector",
    "LocalQuotientImage",
    "primitive_root",
    "s_unit_decompose",
    "residue_discrete_log",
    "local_unit_image",
    "CspStep",
    "CspCertificate",
    "csp_witness_search",
    "verify_injective",
    "integer_kernel",
    "hermite_normal_form",
    "is_pn_power_lattice",
    "FiltrationLevel",
    "FiltrationReport",
    "frobenius_filtration",
]

DLOG_BOUND = 1 << 16


def primitive_root(p):
    """Smallest generator of F_p^*."""
    if p == 2:
        return 1
    n = p - 1
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in primes):
            return g
    raise AssertionError("unreachable for prime p")


@dataclass(frozen=True)
class SUnitGroup:
    """O_T^* for a finite place set T (infinity required)."""

    p: int
    places: tuple

    def __init__(self, places, p=None, implicit_infinity=False):
        places = list(places)
        if p is None:
            if not places:
                raise ValueError("empty place set needs p")
            p = places[0].p
        if any(v.p != p for v in places):
            raise ValueError("places must share the characteristic")
        if not any(v.is_infinite for v in places):
            if not implicit_infinity:
                raise ValueError("T must contain the infinite place (or pass implicit_infinity=True)")
            places.append(Place.infinite(p))
        uniq = sorted(set(places), key=Place.sort_key)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "places", tuple(uniq))

    @property
    def finite_places(self):
        return tuple(v for v in self.places if not v.is_infinite)

    @property
    def rank(self):
        return len(self.finite_places)

    def quotient_shape(self, m):
        """Cyclic factors of O_T^*/(O_T^*)^m: constants first, then one per finite place."""
        return (gcd(m, self.p - 1),) + (m,) * self.rank

    def element(self, constant, exponents):
        return SUnitVector(self, constant % self.p, tuple(exponents))


@dataclass(frozen=True)
class SUnitVector:
    """constant * prod pi_i^(e_i) over the finite places of the group."""

    group: SUnitGroup
    constant: int
    exponents: tuple

    def __post_init__(self):
        if not self.constant % self.group.p:
            raise ValueError("constant must be a unit of F_p")
        if len(self.exponents) != self.group.rank:
            raise ValueError("exponent vector has the wrong length")

    def to_ratfunc(self):
        p = self.group.p
        num, den = FpPoly(p, self.constant), FpPoly(p, 1)
        for v, e in zip(self.group.finite_places, self.exponents):
            if e > 0:
                num = num * v.poly**e
            elif e < 0:
                den = den * v.poly ** (-e)
        return RatFunc(num, den)

    def __mul__(self, other):
        if other.group != self.group:
            raise ValueError("S-unit vectors from different groups")
        return SUnitVector(
            self.group,
            self.constant * other.constant % self.group.p,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __pow__(self, k):
        p = self.group.p
        c = pow(self.constant, k, p)
        return SUnitVector(self.group, c, tuple(k * e for e in self.exponents))

    def is_constant(self):
        return not any(self.exponents)

    def __str__(self):
        parts = [] if self.constant == 1 and any(self.exponents) else [str(self.constant)]
        for v, e in zip(self.group.finite_places, self.exponents):
            if e == 1:
                parts.append(f"({v})")
            elif e:
                parts.append(f"({v})^{e}")
        return "*".join(parts)


def s_unit_decompose(u, T):
    """Factor u over the finite places of T; raises NotAnSUnit otherwise."""
    group = T if isinstance(T, SUnitGroup) else SUnitGroup(T)
    if not u:
        raise NotAnSUnit("zero is not a unit")
    num, den = u.num, u.den
    exps = []
    for v in group.finite_places:
        a = poly_order(num, v.poly)
        b = poly_order(den, v.poly)
        if a:
            num = num // v.poly**a
        if b:
            den = den // v.poly**b
        exps.append(a - b)
    if not num.is_constant() or not den.is_constant():
        raise NotAnSUnit(f"{u} has zeros or poles outside {[str(v) for v in group.places]}")
    c = num.lc * pow(den.lc, -1, group.p) % group.p
    return SUnitVector(group, c, tuple(exps))


@dataclass(frozen=True)
class LocalQuotientImage:
    """Class of a v-adic unit in O_v^*/(O_v^*)^m = Z/modulus, modulus = gcd(m, q_v - 1)."""

    place: Place
    m: int
    modulus: int
    value: int


@lru_cache(maxsize=None)
def _dlog_table(place):
    q = place.residue_size
    if q > DLOG_BOUND:
        raise BoundExceeded(f"residue field of size {q} exceeds the discrete-log bound {DLOG_BOUND}")
    p, pi = place.p, place.poly
    gen = None
    for code in range(1, q):
        cand = FpPoly.from_int(p, code)
        if residue_order(cand, place) == q - 1:
            gen = cand
            break
    table = {}
    x = FpPoly(p, 1)
    for k in range(q - 1):
        table[x.to_int()] = k
        x = (x * gen) % pi
    return gen, table


def residue_discrete_log(residue, place):
    """log of a nonzero residue w.r.t. the smallest generator of F_q^*, in Z/(q - 1)."""
    _, table = _dlog_table(place)
    return table[(residue % place.poly).to_int()]


def _residue(u, v):
    pi = v.poly
    if isinstance(u, SUnitVector):
        q1 = v.residue_size - 1
        if v in u.group.finite_places:
            e = u.exponents[u.group.finite_places.index(v)]
            if e:
                raise NotAUnitAt(v)
        acc = FpPoly(v.p, u.constant)
        for w, e in zip(u.group.finite_places, u.exponents):
            if e:
                acc = (acc * modpow_quotient(w.poly, e % q1, pi)) % pi
        return acc
    if poly_order(u.num, pi) or poly_order(u.den, pi):
        raise NotAUnitAt(v)
    return (u.num * inverse_mod(u.den, pi)) % pi


def local_unit_image(u, v, m):
    """Image of the v-adic unit u in O_v^*/(O_v^*)^m.

    With m prime to p, Hensel's lemma reduces m-th powers in O_v^* to
    m-th powers in the residue field, so the class is the discrete log of
    u mod pi taken modulo gcd(m, q_v - 1); it is zero iff u is an m-th power.
    """
    if gcd(m, v.p) != 1:
        raise ValueError("m must be prime to p")
    if v.is_infinite:
        raise ValueError("local images are taken at finite places")
    d = gcd(m, v.residue_size - 1)
    res = _residue(u, v)
    value = residue_discrete_log(res, v) % d if d > 1 else 0
    return LocalQuotientImage(v, m, d, value)


@dataclass
class CspStep:
    place: Place
    modulus: int
    image_matrix: list
    kernel_after: int

    def to_dict(self):
        return {
            "place": str(self.place),
            "modulus": self.modulus,
            "image_matrix": self.image_matrix,
            "kernel_after": self.kernel_after,
        }


@dataclass
class CspCertificate:
    """Record of the greedy search: each accepted place and the kernel left after it."""

    m: int
    quotient_shape: tuple
    generators: list
    places: list = field(default_factory=list)

    @property
    def quotient_size(self):
        size = 1
        for d in self.quotient_shape:
            size *= d
        return size

    def to_dict(self):
        return {
            "quotient_size": self.quotient_size,
            "quotient_shape": list(self.quotient_shape),
            "generators": self.generators,
            "places": [s.to_dict() for s in self.places],
        }


def _generator_images(group, v, d):
    p = group.p
    g = FpPoly(p, primitive_root(p))
    row = [residue_discrete_log(g, v) % d]
    for w in group.finite_places:
        row.append(residue_discrete_log(w.poly % v.poly, v) % d)
    return row


def csp_witness_search(T, m, degree_bound, p=None):
    """Places S outside T with O_T^*/(O_T^*)^m injecting into prod_{v in S} O_v^*/(O_v^*)^m.

    Candidates are scanned by residue-field size (the irreducible
    enumeration order) up to ``degree_bound``; a place is accepted when it
    shrinks the kernel, which is tracked by brute force over the finite
    quotient.  Returns ``(S, certificate)``; raises BoundExceeded if the
    kernel is still nontrivial when candidates run out.
    """
    group = T if isinstance(T, SUnitGroup) else SUnitGroup(T, p=p)
    p = group.p
    if m < 1 or gcd(m, p) != 1:
        raise ValueError("m must be a positive integer prime to p")
    shape = group.quotient_shape(m)
    gens = [str(primitive_root(p))] + [str(v) for v in group.finite_places]
    cert = CspCertificate(m, shape, gens)
    kernel = list(product(*(range(d) for d in shape)))
    if len(kernel) == 1:
        return [], cert
    taken = set(group.places)
    chosen = []
    for poly in iter_irreducibles(p, degree_bound):
        v = Place.finite(poly)
        if v in taken:
            continue
        d = gcd(m, v.residue_size - 1)
        if d == 1:
            continue
        row = _generator_images(group, v, d)
        shrunk = [x for x in kernel if sum(a * b for a, b in zip(row, x)) % d == 0]
        if len(shrunk) < len(kernel):
            kernel = shrunk
            chosen.append(v)
            cert.places.append(CspStep(v, d, [row], len(kernel)))
            if len(kernel) == 1:
                return chosen, cert
    raise BoundExceeded(
        f"no injective place set within degree {degree_bound}: {len(kernel)} classes remain"
    )


def verify_injective(T, m, S, p=None):
    """Brute-force check that only the trivial class of O_T^*/(O_T^*)^m is an m-th power at every v in S.

    Uses Euler's criterion in each residue field (x is an m-th power in
    F_q^* iff x^((q-1)/gcd(m, q-1)) = 1), independently of discrete logs.
    """
    group = T if isinstance(T, SUnitGroup) else SUnitGroup(T, p=p)
    p = group.p
    g = primitive_root(p)
    shape = group.quotient_shape(m)
    trivial = 0
    for x in product(*(range(d) for d in shape)):
        u = group.element(pow(g, x[0], p), x[1:]).to_ratfunc()
        hit = True
        for v in S:
            q = v.residue_size
            d = gcd(m, q - 1)
            res = (u.num * inverse_mod(u.den, v.poly)) % v.poly
            if not modpow_quotient(res, (q - 1) // d, v.poly).is_one():
                hit = False
                break
        if hit:
            trivial += 1
    return trivial == 1


# -- integer lattices ---------------------------------------------------------

def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix; zero rows dropped."""
    A = [list(r) for r in rows]
    if not A:
        return []
    nrows, ncols = len(A), len(A[0])
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        while True:
            nz = [i for i in range(top, nrows) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[top], A[piv] = A[piv], A[top]
            rest = [i for i in range(top + 1, nrows) if A[i][col]]
            if not rest:
                break
            for i in rest:
                q = A[i][col] // A[top][col]
                A[i] = [a - q * b for a, b in zip(A[i], A[top])]
        if not A[top][col]:
            continue
        if A[top][col] < 0:
            A[top] = [-a for a in A[top]]
        piv = A[top][col]
        for i in range(top):
            q = A[i][col] // piv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[top])]
        top += 1
    return [r for r in A if any(r)]


def integer_kernel(M, ncols):
    """Basis of {a in Z^ncols : M a = 0} for an integer matrix given by rows."""
    # row-reduce [M^T | I]; rows whose M^T part vanishes span the kernel
    r = len(M)
    aug = [[M[i][j] for i in range(r)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    red = hermite_normal_form(aug) if aug else []
    basis = [row[r:] for row in red if not any(row[:r])]
    return hermite_normal_form(basis)


def is_pn_power_lattice(vec, n):
    """u in (K^*)^(p^n) iff p^n divides every exponent (constants are always p^n-th powers)."""
    q = vec.group.p**n
    return all(e % q == 0 for e in vec.exponents)


@dataclass
class FiltrationLevel:
    n: int
    coefficient_basis: list  # exponent vectors over the given generators
    basis: list  # the corresponding S-unit vectors

    def to_dict(self):
        return {
            "n": self.n,
            "coefficient_basis": self.coefficient_basis,
            "basis": [str(b) for b in self.basis],
        }


@dataclass
class FiltrationReport:
    p: int
    places: list
    generators: list
    levels: list
    intersection: list  # sorted constants forming H cap F_p^*
    torsion: bool

    def to_dict(self):
        return {
            "p": self.p,
            "places": [str(v) for v in self.places],
            "generators": [str(g) for g in self.generators],
            "levels": [lv.to_dict() for lv in self.levels],
            "intersection": self.intersection,
            "intersection_is_torsion": self.torsion,
        }


def _combine(vectors, coeffs, group):
    p = group.p
    c = 1
    exps = [0] * group.rank
    for vec, a in zip(vectors, coeffs):
        c = c * pow(vec.constant, a % (p - 1), p) % p
        for k, e in enumerate(vec.exponents):
            exps[k] += a * e
    return SUnitVector(group, c, tuple(exps))


def _support(u):
    places = set()
    for f in (u.num, u.den):
        rest = f
        for pi in iter_irreducibles(u.p):
            if rest.is_constant():
                break
            if pi.degree > rest.degree:
                places.add(Place.finite(rest.monic()))
                break
            k = poly_order(rest, pi)
            if k:
                places.add(Place.finite(pi))
                rest = rest // pi**k
    return places


def frobenius_filtration(gens, T=None, n_max=1, p=None):
    """U_n = H cap (K^*)^(p^n) for H = <gens>, n = 1 .. n_max, and their intersection.

    Membership in (K^*)^(p^n) is read off the exponent lattice: a T-unit
    is a p^n-th power iff p^n divides all its exponents.  The full
    intersection over n >= 1 is the integer kernel of the exponent matrix,
    i.e. the constants in H, which are torsion.
    """
    gens = list(gens)
    if T is None:
        if p is None:
            if not gens:
                raise ValueError("cannot infer p from an empty generator list")
            p = gens[0].p
        places = {Place.infinite(p)}
        for u in gens:
            places |= _support(u)
        group = SUnitGroup(places, p=p)
    else:
        group = T if isinstance(T, SUnitGroup) else SUnitGroup(T, p=p)
    p = group.p
    vectors = [s_unit_decompose(u, group) for u in gens]
    k, r = len(vectors), group.rank
    A = [[vec.exponents[i] for vec in vectors] for i in range(r)]
    levels = []
    for n in range(1, n_max + 1):
        q = p**n
        wide = [row + [q if j == i else 0 for j in range(r)] for i, row in enumerate(A)]
        ker = integer_kernel(wide, k + r)
        coeffs = hermite_normal_form([row[:k] for row in ker])
        levels.append(FiltrationLevel(n, coeffs, [_combine(vectors, a, group) for a in coeffs]))
    torsion_coeffs = integer_kernel(A, k) if k else []
    consts = {1}
    for a in torsion_coeffs:
        elt = _combine(vectors, a, group)
        if not elt.is_constant():
            raise AssertionError("kernel element with nonzero exponents")
        consts.add(elt.constant)
    # close the constants under multiplication in F_p^*
    closed = set(consts)
    frontier = list(consts)
    while frontier:
        x = frontier.pop()
        for y in list(consts):
            z = x * y % p
            if z not in closed:
                closed.add(z)
                frontier.append(z)
    return FiltrationReport(p, list(group.places), gens, levels, sorted(closed), True)
