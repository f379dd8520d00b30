"""Arithmetic in F_p(t) and valuations at its places.

Walks through parsing, canonical forms, irreducible enumeration, and the
product formula, then expands an element locally at a finite place.
"""

from fptkit import (
    Place,
    irreducibles,
    local_expansion,
    parse_place,
    parse_ratfunc,
    valuation,
)

p = 3

# %% Elements are kept in lowest terms with a monic denominator.
r = parse_ratfunc("(t^2 - 1)/(2*t^2 + 2*t)", p)
print("canonical form:", r)
print("numerator, denominator:", r.num, "|", r.den)

# %% Frobenius is additive in characteristic p.
a, b = parse_ratfunc("t + 1", p), parse_ratfunc("1/t", p)
print("(a + b)^3 == a^3 + b^3:", (a + b) ** 3 == a**3 + b**3)

# %% The places of degree at most 2 over F_3.
places = [Place.finite(f) for f in irreducibles(p, 6)] + [Place.infinite(p)]
print("places:", ", ".join(str(v) for v in places))

# %% Valuations of one element everywhere; their degree-weighted sum is zero.
x = parse_ratfunc("t^4*(t + 1)/(t^2 + 1)^2", p)
total = 0
for v in places:
    k = valuation(x, v)
    total += k * v.degree
    if k:
        print(f"  v_({v})(x) = {k}")
print("sum of deg(v) * v(x):", total)

# %% Local expansion at t + 1 (uniformizer u = t + 1).
v = parse_place("t+1", p)
exp = local_expansion(parse_ratfunc("1/(t^2 + t)", p), v, 6)
print("leading valuation:", exp.lead_valuation)
print("coefficients:", [str(c) for c in exp.coefficients])
