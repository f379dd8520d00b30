"""Ideals over F_p(t) that are closed under the derivations D^(i), i < p^m.

Such an ideal is cut out by polynomials whose coefficients are p^m-th
powers.  The test computes a reduced Groebner basis and checks that every
derivative of every basis element reduces to zero.
"""

from fptkit import (
    PolyIdeal,
    descend_generators,
    intersect_ideals,
    is_pm_rational,
    parse_multipoly,
    parse_ratfunc,
    vanishing_ideal,
)

p, m = 2, 1

# %% X0 + t*X1 is not closed: D^(1) leaves X1 behind.
J = PolyIdeal([parse_multipoly("X0 + t*X1", p, 2)])
cert = is_pm_rational(J, m)
print("rational:", cert.rational)
for i, g, rem in cert.witnesses:
    print(f"  D^({i})({g}) has normal form {rem}")

# %% Replacing t by t^2 gives a closed ideal, and descent finds the generators.
J2 = PolyIdeal([parse_multipoly("X0 + t^2*X1", p, 2), parse_multipoly("X1^2 + (t^2 + 1)*X0*X1", p, 2)])
print("rational:", is_pm_rational(J2, m).rational)
print("descended:", [str(g) for g in descend_generators(J2, m)])

# %% Intersections keep the property.
K = PolyIdeal([parse_multipoly("X0 + (t + 1)^2*X1", p, 2)])
I = intersect_ideals(PolyIdeal([parse_multipoly("X0 + t^2*X1", p, 2)]), K)
print("intersection:", [str(g) for g in I.basis], "rational:", is_pm_rational(I, m).rational)

# %% So do vanishing ideals of points whose coordinates are squares.
pts = [[parse_ratfunc("t^2", p), parse_ratfunc("1", p)], [parse_ratfunc("1/t^2", p), parse_ratfunc("t^4", p)]]
V = vanishing_ideal(pts, p=p)
print("vanishing ideal:", [str(g) for g in V.basis], "rational:", is_pm_rational(V, m).rational)
