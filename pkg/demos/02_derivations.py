"""Hasse-Schmidt derivatives on F_p(t) and the projection onto p^m-th powers."""

from fptkit import c_coeff, delta_m, hasse_derivatives, hasse_derive, lucas_binom, parse_ratfunc, pm_power_root

p = 2

# %% Ordinary derivatives die quickly in characteristic p; divided powers do not.
f = parse_ratfunc("t^5", p)
for i, d in enumerate(hasse_derivatives(f, 5)):
    print(f"D^({i})(t^5) = {d}")

# %% D^(i) D^(j) = C(i+j, i) D^(i+j), with the binomial taken mod p.
r = parse_ratfunc("(t^3 + t)/(t^2 + t + 1)", p)
i, j = 1, 2
lhs = hasse_derive(i, hasse_derive(j, r))
print("C(3, 1) mod 2 =", lucas_binom(3, 1, p), "; D^(1)D^(2)(r) =", lhs)

# %% Composition of the D^(p^n) recovers D^(i) up to the scalar c_i.
print("c_i mod 3 for i < 9:", [c_coeff(i, 3) for i in range(9)])

# %% Delta_m sends every element to a p^m-th power.
for m in (1, 2):
    d = delta_m(r, m)
    print(f"Delta_{m}(r) = {d}; root of order {p ** m}: {pm_power_root(d, m)}")
