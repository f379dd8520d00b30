"""Valuation reports for two sequences in F_p(t).

The first converges to different limits at the finite places and at
infinity.  The second, y_n = t^(p^(n!)), is Cauchy at every place where t
is a unit but its limit is 1 only at t - 1.
"""

from fptkit import FpPoly, RatFunc, cauchy_profile, exm1_sequence, parse_place, run_exm0, run_exm1

# %% x_n = (P_n + a)/(P_n^2 + b) + alpha, with P_n the n-th power of a product of irreducibles.
rep0 = run_exm0(2, FpPoly.t(2), FpPoly(2, 1), RatFunc.const(2, 1), 5)
print(rep0.format_table())

# %% The same profile from the identity path and from direct subtraction.
v = parse_place("t^2+t+1", 2)
rep1 = run_exm1(2, 4, [v, parse_place("t+1", 2)])
print(rep1.format_table())
print("direct profile at", v, ":", cauchy_profile(exm1_sequence(2), v, 4))

# %% Reports serialize to deterministic JSON.
print(rep1.to_json()[:200], "...")
