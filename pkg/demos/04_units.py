"""S-units, local m-th power residues, and the p-power filtration."""

from fptkit import (
    Place,
    SUnitGroup,
    csp_witness_search,
    frobenius_filtration,
    is_pn_power_lattice,
    local_unit_image,
    parse_place,
    parse_ratfunc,
    pm_power_root,
    s_unit_decompose,
    verify_injective,
)

p = 2

# %% T = {t, t+1, inf}: units are t^a (t+1)^b.
T = SUnitGroup([parse_place("t", p), parse_place("t+1", p), Place.infinite(p)])
u = s_unit_decompose(parse_ratfunc("t^3/(t + 1)^2", p), T)
print("decomposition:", u, "exponents", u.exponents)

# %% Its class modulo cubes at the place t^2 + t + 1 (residue field F_4).
v = parse_place("t^2+t+1", p)
img = local_unit_image(u, v, 3)
print(f"image in Z/{img.modulus}:", img.value)

# %% Places that together detect every nontrivial class of O_T^*/(O_T^*)^3.
S, cert = csp_witness_search(T, 3, 4)
print("S =", [str(w) for w in S], "quotient size", cert.quotient_size)
for step in cert.places:
    print(f"  {step.place}: kernel shrinks to {step.kernel_after}")
print("injective:", verify_injective(T, 3, S))

# %% For S-units, p^n-th power membership is a lattice condition on exponents.
w = T.element(1, (4, -8))
print(w, "is a 4th power:", is_pn_power_lattice(w, 2), "| derivation test:", pm_power_root(w.to_ratfunc(), 2))

# %% U_n = <t, t+1> cap (K^*)^(2^n) shrinks to the trivial group.
rep = frobenius_filtration([parse_ratfunc("t", p), parse_ratfunc("t+1", p)], n_max=4)
for lv in rep.levels:
    print(f"U_{lv.n} basis:", [str(b) for b in lv.basis])
print("intersection:", rep.intersection)

# %% Over F_3 the constant 2 survives every level: the intersection is torsion.
rep3 = frobenius_filtration([parse_ratfunc("2", 3)], n_max=4)
print("F_3 intersection:", rep3.intersection, "torsion:", rep3.torsion)
