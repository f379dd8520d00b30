from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fptkit import (
    BoundExceeded,
    FpPoly,
    NotAnSUnit,
    NotAUnitAt,
    Place,
    RatFunc,
    SUnitGroup,
    csp_witness_search,
    frobenius_filtration,
    hermite_normal_form,
    integer_kernel,
    is_pn_power_lattice,
    iter_irreducibles,
    local_unit_image,
    parse_place,
    parse_ratfunc,
    pm_power_root,
    primitive_root,
    residue_discrete_log,
    s_unit_decompose,
    verify_injective,
)

import oracles


def R(p, text):
    return parse_ratfunc(text, p)


def T(p, *names):
    return SUnitGroup([parse_place(n, p) for n in names] + [Place.infinite(p)])


# -- S-unit groups -----------------------------------------------------------------------

def test_group_requires_infinity_unless_implicit():
    with pytest.raises(ValueError):
        SUnitGroup([parse_place("t", 2)])
    g = SUnitGroup([parse_place("t+1", 2), parse_place("t", 2)], implicit_infinity=True)
    assert [str(v) for v in g.places] == ["t", "t + 1", "inf"]
    assert g.rank == 2
    assert g.quotient_shape(3) == (1, 3, 3)
    assert T(7, "t").quotient_shape(3) == (3, 3)


def test_decompose_examples():
    u = s_unit_decompose(R(2, "t^2/(t+1)"), T(2, "t", "t+1"))
    assert (u.constant, u.exponents) == (1, (2, -1))
    u = s_unit_decompose(R(3, "1"), T(3, "t", "t+1"))
    assert (u.constant, u.exponents) == (1, (0, 0))
    u = s_unit_decompose(R(3, "2*t"), T(3, "t"))
    assert (u.constant, u.exponents) == (2, (1,))
    assert u.to_ratfunc() == R(3, "2*t")


def test_decompose_rejects_non_units():
    with pytest.raises(NotAnSUnit):
        s_unit_decompose(R(2, "t^2+t+1"), T(2, "t"))
    with pytest.raises(NotAnSUnit):
        s_unit_decompose(R(2, "0"), T(2, "t"))


@given(st.data())
def test_decompose_round_trip(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    group = T(p, "t", "t+1")
    c = data.draw(st.integers(1, p - 1))
    exps = data.draw(st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
    u = group.element(c, exps)
    assert s_unit_decompose(u.to_ratfunc(), group) == u


# -- local images --------------------------------------------------------------------------

def test_primitive_root():
    assert primitive_root(2) == 1
    assert primitive_root(7) == 3
    assert primitive_root(251) == 6


def test_discrete_log_generates_residue_field():
    v = parse_place("t^3+t+1", 2)
    logs = {residue_discrete_log(FpPoly.from_int(2, k), v) for k in range(1, 8)}
    assert logs == set(range(7))


def test_local_image_examples():
    t = R(2, "t")
    img = local_unit_image(t, parse_place("t^2+t+1", 2), 3)
    assert img.modulus == 3 and img.value != 0
    img = local_unit_image(t, parse_place("t+1", 2), 3)
    assert img.modulus == 1 and img.value == 0
    cube = R(2, "(t^2+1)^3")
    assert local_unit_image(cube, parse_place("t^2+t+1", 2), 3).value == 0


def test_local_image_errors():
    with pytest.raises(NotAUnitAt):
        local_unit_image(R(3, "t^2+1"), parse_place("t^2+1", 3), 2)
    with pytest.raises(ValueError):
        local_unit_image(R(3, "t"), parse_place("t+1", 3), 3)
    u = T(2, "t").element(1, (1,))
    with pytest.raises(NotAUnitAt):
        local_unit_image(u, parse_place("t", 2), 3)


def _finite_places(p, max_degree):
    return [Place.finite(f) for f in iter_irreducibles(p, max_degree)]


@given(st.data())
def test_local_image_is_a_homomorphism(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    group = T(p, "t", "t+1")
    m = data.draw(st.sampled_from([k for k in range(2, 9) if gcd(k, p) == 1]))
    v = data.draw(st.sampled_from([w for w in _finite_places(p, 3) if w not in group.places]))
    a = group.element(data.draw(st.integers(1, p - 1)), data.draw(st.tuples(st.integers(-5, 5), st.integers(-5, 5))))
    b = group.element(data.draw(st.integers(1, p - 1)), data.draw(st.tuples(st.integers(-5, 5), st.integers(-5, 5))))
    ia, ib, iab = (local_unit_image(x, v, m) for x in (a, b, a * b))
    assert iab.value == (ia.value + ib.value) % iab.modulus
    # the vector and rational-function paths agree
    assert local_unit_image(a.to_ratfunc(), v, m) == ia


@given(st.data())
def test_local_image_zero_iff_euler_criterion(data):
    p = data.draw(st.sampled_from([2, 3, 5, 7]))
    m = data.draw(st.sampled_from([k for k in range(2, 10) if gcd(k, p) == 1]))
    v = data.draw(st.sampled_from([w for w in _finite_places(p, 2) if w.poly != FpPoly.t(p)]))
    u = R(p, "t") ** data.draw(st.integers(0, 30)) * RatFunc.const(p, data.draw(st.integers(1, p - 1)))
    img = local_unit_image(u, v, m)
    assert (img.value == 0) == oracles.is_mth_power_at(u, v.poly, m)


# -- congruence-subgroup witnesses ---------------------------------------------------------------

def test_csp_examples():
    S, cert = csp_witness_search(T(2, "t"), 3, 2)
    assert [str(v) for v in S] == ["t^2 + t + 1"]
    assert cert.quotient_size == 3
    S, cert = csp_witness_search(T(2, "t", "t+1"), 3, 4)
    assert [str(v) for v in S] == ["t^2 + t + 1", "t^4 + t + 1"]
    assert [step.image_matrix[0][1:] for step in cert.places] == [[1, 2], [1, 1]]
    assert [step.kernel_after for step in cert.places] == [3, 1]
    S, cert = csp_witness_search(T(5, "t", "t^2+2"), 1, 3)
    assert S == [] and cert.quotient_size == 1


def test_csp_certificate_schema():
    _, cert = csp_witness_search(T(2, "t"), 3, 2)
    d = cert.to_dict()
    assert d["quotient_size"] == 3
    assert d["places"] == [{"place": "t^2 + t + 1", "modulus": 3, "image_matrix": [[0, 1]], "kernel_after": 1}]


def test_csp_errors():
    with pytest.raises(BoundExceeded):
        csp_witness_search(T(2, "t"), 3, 1)
    with pytest.raises(ValueError):
        csp_witness_search(T(3, "t"), 3, 4)
    with pytest.raises(ValueError):
        csp_witness_search(T(3, "t"), 0, 4)


def test_verify_injective_rejects_insufficient_sets():
    group = T(2, "t", "t+1")
    assert not verify_injective(group, 3, [parse_place("t^2+t+1", 2)])
    assert not verify_injective(group, 3, [])


@given(st.data())
@settings(max_examples=25)
def test_csp_search_output_is_injective(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    m = data.draw(st.sampled_from([k for k in range(2, 7) if gcd(k, p) == 1]))
    pool = _finite_places(p, 2)
    chosen = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=2, unique=True))
    group = SUnitGroup(chosen + [Place.infinite(p)])
    S, cert = csp_witness_search(group, m, 8)
    assert not set(S) & set(group.places)
    assert verify_injective(group, m, S)
    assert oracles.injective_oracle(p, [v.poly for v in group.finite_places], m, [v.poly for v in S])
    if S:
        assert cert.places[-1].kernel_after == 1
    else:
        assert cert.quotient_size == 1


# -- lattices ---------------------------------------------------------------------------------------

def test_hermite_normal_form_small():
    assert hermite_normal_form([[2, 4], [3, 6]]) == [[1, 2]]
    assert hermite_normal_form([[4, 0], [0, 6], [2, 3]]) == [[2, 3], [0, 6]]
    assert hermite_normal_form([]) == []


def _in_span(hnf, vec):
    vec = list(vec)
    for row in hnf:
        j = next(k for k, a in enumerate(row) if a)
        if vec[j] % row[j]:
            return False
        q = vec[j] // row[j]
        vec = [a - q * b for a, b in zip(vec, row)]
    return not any(vec)


@given(st.data())
def test_integer_kernel_matches_brute_force(data):
    rows = data.draw(st.integers(1, 3))
    cols = data.draw(st.integers(1, 3))
    M = [[data.draw(st.integers(-3, 3)) for _ in range(cols)] for _ in range(rows)]
    K = integer_kernel(M, cols)
    for k in K:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in M)
    for vec in product(range(-4, 5), repeat=cols):
        if all(sum(a * b for a, b in zip(r, vec)) == 0 for r in M):
            assert _in_span(K, vec)


@given(st.data())
@settings(max_examples=200)
def test_lattice_membership_agrees_with_derivation_kernel(data):
    p = data.draw(st.sampled_from([2, 3]))
    group = T(p, "t", "t+1", "t^2+t+2" if p == 3 else "t^2+t+1")
    n = data.draw(st.integers(1, 2))
    q = p**n
    exps = tuple(data.draw(st.integers(-3, 3)) * (q if data.draw(st.booleans()) else 1) for _ in range(3))
    u = group.element(data.draw(st.integers(1, p - 1)), exps)
    assert is_pn_power_lattice(u, n) == (pm_power_root(u.to_ratfunc(), n) is not None)


# -- Frobenius filtration ------------------------------------------------------------------------------

def test_filtration_examples():
    rep = frobenius_filtration([R(2, "t"), R(2, "t+1")], n_max=8)
    for lv in rep.levels:
        q = 2**lv.n
        assert [b.to_ratfunc() for b in lv.basis] == [R(2, "t") ** q, R(2, "t+1") ** q]
    assert rep.intersection == [1] and rep.torsion
    rep = frobenius_filtration([R(3, "2")], n_max=5)
    assert all([b.to_ratfunc() for b in lv.basis] == [R(3, "2")] for lv in rep.levels)
    assert rep.intersection == [1, 2] and rep.torsion
    rep = frobenius_filtration([], T=T(3, "t"), n_max=3)
    assert rep.intersection == [1] and all(lv.basis == [] for lv in rep.levels)


def test_filtration_rejects_non_units_of_given_group():
    with pytest.raises(NotAnSUnit):
        frobenius_filtration([R(2, "t^2+t+1")], T=T(2, "t"))


def _constants_oracle(vectors, p, box=4):
    found = {1}
    for a in product(range(-box, box + 1), repeat=len(vectors)):
        exps = [sum(x * v.exponents[i] for x, v in zip(a, vectors)) for i in range(len(vectors[0].exponents))]
        if not any(exps):
            c = 1
            for x, v in zip(a, vectors):
                c = c * pow(v.constant, x, p) % p
            found.add(c)
    closed = set(found)
    while True:
        new = {x * y % p for x in closed for y in closed} - closed
        if not new:
            return sorted(closed)
        closed |= new


@given(st.data())
@settings(max_examples=40)
def test_filtration_levels_and_torsion_intersection(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    group = T(p, "t", "t+1")
    k = data.draw(st.integers(1, 3))
    vectors = [
        group.element(data.draw(st.integers(1, p - 1)), (data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))))
        for _ in range(k)
    ]
    rep = frobenius_filtration([v.to_ratfunc() for v in vectors], T=group, n_max=3)
    assert rep.intersection == _constants_oracle(vectors, p)
    for lv in rep.levels:
        q = p**lv.n
        for b in lv.basis:
            assert pm_power_root(b.to_ratfunc(), lv.n) is not None
        # every p^n-th power in a box of H is in the lattice spanned by the level basis
        for a in product(range(-q, q + 1), repeat=k) if k < 3 else product(range(-2, 3), repeat=k):
            exps = [sum(x * v.exponents[i] for x, v in zip(a, vectors)) for i in range(2)]
            if all(e % q == 0 for e in exps):
                assert _in_span(lv.coefficient_basis, a)
