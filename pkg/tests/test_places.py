import pytest
from hypothesis import given
from hypothesis import strategies as st

from fptkit import (
    INF,
    FpPoly,
    Place,
    RatFunc,
    cauchy_profile,
    exm0_sequence,
    exm1_sequence,
    local_expansion,
    parse_place,
    parse_ratfunc,
    poly_order,
    residue_order,
    valuation,
    valuation_t_power_difference,
)

import oracles
from strategies import ratfuncs


def R(p, text):
    return parse_ratfunc(text, p)


def test_place_validation():
    with pytest.raises(ValueError):
        parse_place("t^2 + 1", 2)  # (t+1)^2
    with pytest.raises(ValueError):
        Place.finite(FpPoly(3, [1, 2]))  # not monic
    v = parse_place("t^2+t+1", 2)
    assert v.degree == 2 and v.residue_size == 4
    assert Place.infinite(5).degree == 1 and str(Place.infinite(5)) == "inf"
    assert parse_place(" inf ", 3).is_infinite


@pytest.mark.parametrize(
    "text, p, place, expected",
    [
        ("t^3/(t+1)", 2, "t", 3),
        ("t^3/(t+1)", 2, "inf", -2),
        ("(t^2-1)/t", 3, "t+1", 1),
        ("0", 5, "t", INF),
        ("0", 5, "inf", INF),
        ("1/(t^2+1)^3", 3, "t^2+1", -3),
        ("4", 5, "inf", 0),
    ],
)
def test_valuation_examples(text, p, place, expected):
    assert valuation(R(p, text), parse_place(place, p)) == expected


def test_poly_order_on_huge_sparse_polynomials():
    # (t+1)^(2^20) = t^(2^20) + 1 in characteristic 2
    f = FpPoly.monomial(2, 2**20) + FpPoly(2, 1)
    assert poly_order(f, FpPoly(2, [1, 1])) == 2**20
    # t^(2^20 * 3) - 1 = (t^3 - 1)^(2^20): order 2^20 at t^2+t+1
    g = FpPoly.monomial(2, 3 * 2**20) + FpPoly(2, 1)
    assert poly_order(g, FpPoly(2, [1, 1, 1])) == 2**20
    h = FpPoly.monomial(3, 3**12 + 1) + FpPoly(3, 2)
    assert poly_order(h, FpPoly(3, [2, 1])) == 1


@pytest.mark.parametrize("p, a, b", [(2, 13, 0), (2, 40, 7), (3, 30, 3), (3, 81, 1), (5, 48, 2), (2, 64, 0)])
def test_t_power_difference_matches_direct_valuation(p, a, b):
    direct = RatFunc(FpPoly.monomial(p, a) - FpPoly.monomial(p, b))
    for f in oracles_places(p, 3):
        v = Place.finite(f)
        assert valuation_t_power_difference(a, b, v) == oracles.valuation_oracle(direct, f)
    assert valuation_t_power_difference(a, b, Place.infinite(p)) == -a
    assert valuation_t_power_difference(a, a, Place.infinite(p)) == INF


def oracles_places(p, max_degree):
    return [oracles.from_dense(p, a) for d in range(1, max_degree + 1) for a in oracles.brute_irreducibles(p, d)]


def test_residue_order():
    assert residue_order(FpPoly.t(2), parse_place("t^2+t+1", 2)) == 3
    assert residue_order(FpPoly.t(2), parse_place("t^4+t^3+t^2+t+1", 2)) == 5
    assert residue_order(FpPoly.t(3), parse_place("t+2", 3)) == 1
    with pytest.raises(ValueError):
        residue_order(FpPoly.t(3), parse_place("t", 3))


# -- local expansions -----------------------------------------------------------------

def test_local_expansion_examples():
    e = local_expansion(R(2, "1/(1-t)"), parse_place("t", 2), 4)
    assert e.lead_valuation == 0 and [c.to_int() for c in e.coefficients] == [1, 1, 1, 1]
    e = local_expansion(R(2, "t"), Place.infinite(2), 2)
    assert e.lead_valuation == -1 and [c.to_int() for c in e.coefficients] == [1, 0]
    e = local_expansion(R(2, "t+1"), parse_place("t", 2), 2)
    assert e.lead_valuation == 0 and [c.to_int() for c in e.coefficients] == [1, 1]


def test_local_expansion_of_zero():
    e = local_expansion(R(3, "0"), parse_place("t", 3), 3)
    assert e.lead_valuation == INF and not any(e.coefficients)
    assert not e.truncation()


def test_local_expansion_rejects_bad_precision():
    with pytest.raises(ValueError):
        local_expansion(R(3, "t"), parse_place("t", 3), 0)


def _places(p):
    return [Place.infinite(p)] + [Place.finite(f) for f in oracles_places(p, 2)]


@given(st.data())
def test_local_expansion_consistency(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    r = data.draw(ratfuncs(p, 4, nonzero=True))
    v = data.draw(st.sampled_from(_places(p)))
    prec = data.draw(st.integers(1, 6))
    e = local_expansion(r, v, prec)
    assert e.lead_valuation == valuation(r, v)
    assert e.coefficients[0]
    for c in e.coefficients:
        assert c.degree < v.degree
    assert valuation(r - e.truncation(), v) >= e.lead_valuation + prec


# -- valuation axioms -------------------------------------------------------------------

def _support(r):
    """Places where r has nonzero valuation, found by trial division with brute-force irreducibles."""
    p = r.p
    out = [Place.infinite(p)]
    for f in (r.num, r.den):
        rest = oracles.to_dense(f)
        d = 1
        while len(rest) > 1:
            for a in oracles.brute_irreducibles(p, d):
                if not oracles.ddivmod(rest, a, p)[1]:
                    out.append(Place.finite(oracles.from_dense(p, a)))
                    while not oracles.ddivmod(rest, a, p)[1]:
                        rest = oracles.ddivmod(rest, a, p)[0]
            d += 1
    return set(out)


@given(st.data())
def test_product_formula(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    r = data.draw(ratfuncs(p, 5, nonzero=True))
    total = sum(v.degree * valuation(r, v) for v in _support(r))
    assert total == 0


@given(st.data())
def test_valuation_matches_dense_oracle(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    r = data.draw(ratfuncs(p, 6, nonzero=True))
    v = data.draw(st.sampled_from(_places(p)))
    assert valuation(r, v) == oracles.valuation_oracle(r, v.poly)


@given(st.data())
def test_ultrametric_and_multiplicative(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    a = data.draw(ratfuncs(p, 4))
    b = data.draw(ratfuncs(p, 4))
    v = data.draw(st.sampled_from(_places(p)))
    va, vb = valuation(a, v), valuation(b, v)
    s = valuation(a + b, v)
    assert s >= min(va, vb)
    if va != vb:
        assert s == min(va, vb)
    if a and b:
        assert valuation(a * b, v) == va + vb


# -- Cauchy profiles -------------------------------------------------------------------

def test_exm1_profile_examples():
    y = exm1_sequence(2)
    assert cauchy_profile(y, parse_place("t+1", 2), 3) == [2, 4]
    prof = cauchy_profile(y, parse_place("t^2+t+1", 2), 4)
    assert prof[1] == 4
    assert prof == [0, 4, 64]


def test_constant_sequence_profile_is_infinite():
    assert cauchy_profile("t^2 + 1", parse_place("t", 3), 4) == [INF, INF, INF]


def test_template_sequence_profile():
    # t^(n+1) - t^n = t^n (t - 1)
    assert cauchy_profile("t^{n}", parse_place("t", 3), 4) == [1, 2, 3]
    assert cauchy_profile("t^{n}", parse_place("t+2", 3), 4) == [1, 1, 1]


def test_callable_sequence_profile():
    # t^(3^(n+1)) - t^(3^n) = (t^2 - 1)^(3^n) * t^(3^n), and t^2 - 1 has a simple zero at t = 1
    prof = cauchy_profile(lambda n: RatFunc(FpPoly.monomial(3, 3**n)), parse_place("t+2", 3), 4)
    assert prof == [3, 9, 27]


def test_exm0_sequence_first_terms():
    x = exm0_sequence(2, FpPoly.t(2), FpPoly(2, 1), RatFunc.const(2, 1))
    assert x(1) == RatFunc.const(2, 1)
    beta = R(2, "t + 1")
    assert valuation(x(4) - beta, parse_place("t+1", 2)) >= 4


def test_exm0_sequence_rejects_zero_b():
    with pytest.raises(ValueError):
        exm0_sequence(2, FpPoly.t(2), FpPoly(2, 0), RatFunc.const(2, 1))
