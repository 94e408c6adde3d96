from __future__ import annotations

from fractions import Fraction

import pytest

from graded_descent.degree import IDENTITY, Degree
from graded_descent.fields import get_gf, get_rational_function_field
from graded_descent.graded import GradedField, random_elem
from graded_descent.russell import (
    NotHomogeneous,
    RadiusNotInOrbit,
    RootUnavailable,
    RussellForm,
    RussellFormSpec,
    ZeroLinearCoefficient,
    construct_form,
    f_ring,
    family_form,
    form_from_skew,
    hopf_check,
    parse_form,
    trivialize,
)
from graded_descent.skew import SkewPoly, random_skew, skew_mul, triviality_test

Q = Degree({"q_t": 1})
K = get_rational_function_field(2)


def gf2_family():
    return family_form()


def test_worked_family_is_valid():
    A = gf2_family()
    assert A.r == Q and A.s == Q
    assert A.x.degree() == Q**2 and A.y.degree() == Q
    assert [str(a) for a in A.coefficients()] == ["1", "t^-2"]
    # relation holds in the quotient
    assert A.y**2 == A.x + A.elem("t^-2*x^2")


def test_construct_errors():
    base = GradedField(get_gf(2), Q, 2)
    with pytest.raises(ZeroLinearCoefficient):
        construct_form(RussellFormSpec(base, 1, Q, Q, (base.parse("0"), base.parse("t^-2"))))
    with pytest.raises(NotHomogeneous):
        construct_form(RussellFormSpec(base, 1, Q, Q, (base.parse("1"), base.parse("t^2"))))
    with pytest.raises(NotHomogeneous):
        construct_form(RussellFormSpec(base, 1, Q, Q, (base.parse("1 + t^2"),)))


def test_radius_not_in_orbit():
    base = GradedField(get_gf(2), Q, 2)
    # s / r = q_t^(1/4) is not a degree of k^(1/2) = GF(2)[t^+-1]
    with pytest.raises(RadiusNotInOrbit):
        construct_form(RussellFormSpec(base, 1, Q, Q * Q ** Fraction(1, 4), (base.parse("1"),)))
    without_t = GradedField(get_gf(2))
    with pytest.raises(RadiusNotInOrbit):
        construct_form(RussellFormSpec(without_t, 1, Degree({"r": 1}), Degree({"r": 1, "s": 1}),
                                       (without_t.parse("1"),)))


def test_degree_one_case_over_function_field():
    A = parse_form({"field": "GF(2)(u)", "n": 1, "f_coeffs": ["u", "1"]})
    assert A.r == IDENTITY
    assert A.y**2 == A.elem("u*x + x^2")


def test_hopf_check():
    assert hopf_check(gf2_family()).passed
    linear = parse_form({"field": "GF(3)", "n": 1, "f_coeffs": ["2"]})
    assert hopf_check(linear).passed
    base = GradedField(get_gf(2))
    R1 = f_ring(base, 1, IDENTITY)
    bad = RussellForm(base, 1, IDENTITY, IDENTITY, R1.parse("T1 + T1^2 + T1^3"))
    assert not hopf_check(bad).passed


def test_trivialize_worked_family():
    data = trivialize(gf2_family())
    assert data.ok
    assert str(data.triv) == "t^-1*x + y"
    assert data.triv**2 == data.extended.x
    assert str(data.x_image) == "T^2"
    assert data.y_image == data.target.parse("T + t^-1*T^2")
    assert data.triv.degree() == Q


def test_trivialize_linear():
    A = parse_form({"field": "GF(5)", "n": 1, "f_coeffs": ["3"]})
    data = trivialize(A)
    assert data.ok and data.triv == data.extended.y
    assert data.triv**5 == data.extended.scalar(data.a0) * data.extended.x


def test_trivialize_root_unavailable():
    A = parse_form({"field": "GF(2)(u)", "n": 1, "f_coeffs": ["1", "u"]})
    with pytest.raises(RootUnavailable) as err:
        trivialize(A)
    assert err.value.index == 1
    data = trivialize(A, extend_coefficients=True)
    assert data.ok and str(data.triv) == "v*x + y"


@pytest.mark.parametrize(
    "desc",
    [
        {"field": "GF(3)", "n": 2, "stride": 9, "r": "q_t", "s": "q_t", "f_coeffs": ["1", "t^-18"]},
        {"field": "GF(4)", "n": 2, "stride": 4, "r": "q_t", "s": "q_t", "f_coeffs": ["w", "t^-4"]},
        {"field": "GF(2)", "n": 2, "stride": 4, "r": "q_t", "s": "q_t", "f_coeffs": ["1", "t^-4", "t^-12"]},
        {"field": "GF(2)(u)", "n": 1, "f_coeffs": ["u", "1"]},
    ],
)
def test_trivialize_identities(desc):
    data = trivialize(parse_form(desc))
    assert all(data.identities.values()), data.identities


def test_confluence(rng):
    forms = [gf2_family(), parse_form({"field": "GF(3)", "n": 1, "f_coeffs": ["1", "2"]}),
             parse_form({"field": "GF(2)(u)", "n": 1, "f_coeffs": ["u", "1"]})]
    for k in range(200):
        A = forms[k % len(forms)]
        a, b, c = (A.elem(random_elem(A.ring, rng, var_max=3)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        # reduction of an unreduced product equals the product of reductions
        raw = a.poly * b.poly
        assert A.elem(raw) == a * b


def test_trivial_witness_trivializes_over_base(rng):
    hits = 0
    for _ in range(60):
        tau = random_skew(K, rng, 2)
        n = rng.randint(1, 2)
        v = triviality_test(tau, n)
        if not v.trivial:
            with pytest.raises(RootUnavailable):
                trivialize(form_from_skew(tau, n))
            continue
        hits += 1
        twisted = skew_mul(tau, SkewPoly(K, [v.witness]))
        data = trivialize(form_from_skew(twisted, n))
        assert data.ok and data.ell == GradedField(K)
    # constructed trivial instances
    for _ in range(20):
        a0 = K.random(rng, height=1, nonzero=True)
        b1 = K.random(rng, height=1) ** 2
        tau = SkewPoly(K, [a0, b1 * a0**2])
        v = triviality_test(tau, 1)
        assert v.trivial
        data = trivialize(form_from_skew(skew_mul(tau, SkewPoly(K, [v.witness])), 1))
        assert data.ok
        hits += 1
    assert hits >= 20


def test_spec_json_round_trip():
    A = gf2_family()
    js = A.spec.to_json()
    assert js["n"] == 1 and js["f_coeffs"] == ["1", "t^-2"]
