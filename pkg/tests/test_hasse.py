from __future__ import annotations

from math import factorial, prod

import pytest

from graded_descent.fields import get_gf, get_rational_function_field
from graded_descent.graded import random_elem
from graded_descent.hasse import (
    HeartFails,
    NotAUnitLog,
    TrivialOnProbes,
    TruncSeries,
    ZeroArgument,
    base_change,
    binomial_mod_p,
    derivation_table,
    heartsuit_check,
    is_constant,
    log_derivative,
    log_exponent_identity,
    mu_and_n,
    standard_derivation,
    synthetic_derivation,
)
from graded_descent.russell import family_form, parse_form

DERIVATIONS = [(2, 1), (2, 2), (3, 1), (5, 1)]


def std(p, mp, m=1):
    return standard_derivation(get_gf(p, m), mp)


def test_standard_examples():
    d = std(2, 1)
    R = d.carrier
    t = R.t()
    assert d.component(1, t**2) == R.zero()
    assert d.component(1, t**3) == t**2
    assert d(t**-1) == TruncSeries(R, [t**-1, t**-2])
    for p, mp in DERIVATIONS:
        d = std(p, mp)
        q = p**mp
        assert is_constant(d, d.carrier.t(q))


def test_binomial_oracle():
    for p in (2, 3, 5):
        for i in range(-30, 31):
            for j in range(0, 10):
                exact = prod(i - k for k in range(j)) // factorial(j)
                assert binomial_mod_p(i, j, p) == exact % p


def test_derivation_table_matches():
    for p, mp in DERIVATIONS:
        rows = derivation_table(p, mp, 3 * p**mp, -3 * p**mp)
        assert rows and all(r["match"] for r in rows)


def test_mu_and_n():
    assert mu_and_n(std(2, 2), [std(2, 2).carrier.t()]) == (1, 2)
    assert mu_and_n(std(3, 1), [std(3, 1).carrier.t()]) == (1, 1)
    R = std(2, 1).carrier
    d = synthetic_derivation(R, 3, [R.t(), R.zero(), R.t()])
    assert mu_and_n(d, [R.t()]) == (2, 1)
    trivial = synthetic_derivation(R, 3, [R.t()])
    with pytest.raises(TrivialOnProbes):
        mu_and_n(trivial, [R.t()])


def test_is_constant_examples():
    d = std(2, 1)
    R = d.carrier
    assert is_constant(d, R.t(2))
    assert not is_constant(d, R.t())
    F4 = get_gf(2, 2)
    d4 = standard_derivation(F4, 1)
    assert is_constant(d4, d4.carrier.monomial(F4("w")))


def test_heartsuit():
    for p, mp in DERIVATIONS:
        rep = heartsuit_check(std(p, mp))
        assert rep.passed and rep.witness == "t" and rep.stride_ratio == p**mp
    d = std(2, 1)
    assert not heartsuit_check(d, declared_stride=4).passed
    with pytest.raises(HeartFails):
        heartsuit_check(d, declared_stride=4, raise_on_fail=True)
    # t -> t + t S^2 of rank 3: mu = 2, n = 1; (t + t S^2)^2 = t^2 mod S^4, so it passes
    R = d.carrier
    syn = synthetic_derivation(R, 3, [R.t(), R.zero(), R.t()])
    assert mu_and_n(syn, [R.t()]) == (2, 1)
    assert heartsuit_check(syn).passed
    assert not heartsuit_check(syn, declared_stride=4).passed


def test_base_change_examples():
    A = family_form()
    bc = base_change(std(2, 1), A)
    L = bc.data.extended
    fixed = lambda z: TruncSeries.constant(L, z, 1)  # noqa: E731
    assert bc.on_form(L.x) == fixed(L.x)
    assert bc.on_form(L.y) == fixed(L.y)
    tx = L.elem("t*x")
    assert bc.on_form(tx) == TruncSeries(L, [tx, L.x])
    triv = bc.data.triv
    assert bc.on_form(triv) == TruncSeries(L, [triv, L.elem("t^-2*x")])
    assert str(bc.dT) == "T + t^-2*T^2*S (mod S^2)"
    rep = heartsuit_check(bc.on_T)
    assert rep.passed


def test_log_derivative_examples():
    d = std(2, 1)
    R = d.carrier
    t = R.t()
    assert log_derivative(d, t) == TruncSeries(R, [R.one(), t**-1])
    assert log_derivative(d, t**2).is_one()
    d3 = std(3, 1)
    w = log_derivative(d3, d3.carrier.t())
    assert w[1] == d3.carrier.t(-1) and w[2] == d3.carrier.zero()
    with pytest.raises(ZeroArgument):
        log_derivative(d, R.zero())
    bc = base_change(d, family_form())
    T = bc.data.target.var("T")
    assert str(log_derivative(bc, T)) == "1 + t^-2*T*S (mod S^2)"


def test_log_of_non_unit():
    d = std(2, 1)
    R = d.carrier
    res = log_derivative(d, R.parse("t + 1"))
    assert isinstance(res, NotAUnitLog)
    assert log_exponent_identity(d, R.parse("t + 1"), 2)


def test_convolution_and_augmentation(rng):
    for p, mp in DERIVATIONS:
        d = std(p, mp)
        R = d.carrier
        for _ in range(125):
            a, b = random_elem(R, rng), random_elem(R, rng)
            da, db, dab = d(a), d(b), d(a * b)
            for k in range(d.m + 1):
                assert dab[k] == sum((da[j] * db[k - j] for j in range(k + 1)), R.zero())
            assert da[0] == a
            assert d(a + b) == da + db


def test_convolution_on_form(rng):
    bc = base_change(std(2, 1), family_form())
    L = bc.data.extended
    for _ in range(100):
        a = L.elem(random_elem(L.ring, rng))
        b = L.elem(random_elem(L.ring, rng))
        da, db, dab = bc.on_form(a), bc.on_form(b), bc.on_form(a * b)
        assert dab[1] == da[0] * db[1] + da[1] * db[0]
        assert da[0] == a


def test_powers_are_constants(rng):
    for p, mp in DERIVATIONS:
        d = std(p, mp)
        for _ in range(25):
            a = random_elem(d.carrier, rng)
            assert is_constant(d, a ** (p**mp))


def test_constants_exhaustive():
    for p, mp in DERIVATIONS:
        d = std(p, mp)
        pn = p**mp
        F = d.carrier.coeff
        for i in range(-3 * pn, 3 * pn + 1):
            for c in list(F.units())[:3]:
                assert is_constant(d, d.carrier.monomial(c, i)) == (i % pn == 0)


def test_log_exponent(rng):
    for p, mp in DERIVATIONS:
        d = std(p, mp)
        for _ in range(25):
            z = random_elem(d.carrier, rng)
            if z:
                assert log_exponent_identity(d, z, p**mp)
    bc = base_change(std(2, 1), family_form())
    for _ in range(100):
        z = random_elem(bc.data.target, rng, var_max=4)
        if z:
            assert log_exponent_identity(bc, z, 2)
    form = parse_form({"field": "GF(3)", "n": 2, "stride": 9, "r": "q_t", "s": "q_t", "f_coeffs": ["1", "t^-18"]})
    bc3 = base_change(std(3, 2), form)
    for _ in range(20):
        z = random_elem(bc3.data.target, rng, var_max=3)
        if z:
            assert log_exponent_identity(bc3, z, 9)


def test_log_multiplicative(rng):
    d = std(2, 2)
    R = d.carrier
    K = get_rational_function_field(3)
    dK = standard_derivation(K, 1)
    for der, ring in ((d, R), (dK, dK.carrier)):
        count = 0
        while count < 50:
            z1, z2 = random_elem(ring, rng, n_terms=1), random_elem(ring, rng, n_terms=1)
            if not (z1 and z2):
                continue
            count += 1
            assert log_derivative(der, z1 * z2) == log_derivative(der, z1) * log_derivative(der, z2)
    bc = base_change(std(2, 1), family_form())
    RT = bc.data.target
    T = RT.var("T")
    for a in range(-2, 3):
        for k in range(0, 4):
            z1, z2 = RT.t(a) * T**k, RT.t(-a) * T ** (k + 1)
            assert log_derivative(bc, z1 * z2) == log_derivative(bc, z1) * log_derivative(bc, z2)


def test_trunc_series_inverse(rng):
    d = std(3, 1)
    R = d.carrier
    for _ in range(50):
        z = random_elem(R, rng, n_terms=1)
        if z:
            s = d(z)
            assert s * s.inverse() == TruncSeries.one(R, d.m)
