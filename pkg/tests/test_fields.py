from __future__ import annotations

import pytest

from graded_descent.fields import (
    DivisionByZero,
    describe,
    frobenius,
    get_gf,
    get_rational_function_field,
    is_pn_th_power,
    parse_field,
    pn_th_root,
)
from graded_descent.parsing import ParseError


def test_arithmetic_examples(K, F5):
    u = K.gen()
    assert u * (1 / u) == K.one()
    assert F5(2) + F5(3) == F5.zero()
    q = K("(u^2+u)/u")
    assert q == u + 1
    assert q.num == (1, 1) and q.den == (1,)


def test_canonical_form(K):
    x = K("(u^2 + 1)/(u + 1)")
    assert x == K("u + 1")
    y = K("1/(u^2 + u)") + K("1/u")
    # 1/(u^2+u) + 1/u = u/(u(u+1)) = 1/(u+1), in lowest terms with monic denominator
    assert y == K("1/(u + 1)")
    assert y.num == (1,) and y.den == (1, 1)


def test_division_by_zero(K, F5):
    with pytest.raises(DivisionByZero):
        K.zero().inverse()
    with pytest.raises(DivisionByZero):
        F5(1) / F5(0)


def test_frobenius_examples(K, F5):
    u = K.gen()
    assert frobenius(u, 1) == u**2
    assert frobenius(F5(2), 1) == F5(2)
    assert frobenius(u + 1, 2) == u**4 + 1
    assert frobenius(u + 1, 2) == (u + 1) ** 4


def test_root_examples(K, F5):
    u = K.gen()
    assert pn_th_root(u**2, 1) == u
    assert pn_th_root(u, 1) is None
    r = pn_th_root(F5(3), 2)
    assert r == F5(3) and r**25 == F5(3)


def test_finite_fields_are_perfect(rng):
    for p, m in ((2, 2), (3, 2), (2, 3), (5, 1), (7, 1)):
        F = get_gf(p, m)
        assert describe(F).is_perfect
        for x in F.elements():
            for n in (1, 2, 3):
                r = pn_th_root(x, n)
                assert r is not None and frobenius(r, n) == x


def test_frobenius_is_ring_map(rng, K):
    F9 = get_gf(3, 2)
    K3 = get_rational_function_field(3)
    for _ in range(500):
        for draw in (lambda: K.random(rng, height=2), lambda: F9.random(rng), lambda: K3.random(rng, height=1)):
            a, b = draw(), draw()
            n = rng.randint(0, 2)
            assert frobenius(a + b, n) == frobenius(a, n) + frobenius(b, n)
            assert frobenius(a * b, n) == frobenius(a, n) * frobenius(b, n)


def test_root_none_is_confirmed_by_enumeration(rng):
    K = get_rational_function_field(2)
    candidates = list(K.elements_of_height(2))
    for x in (K("u"), K("u^3 + 1"), K("1/u"), K("(u^2 + u + 1)/u^2")):
        assert pn_th_root(x, 1) is None
        assert all(y**2 != x for y in candidates)
    for _ in range(100):
        x = K.random(rng, height=3)
        r = pn_th_root(x, 1)
        if r is not None:
            assert frobenius(r, 1) == x
            assert is_pn_th_power(x, 1)


def test_height_enumeration_counts():
    K = get_rational_function_field(2)
    # nonzero reduced fractions num/den with monic den, degrees <= 1
    elems = list(K.elements_of_height(1))
    assert len(elems) == len(set(elems))
    assert K("u") in elems and K("1/(u+1)") in elems and K("u/(u+1)") in elems


def test_parse_field():
    assert str(parse_field("GF(4)")) == "GF(4)"
    assert parse_field("GF(2)(u)") is get_rational_function_field(2)
    assert parse_field("GF(2)") is get_gf(2, 1)
    for bad in ("GF(6)", "F(2)", "GF(2)[u]"):
        with pytest.raises(ParseError):
            parse_field(bad)


def test_gf4_presentation_is_recorded():
    F4 = get_gf(2, 2)
    w = F4("w")
    assert w**3 == F4.one()
    assert "w" in F4.presentation() or "^2" in F4.presentation()
