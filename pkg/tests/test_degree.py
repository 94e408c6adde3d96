from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graded_descent.degree import (
    IDENTITY,
    Degree,
    deg_inv,
    deg_mul,
    deg_pow,
    format_degree,
    order_mod_subgroup,
    parse_degree,
)
from graded_descent.parsing import ParseError

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
degrees = st.dictionaries(st.sampled_from(["q_t", "r", "s", "q_s"]), fractions, max_size=4).map(Degree)


def test_examples():
    assert deg_mul(Degree({"r": 1}), Degree({"r": -1})) == IDENTITY
    assert deg_pow(Degree({"q_t": 2}), Fraction(1, 2)) == Degree({"q_t": 1})
    assert deg_mul(Degree({"q_t": 1}), Degree({"r": 3})) == Degree({"q_t": 1, "r": 3})


def test_canonical_form_drops_zero_exponents():
    assert Degree({"r": 0, "q_t": 1}) == Degree({"q_t": 1})
    assert Degree({"r": 0}).is_identity()
    assert hash(Degree({"r": 0})) == hash(IDENTITY)


def test_parse_and_format_round_trip():
    d = parse_degree("q_t^2 * r^-1/3")
    assert d == Degree({"q_t": 2, "r": Fraction(-1, 3)})
    assert parse_degree(format_degree(d)) == d
    assert parse_degree("1") == IDENTITY
    with pytest.raises(ParseError):
        parse_degree("2q^x")


@settings(max_examples=500, deadline=None)
@given(degrees, degrees, degrees, fractions, fractions)
def test_group_axioms(a, b, c, x, y):
    assert deg_mul(deg_mul(a, b), c) == deg_mul(a, deg_mul(b, c))
    assert deg_mul(a, deg_inv(a)) == IDENTITY
    assert deg_mul(a, b) == deg_mul(b, a)
    assert deg_pow(deg_pow(a, x), y) == deg_pow(a, x * y)


def test_order_examples():
    assert order_mod_subgroup(Degree({"r": 1}), [Degree({"r": 2})]) == 2
    assert order_mod_subgroup(Degree({"r": 1}), [Degree({"q_t": 1})]) is None
    assert order_mod_subgroup(Degree({"q_t": 3}), [Degree({"q_t": 2}), Degree({"q_t": 5})]) == 1
    assert order_mod_subgroup(Degree({"q_t": Fraction(1, 2)}), [Degree({"q_t": 3})]) == 6


def _is_multiple(w: tuple, v: tuple) -> bool:
    """Is ``w`` an integer multiple of ``v``?"""
    if not any(v):
        return not any(w)
    i = next(i for i, x in enumerate(v) if x)
    c = w[i] / v[i]
    return c.denominator == 1 and all(c * x == y for x, y in zip(v, w))


def _brute_order(g: Degree, gens: list[Degree], names: list[str], bound: int = 200) -> int | None:
    vec = lambda d: tuple(d.exponents.get(n, Fraction(0)) for n in names)  # noqa: E731
    vs, gv = [vec(h) for h in gens], vec(g)
    for k in range(1, 25):
        target = tuple(k * x for x in gv)
        if len(vs) == 1:
            if _is_multiple(target, vs[0]):
                return k
            continue
        for c in range(-bound, bound + 1):
            if _is_multiple(tuple(a - c * b for a, b in zip(target, vs[0])), vs[1]):
                return k
    return None


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=2),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
)
def test_order_matches_enumeration(gen_vecs, g_vec):
    names = ["q_t", "r"]
    gens = [Degree(dict(zip(names, v))) for v in gen_vecs]
    g = Degree(dict(zip(names, g_vec)))
    got = order_mod_subgroup(g, gens)
    brute = _brute_order(g, gens, names)
    if got is None or got > 24:
        assert brute is None
    else:
        assert got == brute
