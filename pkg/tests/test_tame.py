from __future__ import annotations

import itertools
from math import gcd

import pytest

from graded_descent.degree import Degree
from graded_descent.fields import prime_power
from graded_descent.tame import (
    ActionOrderMismatch,
    FiniteModule,
    NotScalarCocycle,
    SetupMismatch,
    TameSetup,
    additive_module,
    classify,
    cocycle_from_radius,
    cocycle_from_values,
    cohomologous_test,
    descend,
    h1_cyclic,
    inertia_pairing,
    invariant_factors_from_orders,
    units_module,
)

S = Degree({"q_s": 1})


def test_h1_examples():
    assert h1_cyclic(2, units_module(5)).invariant_factors == (2,)
    assert h1_cyclic(2, additive_module(5)).order == 1
    for e in (2, 3, 4, 6):
        assert h1_cyclic(e, FiniteModule((e,), ((1,),))).invariant_factors == (e,)
    with pytest.raises(ActionOrderMismatch):
        h1_cyclic(2, units_module(7, power=3))


def test_h1_nontrivial_action():
    # Z/2 acting on Z/4 by inversion: ker N = all, im = 2Z/4, H^1 = Z/2
    assert h1_cyclic(2, FiniteModule((4,), ((3,),))).invariant_factors == (2,)
    # Z/2 acting on F_9^x by Frobenius x -> x^3: Hilbert 90 gives H^1 = 0
    assert h1_cyclic(2, units_module(9, power=3)).order == 1


def _brute_factors(moduli):
    """Invariant factors by splitting each Z/m into prime powers."""
    by_prime: dict[int, list[int]] = {}
    for m in moduli:
        d = 2
        while m > 1:
            k = 0
            while m % d == 0:
                m //= d
                k += 1
            if k:
                by_prime.setdefault(d, []).append(d**k)
            d += 1
    width = max((len(v) for v in by_prime.values()), default=0)
    cols = [sorted(v, reverse=True) for v in by_prime.values()]
    out = []
    for i in range(width):
        x = 1
        for c in cols:
            if i < len(c):
                x *= c[i]
        out.append(x)
    return tuple(sorted(out))


def _orders(moduli):
    out = []
    for a in itertools.product(*(range(m) for m in moduli)):
        o = 1
        for x, m in zip(a, moduli):
            oi = m // gcd(x, m)
            o = o * oi // gcd(o, oi)
        out.append(o)
    return out


@pytest.mark.parametrize("moduli", [(2,), (4,), (2, 2), (2, 4), (6,), (2, 6), (3, 9), (4, 6), (2, 2, 2), (12,), (5,)])
def test_invariant_factors(moduli):
    assert invariant_factors_from_orders(_orders(moduli)) == _brute_factors(moduli)


def test_cocycle_examples():
    setup = TameSetup(5, 2)
    c0 = cocycle_from_radius(setup, 0)
    assert all(v.is_one() for v in c0.values)
    c1 = cocycle_from_radius(setup, 1)
    assert str(c1.values[1]) == "4"
    for q, e in ((5, 2), (5, 4), (7, 3), (7, 6), (9, 4)):
        setup = TameSetup(q, e)
        for j in range(e):
            assert cocycle_from_radius(setup, j).check_law()


def test_cohomologous():
    setup = TameSetup(5, 2)
    c0, c1 = cocycle_from_radius(setup, 0), cocycle_from_radius(setup, 1)
    v = cohomologous_test(c1, c1)
    assert v.equivalent and v.witness.is_one()
    assert not cohomologous_test(c0, c1).equivalent
    s7 = TameSetup(7, 3)
    assert cohomologous_test(cocycle_from_radius(s7, 1), cocycle_from_radius(s7, 4)).equivalent
    with pytest.raises(SetupMismatch):
        cohomologous_test(c0, cocycle_from_radius(s7, 0))


def test_exactly_e_classes():
    for q, e in ((5, 2), (5, 4), (7, 3), (7, 6), (13, 4)):
        setup = TameSetup(q, e)
        cs = [cocycle_from_radius(setup, j) for j in range(e)]
        for a in range(e):
            for b in range(e):
                assert cohomologous_test(cs[a], cs[b]).equivalent == (a == b)


def test_descend_examples():
    setup = TameSetup(5, 2)
    d0 = descend(setup, cocycle_from_radius(setup, 0))
    assert str(d0.generator) == "T" and d0.radius == setup.r
    d1 = descend(setup, cocycle_from_radius(setup, 1))
    assert str(d1.generator) == "s^-1*T" and d1.radius == S**-1
    assert all(d1.checks.values())
    # fixed monomials s^a T^n satisfy a = -n mod 2
    for mono in d1.invariant_monomials:
        ((a, (n,)),) = mono.terms.keys()
        assert (a + n) % 2 == 0
    s7 = TameSetup(7, 3)
    d = descend(s7, cocycle_from_radius(s7, 2))
    assert str(d.generator) == "s^-2*T" and d.radius == S**-2
    assert all(d.checks.values())


def test_descend_rejects_non_scalar():
    setup = TameSetup(5, 2)
    R = setup.ell.ring()
    with pytest.raises(NotScalarCocycle):
        descend(setup, cocycle_from_values(setup, [R.one(), R.t()]))
    with pytest.raises(NotScalarCocycle):
        descend(setup, cocycle_from_values(setup, [1, 2]))


def test_classify_counts():
    r = Degree({"r": 1})
    for q, e in ((5, 2), (5, 4), (7, 3), (7, 1), (9, 4), (4, 3), (13, 6)):
        setup = TameSetup(q, e, r)
        out = classify(setup)
        assert len(out["classes"]) == e == out["h1_order"] == out["cohomology_classes"]
        assert out["h1_check"] == "pass"
        for cl in out["classes"]:
            j = cl["j"]
            assert all(cl["checks"].values())
            assert cl["generator"] == ("T" if j == 0 else f"s^-{j}*T")
            assert Degree.__name__ and cl["radius"] == str(S ** (-j) * r)


def test_setup_validation():
    with pytest.raises(ValueError):
        TameSetup(5, 3)
    with pytest.raises(ValueError):
        TameSetup(9, 3)


def test_additive_vanishing():
    for q in (4, 5, 7, 9):
        p, _ = prime_power(q)
        for e in (2, 3, 4):
            if gcd(e, p) == 1:
                assert h1_cyclic(e, additive_module(q)).order == 1


def test_pairing():
    setup = TameSetup(7, 3)
    pr = inertia_pairing(setup)
    assert pr.perfect and pr.homomorphism and pr.injective and pr.hom_group_order == 3
    assert pr.table[1][1] == str(setup.zeta)
    assert all(v == "1" for v in pr.table[0])
    for q, e in ((5, 2), (5, 4), (13, 6), (9, 8)):
        assert inertia_pairing(TameSetup(q, e)).perfect
