"""Tame cyclic descent for the disc, computed on graded reductions.

The setup is split and totally ramified: ``ell~ = F_q[s^(+-1)]`` over
``k~ = F_q[s^(+-e)]`` with ``e | q - 1``, and ``G = <g>`` of order ``e`` acting by
``s -> zeta*s``. Forms of ``ell~[r^-1 T]`` are classified by scalar cocycles
``theta_g = zeta^j``; the invariant ring of the twisted action is generated by
``s^-j T``, a disc of radius ``deg(s)^-j r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .degree import IDENTITY, Degree
from .fields import GF, GFElem, get_gf, prime_power
from .graded import GradedElem, GradedField, GradedPolyRing


class ActionOrderMismatch(ValueError):
    pass


class SetupMismatch(ValueError):
    pass


class NotScalarCocycle(ValueError):
    pass


# -- cohomology of finite cyclic groups --------------------------------------------------


@dataclass(frozen=True)
class FiniteModule:
    """``Z/m_1 x ... x Z/m_k`` written additively, with a generator acting by an integer matrix.

    ``action[i]`` is the image of the i-th basis vector.
    """

    moduli: tuple
    action: tuple

    def elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def scale(self, k: int, a):
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def act(self, a):
        out = [0] * len(self.moduli)
        for i, x in enumerate(a):
            for j, c in enumerate(self.action[i]):
                out[j] += x * c
        return tuple(v % m for v, m in zip(out, self.moduli))

    @property
    def zero(self):
        return tuple(0 for _ in self.moduli)

    @property
    def order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out


def units_module(q: int, power: int = 1) -> FiniteModule:
    """``F_q^x`` (cyclic of order ``q - 1``) with ``sigma`` acting as ``x -> x^power``."""
    return FiniteModule((q - 1,), ((power % (q - 1),),))


def additive_module(q: int) -> FiniteModule:
    """``(F_q, +)`` as ``(Z/p)^m`` with trivial action."""
    p, m = prime_power(q)
    return FiniteModule((p,) * m, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))


@dataclass(frozen=True)
class GroupDescriptor:
    """A finite abelian group by its invariant factors ``d_1 | d_2 | ...``."""

    invariant_factors: tuple

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple:
    """Invariant factors of a finite abelian group from the orders of all its elements.

    For each prime ``l``, the number of elements killed by ``l^k`` is
    ``l^(sum_i min(k, e_i))``, which determines the exponents ``e_i``.
    """
    size = len(orders)
    if size == 1:
        return ()
    elementary: dict[int, list[int]] = {}
    for ell in _prime_factors(size):
        counts = []
        k = 0
        while True:
            k += 1
            c = sum(1 for o in orders if (ell**k) % o == 0 and _is_power_of(o, ell))
            counts.append(c)
            if k > 1 and counts[-1] == counts[-2]:
                break
        # log_ell counts: s_k = sum_i min(k, e_i); #(e_i >= k) = s_k - s_(k-1)
        logs = [0] + [_ilog(c, ell) for c in counts]
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = []
        for k in range(1, len(ge) + 1):
            n_exactly = ge[k - 1] - (ge[k] if k < len(ge) else 0)
            exps += [k] * n_exactly
        elementary[ell] = sorted(exps, reverse=True)
    width = max(len(v) for v in elementary.values())
    factors = []
    for i in range(width):
        d = 1
        for ell, exps in elementary.items():
            if i < len(exps):
                d *= ell ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


def _is_power_of(o: int, ell: int) -> bool:
    while o % ell == 0:
        o //= ell
    return o == 1


def _ilog(c: int, ell: int) -> int:
    k = 0
    while c > 1:
        if c % ell:
            raise ValueError(f"{c} is not a power of {ell}")
        c //= ell
        k += 1
    return k


def h1_cyclic(e: int, module: FiniteModule) -> GroupDescriptor:
    """``H^1(Z/e, M) = ker(N) / im(sigma - 1)`` by enumeration of ``M``."""
    if e < 1:
        raise ValueError("e must be >= 1")
    basis = [tuple(int(i == j) for j in range(len(module.moduli))) for i in range(len(module.moduli))]
    for b in basis:
        x = b
        for _ in range(e):
            x = module.act(x)
        if x != b:
            raise ActionOrderMismatch(f"sigma^{e} is not the identity on {module}")
    elems = list(module.elements())

    def norm(a):
        acc, x = module.zero, a
        for _ in range(e):
            acc = module.add(acc, x)
            x = module.act(x)
        return acc

    kernel = [a for a in elems if norm(a) == module.zero]
    image = {module.add(module.act(a), module.scale(-1, a)) for a in elems}
    reps: list = []
    seen: set = set()
    for a in kernel:
        if a in seen:
            continue
        coset = {module.add(a, b) for b in image}
        seen |= coset
        reps.append(a)

    def order_mod_image(a) -> int:
        k, x = 1, a
        while x not in image:
            x = module.add(x, a)
            k += 1
        return k

    return GroupDescriptor(invariant_factors_from_orders([order_mod_image(a) for a in reps]))


# -- the tame setup ----------------------------------------------------------------------


@dataclass(frozen=True)
class TameSetup:
    q: int
    e: int
    r: Degree = IDENTITY
    s_degree: Degree = field(default_factory=lambda: Degree.gen("q_s"))

    def __post_init__(self):
        p, _ = prime_power(self.q)
        if self.e < 1 or (self.q - 1) % self.e:
            raise ValueError(f"e = {self.e} must divide q - 1 = {self.q - 1}")
        if gcd(self.e, p) != 1:
            raise ValueError("e must be prime to p")

    @property
    def field(self) -> GF:
        p, m = prime_power(self.q)
        return get_gf(p, m)

    @property
    def zeta(self) -> GFElem:
        return self.field.generator() ** ((self.q - 1) // self.e)

    @property
    def ell(self) -> GradedField:
        return GradedField(self.field, self.s_degree, 1, t_name="s")

    @property
    def k(self) -> GradedField:
        return GradedField(self.field, self.s_degree, self.e, t_name="s")

    def disc(self, base: GradedField | None = None) -> GradedPolyRing:
        return GradedPolyRing(base or self.ell, (("T", self.r),))

    def act(self, x: GradedElem, a: int = 1) -> GradedElem:
        """``g^a`` on the coefficients: ``s -> zeta^a s``."""
        z = self.zeta**a
        return GradedElem(x.owner, {(b, ex): c * z**b for (b, ex), c in x.terms.items()})

    def to_json(self) -> dict:
        return {"q": self.q, "e": self.e, "r": str(self.r), "zeta": str(self.zeta),
                "field_presentation": self.field.presentation()}


@dataclass(frozen=True)
class Cocycle:
    setup: TameSetup
    values: tuple  # values[a] = theta_{g^a}, homogeneous units of ell~

    def check_law(self) -> bool:
        """``u_{g^(a+b)} = u_{g^a} * g^a(u_{g^b})`` for all pairs."""
        e = self.setup.e
        return all(
            self.values[(a + b) % e] == self.values[a] * self.setup.act(self.values[b], a)
            for a in range(e) for b in range(e)
        )

    def to_json(self) -> dict:
        return {"values": [str(v) for v in self.values]}


def cocycle_from_radius(setup: TameSetup, j: int) -> Cocycle:
    """``theta_{g^a} = g^a(s^j)/s^j = zeta^(a j)``."""
    R = setup.ell.ring()
    return Cocycle(setup, tuple(R.monomial(setup.zeta ** (a * j)) for a in range(setup.e)))


def cocycle_from_values(setup: TameSetup, values: Sequence) -> Cocycle:
    R = setup.ell.ring()
    vals = tuple(v if isinstance(v, GradedElem) else R.monomial(R.coeff(v)) for v in values)
    if len(vals) != setup.e:
        raise ValueError("one value per group element")
    return Cocycle(setup, vals)


@dataclass
class CohomologyVerdict:
    equivalent: bool
    witness: GradedElem | None
    candidates_tried: int

    def to_json(self) -> dict:
        return {"equivalent": self.equivalent, "witness": None if self.witness is None else str(self.witness),
                "candidates_tried": self.candidates_tried}


def cohomologous_test(c1: Cocycle, c2: Cocycle) -> CohomologyVerdict:
    """Search ``b`` with ``b * c1_g = c2_g * g(b)`` at the generator.

    ``b`` ranges over homogeneous units of degree one, i.e. the automorphisms
    ``T -> b T`` of the disc that preserve its grading; since ``deg s != 1``
    these are the nonzero constants.
    """
    if c1.setup != c2.setup:
        raise SetupMismatch("cocycles over different setups")
    setup = c1.setup
    R = setup.ell.ring()
    tried = 0
    for k in range(setup.e):
        if not (setup.s_degree**k).is_identity():
            continue
        for c in setup.field.units():
            tried += 1
            b = R.monomial(c, k)
            if b * c1.values[1 % setup.e] == c2.values[1 % setup.e] * setup.act(b):
                return CohomologyVerdict(True, b, tried)
    return CohomologyVerdict(False, None, tried)


def _scalar_index(setup: TameSetup, c: Cocycle) -> int:
    theta = c.values[1 % setup.e]
    if len(theta.terms) != 1 or next(iter(theta.terms))[0] != 0:
        raise NotScalarCocycle(f"theta_g = {theta} is not a constant")
    val = next(iter(theta.terms.values()))
    for j in range(setup.e):
        if setup.zeta**j == val:
            return j
    raise NotScalarCocycle(f"theta_g = {val} is not a power of zeta")


@dataclass
class Descent:
    j: int
    generator: GradedElem
    radius: Degree
    invariant_monomials: list
    checks: dict

    def to_json(self) -> dict:
        return {"j": self.j, "generator": str(self.generator), "radius": str(self.radius),
                "checks": self.checks}


def descend(setup: TameSetup, c: Cocycle, max_degree: int = 8) -> Descent:
    """Invariants of ``sum a_n T^n -> sum g(a_n) theta_g^n T^n`` on ``ell~[r^-1 T]``.

    A monomial ``c s^a T^n`` is fixed iff ``zeta^(a + j n) = 1``, i.e.
    ``a = -j n mod e``. Each fixed monomial is ``s^(a + j n)`` (an element of
    ``k~``) times ``(s^-j T)^n``, so ``s^-j T`` generates over ``k~``.
    """
    j = _scalar_index(setup, c)
    e = setup.e
    R = setup.disc()
    theta = c.values[1 % e]

    def g_bar(x: GradedElem) -> GradedElem:
        out = R.zero()
        for (a, (n,)), coef in x.terms.items():
            out = out + R.monomial(coef * setup.zeta**a, a) * (theta**n).reowned(R.base.ring()) * R.var("T") ** n
        return out

    gen = R.monomial(setup.field.one(), -j, (1,))
    fixed = []
    ok_solve = True
    ok_generate = True
    for n in range(max_degree + 1):
        for a in range(-e, e):
            mono = R.monomial(setup.field.one(), a, (n,))
            is_fixed = g_bar(mono) == mono
            predicted = (a + j * n) % e == 0
            ok_solve &= is_fixed == predicted
            if is_fixed:
                fixed.append(mono)
                cofactor = a + j * n
                ok_generate &= cofactor % e == 0 and R.monomial(setup.field.one(), cofactor) * gen**n == mono
    radius = setup.s_degree ** (-j) * setup.r
    # base change back: s^j * (s^-j T) = T recovers ell~[r^-1 T]
    round_trip = R.monomial(setup.field.one(), j) * gen == R.var("T")
    checks = {
        "generator invariant": g_bar(gen) == gen,
        "fixed monomials match a = -j n mod e": ok_solve,
        "k~-algebra generated by s^-j T": ok_generate,
        "generator degree equals radius": gen.degree() == radius,
        "base change round trip": round_trip,
    }
    return Descent(j, gen, radius, fixed, checks)


def classify(setup: TameSetup) -> dict:
    """The ``e`` radius classes ``deg(s)^-j r`` with their descended generators."""
    classes = []
    for j in range(setup.e):
        d = descend(setup, cocycle_from_radius(setup, j))
        classes.append({"j": j, "radius": str(d.radius), "generator": str(d.generator), "checks": d.checks})
    h1 = h1_cyclic(setup.e, units_module(setup.q))
    cocycles = [cocycle_from_radius(setup, j) for j in range(setup.e)]
    n_classes = _count_classes(cocycles)
    return {
        "classes": classes,
        "h1": str(h1),
        "h1_order": h1.order,
        "cohomology_classes": n_classes,
        "h1_check": "pass" if h1.order == len(classes) == n_classes else "fail",
    }


def _count_classes(cocycles: Sequence[Cocycle]) -> int:
    reps: list[Cocycle] = []
    for c in cocycles:
        if not any(cohomologous_test(r, c).equivalent for r in reps):
            reps.append(c)
    return len(reps)


@dataclass
class Pairing:
    table: list
    perfect: bool
    homomorphism: bool
    injective: bool
    hom_group_order: int

    def to_json(self) -> dict:
        return {"table": self.table, "perfect": self.perfect, "homomorphism": self.homomorphism,
                "injective": self.injective, "hom_group_order": self.hom_group_order}


def inertia_pairing(setup: TameSetup) -> Pairing:
    """``psi_{g^a}(deg(s)^b) = g^a(s^b)/s^b = zeta^(a b)``."""
    e = setup.e
    R = setup.ell.ring()
    table = []
    for a in range(e):
        row = []
        for b in range(e):
            sb = R.t(b)
            ratio = setup.act(sb, a) * sb.inverse()
            row.append(next(iter(ratio.terms.values())))
        table.append(row)
    homomorphism = all(
        table[a][(b1 + b2) % e] == table[a][b1] * table[a][b2] for a in range(e) for b1 in range(e) for b2 in range(e)
    ) and all(table[(a1 + a2) % e][b] == table[a1][b] * table[a2][b] for a1 in range(e) for a2 in range(e)
              for b in range(e))
    rows = {tuple(row) for row in table}
    cols = {tuple(table[a][b] for a in range(e)) for b in range(e)}
    injective = len(rows) == e
    hom_order = gcd(e, setup.q - 1)
    # every homomorphism Z/e -> F_q^x is b -> w^b with w^e = 1
    all_homs = {tuple(w**b for b in range(e)) for w in setup.field.units() if w**e == 1}
    perfect = injective and len(cols) == e and rows == all_homs and len(all_homs) == hom_order
    return Pairing([[str(v) for v in row] for row in table], perfect, homomorphism, injective, hom_order)


__all__ = [
    "FiniteModule",
    "units_module",
    "additive_module",
    "GroupDescriptor",
    "h1_cyclic",
    "invariant_factors_from_orders",
    "TameSetup",
    "Cocycle",
    "cocycle_from_radius",
    "cocycle_from_values",
    "cohomologous_test",
    "CohomologyVerdict",
    "descend",
    "Descent",
    "classify",
    "inertia_pairing",
    "Pairing",
    "ActionOrderMismatch",
    "SetupMismatch",
    "NotScalarCocycle",
]
