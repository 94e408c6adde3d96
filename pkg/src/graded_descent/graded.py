"""Graded fields of Laurent shape and graded polynomial rings over them.

A graded field here is ``k1[t^(+-e)]``: Laurent polynomials in ``t`` with
exponents restricted to the lattice ``e*Z``, coefficients in the degree-one
field ``k1``, and ``t`` homogeneous of a chosen degree. With no ``t`` at all it
is just ``k1`` sitting in degree one. Polynomial rings add variables
``T1, T2, ...`` with their own degrees.

Elements are sparse maps ``(t exponent, variable exponents) -> coefficient``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .degree import IDENTITY, Degree, order_mod_subgroup
from .fields import Field, FieldElem, pn_th_root

Key = tuple  # (t_exp, (e1, ..., ek))


class OwnerMismatch(TypeError):
    pass


class FiniteOrderRadius(ValueError):
    """The radius has finite order modulo the value group of the base."""


class NotAUnit(ArithmeticError):
    pass


@dataclass(frozen=True)
class GradedField:
    """``coeff[t^(+-stride)]`` with ``deg t = t_degree``; ``t_degree=None`` means plain ``coeff``."""

    coeff: Field
    t_degree: Degree | None = None
    stride: int = 1
    t_name: str = "t"

    def __post_init__(self):
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        if self.t_degree is not None and self.t_degree.is_identity():
            raise ValueError("t must have nontrivial degree, otherwise k1[t] is not a graded field")

    @property
    def p(self) -> int:
        return self.coeff.p

    @property
    def has_t(self) -> bool:
        return self.t_degree is not None

    def value_group_gens(self) -> list[Degree]:
        """Generators of the degrees of nonzero homogeneous elements."""
        return [self.t_degree ** self.stride] if self.has_t else []

    def with_stride(self, stride: int) -> "GradedField":
        return replace(self, stride=stride)

    def relaxed(self) -> "GradedField":
        """The stride-one field containing this one."""
        return self.with_stride(1)

    def with_coeff(self, coeff: Field) -> "GradedField":
        return replace(self, coeff=coeff)

    def ring(self) -> "GradedPolyRing":
        return GradedPolyRing(self, ())

    def __str__(self) -> str:
        if not self.has_t:
            return str(self.coeff)
        return f"{self.coeff}[{self.t_name}^+-{self.stride}]"

    # element helpers (elements live in the variable-free ring)
    def elem(self, c, t_exp: int = 0) -> "GradedElem":
        return self.ring().monomial(c, t_exp)

    def parse(self, text: str) -> "GradedElem":
        return self.ring().parse(text)

    def frobenius_twist(self, n: int) -> "GradedField":
        if not self.has_t:
            return self
        return replace(self, t_degree=self.t_degree ** (Fraction(self.p) ** -n))


@dataclass(frozen=True)
class GradedPolyRing:
    """``base[T1, ..., Tk]`` with ``deg Ti`` given; optionally Laurent in the ``Ti``."""

    base: GradedField
    vars: tuple = ()
    laurent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple((str(n), d) for n, d in self.vars))
        names = [n for n, _ in self.vars]
        if len(set(names)) != len(names) or self.base.t_name in names:
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def coeff(self) -> Field:
        return self.base.coeff

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def var_names(self) -> list[str]:
        return [n for n, _ in self.vars]

    def var_degree(self, i: int) -> Degree:
        return self.vars[i][1]

    def __str__(self) -> str:
        if not self.vars:
            return str(self.base)
        inner = ", ".join(f"{n}:{d}" for n, d in self.vars)
        return f"{self.base}{{{inner}}}" + (" (Laurent)" if self.laurent else "")

    # constructors
    def zero(self) -> "GradedElem":
        return GradedElem(self, {})

    def one(self) -> "GradedElem":
        return self.monomial(self.coeff.one())

    def monomial(self, c, t_exp: int = 0, exps: Iterable[int] | None = None) -> "GradedElem":
        exps = tuple(exps) if exps is not None else (0,) * self.nvars
        c = self.coeff(c)
        return GradedElem(self, {(t_exp, exps): c} if c else {})

    def t(self, power: int = 1) -> "GradedElem":
        return self.monomial(self.coeff.one(), power)

    def var(self, name_or_index) -> "GradedElem":
        i = self.var_names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(self.coeff.one(), 0, exps)

    def gens(self) -> list["GradedElem"]:
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms: Mapping[Key, FieldElem]) -> "GradedElem":
        return GradedElem(self, {k: self.coeff(c) for k, c in terms.items() if c})

    def parse(self, text: str) -> "GradedElem":
        """Read ``u*t^-2*T1^2 + T2`` (stride is checked after parsing)."""
        from .parsing import ParseError, parse_expression

        loose = replace(self, base=self.base.relaxed(), laurent=True)
        field_ = self.coeff

        def symbol(name):
            if name == self.base.t_name and self.base.has_t:
                return loose.t()
            if name in self.var_names:
                return loose.var(name)
            try:
                return loose.monomial(field_(name))
            except Exception:
                raise ParseError(f"unknown symbol {name!r} in ring {self}") from None

        val = parse_expression(text, symbol, lambda n: loose.monomial(field_(n)))
        return self.coerce(val)

    def coerce(self, x: "GradedElem") -> "GradedElem":
        """Reinterpret the terms of ``x`` in this ring, checking the stride and exponents."""
        if isinstance(x, GradedElem) and x.owner == self:
            return x
        if isinstance(x, GradedElem):
            if x.owner.coeff is not self.coeff:
                raise OwnerMismatch(f"coefficients of {x.owner} are not in {self}")
            if x.owner.nvars != self.nvars and x.owner.nvars != 0:
                raise OwnerMismatch(f"cannot coerce from {x.owner} to {self}")
            terms = {}
            for (a, e), c in x.terms.items():
                if not e:
                    e = (0,) * self.nvars
                terms[(a, e)] = c
            return GradedElem(self, terms)
        return self.monomial(self.coeff(x))

    def check_key(self, key: Key) -> None:
        a, e = key
        if a % self.base.stride or (a and not self.base.has_t):
            raise ValueError(f"t-exponent {a} not allowed in {self.base}")
        if len(e) != self.nvars:
            raise ValueError(f"wrong number of exponents {e} for {self}")
        if not self.laurent and any(x < 0 for x in e):
            raise ValueError(f"negative exponent {e} in polynomial ring {self}")

    def key_degree(self, key: Key) -> Degree:
        a, e = key
        d = self.base.t_degree ** a if (a and self.base.has_t) else IDENTITY
        for (_, vd), x in zip(self.vars, e):
            if x:
                d = d * vd**x
        return d

    def with_base(self, base: GradedField) -> "GradedPolyRing":
        return replace(self, base=base)

    def frobenius_twist(self, n: int) -> "GradedPolyRing":
        p = self.p
        f = Fraction(p) ** -n
        return GradedPolyRing(
            self.base.frobenius_twist(n), tuple((v, d**f) for v, d in self.vars), self.laurent
        )


class GradedElem:
    """Sparse element of a :class:`GradedPolyRing`."""

    __slots__ = ("owner", "terms")

    def __init__(self, owner: GradedPolyRing, terms: dict):
        for k in terms:
            owner.check_key(k)
        self.owner = owner
        self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def _raw(cls, owner: GradedPolyRing, terms: dict) -> "GradedElem":
        obj = cls.__new__(cls)
        obj.owner = owner
        obj.terms = terms
        return obj

    # -- basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self == self.owner.one()

    def __len__(self) -> int:
        return len(self.terms)

    def _other(self, other) -> "GradedElem":
        if isinstance(other, GradedElem):
            if other.owner != self.owner:
                if other.owner.base == self.owner.base and other.owner.nvars == 0:
                    return self.owner.coerce(other)
                raise OwnerMismatch(f"{other.owner} vs {self.owner}")
            return other
        return self.owner.monomial(self.owner.coeff(other))

    # -- arithmetic
    def __add__(self, other) -> "GradedElem":
        other = self._other(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedElem._raw(self.owner, out)

    __radd__ = __add__

    def __neg__(self) -> "GradedElem":
        return GradedElem._raw(self.owner, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "GradedElem":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "GradedElem":
        return self._other(other) - self

    def __mul__(self, other) -> "GradedElem":
        other = self._other(other)
        out: dict = {}
        for (a1, e1), c1 in self.terms.items():
            for (a2, e2), c2 in other.terms.items():
                k = (a1 + a2, tuple(x + y for x, y in zip(e1, e2)))
                c = c1 * c2
                s = out.get(k)
                out[k] = c if s is None else s + c
        return GradedElem._raw(self.owner, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GradedElem":
        if e < 0:
            return self.inverse() ** (-e)
        if len(self.terms) == 1:
            ((a, ex), c), = self.terms.items()
            return GradedElem._raw(self.owner, {(a * e, tuple(x * e for x in ex)): c**e})
        result = self.owner.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_unit(self) -> bool:
        """Units of the Laurent rings are the monomials without polynomial variables."""
        if len(self.terms) != 1:
            return False
        ((a, e), c), = self.terms.items()
        return self.owner.laurent or not any(e)

    def inverse(self) -> "GradedElem":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit of {self.owner}")
        ((a, e), c), = self.terms.items()
        return GradedElem(self.owner, {(-a, tuple(-x for x in e)): c.inverse()})

    def __truediv__(self, other) -> "GradedElem":
        other = self._other(other)
        if other.is_unit():
            return self * other.inverse()
        q = divide_exact(self, other)
        if q is None:
            raise NotAUnit(f"{other} does not divide {self}")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedElem):
            return self.owner == other.owner and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self == self.owner.monomial(self.owner.coeff(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- degrees
    def term_degrees(self) -> dict[Key, Degree]:
        return {k: self.owner.key_degree(k) for k in self.terms}

    def is_homogeneous(self, degree: Degree | None = None) -> bool:
        degs = set(self.term_degrees().values())
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def degree(self) -> Degree:
        """Degree of a nonzero homogeneous element."""
        degs = set(self.term_degrees().values())
        if len(degs) != 1:
            raise ValueError(f"{self} is not a nonzero homogeneous element")
        return degs.pop()

    def homogeneous_components(self) -> dict[Degree, "GradedElem"]:
        return homogeneous_components(self)

    # -- structure
    def t_exponents(self) -> list[int]:
        return [a for a, _ in self.terms]

    def var_degree(self, i: int = 0) -> int:
        """Largest exponent of variable ``i`` (``-1`` for zero)."""
        return max((e[i] for _, e in self.terms), default=-1)

    def coefficient_in_var(self, i: int, power: int) -> "GradedElem":
        """Coefficient of ``Ti^power``, as an element of the same ring."""
        out = {}
        for (a, e), c in self.terms.items():
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                out[(a, tuple(e2))] = c
        return GradedElem._raw(self.owner, out)

    def map_coeffs(self, fn: Callable[[FieldElem], FieldElem], owner: GradedPolyRing | None = None,
                   t_scale: int = 1) -> "GradedElem":
        owner = owner or self.owner
        out = {}
        for (a, e), c in self.terms.items():
            c2 = fn(c)
            if c2:
                out[(a * t_scale, e)] = c2
        return GradedElem(owner, out)

    def reowned(self, owner: GradedPolyRing) -> "GradedElem":
        """Same terms, different (compatible) owner ring."""
        return GradedElem(owner, dict(self.terms))

    def substitute(self, target: GradedPolyRing, var_images, t_image=None) -> "GradedElem":
        """Image under the coefficient-fixing homomorphism ``Ti -> var_images[i]``, ``t -> t_image``.

        ``t_image`` defaults to ``t`` of ``target``; coefficients must already
        lie in the coefficient field of ``target``.
        """
        cache: dict = {}

        def pw(slot, base, n):
            if (slot, n) not in cache:
                cache[(slot, n)] = base**n
            return cache[(slot, n)]

        acc = target.zero()
        for (a, e), c in self.terms.items():
            if t_image is None:
                term = target.monomial(c, a if target.base.has_t else 0)
            else:
                term = target.monomial(c)
                if a:
                    term = term * pw("t", t_image, a)
            for i, x in enumerate(e):
                if x:
                    term = term * pw(i, var_images[i], x)
            acc = acc + term
        return acc

    def sort_key(self) -> tuple:
        return tuple(sorted((k, c.sort_key()) for k, c in self.terms.items()))

    def __repr__(self) -> str:
        return f"GradedElem({self})"

    def __str__(self) -> str:
        return format_elem(self)


def format_elem(x: GradedElem) -> str:
    if not x.terms:
        return "0"
    owner = x.owner
    parts = []
    for (a, e), c in sorted(x.terms.items(), key=lambda kv: (tuple(-v for v in kv[0][1]), -kv[0][0])):
        mono = []
        if a:
            mono.append(owner.base.t_name if a == 1 else f"{owner.base.t_name}^{a}")
        for (name, _), k in zip(owner.vars, e):
            if k:
                mono.append(name if k == 1 else f"{name}^{k}")
        cs = str(c)
        neg_one = c == -owner.coeff.one() and owner.p != 2
        if mono and c == owner.coeff.one():
            parts.append("*".join(mono))
        elif mono and neg_one:
            parts.append("-" + "*".join(mono))
        else:
            if " + " in cs or " - " in cs or (mono and "/" in cs):
                cs = f"({cs})"
            parts.append("*".join([cs] + mono))
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


# -- homogeneity ------------------------------------------------------------------


def homogeneous_components(x: GradedElem) -> dict[Degree, GradedElem]:
    comps: dict[Degree, dict] = {}
    for k, c in x.terms.items():
        comps.setdefault(x.owner.key_degree(k), {})[k] = c
    return {d: GradedElem._raw(x.owner, t) for d, t in comps.items()}


def is_homogeneous_p_polynomial(f: GradedElem, target_degree: Degree) -> tuple[bool, list[GradedElem]]:
    """Decide whether ``f = sum a_i T^(p^i)`` is homogeneous of ``target_degree``.

    ``f`` lives in a one-variable ring; the returned coefficients ``a_i`` are
    elements of the base graded field, listed up to the top p-power exponent.
    Each ``a_i`` must be homogeneous of degree ``target * deg(T)^(-p^i)``.
    """
    R = f.owner
    if R.nvars != 1:
        raise ValueError("p-polynomials live in a one-variable ring")
    p = R.p
    field_ring = R.base.ring()
    by_exp: dict[int, dict] = {}
    for (a, (e,)), c in f.terms.items():
        by_exp.setdefault(e, {})[(a, ())] = c
    top = 0
    for e in by_exp:
        if e < 1:
            return False, []
        i = 0
        while p**i < e:
            i += 1
        if p**i != e:
            return False, []
        top = max(top, i)
    coeffs = [GradedElem._raw(field_ring, by_exp.get(p**i, {})) for i in range(top + 1)] if by_exp else []
    r = R.var_degree(0)
    for i, a in enumerate(coeffs):
        if a and not a.is_homogeneous(target_degree * r ** (-(p**i))):
            return False, coeffs
    return True, coeffs


def frobenius_twist(x: GradedElem, n: int) -> GradedElem:
    """Same element, regraded by ``deg -> deg^(1/p^n)``."""
    return GradedElem(x.owner.frobenius_twist(n), dict(x.terms))


# -- graded fraction ring and transcendence degree ---------------------------------


def graded_fraction_ring(R: GradedPolyRing) -> GradedPolyRing:
    """``k[r^-1 T, r T^-1]`` when ``r`` has infinite order modulo the degrees of ``k``."""
    if R.nvars != 1:
        raise ValueError("graded_fraction_ring expects one variable")
    r = R.var_degree(0)
    if order_mod_subgroup(r, R.base.value_group_gens()) is not None:
        raise FiniteOrderRadius(
            f"radius {r} has finite order modulo the value group of {R.base}; "
            "the graded fraction field is not of Laurent shape"
        )
    return replace(R, laurent=True)


def _qrank(degrees: list[Degree]) -> int:
    names = sorted(set().union(*(d.exponents for d in degrees))) if degrees else []
    rows = [[d.exponents.get(n, Fraction(0)) for n in names] for d in degrees]
    rank = 0
    col = 0
    while rows and col < len(names):
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        rows = [[a - (r[col] / piv[col]) * b for a, b in zip(r, piv)] for r in rows]
        rank += 1
        col += 1
    return rank


def trdeg_frac_components(k: GradedField, r: Degree) -> tuple[int, int]:
    """The two summands of ``trdeg_k Frac(k[r^-1 T])``.

    First: transcendence degree of the degree-one part over ``k1`` (one exactly
    when some power ``T^d`` can be divided by a homogeneous scalar of the same
    degree). Second: the Q-dimension added to the value group by ``r``.
    """
    gens = k.value_group_gens()
    residue = 1 if order_mod_subgroup(r, gens) is not None else 0
    value_rank = _qrank(gens + [r]) - _qrank(gens)
    return residue, value_rank


# -- exact division -----------------------------------------------------------------


def _shift_t(x: GradedElem, s: int) -> dict:
    return {(a + s, e): c for (a, e), c in x.terms.items()}


def divide_exact(a: GradedElem, b: GradedElem) -> GradedElem | None:
    """``a / b`` if ``b`` divides ``a`` in the (Laurent-in-t) polynomial ring, else None.

    Powers of ``t`` are units and are normalised away first; the division is
    then ordinary multivariate division by a single polynomial under the lex
    order (variables first, then ``t``), which decides divisibility.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    R = a.owner
    if b.owner != R:
        raise OwnerMismatch(f"{b.owner} vs {R}")
    if a.is_zero():
        return R.zero()
    if R.laurent:
        raise NotImplementedError("exact division in rings Laurent in the variables")
    bmin = min(b.t_exponents())
    amin = min(a.t_exponents())
    bt = _shift_t(b, -bmin)
    rem = _shift_t(a, -amin)

    def lead(terms):
        return max(terms, key=lambda k: (k[1], k[0]))

    lb = lead(bt)
    inv_lc = bt[lb].inverse()
    quot: dict = {}
    while rem:
        lr = lead(rem)
        da = lr[0] - lb[0]
        de = tuple(x - y for x, y in zip(lr[1], lb[1]))
        if da < 0 or any(x < 0 for x in de):
            return None
        c = rem[lr] * inv_lc
        quot[(da, de)] = c
        for (bt_a, bt_e), bc in bt.items():
            k = (bt_a + da, tuple(x + y for x, y in zip(bt_e, de)))
            v = rem.get(k)
            v = -(c * bc) if v is None else v - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    shift = amin - bmin
    out = {(x + shift, e): c for (x, e), c in quot.items()}
    stride = R.base.stride
    if any(k[0] % stride for k in out):
        return None
    return GradedElem(R, out)


# -- roots of homogeneous scalars ---------------------------------------------------


def homogeneous_root(x: GradedElem, n: int, within: GradedField | None = None) -> GradedElem | None:
    """The ``p^n``-th root of a monomial ``c*t^a``, if it exists in ``within``.

    ``within`` defaults to the stride-one relaxation of the owner's field.
    """
    if x.owner.nvars:
        raise ValueError("roots are taken of scalars")
    target = (within or x.owner.base.relaxed()).ring()
    if x.is_zero():
        return target.zero()
    if len(x.terms) != 1:
        return None
    ((a, _), c), = x.terms.items()
    pn = x.owner.p**n
    if a % pn:
        return None
    root_c = pn_th_root(c, n)
    if root_c is None:
        return None
    root_c = target.coeff(root_c)
    a //= pn
    if a % target.base.stride:
        return None
    return target.monomial(root_c, a)


def random_elem(R: GradedPolyRing, rng, n_terms: int = 3, t_range: int = 3, var_max: int = 2,
                height: int = 1, homogeneous: bool = False) -> GradedElem:
    """A random element; coefficients of bounded height for rational function fields."""
    from .fields import GF

    def coeff():
        if isinstance(R.coeff, GF):
            return R.coeff.random(rng, nonzero=True)
        return R.coeff.random(rng, height=height, nonzero=True)

    s = R.base.stride if R.base.has_t else 0
    out = R.zero()
    for _ in range(n_terms):
        a = rng.randint(-t_range, t_range) * s
        lo = -var_max if R.laurent else 0
        e = tuple(rng.randint(lo, var_max) for _ in range(R.nvars))
        out = out + R.monomial(coeff(), a, e)
    if homogeneous and out:
        comps = homogeneous_components(out)
        out = comps[min(comps, key=lambda d: d.sort_key())]
    return out


def iter_monomial_keys(R: GradedPolyRing, t_range: int, var_max: int) -> Iterator[Key]:
    import itertools

    s = R.base.stride if R.base.has_t else 0
    t_vals = sorted({a * s for a in range(-t_range, t_range + 1)})
    for a in t_vals:
        for e in itertools.product(range(var_max + 1), repeat=R.nvars):
            yield (a, e)


__all__ = [
    "GradedField",
    "GradedPolyRing",
    "GradedElem",
    "OwnerMismatch",
    "FiniteOrderRadius",
    "NotAUnit",
    "homogeneous_components",
    "is_homogeneous_p_polynomial",
    "frobenius_twist",
    "graded_fraction_ring",
    "trdeg_frac_components",
    "divide_exact",
    "homogeneous_root",
    "random_elem",
]
