"""Graded forms of the additive group of Russell type.

``A = k[r^(-p^n) T1, s^-1 T2] / (T2^(p^n) - f(T1))`` for a homogeneous
p-polynomial ``f = a0 T1 + a1 T1^p + ... + am T1^(p^m)`` with ``a0 != 0``.
Elements are kept in the basis ``y^j`` (``0 <= j < p^n``) over ``k[x]``, where
``x, y`` are the classes of ``T1, T2``.

:func:`trivialize` runs the iterative construction of an element ``t`` of
degree ``s`` with ``t^(p^n) = a0 x``, producing an explicit isomorphism of the
base change with a polynomial ring in one variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .degree import IDENTITY, Degree, order_mod_subgroup
from .fields import FieldElem, RationalFunctionField
from .graded import GradedElem, GradedField, GradedPolyRing, homogeneous_root, is_homogeneous_p_polynomial
from .skew import SkewPoly


class RussellError(ValueError):
    pass


class NotHomogeneous(RussellError):
    pass


class ZeroLinearCoefficient(RussellError):
    pass


class RadiusNotInOrbit(RussellError):
    pass


class RootUnavailable(ArithmeticError):
    """A coefficient has no required root in the chosen splitting field."""

    def __init__(self, message: str, index: int | None = None, order: int | None = None):
        super().__init__(message)
        self.index = index
        self.order = order


@dataclass(frozen=True)
class RussellFormSpec:
    base: GradedField
    n: int
    r: Degree
    s: Degree
    f_coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "f_coeffs", tuple(self.f_coeffs))

    @property
    def p(self) -> int:
        return self.base.p

    def coefficient_degree(self, i: int) -> Degree:
        """Forced degree of ``a_i``: ``s^(p^n) * (r^(p^n))^(-p^i)``."""
        pn = self.p**self.n
        return self.s**pn * self.r ** (-pn * self.p**i)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "field": str(self.base.coeff),
            "stride": self.base.stride if self.base.has_t else None,
            "t_degree": None if self.base.t_degree is None else str(self.base.t_degree),
            "r": str(self.r),
            "s": str(self.s),
            "f_coeffs": [str(a) for a in self.f_coeffs],
        }


class RussellElem:
    """An element of a :class:`RussellForm`, always in reduced form."""

    __slots__ = ("form", "poly")

    def __init__(self, form: "RussellForm", poly: GradedElem):
        self.form = form
        self.poly = form.reduce(poly)

    def _other(self, other) -> "RussellElem":
        if isinstance(other, RussellElem):
            if other.form is not self.form:
                raise TypeError("elements of different forms")
            return other
        if isinstance(other, GradedElem):
            return RussellElem(self.form, self.form.ring.coerce(other))
        return RussellElem(self.form, self.form.ring.monomial(self.form.ring.coeff(other)))

    def __add__(self, other):
        return RussellElem(self.form, self.poly + self._other(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return RussellElem(self.form, self.poly - self._other(other).poly)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return RussellElem(self.form, -self.poly)

    def __mul__(self, other):
        return RussellElem(self.form, self.poly * self._other(other).poly)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers in a Russell form")
        out = self.form.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, RussellElem):
            return self.form is other.form and self.poly == other.poly
        try:
            return self == self._other(other)
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_homogeneous(self, degree: Degree | None = None) -> bool:
        return self.poly.is_homogeneous(degree)

    def degree(self) -> Degree:
        return self.poly.degree()

    def __repr__(self) -> str:
        return f"RussellElem({self})"

    def __str__(self) -> str:
        return str(self.poly)


class RussellForm:
    """The quotient ring ``base[x, y] / (y^(p^n) - f(x))``.

    Construction does not validate; use :func:`construct_form` for checked input.
    """

    def __init__(self, base: GradedField, n: int, r: Degree, s: Degree, f_poly: GradedElem,
                 spec: RussellFormSpec | None = None):
        self.base = base
        self.n = n
        self.p = base.p
        self.pn = self.p**n
        self.r = r
        self.s = s
        self.spec = spec
        self.ring = GradedPolyRing(base, (("x", r**self.pn), ("y", s)))
        self.f_poly = f_poly
        x = self.ring.var("x")
        self._f_of_x = f_poly.substitute(self.ring, [x]) if f_poly.owner.nvars == 1 else f_poly
        self._f_powers = [self.ring.one()]

    def _f_pow(self, k: int) -> GradedElem:
        while len(self._f_powers) <= k:
            self._f_powers.append(self._f_powers[-1] * self._f_of_x)
        return self._f_powers[k]

    def reduce(self, e: GradedElem) -> GradedElem:
        """Rewrite ``y^k`` as ``y^(k mod p^n) * f(x)^(k div p^n)``."""
        if e.owner != self.ring:
            e = self.ring.coerce(e)
        pn = self.pn
        if all(ex[1] < pn for _, ex in e.terms):
            return e
        out = {}
        pending = self.ring.zero()
        for (a, (i, j)), c in e.terms.items():
            if j < pn:
                out[(a, (i, j))] = c
            else:
                q, rem = divmod(j, pn)
                pending = pending + self.ring.monomial(c, a, (i, rem)) * self._f_pow(q)
        return GradedElem._raw(self.ring, out) + pending

    # element constructors
    def elem(self, poly: GradedElem | str) -> RussellElem:
        if isinstance(poly, str):
            poly = self.ring.parse(poly)
        return RussellElem(self, poly)

    def zero(self) -> RussellElem:
        return RussellElem(self, self.ring.zero())

    def one(self) -> RussellElem:
        return RussellElem(self, self.ring.one())

    @property
    def x(self) -> RussellElem:
        return RussellElem(self, self.ring.var("x"))

    @property
    def y(self) -> RussellElem:
        return RussellElem(self, self.ring.var("y"))

    def scalar(self, c: GradedElem | FieldElem | int) -> RussellElem:
        if isinstance(c, GradedElem):
            return RussellElem(self, self.ring.coerce(c))
        return RussellElem(self, self.ring.monomial(self.ring.coeff(c)))

    def coefficients(self) -> list[GradedElem]:
        """``[a0, ..., am]`` as scalars of the base field (empty if f is not a p-polynomial)."""
        ok, coeffs = is_homogeneous_p_polynomial(self.f_poly, self.s**self.pn) \
            if self.f_poly.owner.nvars == 1 else (False, [])
        if coeffs:
            return coeffs
        return list(self.spec.f_coeffs) if self.spec else []

    def base_change(self, ell: GradedField, embed: Callable[[FieldElem], FieldElem] | None = None) -> "RussellForm":
        """``ell (x) A``: the same relation read over a larger graded field."""
        f_ring = GradedPolyRing(ell, self.f_poly.owner.vars)
        if embed is None:
            f2 = GradedElem(f_ring, dict(self.f_poly.terms))
        else:
            f2 = self.f_poly.map_coeffs(embed, f_ring)
        return RussellForm(ell, self.n, self.r, self.s, f2)

    def __str__(self) -> str:
        return f"{self.base}[x:{self.r ** self.pn}, y:{self.s}]/(y^{self.pn} - ({self.f_poly}))"


def f_ring(base: GradedField, n: int, r: Degree) -> GradedPolyRing:
    return GradedPolyRing(base, (("T1", r ** (base.p**n)),))


def construct_form(spec: RussellFormSpec) -> RussellForm:
    """Validate a spec and build the quotient ring."""
    base, p, n = spec.base, spec.p, spec.n
    if n < 1:
        raise RussellError("n must be >= 1")
    if not spec.f_coeffs or not spec.f_coeffs[0]:
        raise ZeroLinearCoefficient("the coefficient a0 of T1 must be nonzero")
    # checked first: it implies a0 can be homogeneous of degree (s/r)^(p^n)
    # s must lie in rho(ell^x) r, ell = k^(p^-n)
    pn = p**n
    ell_gens = [g ** Fraction(1, pn) for g in base.value_group_gens()]
    if order_mod_subgroup(spec.s / spec.r, ell_gens) != 1:
        raise RadiusNotInOrbit(f"s/r = {spec.s / spec.r} is not a degree of k^(p^-{n})")
    R1 = f_ring(base, n, spec.r)
    coeffs = []
    for i, a in enumerate(spec.f_coeffs):
        a = base.ring().coerce(a) if isinstance(a, GradedElem) else base.ring().monomial(a)
        want = spec.coefficient_degree(i)
        if a and not a.is_homogeneous(want):
            raise NotHomogeneous(f"a_{i} = {a} must be homogeneous of degree {want}")
        coeffs.append(a)
    f_poly = R1.zero()
    for i, a in enumerate(coeffs):
        for (ta, _), c in a.terms.items():
            f_poly = f_poly + R1.monomial(c, ta, (p**i,))
    spec = RussellFormSpec(base, n, spec.r, spec.s, tuple(coeffs))
    return RussellForm(base, n, spec.r, spec.s, f_poly, spec)


def form_from_skew(tau: SkewPoly, n: int, base: GradedField | None = None) -> RussellForm:
    """``A(tau) = k[T1, T2]/(T2^(p^n) - tau(T1))`` with trivial radii."""
    base = base or GradedField(tau.field)
    coeffs = [base.ring().monomial(c) for c in tau.coeffs]
    return construct_form(RussellFormSpec(base, n, IDENTITY, IDENTITY, tuple(coeffs)))


# -- Hopf structure -------------------------------------------------------------------


@dataclass
class CheckReport:
    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, details: str = "") -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "details": details})

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)


def hopf_check(form: RussellForm) -> CheckReport:
    """Check that the additive coproduct, antipode and counit respect the relation.

    Works in ``A (x) A = base[x1, y1, x2, y2]/(relations)``: the coproduct
    ``y -> y1 + y2``, ``x -> x1 + x2`` is compatible iff
    ``(y1+y2)^(p^n) - f(x1+x2)`` reduces to zero, i.e. iff ``f`` is additive.
    """
    base, pn = form.base, form.pn
    dx, dy = form.ring.var_degree(0), form.ring.var_degree(1)
    T = GradedPolyRing(base, (("x1", dx), ("y1", dy), ("x2", dx), ("y2", dy)))
    x1, y1, x2, y2 = T.gens()
    f_at = lambda arg: form.f_poly.substitute(T, [arg])  # noqa: E731
    f_pows = {}

    def reduce(e: GradedElem) -> GradedElem:
        out = T.zero()
        for (a, ex), c in e.terms.items():
            i1, j1, i2, j2 = ex
            q1, r1 = divmod(j1, pn)
            q2, r2 = divmod(j2, pn)
            term = T.monomial(c, a, (i1, r1, i2, r2))
            for key, q, xv in (("1", q1, x1), ("2", q2, x2)):
                if q:
                    if (key, q) not in f_pows:
                        f_pows[(key, q)] = f_at(xv) ** q
                    term = term * f_pows[(key, q)]
            out = out + term
        return out

    report = CheckReport()
    comult = reduce((y1 + y2) ** pn - f_at(x1 + x2))
    report.add("coproduct", comult.is_zero(), "" if comult.is_zero() else f"obstruction {comult}")
    x = GradedPolyRing(base, (("x", dx), ("y", dy)))
    xv, yv = x.gens()
    anti = (-yv) ** pn - form.f_poly.substitute(x, [-xv])
    rel = yv**pn - form.f_poly.substitute(x, [xv])
    ok = (anti + rel).is_zero() or (anti - rel).is_zero()
    report.add("antipode", ok, "" if ok else "relation not preserved by x->-x, y->-y")
    counit = form.f_poly.substitute(x.base.ring(), [x.base.ring().zero()])
    report.add("counit", counit.is_zero(), "")
    return report


# -- trivialization --------------------------------------------------------------------


@dataclass
class TrivializationData:
    form: RussellForm
    ell: GradedField
    extended: RussellForm
    triv: RussellElem
    a0: GradedElem
    y_coeffs: list            # y = sum y_coeffs[i] * T^(p^i)
    target: GradedPolyRing    # ell[s^-1 T]
    x_image: GradedElem
    y_image: GradedElem
    step_degrees: list
    identities: dict
    embed: Callable | None = None

    def to_json(self) -> dict:
        return {
            "field": str(self.ell),
            "triv": str(self.triv),
            "triv_degree": str(self.triv.degree()) if self.triv else None,
            "identities_verified": dict(self.identities),
            "dictionary": {"x": str(self.x_image), "y": str(self.y_image), "T": str(self.triv)},
            "step_degrees": [str(d) for d in self.step_degrees],
        }

    @property
    def ok(self) -> bool:
        return all(self.identities.values())

    def to_T(self, z: RussellElem | GradedElem) -> GradedElem:
        """Image of an element of ``ell (x) A`` in ``ell[T]``."""
        poly = z.poly if isinstance(z, RussellElem) else z
        return poly.substitute(self.target, [self.x_image, self.y_image])


def splitting_field(form: RussellForm, extend_coefficients: bool = False) -> tuple[GradedField, Callable | None]:
    """The field over which :func:`trivialize` computes: stride one, optionally with ``u^(1/p^n)`` adjoined."""
    ell = form.base.relaxed()
    if extend_coefficients and isinstance(form.base.coeff, RationalFunctionField):
        big, embed = form.base.coeff.root_extension(form.n)
        return ell.with_coeff(big), embed
    return ell, None


def trivialize(form: RussellForm, extend_coefficients: bool = False) -> TrivializationData:
    p, n, pn = form.p, form.n, form.pn
    ell, embed = splitting_field(form, extend_coefficients)
    L = form.base_change(ell, embed)
    Lr = ell.ring()
    coeffs = form.coefficients()
    if not coeffs or not coeffs[0]:
        raise ZeroLinearCoefficient("a0 must be nonzero")

    def lift(a: GradedElem) -> GradedElem:
        if embed is None:
            return GradedElem(Lr, dict(a.terms))
        return a.map_coeffs(embed, Lr)

    a = [lift(c) for c in coeffs]
    a0 = a[0]
    # y^(p^n) = sum b_i (a0 x)^(p^i) with b_i = a_i a0^(-p^i)
    b = [ai * a0 ** (-(p**i)) for i, ai in enumerate(a)]
    roots: dict[tuple[int, int], GradedElem] = {}
    for i in range(1, len(b)):
        for j in range(1, n + 1):
            r = homogeneous_root(b[i], j, within=ell) if b[i] else Lr.zero()
            if r is None:
                raise RootUnavailable(
                    f"b_{i} = {b[i]} has no {p}^{j}-th root in {ell}", index=i, order=j
                )
            roots[(i, j)] = r

    x, y = L.x, L.y
    t = L.scalar(a0) * x
    step_degrees = [t.degree()]
    for j in range(n):
        nxt = y ** (p ** (n - j - 1))
        for i in range(1, len(b)):
            if b[i]:
                nxt = nxt - L.scalar(roots[(i, j + 1)]) * t ** (p ** (i - 1))
        t = nxt
        step_degrees.append(t.degree() if t.is_homogeneous() and t else None)
    triv = t

    y_coeffs = [Lr.one()] + [roots[(i, n)] for i in range(1, len(b))]
    h_of_triv = L.zero()
    for i, c in enumerate(y_coeffs):
        if c:
            h_of_triv = h_of_triv + L.scalar(c) * triv ** (p**i)

    target = GradedPolyRing(ell, (("T", form.s),))
    T = target.var("T")
    x_image = target.coerce(a0.inverse()) * T**pn
    y_image = target.zero()
    for i, c in enumerate(y_coeffs):
        if c:
            y_image = y_image + target.coerce(c) * T ** (p**i)
    f_on_x = L.f_poly.substitute(target, [x_image])
    identities = {
        "triv^(p^n) == a0*x": triv**pn == L.scalar(a0) * x,
        "y == h(triv)": h_of_triv == y,
        "triv homogeneous of degree s": bool(triv) and triv.is_homogeneous(form.s),
        "relation(dictionary) == 0": (y_image**pn - f_on_x).is_zero(),
        "dictionary(triv) == T": triv.poly.substitute(target, [x_image, y_image]) == T,
    }
    return TrivializationData(
        form=form, ell=ell, extended=L, triv=triv, a0=a0, y_coeffs=y_coeffs, target=target,
        x_image=x_image, y_image=y_image, step_degrees=step_degrees, identities=identities,
        embed=embed,
    )


def parse_form(desc: dict) -> RussellForm:
    """Build a form from the JSON descriptor ``{p, n, field, stride, r, s, f_coeffs, t_degree?}``."""
    from .degree import parse_degree
    from .fields import parse_field

    coeff = parse_field(desc["field"])
    if "p" in desc and int(desc["p"]) != coeff.p:
        raise RussellError(f"p = {desc['p']} does not match {desc['field']}")
    stride = desc.get("stride")
    t_degree = desc.get("t_degree", "q_t" if stride else None)
    base = GradedField(coeff, parse_degree(t_degree) if t_degree else None, int(stride or 1))
    f_coeffs = desc["f_coeffs"]
    if isinstance(f_coeffs, str):
        f_coeffs = [c.strip() for c in f_coeffs.split(",")]
    coeffs = tuple(base.parse(c) if isinstance(c, str) else base.ring().monomial(c) for c in f_coeffs)
    spec = RussellFormSpec(base, int(desc["n"]), parse_degree(str(desc.get("r", "1"))),
                           parse_degree(str(desc.get("s", "1"))), coeffs)
    return construct_form(spec)


def family_form(a1: str = "t^-2", field_spec: str = "GF(2)", stride: int = 2, r: str | None = None) -> RussellForm:
    """The n = 1, s = r family ``y^p = x + a1 x^p`` over ``k1[t^(+-stride)]``.

    With ``r`` omitted it is solved from ``deg a1 = r^(p - p^2)``.
    """

    from .degree import format_degree
    from .fields import parse_field

    if r is None:
        p = parse_field(field_spec).p
        base = GradedField(parse_field(field_spec), Degree.gen("q_t"), stride)
        a = base.parse(a1)
        if len(a.terms) > 1:
            raise NotHomogeneous(f"a1 = {a1} is not a monomial")
        t_exp = next(iter(a.terms))[0] if a else p - p * p
        r = format_degree(Degree.gen("q_t", Fraction(t_exp, p - p * p)))
    return parse_form({"field": field_spec, "n": 1, "stride": stride, "r": r, "s": r,
                       "f_coeffs": ["1", a1]})


__all__ = [
    "RussellFormSpec",
    "RussellForm",
    "RussellElem",
    "construct_form",
    "form_from_skew",
    "hopf_check",
    "trivialize",
    "TrivializationData",
    "parse_form",
    "family_form",
    "NotHomogeneous",
    "ZeroLinearCoefficient",
    "RadiusNotInOrbit",
    "RootUnavailable",
]
