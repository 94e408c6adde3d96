"""Higher derivations of rank m and logarithmic derivatives.

A higher derivation is stored as a ring homomorphism ``A -> A[S]_m`` with
``S^(m+1) = 0``, given by the images of the ring generators (``t`` and the
polynomial variables); coefficients in ``k1`` are fixed. The components
``d_j`` are the coefficients of ``S^j`` in the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

from .fields import Field
from .graded import GradedElem, GradedField, GradedPolyRing, divide_exact
from .russell import RootUnavailable, RussellElem, RussellForm, TrivializationData, trivialize

Carrier = Union[GradedPolyRing, RussellForm]
CarrierElem = Union[GradedElem, RussellElem]


class TrivialOnProbes(ValueError):
    pass


class HeartFails(AssertionError):
    def __init__(self, clause: str, details: str = ""):
        super().__init__(f"{clause}: {details}" if details else clause)
        self.clause = clause


class ZeroArgument(ValueError):
    pass


def _carrier_of(x: CarrierElem) -> Carrier:
    return x.form if isinstance(x, RussellElem) else x.owner


def _const(carrier: Carrier, c) -> CarrierElem:
    if isinstance(carrier, RussellForm):
        return carrier.scalar(c)
    if isinstance(c, GradedElem):
        return carrier.coerce(c)
    return carrier.monomial(carrier.coeff(c))


class TruncSeries:
    """``c0 + c1 S + ... + cm S^m`` over a carrier ring, with ``S^(m+1) = 0``."""

    __slots__ = ("carrier", "coeffs")

    def __init__(self, carrier: Carrier, coeffs: Sequence[CarrierElem]):
        self.carrier = carrier
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, carrier: Carrier, x, m: int) -> "TruncSeries":
        c = x if isinstance(x, (GradedElem, RussellElem)) else _const(carrier, x)
        return cls(carrier, [c] + [carrier.zero()] * m)

    @classmethod
    def one(cls, carrier: Carrier, m: int) -> "TruncSeries":
        return cls.constant(carrier, carrier.one(), m)

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> CarrierElem:
        return self.coeffs[j]

    def _other(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.m != self.m:
                raise ValueError("ranks differ")
            return other
        return TruncSeries.constant(self.carrier, other, self.m)

    def __add__(self, other) -> "TruncSeries":
        other = self._other(other)
        return TruncSeries(self.carrier, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.carrier, [-a for a in self.coeffs])

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._other(other))

    def __mul__(self, other) -> "TruncSeries":
        other = self._other(other)
        m = self.m
        out = [self.carrier.zero() for _ in range(m + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(m + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.carrier, out)

    __rmul__ = __mul__

    def scale(self, c: CarrierElem) -> "TruncSeries":
        return TruncSeries(self.carrier, [a * c for a in self.coeffs])

    def is_unit(self) -> bool:
        c0 = self.coeffs[0]
        poly = c0.poly if isinstance(c0, RussellElem) else c0
        return bool(poly) and poly.is_unit()

    def inverse(self) -> "TruncSeries":
        """``(c0 (1 + N))^-1 = c0^-1 (1 - N + N^2 - ...)`` with ``N`` nilpotent."""
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        c0 = self.coeffs[0]
        inv0 = _const(self.carrier, (c0.poly if isinstance(c0, RussellElem) else c0).inverse())
        nil = self.scale(inv0) - TruncSeries.one(self.carrier, self.m)
        acc = TruncSeries.one(self.carrier, self.m)
        term = TruncSeries.one(self.carrier, self.m)
        for _ in range(self.m):
            term = -(term * nil)
            acc = acc + term
        return acc.scale(inv0)

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return self.inverse() ** (-e)
        out = TruncSeries.one(self.carrier, self.m)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.m == other.m and self.coeffs == other.coeffs
        try:
            return self == self._other(other)
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_one(self) -> bool:
        return self == TruncSeries.one(self.carrier, self.m)

    def sort_key(self) -> tuple:
        def key(c):
            return (c.poly if isinstance(c, RussellElem) else c).sort_key()

        return tuple(key(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"TruncSeries({self})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if j == 0:
                parts.append(cs)
                continue
            if " + " in cs or " - " in cs:
                cs = f"({cs})"
            mono = "S" if j == 1 else f"S^{j}"
            parts.append(mono if cs == "1" else f"{cs}*{mono}")
        body = " + ".join(parts) or "0"
        return f"{body} (mod S^{self.m + 1})"


class HigherDerivation:
    """A rank-m higher derivation given by generator images.

    ``t_image`` is the image of ``t`` (``None`` for carriers without ``t``);
    ``var_images`` gives the images of the polynomial variables of the carrier
    (defaults: fixed). For a :class:`RussellForm` carrier the variables are
    ``x, y``.
    """

    def __init__(self, carrier: Carrier, m: int, t_image: TruncSeries | None,
                 var_images: Sequence[TruncSeries] | None = None, name: str = "d",
                 n_declared: int | None = None):
        self.carrier = carrier
        self.m = m
        self.name = name
        ring = carrier.ring if isinstance(carrier, RussellForm) else carrier
        self.poly_ring = ring
        self.t_image = t_image
        if var_images is None:
            var_images = [TruncSeries.constant(carrier, self._wrap(g), m) for g in ring.gens()]
        self.var_images = list(var_images)
        self._t_inv = t_image.inverse() if t_image is not None else None
        self._t_pows: dict[int, TruncSeries] = {}
        self._v_pows: dict[tuple[int, int], TruncSeries] = {}
        self.n_declared = n_declared

    @property
    def p(self) -> int:
        return self.poly_ring.p

    def _wrap(self, poly: GradedElem) -> CarrierElem:
        if isinstance(self.carrier, RussellForm):
            return RussellElem(self.carrier, poly)
        return poly

    def _t_pow(self, a: int) -> TruncSeries:
        if a not in self._t_pows:
            base = self.t_image if a > 0 else self._t_inv
            self._t_pows[a] = base ** abs(a)
        return self._t_pows[a]

    def _v_pow(self, i: int, k: int) -> TruncSeries:
        if (i, k) not in self._v_pows:
            self._v_pows[(i, k)] = self.var_images[i] ** k
        return self._v_pows[(i, k)]

    def __call__(self, x: CarrierElem) -> TruncSeries:
        poly = x.poly if isinstance(x, RussellElem) else x
        if poly.owner != self.poly_ring:
            poly = self.poly_ring.coerce(poly)
        acc = TruncSeries(self.carrier, [self.carrier.zero()] * (self.m + 1))
        for (a, e), c in poly.terms.items():
            term = TruncSeries.constant(self.carrier, c, self.m)
            if a:
                if self.t_image is None:
                    raise ValueError("carrier has no t")
                term = term * self._t_pow(a)
            for i, k in enumerate(e):
                if k:
                    term = term * self._v_pow(i, k)
            acc = acc + term
        return acc

    def component(self, j: int, x: CarrierElem) -> CarrierElem:
        return self(x)[j]

    def describe(self) -> dict:
        return {
            "kind": self.name,
            "rank": self.m,
            "carrier": str(self.carrier),
            "t_image": None if self.t_image is None else str(self.t_image),
        }


def standard_carrier(field: Field, t_degree: str = "q_t") -> GradedPolyRing:
    from .degree import parse_degree

    return GradedField(field, parse_degree(t_degree), 1).ring()


def standard_derivation(field: Field | GradedPolyRing, m_prime: int) -> HigherDerivation:
    """``t -> t + S`` on ``k1[t^(+-1)]`` of rank ``p^m' - 1``."""
    carrier = field if isinstance(field, GradedPolyRing) else standard_carrier(field)
    m = carrier.p**m_prime - 1
    t_img = TruncSeries(carrier, [carrier.t(), carrier.one()] + [carrier.zero()] * (m - 1))
    return HigherDerivation(carrier, m, t_img, name="standard", n_declared=m_prime)


def synthetic_derivation(carrier: GradedPolyRing, m: int, t_image_coeffs: Sequence[GradedElem]) -> HigherDerivation:
    """A derivation with a prescribed image ``t -> sum c_j S^j`` (``c_0`` must be ``t``)."""
    coeffs = list(t_image_coeffs) + [carrier.zero()] * (m + 1 - len(t_image_coeffs))
    if coeffs[0] != carrier.t():
        raise ValueError("the image of t must reduce to t")
    return HigherDerivation(carrier, m, TruncSeries(carrier, coeffs), name="synthetic")


def binomial_mod_p(i: int, j: int, p: int) -> int:
    """``C(i, j) mod p`` for integer ``i`` (negative allowed) via Lucas on ``i >= 0``."""
    if j < 0:
        return 0
    if i < 0:
        # C(i, j) = (-1)^j C(j - i - 1, j)
        return (-1) ** j * binomial_mod_p(j - i - 1, j, p) % p
    out = 1
    while i or j:
        a, b = i % p, j % p
        if b > a:
            return 0
        out = out * comb(a, b) % p
        i //= p
        j //= p
    return out


def derivation_table(p: int, m_prime: int, imax: int, imin: int = 0) -> list[dict]:
    """Rows ``{i, j, value, predicted}`` comparing ``d_j t^i`` with ``C(i,j) t^(i-j)``."""
    from .fields import get_gf

    d = standard_derivation(get_gf(p), m_prime)
    R = d.carrier
    rows = []
    for i in range(imin, imax + 1):
        img = d(R.t(i))
        for j in range(d.m + 1):
            pred = R.monomial(R.coeff(binomial_mod_p(i, j, p)), i - j)
            rows.append({"i": i, "j": j, "value": str(img[j]), "predicted": str(pred),
                         "match": img[j] == pred})
    return rows


def mu_and_n(d: HigherDerivation, probes: Sequence[CarrierElem]) -> tuple[int, int]:
    mu = None
    for j in range(1, d.m + 1):
        if any(d(x)[j] for x in probes):
            mu = j
            break
    if mu is None:
        raise TrivialOnProbes("every component d_j (j >= 1) vanishes on the probe set")
    n = 0
    while not d.m < mu * d.p**n:
        n += 1
    return mu, n


def is_constant(d: HigherDerivation, x: CarrierElem) -> bool:
    return d(x) == TruncSeries.constant(d.carrier, x, d.m)


def constant_stride(d: HigherDerivation, search: int = 64) -> int | None:
    """Least ``e >= 1`` with ``t^e`` constant (the stride of the constant Laurent subring)."""
    R = d.poly_ring
    for e in range(1, search + 1):
        if is_constant(d, d._wrap(R.t(e))):
            return e
    return None


@dataclass
class HeartReport:
    passed: bool
    mu: int
    n: int
    degree: int
    stride_ratio: int
    witness: str | None
    checks: list

    def to_json(self) -> dict:
        return {"passed": self.passed, "mu": self.mu, "n": self.n, "degree_K_over_Kprime": self.stride_ratio,
                "expected_degree": self.degree, "witness": self.witness, "checks": self.checks}


def heartsuit_check(d: HigherDerivation, declared_stride: int | None = None,
                    probes: Sequence[CarrierElem] | None = None, raise_on_fail: bool = False) -> HeartReport:
    """Check ``[K:K'] = p^n(d)`` and that ``d_mu(a)`` is a unit for some probe ``a``.

    ``K'`` is the Laurent subring ``k1[t^(+-stride)]``; with ``declared_stride``
    given it is also confirmed to consist of constants and to be the full
    constant subring in ``t``.
    """
    R = d.poly_ring
    t = d._wrap(R.t())
    probes = list(probes) if probes else [t, d._wrap(R.t(-1))]
    mu, n = mu_and_n(d, probes)
    actual = constant_stride(d)
    stride = declared_stride if declared_stride is not None else actual
    checks = []
    ok_constants = actual is not None and stride is not None and stride % actual == 0
    checks.append({"name": "declared subring consists of constants", "status": "pass" if ok_constants else "fail",
                   "details": f"t^{stride}; least constant power t^{actual}"})
    ok_full = stride == actual
    checks.append({"name": "declared subring is the full constant subring", "status": "pass" if ok_full else "fail",
                   "details": ""})
    ok_degree = stride == d.p**n
    checks.append({"name": "[K:K'] = p^n", "status": "pass" if ok_degree else "fail",
                   "details": f"{stride} vs {d.p ** n}"})
    witness = None
    for a in probes:
        comp = d(a)[mu]
        poly = comp.poly if isinstance(comp, RussellElem) else comp
        if poly and poly.is_unit():
            witness = str(a)
            break
    checks.append({"name": "d_mu(a) is a unit", "status": "pass" if witness else "fail",
                   "details": f"a = {witness}" if witness else "no probe works"})
    passed = all(c["status"] == "pass" for c in checks)
    if raise_on_fail and not passed:
        failing = next(c for c in checks if c["status"] == "fail")
        raise HeartFails(failing["name"], failing["details"])
    return HeartReport(passed, mu, n, d.p**n, stride or 0, witness, checks)


# -- base change to a trivialized form ---------------------------------------------------


@dataclass
class BaseChange:
    """``d_L`` on ``B = ell (x) A`` in two coordinate systems.

    ``on_form`` acts on the ``(x, y)``-presentation (fixing ``x`` and ``y``);
    ``on_T`` acts on ``ell[T]`` through the trivialization dictionary.
    """

    base: HigherDerivation
    data: TrivializationData
    on_form: HigherDerivation
    on_T: HigherDerivation
    dT: TruncSeries

    def to_T(self, z: CarrierElem) -> GradedElem:
        if isinstance(z, RussellElem):
            return self.data.to_T(z)
        if z.owner == self.data.target:
            return z
        return self.data.to_T(z)


def base_change(d: HigherDerivation, form: RussellForm | TrivializationData,
                extend_coefficients: bool = False) -> BaseChange:
    data = form if isinstance(form, TrivializationData) else trivialize(form, extend_coefficients)
    L = data.extended
    ell_ring = data.ell.ring()
    if d.poly_ring.base != data.ell:
        raise ValueError(f"derivation lives on {d.poly_ring}, trivialization on {data.ell}")
    m = d.m
    t_img = None
    if d.t_image is not None:
        t_img = TruncSeries(L, [L.scalar(GradedElem(ell_ring, dict(c.terms))) for c in d.t_image.coeffs])
    on_form = HigherDerivation(L, m, t_img, name=f"{d.name}_L")
    # d_L(T): apply d to the ell-coefficients of triv and substitute the dictionary
    image = on_form(data.triv)
    target = data.target
    dT = TruncSeries(target, [data.to_T(c) for c in image.coeffs])
    t_T = None
    if d.t_image is not None:
        t_T = TruncSeries(target, [target.coerce(GradedElem(ell_ring, dict(c.terms))) for c in d.t_image.coeffs])
    on_T = HigherDerivation(target, m, t_T, [dT], name=f"{d.name}_L")
    return BaseChange(d, data, on_form, on_T, dT)


# -- logarithmic derivatives -------------------------------------------------------------


@dataclass
class NotAUnitLog:
    """``d(z)/z`` is not integral: some component is not divisible by ``z``."""

    numerator: TruncSeries
    denominator: CarrierElem
    component: int

    def __str__(self) -> str:
        return f"not_a_unit (component {self.component} not divisible)"


def _divide(a: CarrierElem, b: CarrierElem) -> CarrierElem | None:
    if isinstance(a, RussellElem):
        raise TypeError("divide in T-coordinates")
    return divide_exact(a, b)


def log_derivative(d: HigherDerivation | BaseChange, z: CarrierElem) -> TruncSeries | NotAUnitLog:
    """``d(z)/z`` as a truncated series when every component is divisible by ``z``.

    Elements of a Russell form are moved to the ``T``-coordinate of a base
    change first, where division is in a polynomial ring.
    """
    if isinstance(d, BaseChange):
        bc, z = d, d.to_T(z)
        d = bc.on_T
    elif isinstance(z, RussellElem):
        raise TypeError("pass the BaseChange to take log derivatives on a form")
    if not z:
        raise ZeroArgument("log derivative of zero")
    num = d(z)
    out = []
    for j, c in enumerate(num.coeffs):
        q = _divide(c, z)
        if q is None:
            return NotAUnitLog(num, z, j)
        out.append(q)
    return TruncSeries(d.carrier, out)


def log_exponent_identity(d: HigherDerivation | BaseChange, z: CarrierElem, pn: int) -> bool:
    """``(d(z)/z)^(p^n) = 1``, checked as ``d(z)^(p^n) = z^(p^n)`` when ``d(z)/z`` is not integral."""
    res = log_derivative(d, z)
    if isinstance(res, TruncSeries):
        return res**pn == TruncSeries.one(res.carrier, res.m)
    return res.numerator**pn == TruncSeries.constant(res.numerator.carrier, res.denominator**pn, res.numerator.m)


__all__ = [
    "TruncSeries",
    "HigherDerivation",
    "standard_derivation",
    "synthetic_derivation",
    "binomial_mod_p",
    "derivation_table",
    "mu_and_n",
    "is_constant",
    "constant_stride",
    "heartsuit_check",
    "HeartReport",
    "base_change",
    "BaseChange",
    "log_derivative",
    "log_exponent_identity",
    "NotAUnitLog",
    "TrivialOnProbes",
    "HeartFails",
    "ZeroArgument",
    "RootUnavailable",
]
