"""The skew polynomial ring ``k1[F]`` with ``F*a = a^p*F``.

``k1[F]`` is the endomorphism ring of the additive group over ``k1``: the
element ``sum a_i F^i`` acts as the p-polynomial ``sum a_i T^(p^i)``. Besides
the ring operations this module decides when a Russell form is trivial and
searches for isomorphisms between two forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .fields import GF, DivisionByZero, Field, FieldElem, RationalFunctionField, frobenius, pn_th_root


class NotSeparable(ValueError):
    """The constant coefficient ``a0`` vanishes."""


class SkewPoly:
    """``a0 + a1*F + ... + am*F^m`` over a coefficient field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElem, ...] = tuple(cs)

    @classmethod
    def F(cls, field: Field, power: int = 1) -> "SkewPoly":
        return cls(field, [0] * power + [1])

    @classmethod
    def const(cls, field: Field, c) -> "SkewPoly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_separable(self) -> bool:
        return bool(self.coeffs) and not self.coeffs[0].is_zero()

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def _other(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            if other.field is not self.field:
                raise TypeError(f"mixing {self.field} and {other.field}")
            return other
        return SkewPoly(self.field, [other])

    def __add__(self, other) -> "SkewPoly":
        other = self._other(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "SkewPoly":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "SkewPoly":
        return self._other(other) - self

    def __mul__(self, other) -> "SkewPoly":
        return skew_mul(self, self._other(other))

    def __rmul__(self, other) -> "SkewPoly":
        return skew_mul(self._other(other), self)

    def __truediv__(self, other) -> "SkewPoly":
        # only division by nonzero scalars, on the right
        other = self._other(other)
        if other.degree != 0:
            raise ValueError("skew polynomials divide only by nonzero constants; use right_divide")
        return self * SkewPoly(self.field, [other.coeffs[0].inverse()])

    def __pow__(self, e: int) -> "SkewPoly":
        if e < 0:
            raise ValueError("negative power in k[F]")
        out = SkewPoly(self.field, [1])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, SkewPoly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElem)):
            return self == self._other(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"SkewPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if i and (" + " in cs or " - " in cs or "/" in cs):
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                mono = "F" if i == 1 else f"F^{i}"
                parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts) or "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def parse_skew(text: str | Sequence[str], field: Field) -> SkewPoly:
    """Read ``u + 1*F + u^3*F^3`` or a list of coefficient strings."""
    if not isinstance(text, str):
        return SkewPoly(field, [field(c) if isinstance(c, str) else c for c in text])
    stripped = text.strip()
    if stripped.startswith("["):
        import json

        return parse_skew(json.loads(stripped), field)
    from .parsing import ParseError, parse_expression

    def symbol(name):
        if name == "F":
            return SkewPoly.F(field)
        try:
            return SkewPoly(field, [field(name)])
        except Exception:
            raise ParseError(f"unknown symbol {name!r} over {field}") from None

    return parse_expression(text, symbol, lambda n: SkewPoly(field, [n]))


# -- ring operations -----------------------------------------------------------------


def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """``(a_i F^i)(b_j F^j) = a_i b_j^(p^i) F^(i+j)``."""
    if a.field is not b.field:
        raise TypeError(f"mixing {a.field} and {b.field}")
    if a.is_zero() or b.is_zero():
        return SkewPoly(a.field)
    zero = a.field.zero()
    out = [zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[i + j] = out[i + j] + ai * frobenius(bj, i)
    return SkewPoly(a.field, out)


def twist_coeffs(tau: SkewPoly, n: int) -> SkewPoly:
    """Apply the ``n``-th Frobenius to every coefficient."""
    return SkewPoly(tau.field, [frobenius(c, n) for c in tau.coeffs])


def right_divide(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``."""
    if b.is_zero():
        raise DivisionByZero("right division by the zero skew polynomial")
    field = a.field
    db = b.degree
    lead_b = b.coeffs[-1]
    r = list(a.coeffs)
    q = [field.zero()] * max(len(r) - db, 0)
    for d in range(len(r) - 1, db - 1, -1):
        c = r[d]
        if not c:
            continue
        shift = d - db
        # c' F^shift * b has leading term c' * lead_b^(p^shift) F^d
        cq = c / frobenius(lead_b, shift)
        q[shift] = cq
        for j, bj in enumerate(b.coeffs):
            if bj:
                r[shift + j] = r[shift + j] - cq * frobenius(bj, shift)
    return SkewPoly(field, q), SkewPoly(field, r[:db])


def truncate(tau: SkewPoly, n: int) -> SkewPoly:
    """Reduce modulo the two-sided ideal ``k[F]F^n``."""
    return SkewPoly(tau.field, tau.coeffs[:n])


def invert_mod_Fn(tau: SkewPoly, n: int) -> SkewPoly:
    """The inverse of a separable ``tau`` in ``U_n = k[F]* / (F^n)``."""
    if not tau.is_separable():
        raise NotSeparable(f"{tau} has zero constant coefficient")
    if n < 1:
        raise ValueError("n must be >= 1")
    a = tau.coeffs
    inv_a0 = a[0].inverse()
    beta = [inv_a0]
    for k in range(1, n):
        s = tau.field.zero()
        for i in range(1, min(k, len(a) - 1) + 1):
            s = s + a[i] * frobenius(beta[k - i], i)
        beta.append(-(inv_a0 * s))
    return SkewPoly(tau.field, beta)


def to_p_polynomial(tau: SkewPoly, ring):
    """``sum a_i T^(p^i)`` in a one-variable :class:`~graded_descent.graded.GradedPolyRing`."""
    if ring.nvars != 1:
        raise ValueError("p-polynomials live in a one-variable ring")
    p = tau.field.p
    out = ring.zero()
    for i, c in enumerate(tau.coeffs):
        if c:
            out = out + ring.monomial(c, 0, (p**i,))
    return out


def from_p_polynomial(f, field: Field | None = None) -> SkewPoly:
    """Inverse of :func:`to_p_polynomial` for p-polynomials with scalar coefficients."""
    ring = f.owner
    p = ring.p
    coeffs: dict[int, FieldElem] = {}
    for (a, (e,)), c in f.terms.items():
        if a:
            raise ValueError(f"{f} has non-scalar coefficients")
        i = 0
        while p**i < e:
            i += 1
        if p**i != e:
            raise ValueError(f"{f} is not a p-polynomial")
        coeffs[i] = c
    top = max(coeffs, default=-1)
    return SkewPoly(field or ring.coeff, [coeffs.get(i, ring.coeff.zero()) for i in range(top + 1)])


# -- candidate scalars ---------------------------------------------------------------


def candidate_scalars(field: Field, bound: int) -> Iterator[FieldElem]:
    """Nonzero scalars to try: all of ``GF(q)``, or rational functions of height <= bound."""
    if isinstance(field, GF):
        yield from field.units()
    elif isinstance(field, RationalFunctionField):
        yield from field.elements_of_height(bound)
    else:
        raise TypeError(field)


def _all_pn_th_powers(tau: SkewPoly, n: int) -> bool:
    return all(pn_th_root(c, n) is not None for c in tau.coeffs)


# -- triviality ------------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialityVerdict:
    trivial: bool
    witness: FieldElem | None = None
    method: str = "reduction"
    failing_index: int | None = None

    def __str__(self) -> str:
        return "trivial" if self.trivial else "nontrivial"


def triviality_test(tau: SkewPoly, n: int) -> TrivialityVerdict:
    """Is the Russell form of ``tau`` trivial, i.e. ``tau*c`` in ``k1[F]^(n)`` for some scalar c?

    Coefficient ``i`` of ``tau*c`` is ``a_i c^(p^i)``. The constant term forces
    ``c = a0^-1 d^(p^n)``; then every condition reads
    ``a_i a0^(-p^i)`` is a ``p^n``-th power, independent of ``d``.
    """
    if not tau.is_separable():
        raise NotSeparable(f"{tau} has zero constant coefficient")
    p = tau.field.p
    a0 = tau.coeffs[0]
    for i in range(1, len(tau.coeffs)):
        b = tau.coeffs[i] * a0 ** (-(p**i))
        if b and pn_th_root(b, n) is None:
            return TrivialityVerdict(False, None, "reduction", i)
    return TrivialityVerdict(True, a0.inverse(), "reduction")


def triviality_bruteforce(tau: SkewPoly, n: int, bound: int) -> TrivialityVerdict:
    """Search ``c`` of bounded height with every coefficient of ``tau*c`` a ``p^n``-th power."""
    if not tau.is_separable():
        raise NotSeparable(f"{tau} has zero constant coefficient")
    for c in candidate_scalars(tau.field, bound):
        if _all_pn_th_powers(skew_mul(tau, SkewPoly(tau.field, [c])), n):
            return TrivialityVerdict(True, c, "search")
    return TrivialityVerdict(False, None, "search")


# -- isomorphism searches --------------------------------------------------------------


@dataclass(frozen=True)
class IsoVerdict:
    """``isomorphic`` means a witness was found; ``not_found`` only says none exists within the bound."""

    status: str
    sigma: SkewPoly | None = None
    c: FieldElem | None = None
    direction: str | None = None
    candidates_tried: int = 0

    @property
    def isomorphic(self) -> bool:
        return self.status == "isomorphic"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "sigma": None if self.sigma is None else str(self.sigma),
            "c": None if self.c is None else str(self.c),
            "direction": self.direction,
            "candidates_tried": self.candidates_tried,
        }


def _coefficientwise_root(tau: SkewPoly, n: int) -> SkewPoly | None:
    roots = [pn_th_root(c, n) for c in tau.coeffs]
    if any(r is None for r in roots):
        return None
    return SkewPoly(tau.field, roots)


def _search_exact(src: SkewPoly, dst: SkewPoly, n: int, bound: int) -> tuple[SkewPoly, FieldElem, int] | None:
    """Find ``(sigma, c)`` with ``dst*c = sigma^(n)*src`` and ``sigma`` separable."""
    tried = 0
    for c in candidate_scalars(src.field, bound):
        tried += 1
        q, r = right_divide(skew_mul(dst, SkewPoly(src.field, [c])), src)
        if not r.is_zero() or not q.is_separable():
            continue
        sigma = _coefficientwise_root(q, n)
        if sigma is not None:
            return sigma, c, tried
    return None


def iso_test_exact(tau: SkewPoly, tau2: SkewPoly, n: int, c_search_bound: int = 3) -> IsoVerdict:
    """Search for ``tau2*c = sigma^(n)*tau`` (or the same with the roles swapped).

    The relation is not symmetric in degree: ``deg tau2 = deg sigma + deg tau``.
    Both directions are therefore searched and the successful one reported.
    """
    for t in (tau, tau2):
        if not t.is_separable():
            raise NotSeparable(f"{t} has zero constant coefficient")
    tried = 0
    for direction, src, dst in (("forward", tau, tau2), ("backward", tau2, tau)):
        hit = _search_exact(src, dst, n, c_search_bound)
        if hit is not None:
            sigma, c, k = hit
            return IsoVerdict("isomorphic", sigma, c, direction, tried + k)
        tried += sum(1 for _ in candidate_scalars(tau.field, c_search_bound))
    return IsoVerdict("not_found", candidates_tried=tried)


def iso_test_mod(tau: SkewPoly, tau2: SkewPoly, n: int, c_search_bound: int = 3) -> IsoVerdict:
    """The orbit relation of ``U_n`` under ``(sigma, c).tau = sigma^(n) tau c^-1 mod F^n``.

    ``tau2`` lies in the orbit of ``tau`` iff ``tau2 * c * tau^-1`` (computed in
    ``U_n``) has all coefficients ``p^n``-th powers for some scalar ``c``.
    """
    for t in (tau, tau2):
        if not t.is_separable():
            raise NotSeparable(f"{t} has zero constant coefficient")
    inv = invert_mod_Fn(tau, n)
    tried = 0
    for c in candidate_scalars(tau.field, c_search_bound):
        tried += 1
        rest = truncate(skew_mul(skew_mul(tau2, SkewPoly(tau.field, [c])), inv), n)
        sigma = _coefficientwise_root(rest, n)
        if sigma is not None and sigma.is_separable():
            return IsoVerdict("isomorphic", sigma, c, "orbit", tried)
    return IsoVerdict("not_found", candidates_tried=tried)


def random_skew(field: Field, rng, max_degree: int = 3, separable: bool = True, height: int = 1) -> SkewPoly:
    def coeff(nonzero=False):
        if isinstance(field, GF):
            return field.random(rng, nonzero=nonzero)
        return field.random(rng, height=height, nonzero=nonzero)

    deg = rng.randint(0, max_degree)
    cs = [coeff(nonzero=separable)] + [coeff() for _ in range(deg)]
    return SkewPoly(field, cs)
