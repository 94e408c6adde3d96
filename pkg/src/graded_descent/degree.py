"""Exact multiplicative degrees.

A degree is a monomial ``g1^e1 * g2^e2 * ...`` in named positive reals with
rational exponents. Only finitely generated subgroups of the multiplicative
group of positive reals are ever needed, so degrees are stored as sparse maps
``name -> Fraction`` and compared structurally.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

from .parsing import ParseError

Rational = Union[int, Fraction]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Degree:
    """Element of the grading group, written multiplicatively."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Mapping[str, Rational] | None = None):
        exps = {}
        for name, e in (exponents or {}).items():
            e = Fraction(e)
            if e:
                exps[name] = e
        self._exps = dict(sorted(exps.items()))
        self._hash = hash(tuple(self._exps.items()))

    @classmethod
    def gen(cls, name: str, exponent: Rational = 1) -> "Degree":
        return cls({name: exponent})

    @property
    def exponents(self) -> dict[str, Fraction]:
        return dict(self._exps)

    def is_identity(self) -> bool:
        return not self._exps

    def __mul__(self, other: "Degree") -> "Degree":
        out = dict(self._exps)
        for name, e in other._exps.items():
            out[name] = out.get(name, 0) + e
        return Degree(out)

    def __truediv__(self, other: "Degree") -> "Degree":
        return self * other.inverse()

    def inverse(self) -> "Degree":
        return Degree({k: -v for k, v in self._exps.items()})

    def __pow__(self, e: Rational) -> "Degree":
        e = Fraction(e)
        return Degree({k: v * e for k, v in self._exps.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Degree) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Degree({format_degree(self)!r})"

    def __str__(self) -> str:
        return format_degree(self)

    def sort_key(self) -> tuple:
        return tuple((k, v.numerator, v.denominator) for k, v in self._exps.items())


IDENTITY = Degree()


def deg_mul(a: Degree, b: Degree) -> Degree:
    return a * b


def deg_inv(a: Degree) -> Degree:
    return a.inverse()


def deg_pow(a: Degree, e: Rational) -> Degree:
    return a ** e


def format_degree(d: Degree) -> str:
    if d.is_identity():
        return "1"
    parts = []
    for name, e in d._exps.items():
        parts.append(name if e == 1 else f"{name}^{e}")
    return " * ".join(parts)


def parse_degree(text: str) -> Degree:
    """Parse ``q_t^2 * r^-1/3``; ``1`` (or empty) is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    out: dict[str, Fraction] = {}
    for factor in text.split("*"):
        factor = factor.strip()
        if factor == "1":
            continue
        name, _, exp = factor.partition("^")
        name = name.strip()
        if not _NAME.fullmatch(name):
            raise ParseError(f"bad degree generator {name!r} in {text!r}")
        try:
            e = Fraction(exp.strip().strip("()")) if exp else Fraction(1)
        except ValueError:
            raise ParseError(f"bad exponent {exp!r} in {text!r}") from None
        out[name] = out.get(name, 0) + e
    return Degree(out)


def _as_degree(d: Degree | str) -> Degree:
    return parse_degree(d) if isinstance(d, str) else d


# -- lattice membership -------------------------------------------------------


def _integer_echelon(rows: list[list[int]]) -> list[list[int]]:
    """Row-reduce an integer matrix with unimodular operations.

    Returns a basis of the row lattice in echelon form (no zero rows).
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in rows if not r[col]]
        # Euclid on column `col` until a single row keeps a nonzero entry
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [pivot] + rest
        basis.append(nz[0])
        rows = zero
        col += 1
    return basis


def _solve_rational(basis: list[list[int]], target: list[Fraction]) -> list[Fraction] | None:
    """Coordinates of ``target`` in the echelon ``basis`` over Q, or None."""
    coords = []
    residual = list(target)
    for row in basis:
        pivot_col = next(i for i, a in enumerate(row) if a)
        c = residual[pivot_col] / row[pivot_col]
        coords.append(c)
        residual = [x - c * a for x, a in zip(residual, row)]
    if any(residual):
        return None
    return coords


def order_mod_subgroup(g: Degree | str, gens: Iterable[Degree | str]) -> int | None:
    """Order of ``g`` modulo the subgroup generated by ``gens``.

    Returns the least ``k >= 1`` with ``g^k`` in the subgroup, or ``None`` when
    no power lands there (infinite order).
    """
    g = _as_degree(g)
    gens = [_as_degree(h) for h in gens]
    names = sorted(set(g._exps).union(*(h._exps for h in gens)))
    if not names:
        return 1
    denom = 1
    for d in [g, *gens]:
        for e in d._exps.values():
            denom = lcm(denom, e.denominator)
    rows = [[int(h._exps.get(n, 0) * denom) for n in names] for h in gens]
    basis = _integer_echelon(rows)
    target = [g._exps.get(n, Fraction(0)) * denom for n in names]
    coords = _solve_rational(basis, target)
    if coords is None:
        return None
    k = 1
    for c in coords:
        k = lcm(k, c.denominator)
    return k
