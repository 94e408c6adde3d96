"""Coefficient fields of positive characteristic.

Two kinds are supported:

* ``GF(q)`` with ``q = p^m``, realised as ``F_p[w]/(P(w))`` for a fixed
  primitive polynomial ``P`` (the lexicographically first one, so the choice is
  reproducible and reported by the CLI);
* ``GF(q)(u)``, rational functions in one variable over ``GF(q)``, kept in
  lowest terms with monic denominator.

Field elements are immutable and hashable; equality is structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .parsing import ParseError


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^m``; raises ValueError if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                break
            return p, m
    raise ValueError(f"{q} is not a prime power")


# -- polynomials over F_p, used only to build GF(p^m) --------------------------


def _fp_polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    m = len(mod) - 1
    for i in range(len(out) - 1, m - 1, -1):
        c = out[i]
        if c:
            for j in range(m + 1):
                out[i - m + j] = (out[i - m + j] - c * mod[j]) % p
    out = out[:m] + [0] * (m - len(out[:m]))
    return out


def _primitive_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically first monic primitive polynomial of degree m over F_p.

    Coefficients low to high. Primitive means ``w`` has order ``p^m - 1``.
    """
    if m == 1:
        # x - g for the least primitive root g
        g = next(g for g in range(1, p) if _order_mod(g, p) == p - 1) if p > 2 else 1
        return ((-g) % p, 1)
    order = p**m - 1
    for tail in itertools.product(range(p), repeat=m):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        # multiplicative order of w modulo poly
        x = [0, 1] + [0] * (m - 2)
        cur = [1] + [0] * (m - 1)
        k = 0
        ok = True
        while True:
            cur = _fp_polymulmod(cur, x, poly, p)
            k += 1
            if cur == [1] + [0] * (m - 1):
                break
            if k > order:
                ok = False
                break
        if ok and k == order:
            return tuple(poly)
    raise ValueError(f"no primitive polynomial of degree {m} over F_{p}")


def _order_mod(g: int, p: int) -> int:
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


# -- field objects ---------------------------------------------------------------


class Field:
    """Common interface of the coefficient fields."""

    p: int
    is_perfect: bool

    def zero(self) -> "FieldElem":
        raise NotImplementedError

    def one(self) -> "FieldElem":
        raise NotImplementedError

    def __call__(self, value) -> "FieldElem":
        raise NotImplementedError


class FieldElem:
    __slots__ = ()
    field: Field

    def is_zero(self) -> bool:
        raise NotImplementedError

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        return self.field(other) - self

    def __rtruediv__(self, other):
        return self.field(other) / self

    def __neg__(self):
        return self.field.zero() - self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        raise NotImplementedError

    def frobenius(self, n: int = 1):
        return frobenius(self, n)

    def pn_th_root(self, n: int = 1):
        return pn_th_root(self, n)


class GF(Field):
    """The finite field with ``q = p^m`` elements.

    Elements are encoded as integers ``0 <= v < q`` whose base-``p`` digits are
    the coefficients of the element as a polynomial in the generator ``w``.
    Multiplication goes through discrete-log tables.
    """

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p**m
        self.is_perfect = True
        self.modulus = _primitive_polynomial(p, m)
        self._exp: list[int] = []
        self._log: dict[int, int] = {}
        cur = [1] + [0] * (m - 1)
        gen = ([0, 1] + [0] * (m - 2)) if m > 1 else [(-self.modulus[0]) % p]
        for k in range(self.q - 1):
            v = self._encode(cur)
            self._exp.append(v)
            self._log[v] = k
            if m > 1:
                cur = _fp_polymulmod(cur, gen, list(self.modulus), p)
            else:
                cur = [cur[0] * gen[0] % p]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __str__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (get_gf, (self.p, self.m))

    def _encode(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _decode(self, v: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(v % self.p)
            v //= self.p
        return out

    def presentation(self) -> str:
        if self.m == 1:
            return f"F_{self.p}, primitive element {self.generator()}"
        terms = []
        for i, c in enumerate(self.modulus):
            if c and i == 0:
                terms.append(str(c))
            elif c:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return f"F_{self.p}[w]/({' + '.join(reversed(terms))})"

    def zero(self) -> "GFElem":
        return GFElem(self, 0)

    def one(self) -> "GFElem":
        return GFElem(self, 1)

    def generator(self) -> "GFElem":
        """The fixed primitive element (``w``, or the least primitive root)."""
        return GFElem(self, self._exp[1] if self.q > 2 else 1)

    def __call__(self, value) -> "GFElem":
        if isinstance(value, GFElem):
            if value.field is not self:
                raise TypeError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            return GFElem(self, value % self.p)
        if isinstance(value, str):
            from .parsing import parse_field_element

            return parse_field_element(value, self)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_vector(self, digits: Sequence[int]) -> "GFElem":
        digits = [d % self.p for d in digits] + [0] * (self.m - len(digits))
        return GFElem(self, self._encode(digits[: self.m]))

    def elements(self) -> Iterator["GFElem"]:
        for v in range(self.q):
            yield GFElem(self, v)

    def units(self) -> Iterator["GFElem"]:
        for v in range(1, self.q):
            yield GFElem(self, v)

    def random(self, rng, nonzero: bool = False) -> "GFElem":
        lo = 1 if nonzero else 0
        return GFElem(self, rng.randrange(lo, self.q))

    # raw arithmetic on encodings
    def _add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self._encode([(x + y) % self.p for x, y in zip(self._decode(a), self._decode(b))])

    def _neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def _pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero(f"negative power of 0 in {self}")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: "GFElem") -> int:
        """Discrete logarithm to the base of :meth:`generator`."""
        if a.value == 0:
            raise DivisionByZero("log of 0")
        return self._log[a.value]


def get_gf(p: int, m: int = 1) -> GF:
    return _get_gf(p, m)


@lru_cache(maxsize=None)
def _get_gf(p: int, m: int) -> GF:
    return GF(p, m)


class GFElem(FieldElem):
    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def _coerce(self, other) -> int:
        if isinstance(other, GFElem):
            if other.field is not self.field:
                raise TypeError(f"mixing {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElem(self.field, self.field._add(self.value, o))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElem(self.field, self.field._add(self.value, self.field._neg(o)))

    def __neg__(self):
        return GFElem(self.field, self.field._neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElem(self.field, self.field._mul(self.value, o))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GFElem(self.field, self.field._mul(self.value, self.field._inv(o)))

    def __pow__(self, e: int):
        return GFElem(self.field, self.field._pow(self.value, e))

    def inverse(self) -> "GFElem":
        return GFElem(self.field, self.field._inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, GFElem):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def sort_key(self) -> tuple:
        return (self.value,)

    def __repr__(self) -> str:
        return f"{self.field}({self})"

    def __str__(self) -> str:
        f = self.field
        if f.m == 1:
            return str(self.value)
        terms = []
        for i, c in reversed(list(enumerate(f._decode(self.value)))):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


# -- polynomials over GF(q), for rational function fields ---------------------------
#
# A polynomial is a tuple of GF encodings, low degree first, no trailing zeros.

Poly = tuple


def _ptrim(a: list[int]) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F._add(x, y))
    return _ptrim(out)


def _pneg(F: GF, a: Poly) -> Poly:
    return tuple(F._neg(x) for x in a)


def _pscale(F: GF, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F._mul(x, c) for x in a)


def _pmul(F: GF, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F._add(out[i + j], F._mul(x, y))
    return _ptrim(out)


def _pdivmod(F: GF, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = F._inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = F._mul(c, inv_lead)
            q[i - db] = c
            for j, y in enumerate(b):
                r[i - db + j] = F._add(r[i - db + j], F._neg(F._mul(c, y)))
    return _ptrim(q), _ptrim(r[:db] if db else [])


def _pmonic(F: GF, a: Poly) -> tuple[Poly, int]:
    """Return (monic a, leading coefficient)."""
    lead = a[-1]
    return _pscale(F, a, F._inv(lead)), lead


def _pgcd(F: GF, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(F, a, b)[1]
    if not a:
        return ()
    return _pmonic(F, a)[0]


def _ppow(F: GF, a: Poly, e: int) -> Poly:
    out: Poly = (1,)
    base = a
    while e:
        if e & 1:
            out = _pmul(F, out, base)
        base = _pmul(F, base, base)
        e >>= 1
    return out


def _pfrob(F: GF, a: Poly, pn: int) -> Poly:
    """a(u)^(p^n): raise coefficients and spread exponents."""
    if not a:
        return ()
    out = [0] * ((len(a) - 1) * pn + 1)
    for i, c in enumerate(a):
        out[i * pn] = F._pow(c, pn)
    return tuple(out)


def _proot(F: GF, a: Poly, pn: int) -> Poly | None:
    """Inverse of :func:`_pfrob`, or None if a is not a p^n-th power."""
    if any(c for i, c in enumerate(a) if i % pn):
        return None
    # coefficient root in the perfect field GF(q): c^(1/pn) = c^(q/pn) when pn | q... use
    # the inverse of the Frobenius automorphism: x -> x^(p^(k m - n)) for large k.
    e = _inverse_frobenius_exponent(F, pn)
    return _ptrim([F._pow(a[i], e) for i in range(0, len(a), pn)])


def _inverse_frobenius_exponent(F: GF, pn: int) -> int:
    # x -> x^pn is a bijection on GF(q); its inverse is x -> x^e with
    # e * pn = 1 mod (q - 1).
    if F.q == 2:
        return 1
    return pow(pn, -1, F.q - 1)


def _pstr(F: GF, a: Poly, var: str) -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        cs = str(GFElem(F, c))
        if F.m > 1 and " + " in cs:
            cs = f"({cs})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


class RationalFunctionField(Field):
    """``GF(q)(u)`` with elements in lowest terms and monic denominators."""

    def __init__(self, base: GF, var: str = "u"):
        self.base = base
        self.var = var
        self.p = base.p
        self.is_perfect = False

    def __repr__(self) -> str:
        return f"GF({self.base.q})({self.var})"

    __str__ = __repr__

    def __reduce__(self):
        return (get_rational_function_field, (self.base.p, self.base.m, self.var))

    def presentation(self) -> str:
        return f"{self.base.presentation()}, rational functions in {self.var}"

    def zero(self) -> "RatFunc":
        return RatFunc(self, (), (1,))

    def one(self) -> "RatFunc":
        return RatFunc(self, (1,), (1,))

    def gen(self) -> "RatFunc":
        return RatFunc(self, (0, 1), (1,))

    def make(self, num: Poly, den: Poly) -> "RatFunc":
        """Normalise ``num/den`` (tuples of GF encodings) into lowest terms."""
        F = self.base
        num, den = _ptrim(list(num)), _ptrim(list(den))
        if not den:
            raise DivisionByZero(f"zero denominator in {self}")
        if not num:
            return self.zero()
        g = _pgcd(F, num, den)
        if g != (1,):
            num = _pdivmod(F, num, g)[0]
            den = _pdivmod(F, den, g)[0]
        den, lead = _pmonic(F, den)
        num = _pscale(F, num, F._inv(lead))
        return RatFunc(self, num, den)

    def __call__(self, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.field is not self:
                raise TypeError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, GFElem):
            if value.field is not self.base:
                raise TypeError(f"element of {value.field} is not in {self}")
            return self.make((value.value,), (1,))
        if isinstance(value, int):
            return self.make((value % self.p,), (1,))
        if isinstance(value, str):
            from .parsing import parse_field_element

            return parse_field_element(value, self)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def polynomials(self, max_degree: int) -> Iterator[Poly]:
        """All polynomials of degree <= max_degree (including zero)."""
        q = self.base.q
        for digits in itertools.product(range(q), repeat=max_degree + 1):
            yield _ptrim(list(reversed(digits)))

    def elements_of_height(self, height: int, nonzero: bool = True) -> Iterator["RatFunc"]:
        """Every element ``f/g`` with ``deg f, deg g <= height``, each once.

        Ordered deterministically (by denominator, then numerator).
        """
        seen = set()
        monic_dens = [d for d in self.polynomials(height) if d and d[-1] == 1]
        nums = list(self.polynomials(height))
        for den in monic_dens:
            for num in nums:
                if nonzero and not num:
                    continue
                x = self.make(num, den)
                if x not in seen:
                    seen.add(x)
                    yield x

    def random(self, rng, height: int = 2, nonzero: bool = False) -> "RatFunc":
        F = self.base
        while True:
            num = _ptrim([rng.randrange(F.q) for _ in range(rng.randint(0, height) + 1)])
            den = _ptrim([rng.randrange(F.q) for _ in range(rng.randint(0, height) + 1)])
            if not den or (nonzero and not num):
                continue
            return self.make(num, den)

    def root_extension(self, n: int, var: str = "v") -> tuple["RationalFunctionField", callable]:
        """The field ``GF(q)(v)`` with ``v^(p^n) = u``, and the embedding of self.

        Every element of self has a ``p^n``-th root in the returned field.
        """
        big = get_rational_function_field(self.p, self.base.m, var)
        pn = self.p**n

        def embed(x: "RatFunc") -> "RatFunc":
            x = self(x)
            return big.make(_spread(x.num, pn), _spread(x.den, pn))

        return big, embed


def _spread(a: Poly, k: int) -> Poly:
    if not a:
        return ()
    out = [0] * ((len(a) - 1) * k + 1)
    for i, c in enumerate(a):
        out[i * k] = c
    return tuple(out)


def get_rational_function_field(p: int, m: int = 1, var: str = "u") -> RationalFunctionField:
    return _get_rff(p, m, var)


@lru_cache(maxsize=None)
def _get_rff(p: int, m: int, var: str) -> RationalFunctionField:
    return RationalFunctionField(get_gf(p, m), var)


class RatFunc(FieldElem):
    __slots__ = ("field", "num", "den")

    def __init__(self, field: RationalFunctionField, num: Poly, den: Poly):
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise TypeError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, (int, GFElem)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        F = self.field.base
        if self.den == o.den:
            return self.field.make(_padd(F, self.num, o.num), self.den)
        num = _padd(F, _pmul(F, self.num, o.den), _pmul(F, o.num, self.den))
        return self.field.make(num, _pmul(F, self.den, o.den))

    def __neg__(self):
        return RatFunc(self.field, _pneg(self.field.base, self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        F = self.field.base
        return self.field.make(_pmul(F, self.num, o.num), _pmul(F, self.den, o.den))

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero(f"inverse of 0 in {self.field}")
        return self.field.make(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return self.field.one()
        if not self.num:
            return self
        F = self.field.base
        # powers of coprime polynomials stay coprime, monic stays monic
        return RatFunc(self.field, _ppow(F, self.num, e), _ppow(F, self.den, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, GFElem)):
            try:
                return self == self.field(other)
            except TypeError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def sort_key(self) -> tuple:
        return (len(self.den), self.den, len(self.num), self.num)

    def height(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def __repr__(self) -> str:
        return f"{self.field}({self})"

    def __str__(self) -> str:
        F, v = self.field.base, self.field.var
        ns = _pstr(F, self.num, v)
        if self.den == (1,):
            return ns
        ds = _pstr(F, self.den, v)
        if " + " in ns:
            ns = f"({ns})"
        if " + " in ds or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"


# -- Frobenius and roots ------------------------------------------------------------


def frobenius(x: FieldElem, n: int = 1) -> FieldElem:
    """``x^(p^n)``."""
    if n < 0:
        raise ValueError("use pn_th_root for negative Frobenius powers")
    pn = x.field.p**n
    if isinstance(x, GFElem):
        return x**pn
    F = x.field.base
    return RatFunc(x.field, _pfrob(F, x.num, pn), _pfrob(F, x.den, pn))


def pn_th_root(x: FieldElem, n: int = 1) -> FieldElem | None:
    """The unique ``y`` with ``y^(p^n) = x``, or None if x is not a p^n-th power."""
    pn = x.field.p**n
    if isinstance(x, GFElem):
        F = x.field
        if x.value == 0:
            return x
        return GFElem(F, F._pow(x.value, _inverse_frobenius_exponent(F, pn)))
    F = x.field.base
    num = _proot(F, x.num, pn)
    den = _proot(F, x.den, pn)
    if num is None or den is None:
        return None
    return RatFunc(x.field, num, den)


def is_pn_th_power(x: FieldElem, n: int) -> bool:
    return pn_th_root(x, n) is not None


# -- field specs ------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDesc:
    """Description of a coefficient field: ``GF(p^m)`` or ``GF(p^m)(u)``."""

    characteristic: int
    base_power: int = 1
    kind: str = "finite"

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if self.base_power < 1:
            raise ValueError("base_power must be >= 1")
        if self.kind not in ("finite", "rational_function_in_u"):
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_perfect(self) -> bool:
        return self.kind == "finite"

    def build(self) -> Field:
        if self.kind == "finite":
            return get_gf(self.characteristic, self.base_power)
        return get_rational_function_field(self.characteristic, self.base_power)

    def __str__(self) -> str:
        q = self.characteristic**self.base_power
        return f"GF({q})" if self.kind == "finite" else f"GF({q})(u)"


def parse_field(spec: str) -> Field:
    """``GF(4)`` or ``GF(2)(u)``."""
    s = spec.replace(" ", "")
    if not s.startswith("GF("):
        raise ParseError(f"bad field spec {spec!r}")
    try:
        close = s.index(")")
        p, m = prime_power(int(s[3:close]))
    except ValueError:
        raise ParseError(f"bad field spec {spec!r}") from None
    rest = s[close + 1 :]
    if rest == "":
        return get_gf(p, m)
    if rest.startswith("(") and rest.endswith(")") and rest[1:-1].isidentifier():
        return get_rational_function_field(p, m, rest[1:-1])
    raise ParseError(f"bad field spec {spec!r}")


def describe(field: Field) -> FieldDesc:
    if isinstance(field, GF):
        return FieldDesc(field.p, field.m, "finite")
    return FieldDesc(field.p, field.base.m, "rational_function_in_u")
