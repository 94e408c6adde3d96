"""Class groups of form reductions through logarithmic derivatives.

For a form ``A`` trivialized over ``ell`` as ``B = ell[T]``, with the base
change ``d_L`` of the standard derivation of exponent ``n``, the group
``L_B / L'_B`` of integral logarithmic derivatives modulo those of units is
identified with ``Cl(A~) = Pic(A)``. Units of ``B`` are ``c*t^j``, so ``L'_B`` is
cyclic, generated by ``w = d(t)/t``. Gradings are ignored in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graded import GradedElem, homogeneous_root
from .hasse import BaseChange, NotAUnitLog, TruncSeries, ZeroArgument, base_change, log_derivative, standard_derivation
from .russell import RussellElem, RussellForm, TrivializationData, trivialize


class WrongFamily(ValueError):
    pass


class NotInLB(ValueError):
    """``d_L(z)/z`` is not integral, so ``z`` defines no class."""


@dataclass
class PicContext:
    """The standard derivation of exponent ``n``, base-changed to a trivialized form."""

    form: RussellForm
    data: TrivializationData
    bc: BaseChange

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def pn(self) -> int:
        return self.form.pn

    @property
    def ring(self):
        return self.data.target

    @cached_property
    def w(self) -> TruncSeries:
        return log_derivative(self.bc, self.ring.t())

    @cached_property
    def lprime(self) -> list[TruncSeries]:
        out = [TruncSeries.one(self.ring, self.bc.on_T.m)]
        for _ in range(1, self.pn):
            out.append(out[-1] * self.w)
        return out

    def normal_form(self, rep: TruncSeries) -> TruncSeries:
        """Smallest coset element under a fixed total order on series."""
        return min((rep * u for u in self.lprime), key=lambda s: s.sort_key())

    def identity(self) -> "LogDerivClass":
        return LogDerivClass(self, self.lprime[0])


def pic_context(form: RussellForm, extend_coefficients: bool = False) -> PicContext:
    """Requires ``k~ = k1[t^(+-p^n)]``: the constants of the standard derivation of exponent ``n``."""
    if not form.base.has_t or form.base.stride != form.pn:
        raise WrongFamily(f"the base must be k1[t^+-{form.pn}], got {form.base}")
    data = trivialize(form, extend_coefficients)
    d = standard_derivation(data.ell.ring(), form.n)
    return PicContext(form, data, base_change(d, data))


@dataclass(frozen=True, eq=False)
class LogDerivClass:
    ctx: PicContext
    representative: TruncSeries

    def __post_init__(self):
        object.__setattr__(self, "representative", self.ctx.normal_form(self.representative))

    def __mul__(self, other: "LogDerivClass") -> "LogDerivClass":
        return LogDerivClass(self.ctx, self.representative * other.representative)

    def __pow__(self, k: int) -> "LogDerivClass":
        return LogDerivClass(self.ctx, self.representative**k)

    def __eq__(self, other) -> bool:
        return isinstance(other, LogDerivClass) and self.representative == other.representative

    def __hash__(self) -> int:
        return hash(self.representative)

    def is_identity(self) -> bool:
        return self.representative in self.ctx.lprime

    def __str__(self) -> str:
        return str(self.representative)


def lprime_elements(ctx: PicContext) -> list[TruncSeries]:
    """The ``p^n`` distinct powers of ``d(t)/t``."""
    return list(ctx.lprime)


def class_of(ctx: PicContext, z: GradedElem | RussellElem) -> LogDerivClass:
    if not z:
        raise ZeroArgument("class of zero")
    res = log_derivative(ctx.bc, z)
    if isinstance(res, NotAUnitLog):
        raise NotInLB(f"d_L(z)/z is not integral for z = {z}")
    if not res.is_unit():
        raise NotInLB(f"d_L(z)/z = {res} is not a unit")
    return LogDerivClass(ctx, res)


def class_order(c: LogDerivClass) -> int:
    k, acc = 1, c
    while not acc.is_identity():
        acc = acc * c
        k += 1
        if k > c.ctx.pn:
            raise AssertionError(f"class order exceeds p^n for {c}")
    return k


@dataclass
class DTReport:
    deg_T: int
    cyclic_certified: bool
    dT: str
    generator: LogDerivClass | None = None
    generator_order: int | None = None
    sampled_classes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "deg_T": self.deg_T,
            "dT": self.dT,
            "cyclic_certified": self.cyclic_certified,
            "generator": None if self.generator is None else str(self.generator),
            "generator_order": self.generator_order,
            "sampled_classes": self.sampled_classes,
        }


def dT_criterion(form: RussellForm | PicContext, extend_coefficients: bool = False) -> DTReport:
    ctx = form if isinstance(form, PicContext) else pic_context(form, extend_coefficients)
    dT = ctx.bc.dT
    deg = max(c.var_degree(0) for c in dT.coeffs)
    report = DTReport(deg_T=deg, cyclic_certified=False, dT=str(dT))
    if deg == 1:
        try:
            gen = class_of(ctx, ctx.ring.var("T"))
        except NotInLB:
            return report
        report.cyclic_certified = True
        report.generator = gen
        report.generator_order = class_order(gen)
    return report


def sample_classes(ctx: PicContext, max_power: int = 3, t_shifts: tuple = (-1, 0, 1)) -> list[dict]:
    """Classes of ``t^a T^k`` and of the coordinates ``x, y``, with their orders."""
    R = ctx.ring
    T = R.var("T")
    out = []
    candidates = [(str(R.t(a) * T**k), R.t(a) * T**k) for k in range(1, max_power + 1) for a in t_shifts]
    candidates += [("x", ctx.data.x_image), ("y", ctx.data.y_image)]
    for label, z in candidates:
        try:
            c = class_of(ctx, z)
        except NotInLB:
            out.append({"z": label, "in_L_B": False})
            continue
        out.append({"z": label, "in_L_B": True, "class": str(c), "order": class_order(c)})
    return out


@dataclass
class PthRootVerdict:
    pic_trivial: bool
    failing_index: int | None
    cross_check: DTReport | None

    def to_json(self) -> dict:
        return {
            "pic_trivial": self.pic_trivial,
            "failing_index": self.failing_index,
            "cross_check": None if self.cross_check is None else self.cross_check.to_json(),
        }


def pth_root_criterion(form: RussellForm, cross_check: bool = True) -> PthRootVerdict:
    """For ``n = 1`` and ``s = r``: Pic is trivial iff each ``a_i`` (``i >= 1``) has a p-th root in ``k~``."""
    if form.n != 1 or form.s != form.r:
        raise WrongFamily("the criterion applies to n = 1 and s = r")
    coeffs = form.coefficients()
    failing = None
    for i, a in enumerate(coeffs[1:], start=1):
        if a and homogeneous_root(a, 1, within=form.base) is None:
            failing = i
            break
    verdict = PthRootVerdict(failing is None, failing, None)
    if cross_check and verdict.pic_trivial and form.base.has_t and form.base.stride == form.pn:
        rep = dT_criterion(form)
        verdict.cross_check = rep
        if rep.deg_T != 1 or rep.generator is None or not rep.generator.is_identity():
            raise AssertionError(f"p-th root criterion disagrees with deg_T: {rep.to_json()}")
    return verdict


def pic_report(form: RussellForm, max_power: int = 3, extend_coefficients: bool = False) -> dict:
    ctx = pic_context(form, extend_coefficients)
    rep = dT_criterion(ctx)
    rep.sampled_classes = sample_classes(ctx, max_power)
    out = rep.to_json()
    out["lprime"] = [str(w) for w in ctx.lprime]
    out["trivialization"] = ctx.data.to_json()
    if form.n == 1 and form.s == form.r:
        out["pth_root_criterion"] = pth_root_criterion(form, cross_check=False).pic_trivial
    return out


__all__ = [
    "PicContext",
    "pic_context",
    "LogDerivClass",
    "lprime_elements",
    "class_of",
    "class_order",
    "dT_criterion",
    "DTReport",
    "sample_classes",
    "pth_root_criterion",
    "PthRootVerdict",
    "pic_report",
    "WrongFamily",
    "NotInLB",
]
