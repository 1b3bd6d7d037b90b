"""Expression trees in the variable n and their (degree, coefficient) attributes.

Every node is an immutable dataclass, so structural equality and hashing come
for free. :func:`analyze_attributes` computes, in one bottom-up pass, the
degree ``r`` and leading coefficient ``c`` such that ``E(n) ~ c * n**r``,
together with whether the expression belongs to the family at all.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .coefficient import Coefficient
from .errors import CoefficientTooComplex


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()

    def children(self) -> tuple["Expr", ...]:
        return ()


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Div(Expr):
    numer: Expr
    denom: Expr

    def children(self):
        return (self.numer, self.denom)


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


BINARY = (Mul, Div, Add, Sub)
NODE_KINDS = (Const, Var, Mul, Div, Pow, Add, Sub)


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def desugar_root(k: int, e: Expr) -> Pow:
    """The k-th root of ``e`` as a power node."""
    if k < 1:
        raise ValueError(f"root order must be a positive integer, got {k}")
    return Pow(e, Fraction(1, k))


# -- membership ---------------------------------------------------------------


class Kind(enum.Enum):
    MEMBER = "member"
    ZERO_CONSTANT = "zero-constant"
    OUTSIDE = "outside"
    INDETERMINATE = "indeterminate"


class OutsideReason(enum.Enum):
    ADDITIVE_CANCELLATION = "additive-cancellation"
    SUBTRACTIVE_CANCELLATION = "subtractive-cancellation"
    POWER_OF_NON_POSITIVE = "power-of-non-positive"
    DIVISION_BY_ZERO_EXPRESSION = "division-by-zero-expression"


Path = tuple[int, ...]


@dataclass(frozen=True)
class MembershipStatus:
    kind: Kind
    reason: Union[OutsideReason, None] = None
    location: Union[Path, None] = None

    @property
    def is_member(self) -> bool:
        return self.kind is Kind.MEMBER

    def describe(self) -> str:
        if self.kind is Kind.OUTSIDE:
            return f"outside: {self.reason.value}"
        if self.kind is Kind.INDETERMINATE:
            return f"indeterminate: node {'/'.join(map(str, self.location)) or 'top'}"
        return self.kind.value


MEMBER = MembershipStatus(Kind.MEMBER)
ZERO_CONSTANT = MembershipStatus(Kind.ZERO_CONSTANT)


def outside(reason: OutsideReason, location: Path = ()) -> MembershipStatus:
    return MembershipStatus(Kind.OUTSIDE, reason, location)


def indeterminate(location: Path) -> MembershipStatus:
    return MembershipStatus(Kind.INDETERMINATE, None, location)


@dataclass(frozen=True)
class Attributes:
    """Degree, leading coefficient and membership of a node.

    ``degree`` and ``coeff`` are None unless the status is MEMBER or
    ZERO_CONSTANT.
    """

    degree: Union[Fraction, None]
    coeff: Union[Coefficient, None]
    status: MembershipStatus


_ZERO_ATTRS = Attributes(Fraction(0), Coefficient(), ZERO_CONSTANT)


def _member(degree: Fraction, coeff: Coefficient) -> Attributes:
    return Attributes(degree, coeff, MEMBER)


def _failed(status: MembershipStatus) -> Attributes:
    return Attributes(None, None, status)


def _is_zero(a: Attributes) -> bool:
    return a.status.kind is Kind.ZERO_CONSTANT


def leaf_attributes(e: Expr) -> Attributes:
    if isinstance(e, Var):
        return _member(Fraction(1), Coefficient.rational(1))
    if e.value == 0:
        return _ZERO_ATTRS
    return _member(Fraction(0), Coefficient.rational(e.value))


def combine(e: Expr, kids: tuple[Attributes, ...], path: Path = ()) -> Attributes:
    """Attributes of ``e`` from those of its children."""
    for k in kids:
        if k.status.kind in (Kind.OUTSIDE, Kind.INDETERMINATE):
            return k

    if isinstance(e, Pow):
        return _pow_attributes(kids[0], e.exponent, path)
    a, b = kids
    if isinstance(e, (Add, Sub)):
        subtract = isinstance(e, Sub)
        if _is_zero(a) and _is_zero(b):
            return _ZERO_ATTRS
        if _is_zero(b):
            return a
        if _is_zero(a):
            return _member(b.degree, -b.coeff) if subtract else b
        if a.degree != b.degree:
            if a.degree > b.degree:
                return _member(a.degree, a.coeff)
            return _member(b.degree, -b.coeff if subtract else b.coeff)
        c = a.coeff - b.coeff if subtract else a.coeff + b.coeff
        if c.is_zero():
            reason = (
                OutsideReason.SUBTRACTIVE_CANCELLATION
                if subtract
                else OutsideReason.ADDITIVE_CANCELLATION
            )
            return _failed(outside(reason, path))
        return _member(a.degree, c)
    if isinstance(e, Mul):
        if _is_zero(a) or _is_zero(b):
            return _ZERO_ATTRS
        return _member(a.degree + b.degree, a.coeff * b.coeff)
    # Div
    if _is_zero(b):
        return _failed(outside(OutsideReason.DIVISION_BY_ZERO_EXPRESSION, path))
    if _is_zero(a):
        return _ZERO_ATTRS
    try:
        return _member(a.degree - b.degree, a.coeff / b.coeff)
    except CoefficientTooComplex:
        return _failed(indeterminate(path))


def _pow_attributes(a: Attributes, alpha: Fraction, path: Path) -> Attributes:
    if _is_zero(a):
        if alpha > 0:
            return _ZERO_ATTRS
        if alpha < 0:
            return _failed(outside(OutsideReason.DIVISION_BY_ZERO_EXPRESSION, path))
        return _failed(outside(OutsideReason.POWER_OF_NON_POSITIVE, path))
    degree = a.degree * alpha
    if alpha.denominator == 1:
        try:
            return _member(degree, a.coeff.pow(alpha))
        except CoefficientTooComplex:
            return _failed(indeterminate(path))
    if len(a.coeff.terms) != 1:
        return _failed(indeterminate(path))
    _, c = a.coeff.terms[0]
    if c < 0 and alpha.denominator % 2 == 0:
        # eventually negative base under an even root
        return _failed(outside(OutsideReason.POWER_OF_NON_POSITIVE, path))
    return _member(degree, a.coeff.pow(alpha))


def analyze_attributes(e: Expr) -> Attributes:
    """Degree, leading coefficient and membership of ``e``.

    Iterative post-order walk, so deep trees do not hit the recursion limit.
    """
    done: dict[Path, Attributes] = {}
    stack: list[tuple[Expr, Path, bool]] = [(e, (), False)]
    while stack:
        node, path, expanded = stack.pop()
        kids = node.children()
        if not kids:
            done[path] = leaf_attributes(node)
            continue
        if not expanded:
            stack.append((node, path, True))
            for i, child in reversed(list(enumerate(kids))):
                stack.append((child, path + (i,), False))
            continue
        kid_attrs = tuple(done.pop(path + (i,)) for i in range(len(kids)))
        done[path] = combine(node, kid_attrs, path)
    return done[()]
