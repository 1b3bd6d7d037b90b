"""Seeded random family members for property tests.

Trees are grown bottom-up; any node whose draw leaves the family (a
cancellation, an indeterminate power), breaks the degree bounds, or violates
the minimum degree gap is redrawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import RetryBudgetExhausted
from .expr import (
    Add,
    Attributes,
    Const,
    Div,
    Expr,
    Kind,
    Mul,
    Pow,
    Sub,
    Var,
    analyze_attributes,
    combine,
    leaf_attributes,
)

_OPERATORS = (Mul, Div, Pow, Add, Sub)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_depth: int = 5
    constant_range: tuple[Fraction, Fraction] = (Fraction(-100), Fraction(100))
    constant_denominator_max: int = 10
    exponent_denominator_max: int = 6
    exponent_max: Fraction = Fraction(3)
    min_degree_gap: Fraction = Fraction(0)
    degree_bounds: tuple[Fraction, Fraction] = (Fraction(-3), Fraction(3))
    leaf_probability: float = 0.3
    dominance_from: Union[int, None] = None
    dominance_ratio: Fraction = Fraction(1, 10)
    retry_budget: int = 1000

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        lo, hi = self.degree_bounds
        if lo > hi:
            raise ValueError("degree_bounds is empty")
        if self.constant_range[0] > self.constant_range[1]:
            raise ValueError("constant_range is empty")


class _Builder:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng

    def constant(self, positive: bool = False) -> Fraction:
        lo, hi = self.cfg.constant_range
        if positive:
            lo = max(lo, Fraction(0))
        rng = self.rng
        while True:
            den = rng.randint(1, self.cfg.constant_denominator_max)
            num = rng.randint(int(lo * den), int(hi * den))
            value = Fraction(num, den)
            if value > 0 or (value and not positive):
                return value

    def exponent(self) -> Fraction:
        rng = self.rng
        den = rng.randint(1, self.cfg.exponent_denominator_max)
        top = int(self.cfg.exponent_max * den)
        while True:
            num = rng.randint(-top, top)
            if num:
                return Fraction(num, den)

    def leaf(self) -> tuple[Expr, Attributes]:
        e = Var() if self.rng.random() < 0.5 else Const(self.constant())
        return e, leaf_attributes(e)

    def accept(self, e: Expr, attrs: Attributes, kids: tuple[Attributes, ...], root: bool) -> bool:
        if attrs.status.kind is not Kind.MEMBER:
            return False
        lo, hi = self.cfg.degree_bounds
        if not root:
            # inner nodes only need to stay in the symmetric hull of the bounds
            hi = max(abs(lo), abs(hi), Fraction(1))
            lo = -hi
        if not lo <= attrs.degree <= hi:
            return False
        if isinstance(e, (Add, Sub)) and kids[0].status.is_member and kids[1].status.is_member:
            a, b = kids
            gap = abs(a.degree - b.degree)
            if self.cfg.min_degree_gap and gap < self.cfg.min_degree_gap:
                return False
            n0 = self.cfg.dominance_from
            if n0 and gap:
                hi, lo = (a, b) if a.degree > b.degree else (b, a)
                ratio = abs(float(lo.coeff) / float(hi.coeff)) * n0 ** -float(gap)
                if ratio > self.cfg.dominance_ratio:
                    return False
        return True

    def node(self, depth: int, root: bool = False) -> tuple[Expr, Attributes]:
        rng = self.rng
        for _ in range(self.cfg.retry_budget):
            if depth == 0 or rng.random() < self.cfg.leaf_probability:
                e, attrs = self.leaf()
                if self.accept(e, attrs, (), root):
                    return e, attrs
                continue
            op = rng.choice(_OPERATORS)
            if op is Pow:
                base, battrs = self.node(depth - 1)
                e = Pow(base, self.exponent())
                kids = (battrs,)
            else:
                left, lattrs = self.node(depth - 1)
                right, rattrs = self.node(depth - 1)
                e = op(left, right)
                kids = (lattrs, rattrs)
            attrs = combine(e, kids)
            if self.accept(e, attrs, kids, root):
                return e, attrs
        raise RetryBudgetExhausted(
            f"no acceptable node after {self.cfg.retry_budget} draws at depth {depth}"
        )


def generate_member(cfg: GenConfig) -> Expr:
    """A random family member, deterministic in ``cfg``."""
    e, _ = _Builder(cfg, random.Random(cfg.seed)).node(cfg.max_depth, root=True)
    return e


def random_polynomial(builder: _Builder, degree: int, monic: bool = False) -> Expr:
    """Horner form with a positive leading coefficient; zero coefficients are
    left out."""
    lead = Fraction(1) if monic else builder.constant(positive=True)
    if degree == 0:
        return Const(lead)
    e: Expr = Var() if lead == 1 else Mul(Const(lead), Var())
    for i in range(degree - 1, -1, -1):
        if builder.rng.random() < 0.8:
            e = Add(e, Const(builder.constant()))
        if i:
            e = Mul(e, Var())
    return e


def generate_radical_quotient(
    cfg: GenConfig, q: int, k: int, s: int, h: int, monic: bool = False
) -> Expr:
    """k-th root of a random degree-q polynomial over the h-th root of a
    random degree-s polynomial."""
    if k < 1 or h < 1:
        raise ValueError("root orders must be positive")
    if q < 0 or s < 0:
        raise ValueError("polynomial degrees must be non-negative")
    builder = _Builder(cfg, random.Random(cfg.seed))
    for _ in range(cfg.retry_budget):
        numer = random_polynomial(builder, q, monic)
        denom = random_polynomial(builder, s, monic)
        e = Div(Pow(numer, Fraction(1, k)), Pow(denom, Fraction(1, h)))
        if analyze_attributes(e).status.is_member:
            return e
    raise RetryBudgetExhausted("could not build a member radical quotient")
