"""Outward-rounded intervals with exact rational endpoints.

Degenerate intervals carry exact rationals and never lose precision, so
expressions that are exactly zero produce the interval ``[0, 0]``. Only
irrational quantities (roots that are not perfect powers) produce proper
intervals; those are rounded outward to a relative precision of ``bits``
bits after every operation to keep the endpoints small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot


class Undecided(ArithmeticError):
    """An operation needs the sign of an interval that still contains zero."""


class NegativeEvenRoot(ArithmeticError):
    """A root of even order was taken of a certainly-negative value."""


class ZeroDivision(ArithmeticError):
    """Division by (or a negative power of) an exact zero."""


def _round_down(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return x
    # exponent estimate within one of floor(log2 |x|)
    e = abs(x.numerator).bit_length() - x.denominator.bit_length()
    k = bits - e
    if k >= 0:
        return Fraction((x.numerator << k) // x.denominator, 1 << k)
    return Fraction(x.numerator // (x.denominator << -k) << -k)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return -_round_down(-x, bits)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int | None:
        """+1 or -1 when zero is excluded, 0 for the exact zero, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def rounded(self, bits: int) -> "Interval":
        if self.exact:
            return self
        return Interval(_round_down(self.lo, bits), _round_up(self.hi, bits))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def add(self, other: "Interval", bits: int) -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi).rounded(bits)

    def sub(self, other: "Interval", bits: int) -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo).rounded(bits)

    def mul(self, other: "Interval", bits: int) -> "Interval":
        if self.exact and other.exact:
            return Interval.point(self.lo * other.lo)
        c = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(c), max(c)).rounded(bits)

    def reciprocal(self, bits: int) -> "Interval":
        if self.exact:
            if self.lo == 0:
                raise ZeroDivision("division by exact zero")
            return Interval.point(1 / self.lo)
        if self.contains_zero():
            raise Undecided("denominator interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo).rounded(bits)

    def div(self, other: "Interval", bits: int) -> "Interval":
        return self.mul(other.reciprocal(bits), bits)

    def power(self, exponent: Fraction, bits: int) -> "Interval":
        """Real power with odd roots of negatives allowed."""
        p, q = exponent.numerator, exponent.denominator
        if self.exact:
            return _exact_power(self.lo, p, q, bits)
        if q == 1 and p >= 0:
            return _integer_power(self, p, bits)
        if self.lo > 0:
            return _positive_power(self.lo, self.hi, p, q, bits)
        if self.hi < 0:
            if q % 2 == 0:
                raise NegativeEvenRoot("even root of a negative value")
            mag = _positive_power(-self.hi, -self.lo, p, q, bits)
            return -mag if p % 2 else mag
        raise Undecided("power base interval contains zero")


def root_bounds(x: Fraction, q: int, bits: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds for the positive q-th root of ``x > 0``.

    The bounds coincide when the root is rational.
    """
    a, b = x.numerator, x.denominator
    ra, ea = integer_nthroot(a, q)
    if ea:
        rb, eb = integer_nthroot(b, q)
        if eb:
            r = Fraction(ra, rb)
            return r, r
    m = a * b ** (q - 1)
    s = max(0, bits - m.bit_length() // q + 2)
    r, _ = integer_nthroot(m << (q * s), q)
    den = b << s
    return Fraction(r, den), Fraction(r + 1, den)


def _exact_power(x: Fraction, p: int, q: int, bits: int) -> Interval:
    if x == 0:
        if p > 0:
            return Interval.point(0)
        raise ZeroDivision("non-positive power of zero")
    if x < 0:
        if q % 2 == 0:
            raise NegativeEvenRoot("even root of a negative value")
        mag = _exact_power(-x, p, q, bits)
        return -mag if p % 2 else mag
    y = x ** p
    if q == 1:
        return Interval.point(y)
    lo, hi = root_bounds(y, q, bits)
    return Interval(lo, hi).rounded(bits)


def _positive_power(lo: Fraction, hi: Fraction, p: int, q: int, bits: int) -> Interval:
    if p < 0:
        lo, hi = hi, lo
    a, _ = root_bounds(lo ** p, q, bits)
    _, b = root_bounds(hi ** p, q, bits)
    return Interval(a, b).rounded(bits)


def _integer_power(iv: Interval, p: int, bits: int) -> Interval:
    if p == 0:
        return Interval.point(1)
    ends = (iv.lo ** p, iv.hi ** p)
    if iv.contains_zero() and p % 2 == 0:
        return Interval(Fraction(0), max(ends)).rounded(bits)
    return Interval(min(ends), max(ends)).rounded(bits)


def refine(compute, start_bits: int = 64, max_bits: int = 4096):
    """Call ``compute(bits)`` with doubling precision until it stops raising
    :class:`Undecided`. Re-raises the last failure at the cap."""
    bits = start_bits
    while True:
        try:
            return compute(bits)
        except Undecided:
            if bits >= max_bits:
                raise
            bits = min(2 * bits, max_bits)

