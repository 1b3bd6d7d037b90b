"""Exact leading coefficients: rational combinations of prime radicals.

A coefficient is a finite sum ``sum_i c_i * prod_p p**e_ip`` with rational
``c_i``, primes ``p`` and exponents ``0 < e_ip < 1``. Integer parts of the
exponents are always folded into ``c_i``, and terms with the same radical are
merged. Distinct radicals of this shape are linearly independent over the
rationals, so a coefficient is zero exactly when it has no terms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from sympy import QQ, factorint
from sympy.polys.matrices import DomainMatrix

from .errors import CoefficientTooComplex, IndeterminateSign
from .interval import Interval, Undecided, refine, root_bounds

Radical = tuple[tuple[int, Fraction], ...]

# dimension cap for inverting a multi-term coefficient by linear algebra
MAX_INVERSE_DIMENSION = 128
SIGN_MAX_BITS = 1 << 14


class ZeroTest(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INDETERMINATE = "indeterminate"


@lru_cache(maxsize=4096)
def _factor(m: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(m).items()))


def _monomial(c: Fraction, exps: Mapping[int, Fraction]) -> tuple[Fraction, Radical]:
    """Fold integer parts of the prime exponents into ``c``."""
    rad = []
    for p in sorted(exps):
        e = exps[p]
        k = math.floor(e)
        if k:
            c *= Fraction(p) ** k
        f = e - k
        if f:
            rad.append((p, f))
    return c, tuple(rad)


@dataclass(frozen=True)
class Coefficient:
    terms: tuple[tuple[Radical, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Radical, Fraction]]) -> "Coefficient":
        acc: dict[Radical, Fraction] = {}
        for rad, c in items:
            acc[rad] = acc.get(rad, Fraction(0)) + c
        return cls(tuple(sorted((r, c) for r, c in acc.items() if c != 0)))

    @classmethod
    def rational(cls, value) -> "Coefficient":
        value = Fraction(value)
        return cls((((), value),)) if value else cls()

    @classmethod
    def radical(cls, base: int, exponent) -> "Coefficient":
        """``base ** exponent`` for a positive integer base, normalized."""
        return cls.rational(base).pow(Fraction(exponent))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(not rad for rad, _ in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms[0][1] if self.terms else Fraction(0)

    def normalized(self) -> "Coefficient":
        exps_terms = []
        for rad, c in self.terms:
            exps_terms.append(_monomial(c, dict(rad))[::-1])
        return Coefficient.from_terms(exps_terms)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "Coefficient":
        return Coefficient(tuple((r, -c) for r, c in self.terms))

    def __add__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient.from_terms(self.terms + other.terms)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        out = []
        for r1, c1 in self.terms:
            for r2, c2 in other.terms:
                exps = dict(r1)
                for p, e in r2:
                    exps[p] = exps.get(p, Fraction(0)) + e
                c, rad = _monomial(c1 * c2, exps)
                out.append((rad, c))
        return Coefficient.from_terms(out)

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        return self * other.inverse()

    def inverse(self) -> "Coefficient":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero coefficient")
        if len(self.terms) == 1:
            rad, c = self.terms[0]
            inv_c, inv_rad = _monomial(1 / c, {p: -e for p, e in rad})
            return Coefficient(((inv_rad, inv_c),))
        return self._inverse_by_linear_algebra()

    def _inverse_by_linear_algebra(self) -> "Coefficient":
        # The radicals with exponents in (1/D_p)Z span a field containing
        # self; solve self * x = 1 in that basis.
        dens: dict[int, int] = {}
        for rad, _ in self.terms:
            for p, e in rad:
                dens[p] = math.lcm(dens.get(p, 1), e.denominator)
        primes = sorted(dens)
        dim = math.prod(dens.values())
        if dim > MAX_INVERSE_DIMENSION:
            raise CoefficientTooComplex(f"inverting {self} needs a {dim}-dimensional basis")

        basis: list[Radical] = [()]
        for p in primes:
            basis = [
                b + (((p, Fraction(j, dens[p])),) if j else ())
                for b in basis
                for j in range(dens[p])
            ]
        index = {b: i for i, b in enumerate(basis)}

        rows = [[QQ(0)] * dim for _ in range(dim)]
        for j, b in enumerate(basis):
            column = self * Coefficient(((b, Fraction(1)),))
            for rad, c in column.terms:
                rows[index[rad]][j] = QQ(c.numerator, c.denominator)
        rhs = [[QQ(1 if i == 0 else 0)] for i in range(dim)]
        sol = DomainMatrix(rows, (dim, dim), QQ).lu_solve(DomainMatrix(rhs, (dim, 1), QQ))
        values = sol.to_Matrix()
        return Coefficient.from_terms(
            (b, Fraction(int(v.p), int(v.q))) for b, v in zip(basis, values)
        )

    def pow(self, exponent) -> "Coefficient":
        """Exact power.

        Integer exponents are always supported (negative ones need a nonzero
        value). Fractional exponents need a single term; a negative single
        term is accepted only for odd-order roots.
        """
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            k = exponent.numerator
            base = self.inverse() if k < 0 else self
            result = Coefficient.rational(1)
            k = abs(k)
            while k:
                if k & 1:
                    result = result * base
                base = base * base
                k >>= 1
            return result
        if len(self.terms) != 1:
            if not self.terms:
                if exponent > 0:
                    return Coefficient()
                raise ZeroDivisionError("non-positive power of zero coefficient")
            raise CoefficientTooComplex(f"fractional power of multi-term coefficient {self}")
        rad, c = self.terms[0]
        sign = 1
        if c < 0:
            if exponent.denominator % 2 == 0:
                raise ValueError(f"even root of negative coefficient {self}")
            c = -c
            sign = -1 if exponent.numerator % 2 else 1
        exps: dict[int, Fraction] = {p: e * exponent for p, e in rad}
        for p, k in _factor(c.numerator):
            exps[p] = exps.get(p, Fraction(0)) + k * exponent
        for p, k in _factor(c.denominator):
            exps[p] = exps.get(p, Fraction(0)) - k * exponent
        new_c, new_rad = _monomial(Fraction(sign), exps)
        return Coefficient(((new_rad, new_c),))

    # -- evaluation --------------------------------------------------------

    def interval(self, bits: int = 64) -> Interval:
        """Enclosure of the value at roughly ``bits`` bits of precision."""
        total = Interval.point(0)
        for rad, c in self.terms:
            term = Interval.point(c)
            for p, e in rad:
                lo, hi = root_bounds(Fraction(p) ** e.numerator, e.denominator, bits)
                term = term.mul(Interval(lo, hi), bits)
            total = total.add(term, bits)
        return total

    def sign(self) -> int:
        """+1 or -1, by interval refinement. Raises on the zero coefficient."""
        if not self.terms:
            raise ValueError("sign of zero coefficient")

        def attempt(bits: int) -> int:
            s = self.interval(bits).sign()
            if not s:
                raise Undecided(str(self))
            return s

        try:
            return refine(attempt, max_bits=SIGN_MAX_BITS)
        except Undecided as exc:
            raise IndeterminateSign(f"cannot certify the sign of {self}") from exc

    def __float__(self) -> float:
        return self.interval(96).mid()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for rad, c in self.terms:
            factors = [f"{p}^({e})" for p, e in rad]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        text = ("-" if sign0 == "-" else "") + body0
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text


def coefficient_is_zero(c: Coefficient) -> ZeroTest:
    """Tri-state zero test on a canonical coefficient.

    INDETERMINATE is unreachable while the canonical form holds.
    """
    return ZeroTest.ZERO if c.is_zero() else ZeroTest.NONZERO
