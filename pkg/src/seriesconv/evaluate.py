"""Pointwise evaluation of expressions at integer n.

Domain rules: ``x ** (p/q)`` (lowest terms) needs ``x > 0`` unless ``q`` is
odd, in which case negative ``x`` takes the real odd root; zero to a
non-positive power and division by zero are domain errors.

The fast path evaluates a whole vector of n in float64 while carrying a
running forward-error bound. Points whose sign or domain decision the bound
cannot settle are re-evaluated with exact rational intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .expr import Add, Const, Div, Expr, Mul, Path, Pow, Sub, Var
from .interval import Interval, NegativeEvenRoot, Undecided, ZeroDivision, refine

EPS = float(np.finfo(np.float64).eps)
# multiplier on the running error bound before a float sign is trusted
SAFETY = 8.0
EXACT_MAX_BITS = 2048


class _UndecidedAt(Undecided):
    def __init__(self, path: Path):
        super().__init__(path)
        self.path = path


def _exact(e: Expr, n: int, bits: int, path: Path) -> Interval:
    if isinstance(e, Var):
        return Interval.point(n)
    if isinstance(e, Const):
        return Interval.point(e.value)
    try:
        if isinstance(e, Pow):
            base = _exact(e.base, n, bits, path + (0,))
            return base.power(e.exponent, bits)
        a = _exact(e.children()[0], n, bits, path + (0,))
        b = _exact(e.children()[1], n, bits, path + (1,))
        if isinstance(e, Add):
            return a.add(b, bits)
        if isinstance(e, Sub):
            return a.sub(b, bits)
        if isinstance(e, Mul):
            return a.mul(b, bits)
        return a.div(b, bits)
    except _UndecidedAt:
        raise
    except Undecided as exc:
        raise _UndecidedAt(path) from exc
    except NegativeEvenRoot as exc:
        raise DomainError(n, path, "even root of a negative value") from exc
    except ZeroDivision as exc:
        raise DomainError(n, path, "zero denominator") from exc


def exact_value(e: Expr, n: int, max_bits: int = EXACT_MAX_BITS) -> Interval:
    """Enclosure of ``e(n)``; exact whenever no irrational root is involved.

    A division or root whose argument cannot be separated from zero at the
    precision cap is treated as a domain error at that point.
    """
    try:
        return refine(lambda bits: _exact(e, n, bits, ()), max_bits=max_bits)
    except _UndecidedAt as exc:
        raise DomainError(n, exc.path, "cannot separate argument from zero") from exc


@dataclass
class _Vec:
    v: np.ndarray
    err: np.ndarray
    bad: np.ndarray
    unsure: np.ndarray


def _merge_flags(*kids: _Vec) -> tuple[np.ndarray, np.ndarray]:
    bad = np.logical_or.reduce([k.bad for k in kids])
    unsure = np.logical_or.reduce([k.unsure for k in kids]) & ~bad
    return bad, unsure


def _float_eval(e: Expr, ns: np.ndarray) -> _Vec:
    shape = ns.shape
    if isinstance(e, Var):
        return _Vec(ns.copy(), np.zeros(shape), np.zeros(shape, bool), np.zeros(shape, bool))
    if isinstance(e, Const):
        c = float(e.value)
        return _Vec(
            np.full(shape, c), np.full(shape, abs(c) * EPS), np.zeros(shape, bool), np.zeros(shape, bool)
        )
    if isinstance(e, Pow):
        return _float_pow(_float_eval(e.base, ns), e.exponent)

    a = _float_eval(e.children()[0], ns)
    b = _float_eval(e.children()[1], ns)
    bad, unsure = _merge_flags(a, b)
    if isinstance(e, (Add, Sub)):
        v = a.v + b.v if isinstance(e, Add) else a.v - b.v
        err = a.err + b.err + EPS * np.abs(v)
    elif isinstance(e, Mul):
        v = a.v * b.v
        err = np.abs(a.v) * b.err + np.abs(b.v) * a.err + a.err * b.err + EPS * np.abs(v)
    else:
        margin = np.abs(b.v) - b.err
        unsure = unsure | (np.abs(b.v) <= SAFETY * b.err)
        v = a.v / b.v
        err = (a.err + np.abs(v) * b.err) / margin + EPS * np.abs(v)
    return _Vec(v, err, bad, unsure)


def _float_pow(a: _Vec, alpha: Fraction) -> _Vec:
    p, q = alpha.numerator, alpha.denominator
    bad, unsure = a.bad.copy(), a.unsure.copy()
    mag_a = np.abs(a.v)
    if q == 1 and p >= 0:
        v = a.v**p
        err = (mag_a + a.err) ** p - mag_a**p + p * EPS * np.abs(v)
        return _Vec(v, err, bad, unsure)
    undecided = mag_a <= SAFETY * a.err
    negative = (a.v < 0) & ~undecided
    if q % 2 == 0:
        bad |= negative & ~unsure
    unsure |= undecided & ~bad
    log_a = np.log(mag_a)
    x = float(alpha)
    v = np.exp(x * log_a)
    if p % 2:
        v = np.where(a.v < 0, -v, v)
    rel = a.err / mag_a
    rel_out = (1 + rel) ** x - 1 if x > 0 else (1 - rel) ** x - 1
    err = np.abs(v) * (rel_out + EPS * (2 + np.abs(x * log_a)))
    return _Vec(v, err, bad, unsure)


@dataclass
class PointValues:
    """Values, signs (0 for exact zeros) and definedness at each n."""

    ns: np.ndarray
    values: np.ndarray
    signs: np.ndarray
    defined: np.ndarray


def evaluate_points(e: Expr, ns) -> PointValues:
    ns = np.asarray(ns, dtype=np.int64)
    with np.errstate(all="ignore"):
        r = _float_eval(e, ns.astype(np.float64))
        finite = np.isfinite(r.v) & np.isfinite(r.err)
        sure = finite & (np.abs(r.v) > SAFETY * r.err)
    defined = ~r.bad
    values = np.where(defined, r.v, np.nan)
    signs = np.where(sure, np.sign(r.v), 0).astype(np.int8)
    for i in np.flatnonzero(~r.bad & (r.unsure | ~sure)):
        try:
            iv = exact_value(e, int(ns[i]))
        except DomainError:
            defined[i] = False
            values[i] = np.nan
            continue
        values[i] = iv.mid()
        signs[i] = iv.sign() or 0
    signs[~defined] = 0
    return PointValues(ns, values, signs, defined)
