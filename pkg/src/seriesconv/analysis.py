"""Convergence verdicts and the eventual-sign search.

For a family member of degree r the series of E(n) converges absolutely when
r < -1 and diverges otherwise; the comparison is exact rational arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import IndeterminateSign, WindowNotFound
from .evaluate import evaluate_points
from .expr import Attributes, Expr, Kind, MembershipStatus, analyze_attributes

DEFAULT_WINDOW = 64
DEFAULT_N_MAX = 10**7

_MIN_CHUNK = 1 << 10
_MAX_CHUNK = 1 << 17


class Verdict(enum.Enum):
    ABSOLUTELY_CONVERGENT = "absolutely-convergent"
    DIVERGENT = "divergent"
    ZERO_SERIES = "zero-series"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    degree: Union[Fraction, None] = None
    coeff_sign: Union[int, None] = None
    reason: Union[MembershipStatus, None] = None


def classify_attributes(attrs: Attributes) -> Classification:
    status = attrs.status
    if status.kind is Kind.ZERO_CONSTANT:
        return Classification(Verdict.ZERO_SERIES)
    if not status.is_member:
        return Classification(Verdict.NOT_APPLICABLE, reason=status)
    verdict = Verdict.ABSOLUTELY_CONVERGENT if attrs.degree < -1 else Verdict.DIVERGENT
    try:
        sign = attrs.coeff.sign()
    except IndeterminateSign:
        sign = None
    return Classification(verdict, attrs.degree, sign)


def classify(e: Expr) -> Classification:
    return classify_attributes(analyze_attributes(e))


def classify_radical_quotient(q: int, k: int, s: int, h: int) -> Classification:
    """Verdict for the k-th root of a degree-q polynomial over the h-th root
    of a degree-s polynomial (positive leading coefficients)."""
    if k < 1 or h < 1:
        raise ValueError("root orders must be positive")
    if q < 0 or s < 0:
        raise ValueError("polynomial degrees must be non-negative")
    degree = Fraction(q, k) - Fraction(s, h)
    verdict = Verdict.ABSOLUTELY_CONVERGENT if -degree > 1 else Verdict.DIVERGENT
    return Classification(verdict, degree, 1)


def classify_reciprocal_polynomial(s: int) -> Classification:
    return classify_radical_quotient(0, 1, s, 1)


@dataclass(frozen=True)
class DomainReport:
    n_defined: int
    n_sign_stable: int
    window: int
    sign: int
    certified: bool = False


class _RunTracker:
    """Finds the first n starting a run of ``length`` consecutive good points."""

    def __init__(self, length: int):
        self.length = length
        self.run_start: Union[int, None] = None
        self.found: Union[int, None] = None

    def feed(self, ns: np.ndarray, good: np.ndarray) -> None:
        if self.found is not None:
            return
        idx = np.arange(len(ns))
        # index of the most recent bad point at or before each position
        last_bad = np.maximum.accumulate(np.where(good, -1, idx))
        starts = np.where(last_bad >= 0, ns[np.clip(last_bad, 0, None)] + 1, -1)
        if self.run_start is not None:
            starts = np.where(last_bad < 0, self.run_start, starts)
        else:
            starts = np.where(last_bad < 0, ns[0], starts)
        lengths = ns - starts + 1
        hits = np.flatnonzero(good & (lengths >= self.length))
        if hits.size:
            self.found = int(starts[hits[0]])
            return
        self.run_start = int(starts[-1]) if good[-1] else None


def _scan(e: Expr, start: int, n_max: int, window: int, good) -> int:
    """First n in [start, n_max] opening ``window + 1`` consecutive points
    where ``good(point_values)`` holds."""
    run = _RunTracker(window + 1)
    lo, chunk, last = start, _MIN_CHUNK, n_max + window
    while lo <= last and run.found is None:
        hi = min(lo + chunk, last + 1)
        pv = evaluate_points(e, np.arange(lo, hi, dtype=np.int64))
        run.feed(pv.ns, good(pv))
        lo, chunk = hi, min(2 * chunk, _MAX_CHUNK)
    if run.found is None or run.found > n_max:
        raise WindowNotFound
    return run.found


def _stable_from(e: Expr, start: int, n_max: int, window: int) -> int:
    """Sign-stable index of ``e``, scanning from past the sign-stable indices
    of its subexpressions. A subexpression that does not settle below
    ``n_max`` imposes no bound."""
    kids = e.children()
    if not kids:
        return start
    attrs = analyze_attributes(e)
    if attrs.status.kind is Kind.ZERO_CONSTANT:
        return start
    begin = start
    for k in kids:
        try:
            begin = max(begin, _stable_from(k, start, n_max, window))
        except WindowNotFound:
            pass
    sign = attrs.coeff.sign()
    return _scan(e, begin, n_max, window, lambda pv: pv.signs == sign)


def find_domain(
    e: Expr,
    n_start: int = 1,
    n_max: int = DEFAULT_N_MAX,
    window: int = DEFAULT_WINDOW,
    attrs: Union[Attributes, None] = None,
) -> DomainReport:
    """Scan upward for where ``e`` is defined and has its eventual sign.

    ``n_defined`` is the first n with every point of ``[n, n + window]``
    defined. ``n_sign_stable`` is the first n, past the sign-stable indices
    of every subexpression, whose window carries the sign of the leading
    coefficient throughout; starting past the subexpressions keeps poles and
    domain edges deep in the tree from hiding behind a short window.
    Heuristic: never certified.
    """
    if n_start < 1 or n_start > n_max:
        raise ValueError("need 1 <= n_start <= n_max")
    attrs = attrs or analyze_attributes(e)
    if attrs.status.kind is Kind.ZERO_CONSTANT:
        return DomainReport(n_start, n_start, window, 0)
    if not attrs.status.is_member:
        raise ValueError(f"find_domain needs a family member, got {attrs.status.describe()}")
    sign = attrs.coeff.sign()
    try:
        n_defined = _scan(e, n_start, n_max, window, lambda pv: pv.defined)
    except WindowNotFound:
        raise WindowNotFound(f"no defined window of {window + 1} points starting at or below n = {n_max}") from None
    try:
        n_stable = _stable_from(e, n_start, n_max, window)
    except WindowNotFound:
        raise WindowNotFound(f"no sign-stable window of {window + 1} points starting at or below n = {n_max}") from None
    return DomainReport(n_defined, n_stable, window, sign)
