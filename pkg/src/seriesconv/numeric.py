"""Floating-point oracles that cross-check the symbolic verdicts.

None of these decide anything; they estimate the degree and leading
coefficient from samples of E(n) and check that partial sums behave the way
a series of that degree must.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .analysis import find_domain
from .errors import DomainError, ZeroSample
from .evaluate import evaluate_points, exact_value
from .expr import Add, Expr, Sub, analyze_attributes, walk

CHUNK = 1 << 16

CONSISTENT_CONVERGENT = "consistent-convergent"
CONSISTENT_DIVERGENT = "consistent-divergent"
INCONCLUSIVE = "inconclusive"

# the estimated degree must clear -1 by these margins before the probe
# commits to a hint
CONVERGENT_MARGIN = 0.1
DIVERGENT_MARGIN = 0.02
MAX_PAIR_SPREAD = 0.1


def _raise_domain(e: Expr, n: int):
    # re-run exactly to report the failing node
    exact_value(e, n)
    raise DomainError(n, (), "undefined")


def eval_at(e: Expr, n: int) -> float:
    """E(n) as a float; raises DomainError outside the domain."""
    pv = evaluate_points(e, [n])
    if not pv.defined[0]:
        _raise_domain(e, n)
    return float(pv.values[0])


def power_of_n(r: Fraction, n: int) -> float:
    return math.exp(float(r) * math.log(n))


def partial_sum(e: Expr, start: int, stop: int) -> float:
    """Sum of E(n) for start <= n <= stop, accurately rounded per block."""
    if start > stop:
        raise ValueError("empty range")
    blocks = []
    for lo in range(start, stop + 1, CHUNK):
        pv = evaluate_points(e, np.arange(lo, min(lo + CHUNK, stop + 1), dtype=np.int64))
        if not pv.defined.all():
            _raise_domain(e, int(pv.ns[np.argmin(pv.defined)]))
        blocks.append(math.fsum(pv.values))
    return math.fsum(blocks)


def log_grid(n_lo: int, n_hi: int, points: int) -> np.ndarray:
    return np.unique(np.rint(np.geomspace(n_lo, n_hi, points)).astype(np.int64))


def estimate_degree(e: Expr, n_lo: int, n_hi: int, points: int) -> tuple[float, float]:
    """Least-squares slope of log|E(n)| against log n on a geometric grid.

    Returns ``(slope, rms_residual)``.
    """
    ns = log_grid(n_lo, n_hi, points)
    pv = evaluate_points(e, ns)
    if not pv.defined.all():
        _raise_domain(e, int(ns[np.argmin(pv.defined)]))
    zero = pv.signs == 0
    if zero.any():
        raise ZeroSample(int(ns[np.argmax(zero)]))
    x = np.log(ns.astype(np.float64))
    y = np.log(np.abs(pv.values))
    if len(ns) < 2:
        raise ValueError("need at least two distinct grid points")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(np.sqrt(np.mean(resid**2)))


def estimate_leading_coefficient(e: Expr, r: Fraction, n: int) -> float:
    """E(n) / n**r, which tends to the leading coefficient."""
    return eval_at(e, n) / power_of_n(r, n)


@dataclass
class ProbeReport:
    estimated_degree: float
    degree_residual: float
    estimated_coeff: float
    cutoff_sums: list[tuple[int, float]] = field(default_factory=list)
    verdict_hint: str = INCONCLUSIVE
    start: int = 1

    @property
    def deltas(self) -> list[float]:
        """Increments of the partial sum between successive cutoffs."""
        sums = [s for _, s in self.cutoff_sums]
        return [b - a for a, b in zip(sums, sums[1:])]


def _block_integral(s: float, a: float, b: float) -> float:
    """Integral of x**(s-1) over [a, b], stable near s = 0."""
    la = math.log(a)
    d = math.log(b) - la
    if abs(s * d) < 1e-12:
        return d
    return math.exp(s * la) * math.expm1(s * d) / s


def _solve_exponent(ratio: float, edges: Sequence[float]) -> float:
    """Exponent s with block2/block1 = ratio for a pure power x**(s-1)."""
    a, b, c = edges

    def f(s):
        return math.log(_block_integral(s, b, c)) - math.log(_block_integral(s, a, b)) - math.log(ratio)

    lo, hi = -30.0, 30.0
    if f(lo) > 0:
        return lo
    if f(hi) < 0:
        return hi
    return brentq(f, lo, hi, xtol=1e-12)


def convergence_probe(
    e: Expr, cutoffs: Sequence[int], start: Union[int, None] = None
) -> ProbeReport:
    """Partial sums from the sign-stable point up to each cutoff.

    The block sums between successive cutoffs are matched against the
    integral of c * x**r over the same blocks to estimate r; the hint commits
    to convergent or divergent only when that estimate clears -1 by a margin.
    Cutoffs at or below the starting index are skipped.
    """
    if list(cutoffs) != sorted(set(cutoffs)):
        raise ValueError("cutoffs must be strictly increasing")
    if start is None:
        start = find_domain(e).n_sign_stable
    cuts = [int(c) for c in cutoffs if c > start]
    sums, total, lo = [], 0.0, start
    partials: list[float] = []
    for c in cuts:
        partials.append(partial_sum(e, lo, c))
        total = math.fsum(partials)
        sums.append((c, total))
        lo = c + 1

    report = ProbeReport(math.nan, math.nan, math.nan, sums, INCONCLUSIVE, start)
    blocks = partials[1:]
    if len(blocks) < 2 or any(b == 0 for b in blocks):
        return report
    if len({math.copysign(1.0, b) for b in blocks}) != 1:
        return report
    # midpoint-rule edges: the sum over (c0, c1] integrates over [c0+1/2, c1+1/2]
    edges = [c + 0.5 for c in cuts]
    estimates = [
        _solve_exponent(blocks[i + 1] / blocks[i], edges[i : i + 3]) for i in range(len(blocks) - 1)
    ]
    s = float(np.mean(estimates))
    report.estimated_degree = s - 1
    report.degree_residual = float(np.sqrt(np.mean((np.array(estimates) - s) ** 2)))
    report.estimated_coeff = blocks[-1] / _block_integral(s, edges[-2], edges[-1])
    if report.degree_residual > MAX_PAIR_SPREAD:
        return report
    if report.estimated_degree < -1 - CONVERGENT_MARGIN:
        report.verdict_hint = CONSISTENT_CONVERGENT
    elif report.estimated_degree > -1 - DIVERGENT_MARGIN:
        report.verdict_hint = CONSISTENT_DIVERGENT
    return report


def smallest_degree_gap(e: Expr) -> Union[Fraction, None]:
    """Smallest nonzero degree difference across the sum and difference
    nodes of ``e``; None when no node mixes degrees.

    Subdominant terms fade like n**-gap, so this sets how far out the
    oracles must look before they can be held to tight tolerances.
    """
    gaps = []
    for node in walk(e):
        if isinstance(node, (Add, Sub)):
            a, b = (analyze_attributes(k) for k in node.children())
            if a.status.is_member and b.status.is_member and a.degree != b.degree:
                gaps.append(abs(a.degree - b.degree))
    return min(gaps) if gaps else None
