"""The nine acceptance criteria, each at its stated tolerance and budget.

Every test records one [PASS]/[FAIL] line that pytest prints in the
"acceptance criteria" section of its terminal summary.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from seriesconv import (
    Coefficient,
    GenConfig,
    Kind,
    OutsideReason,
    Verdict,
    WindowNotFound,
    analyze_attributes,
    classify,
    classify_radical_quotient,
    convergence_probe,
    estimate_degree,
    estimate_leading_coefficient,
    find_domain,
    format_expr,
    generate_member,
    generate_radical_quotient,
    parse,
)
from seriesconv.analysis import DEFAULT_N_MAX, DEFAULT_WINDOW
from seriesconv.evaluate import evaluate_points
from seriesconv.numeric import CONSISTENT_CONVERGENT, CONSISTENT_DIVERGENT

from conftest import WORKED_EXAMPLE, TIGHT

pytestmark = pytest.mark.acceptance

F = Fraction


def test_c1_golden_example(acceptance_report):
    t0 = time.perf_counter()
    e = parse(WORKED_EXAMPLE)
    attrs = analyze_attributes(e)
    cls = classify(e)
    elapsed = time.perf_counter() - t0
    ok = (
        attrs.status.kind is Kind.MEMBER
        and attrs.degree == F(13, 30)
        and attrs.coeff == Coefficient.rational(1)
        and cls.verdict is Verdict.DIVERGENT
        and elapsed < 1.0
    )
    acceptance_report(
        "C1 golden example",
        ok,
        f"{attrs.status.describe()}, degree {attrs.degree}, coeff {attrs.coeff}, "
        f"{cls.verdict.value}, {elapsed:.3f}s",
    )
    assert ok


def test_c2_application_equivalence(acceptance_report):
    rng = random.Random(12345)
    t0 = time.perf_counter()
    disagreements = []
    for i in range(1000):
        q, k, s, h = rng.randint(0, 6), rng.randint(1, 5), rng.randint(0, 6), rng.randint(1, 5)
        e = generate_radical_quotient(GenConfig(seed=i), q, k, s, h)
        got, want = classify(e), classify_radical_quotient(q, k, s, h)
        if (got.verdict, got.degree) != (want.verdict, want.degree):
            disagreements.append((i, q, k, s, h))
    elapsed = time.perf_counter() - t0
    ok = not disagreements and elapsed < 30
    acceptance_report(
        "C2 application equivalence",
        ok,
        f"{len(disagreements)} disagreements in 1000, {elapsed:.1f}s",
    )
    assert not disagreements, disagreements[:5]
    assert elapsed < 30


@pytest.fixture(scope="module")
def gap_population():
    t0 = time.perf_counter()
    members = [generate_member(GenConfig(seed=s, **TIGHT)) for s in range(200)]
    return members, time.perf_counter() - t0


def test_c3_degree_oracle(gap_population, acceptance_report):
    members, gen_time = gap_population
    t0 = time.perf_counter()
    errors = []
    for e in members:
        r = analyze_attributes(e).degree
        assert F(-3) <= r <= 3
        slope, _ = estimate_degree(e, 10**4, 10**7, 16)
        errors.append(abs(slope - float(r)))
    elapsed = gen_time + time.perf_counter() - t0
    errors = np.array(errors)
    within = float(np.mean(errors <= 0.05))
    ok = within >= 0.95 and errors.max() <= 0.2 and elapsed < 60
    acceptance_report(
        "C3 degree oracle",
        ok,
        f"{within:.1%} within 0.05, max error {errors.max():.4f}, {elapsed:.1f}s",
    )
    assert within >= 0.95
    assert errors.max() <= 0.2
    assert elapsed < 60


def test_c4_coefficient_oracle(gap_population, acceptance_report):
    members, _ = gap_population
    rel = []
    for e in members:
        attrs = analyze_attributes(e)
        c = float(attrs.coeff)
        est = estimate_leading_coefficient(e, attrs.degree, 10**8)
        rel.append(abs(est - c) / abs(c))
    rel = np.array(rel)
    within = float(np.mean(rel <= 0.01))
    acceptance_report(
        "C4 coefficient oracle",
        within >= 0.95,
        f"{within:.1%} within 1% at n = 1e8, median rel error {np.median(rel):.1e}",
    )
    assert within >= 0.95


def test_c5_sign_stability(acceptance_report):
    violations, unsettled, checked = [], [], 0
    for seed in range(500):
        e = generate_member(GenConfig(seed=seed))
        sign = analyze_attributes(e).coeff.sign()
        try:
            report = find_domain(e)
        except WindowNotFound:
            # must be genuinely unsettled at the search limit, not a missed window
            pv = evaluate_points(e, np.arange(DEFAULT_N_MAX, DEFAULT_N_MAX + DEFAULT_WINDOW + 1))
            assert not (pv.defined.all() and (pv.signs == sign).all()), seed
            unsettled.append(seed)
            continue
        checked += 1
        ns = np.arange(report.n_sign_stable, report.n_sign_stable + 10**4 + 1, dtype=np.int64)
        pv = evaluate_points(e, ns)
        if not (pv.defined.all() and (pv.signs == sign).all()):
            violations.append(seed)
    acceptance_report(
        "C5 sign stability",
        not violations,
        f"{len(violations)} violations over {checked} members; "
        f"{len(unsettled)} not settled below n = 1e7 (seeds {unsettled})",
    )
    assert not violations, violations


def _probe_members(bounds, count):
    members, seed = [], 0
    while len(members) < count:
        members.append(generate_member(GenConfig(seed=seed, degree_bounds=bounds, **TIGHT)))
        seed += 1
    return members


def test_c6_probe_consistency(acceptance_report):
    convergent = _probe_members((F(-3), F(-6, 5)), 100)
    divergent = _probe_members((F(-4, 5), F(3)), 100)
    contradictions, ratio_failures, worst = [], [], 0.0
    for expect_convergent, members in ((True, convergent), (False, divergent)):
        for i, e in enumerate(members):
            attrs = analyze_attributes(e)
            assert (attrs.degree < -1) == expect_convergent
            start = find_domain(e).n_sign_stable
            n0 = max(10**4, 2 * start)
            cutoffs = [n0 * 2**j for j in range(5)]
            probe = convergence_probe(e, cutoffs, start=start)
            hint = probe.verdict_hint
            if (hint == CONSISTENT_CONVERGENT and not expect_convergent) or (
                hint == CONSISTENT_DIVERGENT and expect_convergent
            ):
                contradictions.append(format_expr(e))
            if expect_convergent:
                target = 2.0 ** (float(attrs.degree) + 1)
                deltas = probe.deltas
                for a, b in zip(deltas, deltas[1:]):
                    dev = abs(b / a / target - 1)
                    worst = max(worst, dev)
                    if dev > 0.25:
                        ratio_failures.append((i, b / a, target))
    ok = not contradictions and not ratio_failures
    acceptance_report(
        "C6 probe consistency",
        ok,
        f"{len(contradictions)} contradicting hints in 200, {len(ratio_failures)} delta ratios "
        f"outside 25% (worst deviation {worst:.1%})",
    )
    assert not contradictions, contradictions[:3]
    assert not ratio_failures, ratio_failures[:3]


def test_c7_harmonic_boundary(acceptance_report):
    e = parse("1/n")
    cls = classify(e)
    probe = convergence_probe(e, [10**3, 10**4, 10**5, 10**6], start=1)
    devs = [abs(d / math.log(10) - 1) for d in probe.deltas]
    ok = cls.verdict is Verdict.DIVERGENT and cls.degree == -1 and max(devs) <= 0.02
    acceptance_report(
        "C7 harmonic boundary",
        ok,
        f"{cls.verdict.value}, decade deltas {', '.join(f'{d:.5f}' for d in probe.deltas)} "
        f"vs ln 10 = {math.log(10):.5f}",
    )
    assert cls.verdict is Verdict.DIVERGENT
    assert max(devs) <= 0.02


C8_CASES = [
    ("n - n", Kind.OUTSIDE, OutsideReason.SUBTRACTIVE_CANCELLATION, None),
    ("(n+1) - n", Kind.OUTSIDE, OutsideReason.SUBTRACTIVE_CANCELLATION, None),
    ("sqrt(n) - root(2, n)", Kind.OUTSIDE, OutsideReason.SUBTRACTIVE_CANCELLATION, None),
    ("(1 + n^(1/2))^(1/2)", Kind.INDETERMINATE, None, ()),
]


def test_c8_membership_negatives(acceptance_report):
    results = []
    for text, kind, reason, location in C8_CASES:
        status = analyze_attributes(parse(text)).status
        ok = status.kind is kind and status.reason is reason
        if location is not None:
            ok = ok and status.location == location
        results.append((text, ok, status.describe()))
    bad = [(t, got) for t, ok, got in results if not ok]
    acceptance_report(
        "C8 membership negatives",
        not bad,
        "; ".join(f"{t!r} -> {got}" for t, _, got in results),
    )
    assert not bad, bad


def test_c8_multi_term_fractional_power_is_indeterminate():
    # a base whose leading coefficient really is a multi-term radical sum
    status = analyze_attributes(parse("(1 + 2^(1/2))^(1/2)")).status
    assert status.kind is Kind.INDETERMINATE
    assert status.location == ()


def test_c9_round_trip(member_population, acceptance_report):
    failures = [i for i, e in enumerate(member_population) if parse(format_expr(e)) != e]
    acceptance_report(
        "C9 parser round trip",
        not failures,
        f"{len(failures)} failures over {len(member_population)} members",
    )
    assert not failures
