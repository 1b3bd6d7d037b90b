from collections import Counter
from fractions import Fraction

import pytest

from seriesconv import (
    Const,
    GenConfig,
    Kind,
    RetryBudgetExhausted,
    Var,
    analyze_attributes,
    format_expr,
    generate_member,
    generate_radical_quotient,
)
from seriesconv.expr import walk
from seriesconv.numeric import smallest_degree_gap

F = Fraction


@pytest.mark.parametrize("seed", range(50))
def test_depth_zero_is_a_leaf(seed):
    e = generate_member(GenConfig(seed=seed, max_depth=0))
    assert isinstance(e, (Const, Var))


def test_seed_42_is_deterministic():
    cfg = GenConfig(seed=42)
    first = generate_member(cfg)
    assert generate_member(cfg) == first
    assert format_expr(generate_member(GenConfig(seed=42))) == format_expr(first)


def test_different_seeds_differ():
    outputs = {format_expr(generate_member(GenConfig(seed=s))) for s in range(100)}
    assert len(outputs) > 80


def test_population_is_sound_and_bounded(member_population):
    for e in member_population:
        a = analyze_attributes(e)
        assert a.status.kind is Kind.MEMBER
        assert F(-3) <= a.degree <= 3


def test_population_covers_every_node_kind(member_population):
    counts = Counter(type(node).__name__ for e in member_population for node in walk(e))
    total = sum(counts.values())
    for kind in ("Const", "Var", "Mul", "Div", "Pow", "Add", "Sub"):
        assert counts[kind] / total >= 0.01, (kind, counts)


def test_min_degree_gap_is_respected():
    for seed in range(200):
        e = generate_member(GenConfig(seed=seed, min_degree_gap=F(1, 2)))
        gap = smallest_degree_gap(e)
        assert gap is None or gap >= F(1, 2)


def test_degree_bounds_are_root_only():
    for seed in range(100):
        a = analyze_attributes(generate_member(GenConfig(seed=seed, degree_bounds=(F(-3), F(-6, 5)))))
        assert F(-3) <= a.degree <= F(-6, 5)


@pytest.mark.parametrize("seed", range(20))
def test_radical_quotient_monic(seed):
    e = generate_radical_quotient(GenConfig(seed=seed), 1, 2, 2, 1, monic=True)
    a = analyze_attributes(e)
    assert a.degree == F(-3, 2)
    assert float(a.coeff) == 1.0


@pytest.mark.parametrize("seed", range(20))
def test_radical_quotient_reciprocal_linear(seed):
    a = analyze_attributes(generate_radical_quotient(GenConfig(seed=seed), 0, 1, 1, 1))
    assert a.degree == -1 and a.coeff.sign() == 1


def test_radical_quotient_rejects_bad_orders():
    with pytest.raises(ValueError):
        generate_radical_quotient(GenConfig(), 1, 0, 1, 1)


def test_retry_budget_exhausted():
    cfg = GenConfig(max_depth=0, degree_bounds=(F(10), F(10)), retry_budget=50)
    with pytest.raises(RetryBudgetExhausted):
        generate_member(cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(max_depth=-1)
    with pytest.raises(ValueError):
        GenConfig(degree_bounds=(F(1), F(0)))
