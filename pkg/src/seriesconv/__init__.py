"""Decide convergence of series whose terms are built from n by products,
quotients, rational powers and non-cancelling sums, and check each verdict
against numerical oracles."""

from .analysis import (
    Classification,
    DomainReport,
    Verdict,
    classify,
    classify_radical_quotient,
    classify_reciprocal_polynomial,
    find_domain,
)
from .coefficient import Coefficient, ZeroTest, coefficient_is_zero
from .errors import (
    DomainError,
    IndeterminateSign,
    ParseError,
    RetryBudgetExhausted,
    WindowNotFound,
    ZeroSample,
)
from .expr import (
    Add,
    Attributes,
    Const,
    Div,
    Expr,
    Kind,
    MembershipStatus,
    Mul,
    OutsideReason,
    Pow,
    Sub,
    Var,
    analyze_attributes,
    desugar_root,
)
from .generator import GenConfig, generate_member, generate_radical_quotient
from .numeric import (
    ProbeReport,
    convergence_probe,
    estimate_degree,
    estimate_leading_coefficient,
    eval_at,
    partial_sum,
)
from .parser import format_expr, parse, tokenize

__version__ = "0.1.0"
