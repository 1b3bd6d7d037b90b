"""Command-line interface: analyze, verify, sum and generate.

Exit codes: 0 ok, 1 input error (parse or domain), 2 outside the family,
3 indeterminate membership, 4 an oracle disagrees, 5 generator gave up.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .analysis import (
    DEFAULT_N_MAX,
    DEFAULT_WINDOW,
    Verdict,
    classify_attributes,
    find_domain,
)
from .errors import DomainError, ParseError, RetryBudgetExhausted, WindowNotFound, ZeroSample
from .expr import Kind, analyze_attributes
from .generator import GenConfig, generate_member
from .numeric import (
    CONSISTENT_CONVERGENT,
    CONSISTENT_DIVERGENT,
    convergence_probe,
    estimate_degree,
    estimate_leading_coefficient,
    partial_sum,
    smallest_degree_gap,
)
from .parser import format_expr, parse

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_OUTSIDE = 2
EXIT_INDETERMINATE = 3
EXIT_DISAGREE = 4
EXIT_RETRY = 5

TIGHT_GAP = Fraction(1, 2)
DEGREE_TOL = {True: 0.05, False: 0.2}
COEFF_TOL = {True: 0.01, False: 0.05}


def _status_exit(kind: Kind) -> int:
    return {Kind.OUTSIDE: EXIT_OUTSIDE, Kind.INDETERMINATE: EXIT_INDETERMINATE}.get(kind, EXIT_OK)


def _parse_or_report(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        print(exc.annotate(text), file=sys.stderr)
        return None


def analysis_document(text: str, n0: int = 1, window: int = DEFAULT_WINDOW, n_max: int = DEFAULT_N_MAX):
    """Build the JSON analysis document for ``text``; returns (doc, exit code).

    Raises ParseError for malformed input.
    """
    e = parse(text)
    attrs = analyze_attributes(e)
    cls = classify_attributes(attrs)
    status = attrs.status
    doc: dict = {"expr_text": text, "membership": status.describe(), "classification": cls.verdict.value}
    if status.is_member:
        doc["degree"] = {"num": attrs.degree.numerator, "den": attrs.degree.denominator}
    if status.kind in (Kind.MEMBER, Kind.ZERO_CONSTANT):
        doc["leading_coefficient"] = {"decimal": float(attrs.coeff), "exact": str(attrs.coeff)}
        if cls.coeff_sign is not None:
            doc["coeff_sign"] = cls.coeff_sign
        try:
            report = find_domain(e, n0, n_max, window, attrs=attrs)
            doc["n_defined"] = report.n_defined
            doc["n_sign_stable"] = report.n_sign_stable
        except WindowNotFound as exc:
            print(f"warning: {exc}", file=sys.stderr)
            doc["n_defined"] = doc["n_sign_stable"] = None
    doc["tool_version"] = __version__
    return doc, _status_exit(status.kind)


def _human(doc: dict) -> str:
    lines = [f"expression:     {doc['expr_text']}", f"membership:     {doc['membership']}"]
    if "degree" in doc:
        d = Fraction(doc["degree"]["num"], doc["degree"]["den"])
        lines.append(f"degree:         {d}")
    if "leading_coefficient" in doc:
        lc = doc["leading_coefficient"]
        lines.append(f"leading coeff:  {lc['exact']}  (~ {lc['decimal']:.12g})")
    lines.append(f"classification: {doc['classification']}")
    if "n_defined" in doc:
        lines.append(f"defined from:   n = {doc['n_defined']}")
        lines.append(f"sign stable:    n = {doc['n_sign_stable']}  (window scan, not certified)")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    texts = [args.expr] if args.expr not in (None, "-") else [ln.strip() for ln in sys.stdin if ln.strip()]
    worst = EXIT_OK
    for text in texts:
        try:
            doc, code = analysis_document(text, args.n0, args.window, args.n_max)
        except ParseError as exc:
            print(exc.annotate(text), file=sys.stderr)
            worst = max(worst, EXIT_INPUT)
            continue
        print(json.dumps(doc) if args.json else _human(doc))
        worst = max(worst, code)
    return worst


def cmd_verify(args) -> int:
    e = _parse_or_report(args.expr)
    if e is None:
        return EXIT_INPUT
    attrs = analyze_attributes(e)
    if attrs.status.kind is Kind.ZERO_CONSTANT:
        print("zero expression: nothing to verify")
        return EXIT_OK
    if not attrs.status.is_member:
        print(f"membership: {attrs.status.describe()}", file=sys.stderr)
        return _status_exit(attrs.status.kind)
    cls = classify_attributes(attrs)
    r, c = attrs.degree, float(attrs.coeff)
    gap = smallest_degree_gap(e)
    tight = gap is None or gap >= TIGHT_GAP
    print(f"expression:   {args.expr}")
    print(f"symbolic:     degree {r}, coefficient {attrs.coeff} (~ {c:.12g}), {cls.verdict.value}")
    print(f"degree gap:   {gap if gap is not None else 'none'} -> {'tight' if tight else 'loose'} tolerances")
    try:
        dom = find_domain(e, attrs=attrs)
        grid_lo = max(args.grid_lo, dom.n_sign_stable)
        slope, resid = estimate_degree(e, grid_lo, args.grid_hi, args.points)
        coeff_n = max(args.coeff_n, dom.n_sign_stable)
        c_est = estimate_leading_coefficient(e, r, coeff_n)
        probe = convergence_probe(e, args.cutoffs, start=dom.n_sign_stable)
    except (DomainError, ZeroSample, WindowNotFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE

    checks = []
    d_ok = abs(slope - float(r)) <= DEGREE_TOL[tight]
    checks.append(d_ok)
    print(
        f"degree:       estimated {slope:.6f} (rms {resid:.2e}) on [{grid_lo}, {args.grid_hi}] "
        f"vs {float(r):.6f}, tol {DEGREE_TOL[tight]} -> {'ok' if d_ok else 'MISMATCH'}"
    )
    rel = abs(c_est - c) / abs(c)
    c_ok = rel <= COEFF_TOL[tight]
    checks.append(c_ok)
    print(
        f"coefficient:  E(n)/n^r at n = {coeff_n} is {c_est:.8g} vs {c:.8g} "
        f"(rel {rel:.2e}), tol {COEFF_TOL[tight]} -> {'ok' if c_ok else 'MISMATCH'}"
    )
    convergent = cls.verdict is Verdict.ABSOLUTELY_CONVERGENT
    contradicts = (probe.verdict_hint == CONSISTENT_CONVERGENT and not convergent) or (
        probe.verdict_hint == CONSISTENT_DIVERGENT and convergent
    )
    checks.append(not contradicts)
    sums = ", ".join(f"S({n}) = {s:.10g}" for n, s in probe.cutoff_sums)
    print(f"partial sums: from n = {probe.start}: {sums}")
    est = "n/a" if math.isnan(probe.estimated_degree) else f"{probe.estimated_degree:.4f}"
    print(f"probe:        {probe.verdict_hint} (block degree {est}) -> {'MISMATCH' if contradicts else 'ok'}")
    return EXIT_OK if all(checks) else EXIT_DISAGREE


def cmd_sum(args) -> int:
    e = _parse_or_report(args.expr)
    if e is None:
        return EXIT_INPUT
    try:
        total = partial_sum(e, args.from_, args.to)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"{total:.17g}")
    return EXIT_OK


def cmd_generate(args) -> int:
    for i in range(args.count):
        cfg = GenConfig(
            seed=args.seed + i,
            max_depth=args.depth,
            min_degree_gap=args.min_gap,
            dominance_from=args.dominance_from,
        )
        try:
            e = generate_member(cfg)
        except RetryBudgetExhausted as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RETRY
        print(format_expr(e))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(float(x)) for x in text.split(",") if x.strip()]


def _count(text: str) -> int:
    # accepts 1e7 style as well as plain integers
    return int(float(text)) if any(ch in text for ch in ".eE") else int(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seriesconv", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="degree, coefficient, verdict and domain of an expression")
    p.add_argument("expr", nargs="?", help="expression; omit or '-' to read one per line from stdin")
    p.add_argument("--n0", type=_count, default=1)
    p.add_argument("--window", type=_count, default=DEFAULT_WINDOW)
    p.add_argument("--n-max", type=_count, default=DEFAULT_N_MAX)
    p.add_argument("--json", action="store_true", help="print one JSON document per expression")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check the symbolic result against numerical oracles")
    p.add_argument("expr")
    p.add_argument("--grid-lo", type=_count, default=10**4)
    p.add_argument("--grid-hi", type=_count, default=10**7)
    p.add_argument("--points", type=int, default=16)
    p.add_argument("--coeff-n", type=_count, default=10**8, help="n at which E(n)/n^r is compared")
    p.add_argument("--cutoffs", type=_int_list, default=[10**4, 10**5, 10**6])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sum", help="partial sum over an index range")
    p.add_argument("expr")
    p.add_argument("--from", dest="from_", type=_count, default=1)
    p.add_argument("--to", type=_count, required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("generate", help="random family members, one per line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--min-gap", type=Fraction, default=Fraction(0))
    p.add_argument("--dominance-from", type=_count, default=None)
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
