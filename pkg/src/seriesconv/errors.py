"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Raised by the tokenizer and parser.

    ``offset`` is a character offset into the source text (possibly one past
    the end), ``expected`` the set of token kinds that would have been
    accepted there, and ``found`` a short description of what was seen.
    """

    def __init__(self, offset: int, expected: frozenset[str] | set[str], found: str, message: str = ""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        detail = message or f"expected {' | '.join(sorted(self.expected)) or 'end of input'}"
        super().__init__(f"offset {offset}: {detail}, found {found}")

    def annotate(self, text: str) -> str:
        """Return the source line with a caret under the offending offset."""
        return f"{text}\n{' ' * self.offset}^\n{self}"


class DomainError(ArithmeticError):
    """Pointwise evaluation failed: root of a negative, or a zero denominator."""

    def __init__(self, n: int, path: tuple[int, ...] = (), reason: str = ""):
        self.n = n
        self.path = tuple(path)
        self.reason = reason
        where = "/".join(map(str, self.path)) or "top"
        super().__init__(f"domain error at n = {n} (node {where}){': ' + reason if reason else ''}")


class WindowNotFound(RuntimeError):
    """No stable window was found below ``n_max``."""


class ZeroSample(ArithmeticError):
    """An expression evaluated to exactly zero on a log-log regression grid."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"expression is exactly zero at n = {n}")


class RetryBudgetExhausted(RuntimeError):
    """The random generator rejected too many draws in a row."""


class IndeterminateSign(ArithmeticError):
    """Interval refinement reached its precision cap without excluding zero."""


class CoefficientTooComplex(ArithmeticError):
    """A coefficient operation would leave the supported radical algebra."""
