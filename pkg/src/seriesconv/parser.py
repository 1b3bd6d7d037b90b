"""Text syntax for expressions: tokenizer, recursive-descent parser, printer.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | factor
    factor   := atom ("^" exponent)?
    atom     := rational | "n" | "(" expr ")" | "sqrt" "(" expr ")"
              | "root" "(" integer "," expr ")"
    exponent := signed-integer | "(" signed-integer ["/" integer] ")"
    rational := integer | decimal | "(" signed-integer "/" integer ")"

A parenthesised ``(p/q)`` with integer p, q is always read as a rational
literal, never as a division. Rational exponents need parentheses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .expr import Add, Const, Div, Expr, Mul, Pow, Sub, Var, desugar_root

INTEGER = "integer"
DECIMAL = "decimal"
IDENT = "ident"
PLUS, MINUS, STAR, SLASH, CARET = "+", "-", "*", "/", "^"
LPAREN, RPAREN, COMMA = "(", ")", ","
END = "end"

_PUNCT = {c: c for c in "+-*/^(),"}
FUNCTIONS = ("sqrt", "root")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    offset: int

    def describe(self) -> str:
        return "end of input" if self.kind == END else repr(self.lexeme)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens (longest munch, whitespace skipped)."""
    tokens = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, i))
            i += 1
        elif "0" <= ch <= "9":
            j = i
            while j < size and "0" <= text[j] <= "9":
                j += 1
            kind = INTEGER
            if j < size and text[j] == ".":
                k = j + 1
                while k < size and "0" <= text[k] <= "9":
                    k += 1
                if k == j + 1:
                    raise ParseError(j + 1, {"digit"}, _found(text, j + 1))
                kind, j = DECIMAL, k
            tokens.append(Token(kind, text[i:j], i))
            i = j
        elif ch.isascii() and ch.isalpha():
            j = i
            while j < size and text[j].isascii() and text[j].isalpha():
                j += 1
            tokens.append(Token(IDENT, text[i:j], i))
            i = j
        else:
            raise ParseError(i, set(), repr(ch), "illegal character")
    return tokens


def _found(text: str, offset: int) -> str:
    return repr(text[offset]) if offset < len(text) else "end of input"


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text) + [Token(END, "", len(text))]
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, expected, message: str = "") -> ParseError:
        return ParseError(self.tok.offset, set(expected), self.tok.describe(), message)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.fail({kind})
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != END:
            raise self.fail({PLUS, MINUS, STAR, SLASH, CARET, END})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind in (PLUS, MINUS):
            op = self.advance().kind
            rhs = self.term()
            e = Add(e, rhs) if op == PLUS else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind in (STAR, SLASH):
            op = self.advance().kind
            rhs = self.unary()
            e = Mul(e, rhs) if op == STAR else Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.tok.kind == MINUS:
            self.advance()
            inner = self.unary()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Sub(Const(0), inner)
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self.tok.kind == CARET:
            self.advance()
            return Pow(base, self.exponent())
        return base

    def signed_integer(self) -> int:
        sign = 1
        if self.tok.kind == MINUS:
            self.advance()
            sign = -1
        return sign * int(self.expect(INTEGER).lexeme)

    def exponent(self) -> Fraction:
        if self.tok.kind != LPAREN:
            if self.tok.kind not in (MINUS, INTEGER):
                raise self.fail({MINUS, INTEGER, LPAREN})
            return Fraction(self.signed_integer())
        self.advance()
        p = self.signed_integer()
        q = 1
        if self.tok.kind == SLASH:
            self.advance()
            q = self.denominator()
        elif self.tok.kind != RPAREN:
            raise self.fail({SLASH, RPAREN})
        self.expect(RPAREN)
        return Fraction(p, q)

    def denominator(self) -> int:
        tok = self.expect(INTEGER)
        q = int(tok.lexeme)
        if q == 0:
            raise ParseError(tok.offset, {INTEGER}, repr(tok.lexeme), "zero denominator")
        return q

    def _at_rational_literal(self) -> bool:
        k = 1
        if self.peek(k).kind == MINUS:
            k += 1
        return (
            self.peek(k).kind == INTEGER
            and self.peek(k + 1).kind == SLASH
            and self.peek(k + 2).kind == INTEGER
            and self.peek(k + 3).kind == RPAREN
        )

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == INTEGER:
            self.advance()
            return Const(int(tok.lexeme))
        if tok.kind == DECIMAL:
            self.advance()
            return Const(Fraction(tok.lexeme))
        if tok.kind == LPAREN:
            if self._at_rational_literal():
                self.advance()
                p = self.signed_integer()
                self.expect(SLASH)
                q = self.denominator()
                self.expect(RPAREN)
                return Const(Fraction(p, q))
            self.advance()
            e = self.expr()
            self.expect(RPAREN)
            return e
        if tok.kind == IDENT:
            if tok.lexeme == "n":
                self.advance()
                return Var()
            if tok.lexeme == "sqrt":
                self.advance()
                self.expect(LPAREN)
                e = self.expr()
                self.expect(RPAREN)
                return desugar_root(2, e)
            if tok.lexeme == "root":
                self.advance()
                self.expect(LPAREN)
                order = self.expect(INTEGER)
                if int(order.lexeme) == 0:
                    raise ParseError(order.offset, {INTEGER}, repr(order.lexeme), "root order must be positive")
                self.expect(COMMA)
                e = self.expr()
                self.expect(RPAREN)
                return desugar_root(int(order.lexeme), e)
            raise self.fail({"n", *FUNCTIONS}, f"unknown identifier {tok.lexeme!r}")
        raise self.fail({INTEGER, DECIMAL, LPAREN, "n", *FUNCTIONS})


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree, raising ParseError on failure."""
    return _Parser(text).parse()


_OPS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _literal(q: Fraction) -> str:
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def format_expr(e: Expr) -> str:
    """Fully parenthesised text that parses back to an equal tree."""
    parts: list[str] = []
    stack: list[object] = [e]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Var):
            parts.append("n")
        elif isinstance(item, Const):
            parts.append(f"({_literal(item.value)})")
        elif isinstance(item, Pow):
            a = item.exponent
            stack.extend([f")^({a.numerator}/{a.denominator})", item.base, "("])
        else:
            left, right = item.children()
            stack.extend([")", right, _OPS[type(item)], left, "("])
    return "".join(parts)
