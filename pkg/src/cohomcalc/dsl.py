"""Text syntax for polynomials and ring definitions.

Polynomial expressions use ``^`` for powers, ``*`` for products and integer
ratios such as ``27/8`` for rational coefficients::

    3*t^9 - 2*t*w^2
    (2*v - s^4)^3

A ring definition names its generators with their degrees, its relations and
optionally the formal dimension of the underlying space::

    ring R {
        gen t: 2;
        gen w: 8;
        rel t^9 - 3*t*w^2;
        rel w^3 - 9*t^8*w + 15*t^4*w^2;
        top 32;
    }

All generators must be declared before the first relation.  Syntax errors
carry the 1-based line and column of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gring import GradedRing
from .poly import Polynomial, VariableContext


class DslSyntaxError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class InhomogeneousRelationError(ValueError):
    def __init__(self, relation_text, degrees, line, column):
        super().__init__(
            f"relation '{relation_text}' is not homogeneous: term degrees "
            f"{sorted(degrees)} (line {line}, column {column})"
        )
        self.degrees = tuple(sorted(degrees))
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "number" | "op" | "end"
    text: str
    line: int
    column: int


_OPS = set("+-*^/(){}:;")


def tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("number", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(Token("op", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    last_line = line
    tokens.append(Token("end", "", last_line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, kind, text=None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.text else "end of input"
            raise DslSyntaxError(f"expected {want!r}, found {got!r}", tok.line, tok.column)
        return self.next()

    def error(self, message):
        tok = self.peek()
        raise DslSyntaxError(message, tok.line, tok.column)

    # polynomial expression grammar ------------------------------------

    def parse_expression(self, ctx: VariableContext) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.next()
            if tok.text == "-":
                sign = -1
        poly = self.parse_term(ctx) * sign
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                rhs = self.parse_term(ctx)
                poly = poly + rhs if tok.text == "+" else poly - rhs
            else:
                return poly

    def parse_term(self, ctx) -> Polynomial:
        poly = self.parse_factor(ctx)
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.next()
                poly = poly * self.parse_factor(ctx)
            else:
                return poly

    def parse_factor(self, ctx) -> Polynomial:
        base = self.parse_base(ctx)
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.next()
            exp = self.expect("number")
            return base ** int(exp.text)
        return base

    def parse_base(self, ctx) -> Polynomial:
        tok = self.peek()
        if tok.kind == "number":
            self.next()
            value = int(tok.text)
            after = self.peek()
            if after.kind == "op" and after.text == "/":
                self.next()
                denom = self.expect("number")
                if int(denom.text) == 0:
                    raise DslSyntaxError("zero denominator", denom.line, denom.column)
                return Polynomial.constant(ctx, Fraction(value, int(denom.text)))
            return Polynomial.constant(ctx, value)
        if tok.kind == "ident":
            self.next()
            if tok.text not in ctx.names:
                raise DslSyntaxError(f"unknown variable {tok.text!r}", tok.line, tok.column)
            return Polynomial.variable(ctx, tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.parse_expression(ctx)
            self.expect("op", ")")
            return inner
        self.error("expected a number, variable or parenthesised expression")


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse a polynomial expression over the given context."""
    parser = _Parser(tokenize(text))
    poly = parser.parse_expression(ctx)
    end = parser.peek()
    if end.kind != "end":
        raise DslSyntaxError(f"unexpected trailing {end.text!r}", end.line, end.column)
    return poly


def parse_ring(text: str, coefficients="Z") -> GradedRing:
    """Parse a ``ring NAME { ... }`` definition into a graded ring."""
    parser = _Parser(tokenize(text))
    parser.expect("ident", "ring")
    name_tok = parser.expect("ident")
    parser.expect("op", "{")

    gens: list = []
    rel_spans: list = []  # (start_token_index, end_token_index, line, column)
    top_degree = None
    while True:
        tok = parser.peek()
        if tok.kind == "op" and tok.text == "}":
            parser.next()
            break
        if tok.kind != "ident":
            parser.error("expected 'gen', 'rel', 'top' or '}'")
        if tok.text == "gen":
            parser.next()
            if rel_spans:
                raise DslSyntaxError(
                    "generators must be declared before relations", tok.line, tok.column
                )
            gname = parser.expect("ident")
            parser.expect("op", ":")
            gdeg = parser.expect("number")
            parser.expect("op", ";")
            gens.append((gname.text, int(gdeg.text)))
        elif tok.text == "rel":
            parser.next()
            start = parser.pos
            depth = 0
            while True:
                cur = parser.peek()
                if cur.kind == "end":
                    raise DslSyntaxError("missing ';' after relation", cur.line, cur.column)
                if cur.kind == "op" and cur.text == "(":
                    depth += 1
                if cur.kind == "op" and cur.text == ")":
                    depth -= 1
                if cur.kind == "op" and cur.text == ";" and depth == 0:
                    break
                if cur.kind == "op" and cur.text in "{}":
                    raise DslSyntaxError("missing ';' after relation", cur.line, cur.column)
                parser.next()
            end = parser.pos
            parser.expect("op", ";")
            rel_spans.append((start, end, tok.line, tok.column))
        elif tok.text == "top":
            parser.next()
            deg = parser.expect("number")
            parser.expect("op", ";")
            top_degree = int(deg.text)
        else:
            parser.error(f"unknown statement {tok.text!r}")

    end_tok = parser.peek()
    if end_tok.kind != "end":
        raise DslSyntaxError(f"unexpected trailing {end_tok.text!r}", end_tok.line, end_tok.column)
    if not gens:
        raise DslSyntaxError("ring has no generators", name_tok.line, name_tok.column)

    ctx = VariableContext.of(*gens)
    relations = []
    for start, end, line, column in rel_spans:
        sub = _Parser(parser.tokens[start:end] + [parser.tokens[-1]])
        rel = sub.parse_expression(ctx)
        if sub.peek().kind != "end":
            bad = sub.peek()
            raise DslSyntaxError(f"unexpected {bad.text!r} in relation", bad.line, bad.column)
        if not rel.is_homogeneous():
            degs = {ctx.degree(m) for m in rel.monomials()}
            text_of = str(rel)
            raise InhomogeneousRelationError(text_of, degs, line, column)
        relations.append(rel)
    return GradedRing(
        ctx, relations, top_degree=top_degree, coefficients=coefficients, name=name_tok.text
    )
