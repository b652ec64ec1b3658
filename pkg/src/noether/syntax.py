"""Parser and printer for polynomial expressions and axiom-system files.

Expression grammar (explicit multiplication only; `^` takes a non-negative
integer literal):

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" natural)*
    atom    := IDENT | NUMBER | "(" expr ")"
    IDENT   := [A-Za-z][A-Za-z0-9_]*
    NUMBER  := digits ("/" digits)?

File format, line oriented (UTF-8, LF or CRLF):

    # comment
    vars: name name ...
    axiom <name>: <expr>
    hypothesis <name>: <expr>

Expressions are fully expanded at parse time; the engine never stores
factored forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .arith import (
    RESERVED_NAMES,
    MonomialOrder,
    Polynomial,
    Rational,
    VarTable,
    grevlex_order,
)


class ParseError(Exception):
    """Positioned syntax or semantic error in an expression or system file."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, message))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<number>[0-9]+)|(?P<op>[-+*^()/]))"
)


def _tokenize(text: str, line: int = 1, col_base: int = 0):
    """Yield (kind, value, column) tokens; raise ParseError on junk."""
    pos = 0
    tokens = []
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            column = col_base + len(text[: len(text) - len(text[pos:].lstrip())]) + 1
            raise ParseError("unexpected character %r" % rest[0], line, column)
        column = col_base + match.start(match.lastgroup) + 1
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), column))
        pos = match.end()
    return tokens


class _ExprParser:
    """Recursive-descent parser producing an expanded Polynomial."""

    def __init__(self, tokens, vartable: VarTable, line: int):
        self.tokens = tokens
        self.pos = 0
        self.vars = vartable
        self.line = line

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self):
        token = self.peek()
        if token is not None:
            self.pos += 1
        return token

    def fail(self, message: str):
        token = self.peek()
        column = token[2] if token else (self.tokens[-1][2] + 1 if self.tokens else 1)
        raise ParseError(message, self.line, column)

    def expect_op(self, op: str):
        token = self.peek()
        if token is None or token[0] != "op" or token[1] != op:
            self.fail("expected %r" % op)
        return self.advance()

    def parse(self) -> Polynomial:
        poly = self.expr()
        if self.peek() is not None:
            self.fail("unexpected trailing input %r" % self.peek()[1])
        return poly

    def expr(self) -> Polynomial:
        poly = self.term()
        while True:
            token = self.peek()
            if token is not None and token[0] == "op" and token[1] in "+-":
                self.advance()
                rhs = self.term()
                poly = poly + rhs if token[1] == "+" else poly - rhs
            else:
                return poly

    def term(self) -> Polynomial:
        poly = self.unary()
        while True:
            token = self.peek()
            if token is not None and token[0] == "op" and token[1] == "*":
                self.advance()
                poly = poly * self.unary()
            else:
                return poly

    def unary(self) -> Polynomial:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> Polynomial:
        poly = self.atom()
        while True:
            token = self.peek()
            if token is not None and token[0] == "op" and token[1] == "^":
                self.advance()
                exponent = self.peek()
                if exponent is None or exponent[0] != "number":
                    self.fail("exponent must be a non-negative integer literal")
                self.advance()
                poly = poly ** int(exponent[1])
            else:
                return poly

    def atom(self) -> Polynomial:
        token = self.peek()
        if token is None:
            self.fail("unexpected end of expression")
        kind, value, column = token
        if kind == "ident":
            self.advance()
            if value in RESERVED_NAMES:
                raise ParseError("reserved name %r" % value, self.line, column)
            try:
                return Polynomial.variable(self.vars, value)
            except KeyError:
                raise ParseError("unknown variable %r" % value, self.line, column)
        if kind == "number":
            self.advance()
            numerator = int(value)
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.advance()
                den = self.peek()
                if den is None or den[0] != "number":
                    self.fail("expected integer denominator")
                self.advance()
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", self.line, column)
                return Polynomial.constant(self.vars, Rational(numerator, int(den[1])))
            return Polynomial.constant(self.vars, numerator)
        if kind == "op" and value == "(":
            self.advance()
            poly = self.expr()
            self.expect_op(")")
            return poly
        self.fail("unexpected token %r" % value)


def parse_polynomial(text: str, vartable: VarTable, line: int = 1) -> Polynomial:
    """Parse an expression into a fully expanded canonical polynomial."""
    tokens = _tokenize(text, line=line)
    if not tokens:
        raise ParseError("empty expression", line, 1)
    return _ExprParser(tokens, vartable, line).parse()


# ---------------------------------------------------------------------------
# Axiom-system files


@dataclass
class SourceSpan:
    line: int
    text: str


@dataclass
class AxiomSystemFile:
    """Parsed system file plus source spans for diagnostics."""

    system: "AxiomSystem"
    spans: dict = field(default_factory=dict)


class AxiomSystem:
    """Named variables, named axioms, named hypotheses (declaration order kept)."""

    def __init__(self, vartable: VarTable, axioms, hypotheses, name: str = ""):
        self.vars = vartable
        self.axioms = dict(axioms)
        self.hypotheses = dict(hypotheses)
        self.name = name
        overlap = set(self.axioms) & set(self.hypotheses)
        if overlap:
            raise ValueError("names declared twice: %s" % ", ".join(sorted(overlap)))

    def axiom_names(self):
        return list(self.axioms)

    def polynomials(self, names):
        out = []
        for name in names:
            if name in self.axioms:
                out.append(self.axioms[name])
            elif name in self.hypotheses:
                out.append(self.hypotheses[name])
            else:
                raise KeyError("unknown declaration %r" % name)
        return out

    def default_order(self, kind: str = "grevlex") -> MonomialOrder:
        return MonomialOrder(kind, range(len(self.vars)))


_DECL_RE = re.compile(r"^(axiom|hypothesis)\s+([A-Za-z][A-Za-z0-9_]*)\s*:\s*(.*)$")


def parse_system(text: str, name: str = "") -> AxiomSystem:
    return parse_system_file(text, name=name).system


def parse_system_file(text: str, name: str = "") -> AxiomSystemFile:
    """Parse a .axioms file; every error carries its line number."""
    vartable = None
    axioms: dict = {}
    hypotheses: dict = {}
    spans: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vars:"):
            if vartable is not None:
                raise ParseError("duplicate vars header", lineno, 1)
            names = line[len("vars:") :].split()
            if not names:
                raise ParseError("vars header declares no variables", lineno, 1)
            try:
                vartable = VarTable(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            continue
        match = _DECL_RE.match(line)
        if match is None:
            raise ParseError("unrecognized declaration %r" % line, lineno, 1)
        kind, decl_name, body = match.groups()
        if vartable is None:
            raise ParseError("missing vars header before declarations", lineno, 1)
        if decl_name in axioms or decl_name in hypotheses:
            previous = spans[decl_name].line
            raise ParseError(
                "duplicate name %r (first declared on line %d)" % (decl_name, previous),
                lineno,
                1,
            )
        if not body.strip():
            raise ParseError("empty %s body" % kind, lineno, 1)
        poly = parse_polynomial(body, vartable, line=lineno)
        if kind == "axiom" and poly.is_zero():
            raise ParseError("axiom %r is identically zero" % decl_name, lineno, 1)
        spans[decl_name] = SourceSpan(lineno, raw)
        (axioms if kind == "axiom" else hypotheses)[decl_name] = poly
    if vartable is None:
        raise ParseError("missing vars header", 1, 1)
    return AxiomSystemFile(AxiomSystem(vartable, axioms, hypotheses, name=name), spans)


# ---------------------------------------------------------------------------
# Printing


def _format_coefficient(value) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def _format_monomial(mono, names) -> str:
    parts = []
    for name, exp in zip(names, mono):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append("%s^%d" % (name, exp))
    return "*".join(parts)


def print_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical string form, terms descending in the given order."""
    if f.is_zero():
        return "0"
    if order is None:
        order = grevlex_order(len(f.vars))
    pieces = []
    for mono in order.sorted_monomials(f.terms):
        coeff = f.terms[mono]
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = _format_monomial(mono, f.vars.names)
        if not body:
            text = _format_coefficient(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = "%s*%s" % (_format_coefficient(magnitude), body)
        if not pieces:
            pieces.append("-" + text if negative else text)
        else:
            pieces.append((" - " if negative else " + ") + text)
    return "".join(pieces)


def print_normalized(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Print after integer-primitive, positive-leading-coefficient scaling."""
    if f.is_zero():
        return "0"
    if order is None:
        order = grevlex_order(len(f.vars))
    _, normalized = f.primitive(order)
    return print_polynomial(normalized, order)
