"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module reads the line-oriented vector field description language
(.vf files) and renders polynomials canonically. Functions included:
    parse_system
    load_system
    parse_poly
    parse_ratfunc
    parse_pairs
    render_poly
    render_ratfunc
Classes:
    VectorField
    SystemSpec

A .vf file holds the statements

    system "<name>"             (optional)
    vars <id> <id> ...
    param <id> = <rational>
    eq <var>' = <expr>
    poly <id> = <expr>          (optional named polynomials)

where <expr> is built from +, -, *, ^ (nonnegative integer exponents),
parentheses, rational literals a or a/b and identifiers, and # starts
a comment. Binding: ^ (right associative) > unary - > * > binary +/-.
Parameters are substituted while parsing, so every stored polynomial
is parameter free.
"""

import logging
import os
import re
from collections import namedtuple
from fractions import Fraction
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.exceptions import ParseError, UsageError

logger = logging.getLogger(__name__)

Token = namedtuple('Token', 'kind, value, line, column')

_IDENT = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_NUMBER = re.compile(r'([0-9]+)(?:/([0-9]+))?')
_OPERATORS = "+-*/^()=';:"

KEYWORDS = ('system', 'vars', 'param', 'eq', 'poly')


class VectorField:

    """The derivation P1 d/dx1 + ... + Pn d/dxn, stored as one
    polynomial component per variable.
    """

    __slots__ = ('context', 'components')

    def __init__(self, context, components):
        context = tuple(context)
        components = tuple(components)
        if len(components) != len(context):
            raise UsageError("{} components for {} variables"
                             .format(len(components), len(context)))
        for p in components:
            if p.context != context:
                raise UsageError("component {} lives over {}, expected {}"
                                 .format(p, p.context, context))
        if all(p.is_zero() for p in components):
            raise UsageError("the zero vector field is not allowed")
        self.context = context
        self.components = components

    @property
    def dimension(self):
        return len(self.context)

    def degree(self):
        """Largest total degree among the components"""
        return max(p.degree() for p in self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.context == other.context and \
            self.components == other.components

    def __hash__(self):
        return hash((self.context, self.components))

    def __repr__(self):
        eqs = ', '.join("{}' = {}".format(v, render_poly(p))
                        for v, p in zip(self.context, self.components))
        return 'VectorField({})'.format(eqs)


class SystemSpec(namedtuple('SystemSpec',
                            'name, variables, parameters, field, named_polys')):

    """A parsed .vf file"""

    __slots__ = ()

    def parse_poly(self, text):
        return parse_poly(text, self.variables, self.parameters,
                          self.named_polys)

    def parse_ratfunc(self, text):
        return parse_ratfunc(text, self.variables, self.parameters,
                             self.named_polys)


# ------------------------------------------------------------------ lexing

def _tokenize(text, line=1, column=1):
    """Splits one line into tokens. Stops at a # outside of a string.
    "column" is the column of text[0].
    """
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        col = column + i
        if c.isspace():
            i += 1
            continue
        if c == '#':
            break
        m = _NUMBER.match(text, i)
        if m:
            num, den = m.group(1), m.group(2)
            if den is not None and int(den) == 0:
                raise ParseError("zero denominator in literal", line, col)
            value = Fraction(int(num), int(den) if den is not None else 1)
            tokens.append(Token('num', value, line, col))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(Token('ident', m.group(0), line, col))
            i = m.end()
            continue
        if c == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError("unterminated string", line, col)
            tokens.append(Token('str', text[i + 1:end], line, col))
            i = end + 1
            continue
        if c in _OPERATORS:
            tokens.append(Token('op', c, line, col))
            i += 1
            continue
        raise ParseError("unexpected character {!r}".format(c), line, col)
    tokens.append(Token('end', None, line, column + n))
    return tokens


# ----------------------------------------------------------------- parsing

class _ExprParser:

    """Recursive descent over one expression. "names" maps identifiers
    to values (Polys); with "rational" set the result is a RatFunc and
    / is allowed between sub-expressions.
    """

    def __init__(self, tokens, context, names, rational=False):
        self.tokens = tokens
        self.pos = 0
        self.context = context
        self.names = names
        self.rational = rational

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        if tok.kind != 'end':
            self.pos += 1
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok.kind == 'op' and tok.value in ops

    def lift(self, value):
        if self.rational and isinstance(value, Poly):
            return RatFunc.from_poly(value)
        return value

    def constant(self, c):
        return self.lift(Poly.constant(self.context, c))

    def parse(self, stop=('end',)):
        value = self.expr()
        tok = self.peek()
        if tok.kind not in stop and not (tok.kind == 'op' and tok.value in stop):
            raise ParseError("unexpected {}".format(_describe(tok)),
                             tok.line, tok.column)
        return value

    def expr(self):
        value = self.term()
        while self.at_op('+', '-'):
            op = self.advance().value
            rhs = self.term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.at_op('*', '/'):
            tok = self.advance()
            if tok.value == '/' and not self.rational:
                raise ParseError("division in a polynomial position",
                                 tok.line, tok.column)
            rhs = self.unary()
            if tok.value == '*':
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", tok.line, tok.column)
                value = value / rhs
        return value

    def unary(self):
        if self.at_op('-'):
            self.advance()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op('^'):
            self.advance()
            return base ** self.exponent()
        return base

    def exponent(self):
        tok = self.peek()
        if tok.kind == 'op' and tok.value == '-':
            raise ParseError("negative exponent", tok.line, tok.column)
        value = self.power()
        if isinstance(value, RatFunc):
            if not value.is_polynomial():
                raise ParseError("exponent must be a nonnegative integer",
                                 tok.line, tok.column)
            value = value.as_poly()
        if not value.is_constant():
            raise ParseError("exponent must be a constant", tok.line, tok.column)
        e = value.constant_value()
        if e.denominator != 1:
            raise ParseError("fractional exponent {}".format(e),
                             tok.line, tok.column)
        if e < 0:
            raise ParseError("negative exponent", tok.line, tok.column)
        return int(e)

    def atom(self):
        tok = self.advance()
        if tok.kind == 'num':
            return self.constant(tok.value)
        if tok.kind == 'ident':
            if tok.value not in self.names:
                raise ParseError("unknown identifier {!r}".format(tok.value),
                                 tok.line, tok.column)
            return self.lift(self.names[tok.value])
        if tok.kind == 'op' and tok.value == '(':
            value = self.expr()
            close = self.advance()
            if not (close.kind == 'op' and close.value == ')'):
                raise ParseError("expected ')'", close.line, close.column)
            return value
        raise ParseError("unexpected {}".format(_describe(tok)),
                         tok.line, tok.column)


def _describe(tok):
    if tok.kind == 'end':
        return "end of input"
    return "{} {!r}".format('token' if tok.kind == 'op' else tok.kind,
                            str(tok.value))


def _names(variables, parameters, named_polys):
    context = tuple(variables)
    names = {}
    for name, value in (parameters or {}).items():
        names[name] = Poly.constant(context, value)
    for name, p in (named_polys or {}).items():
        names[name] = p
    for i, name in enumerate(context):
        names[name] = Poly.variable(context, i)
    return names


def parse_poly(text, variables, parameters=None, named_polys=None, line=1):
    """Parses a polynomial expression over "variables". Parameters are
    substituted by their values and named polynomials by their
    expansion.
    """
    tokens = _tokenize(text, line)
    parser = _ExprParser(tokens, tuple(variables),
                         _names(variables, parameters, named_polys))
    return parser.parse()


def parse_ratfunc(text, variables, parameters=None, named_polys=None, line=1):
    """Like parse_poly but accepts / anywhere and returns a RatFunc"""
    tokens = _tokenize(text, line)
    parser = _ExprParser(tokens, tuple(variables),
                         _names(variables, parameters, named_polys),
                         rational=True)
    return parser.parse()


def _expect(tokens, pos, kind, value=None, what=None):
    tok = tokens[pos]
    if tok.kind != kind or (value is not None and tok.value != value):
        raise ParseError("expected {}, found {}".format(what or value or kind,
                                                        _describe(tok)),
                         tok.line, tok.column)
    return tok


def _parse_rational(tokens, pos):
    """[-] a[/b] literal at tokens[pos]; returns (value, next pos)"""
    sign = 1
    if tokens[pos].kind == 'op' and tokens[pos].value == '-':
        sign = -1
        pos += 1
    tok = _expect(tokens, pos, 'num', what='a rational literal')
    return sign * tok.value, pos + 1


def parse_system(text, default_name='unnamed'):
    """Parses the text of a .vf file.

    Returns: SystemSpec
    Raises: ParseError with the line and column of the offending token
    """
    name = None
    variables = None
    vars_token = None
    parameters = {}
    equations = {}
    poly_statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        head = tokens[0]
        if head.kind == 'end':
            continue
        if head.kind != 'ident' or head.value not in KEYWORDS:
            raise ParseError("unknown statement {}".format(_describe(head)),
                             head.line, head.column)
        if head.value == 'system':
            if name is not None:
                raise ParseError("duplicate system statement", head.line,
                                 head.column)
            name = _expect(tokens, 1, 'str', what='a quoted name').value
            _expect(tokens, 2, 'end', what='end of line')
        elif head.value == 'vars':
            if variables is not None:
                raise ParseError("duplicate vars statement", head.line,
                                 head.column)
            variables = []
            vars_token = head
            for tok in tokens[1:-1]:
                if tok.kind != 'ident':
                    raise ParseError("expected a variable name, found {}"
                                     .format(_describe(tok)), tok.line,
                                     tok.column)
                if tok.value in KEYWORDS or tok.value in variables:
                    raise ParseError("bad or repeated variable name {!r}"
                                     .format(tok.value), tok.line, tok.column)
                variables.append(tok.value)
            if not variables:
                raise ParseError("vars needs at least one variable",
                                 head.line, head.column)
        elif head.value == 'param':
            ident = _expect(tokens, 1, 'ident', what='a parameter name')
            if ident.value in parameters:
                raise ParseError("parameter {!r} bound twice".format(ident.value),
                                 ident.line, ident.column)
            if tokens[2].kind == 'end':
                raise ParseError("unbound parameter {!r}".format(ident.value),
                                 ident.line, ident.column)
            _expect(tokens, 2, 'op', '=')
            value, pos = _parse_rational(tokens, 3)
            _expect(tokens, pos, 'end', what='end of line')
            parameters[ident.value] = value
        elif head.value == 'eq':
            ident = _expect(tokens, 1, 'ident', what='a variable name')
            _expect(tokens, 2, 'op', "'")
            _expect(tokens, 3, 'op', '=')
            if ident.value in equations:
                raise ParseError("second equation for {!r}".format(ident.value),
                                 ident.line, ident.column)
            equations[ident.value] = (ident, tokens[4:])
        else:
            ident = _expect(tokens, 1, 'ident', what='a polynomial name')
            _expect(tokens, 2, 'op', '=')
            poly_statements.append((ident, tokens[3:]))

    if variables is None:
        raise ParseError("missing vars statement", 1, 1)
    for pname in parameters:
        if pname in variables:
            raise ParseError("{!r} is both a variable and a parameter"
                             .format(pname), vars_token.line, vars_token.column)
    context = tuple(variables)
    names = _names(context, parameters, None)

    named_polys = {}
    for ident, tokens in poly_statements:
        if ident.value in names:
            raise ParseError("name {!r} already taken".format(ident.value),
                             ident.line, ident.column)
        value = _ExprParser(tokens, context, names).parse()
        named_polys[ident.value] = value
        names[ident.value] = value

    components = []
    for var in context:
        if var not in equations:
            raise ParseError("no equation for variable {!r}".format(var),
                             vars_token.line, vars_token.column)
    for ident, _ in equations.values():
        if ident.value not in context:
            raise ParseError("equation for undeclared variable {!r}"
                             .format(ident.value), ident.line, ident.column)
    eq_names = _names(context, parameters, None)
    for var in context:
        _, tokens = equations[var]
        components.append(_ExprParser(tokens, context, eq_names).parse())
    try:
        field = VectorField(context, components)
    except UsageError as err:
        raise ParseError(str(err), vars_token.line, vars_token.column)
    system = SystemSpec(name if name is not None else default_name, context,
                      parameters, field, named_polys)
    logger.debug("parsed system %r: %r", system.name, field)
    return system


def load_system(path):
    """Reads and parses a .vf file (UTF-8). The system name defaults to
    the file name without extension.
    """
    with open(path, 'rb') as fh:
        raw = fh.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as err:
        head = raw[:err.start]
        line = head.count(b'\n') + 1
        column = len(head[head.rfind(b'\n') + 1:].decode('utf-8',
                                                          'replace')) + 1
        raise ParseError("invalid UTF-8 byte 0x{:02x}".format(raw[err.start]),
                         line, column)
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_system(text, default_name=stem)


def parse_pairs(text, system):
    """Reads a pairs file: one "polynomial ; cofactor" per line, # for
    comments.

    Returns: list of (f, k) Poly tuples
    """
    names = _names(system.variables, system.parameters, system.named_polys)
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if tokens[0].kind == 'end':
            continue
        split = next((i for i, t in enumerate(tokens)
                      if t.kind == 'op' and t.value == ';'), None)
        if split is None:
            end = tokens[-1]
            raise ParseError("expected 'EXPR ; EXPR'", end.line, end.column)
        f = _ExprParser(tokens[:split] + [Token('end', None, lineno,
                                                tokens[split].column)],
                        system.variables, names).parse()
        k = _ExprParser(tokens[split + 1:], system.variables, names).parse()
        pairs.append((f, k))
    return pairs


# --------------------------------------------------------------- rendering

def _render_coefficient(c):
    if c.denominator == 1:
        return str(c.numerator)
    return '{}/{}'.format(c.numerator, c.denominator)


def _render_monomial(m, context):
    factors = []
    for name, e in zip(context, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append('{}^{}'.format(name, e))
    return '*'.join(factors)


def render_poly(p):
    """Canonical text of a Poly: terms in descending grevlex order,
    integer or a/b coefficients, ^ for powers. parse_poly reads it back
    to the same Poly.
    """
    if p.is_zero():
        return '0'
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        a = abs(c)
        if not any(m):
            body = _render_coefficient(a)
        elif a == 1:
            body = _render_monomial(m, p.context)
        else:
            body = '{}*{}'.format(_render_coefficient(a),
                                  _render_monomial(m, p.context))
        if k == 0:
            out.append('-' + body if c < 0 else body)
        else:
            out.append(' {} {}'.format('-' if c < 0 else '+', body))
    return ''.join(out)


def _is_atomic(p):
    if len(p.terms) != 1:
        return False
    (m, c), = p.terms.items()
    return c == 1 and sum(m) == 1


def render_ratfunc(r):
    """NUM/DEN, parenthesizing a multi-term numerator and any
    denominator other than a bare variable
    """
    if r.den.is_constant():
        return render_poly(r.as_poly())
    num = render_poly(r.num)
    if len(r.num.terms) > 1:
        num = '({})'.format(num)
    den = render_poly(r.den)
    if not _is_atomic(r.den):
        den = '({})'.format(den)
    return '{}/{}'.format(num, den)
