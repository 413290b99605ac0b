"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module provides exact arithmetic on sparse multivariate
polynomials with rational coefficients and on quotients of them.
Coefficients are fractions.Fraction (arbitrary precision on both ends).
Classes:
    Poly
    RatFunc
Functions included:
    rat
    poly_arith
    poly_exact_div
    poly_diff
    poly_eval
    ratfunc_arith
    ratfunc_diff
    ratfunc_equal

Every value is immutable once built. Term order for leading terms and
printing is graded reverse lexicographic over the declared variable
order.
"""

import itertools
import logging
import operator
from collections import defaultdict
from fractions import Fraction
from darbouxsys.exceptions import NotDivisible, UsageError
from darbouxsys.utils.misc import (grevlex_key, integer_content,
                                   lcm_of_denominators)

logger = logging.getLogger(__name__)

Rat = Fraction


def rat(value):
    """Converts an int, a Fraction or a string such as "-3/4" to a
    Fraction. Floats are refused since they are not exact.
    """
    if isinstance(value, float):
        raise UsageError("floating point value {!r} is not exact".format(value))
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError("not a rational number: {!r}".format(value)) from err


def _add_exps(m1, m2):
    return tuple(map(operator.add, m1, m2))


class Poly:

    """Sparse polynomial: a map from exponent tuples to nonzero
    Fractions over an ordered tuple of variable names.
    """

    __slots__ = ('context', 'terms')

    def __init__(self, context, terms=None):
        self.context = tuple(context)
        nvars = len(self.context)
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != nvars or any(e < 0 for e in m):
                raise UsageError("bad monomial {} for variables {}"
                                 .format(m, self.context))
            c = rat(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def _raw(cls, context, terms):
        """Builds a Poly from a term map already known to be clean"""
        p = cls.__new__(cls)
        p.context = context
        p.terms = terms
        return p

    @classmethod
    def zero(cls, context):
        return cls._raw(tuple(context), {})

    @classmethod
    def constant(cls, context, c):
        context = tuple(context)
        c = rat(c)
        return cls._raw(context, {(0,) * len(context): c} if c else {})

    @classmethod
    def one(cls, context):
        return cls.constant(context, 1)

    @classmethod
    def variable(cls, context, var):
        """The coordinate function of "var" (a name or an index)"""
        context = tuple(context)
        i = context.index(var) if isinstance(var, str) else var
        if not 0 <= i < len(context):
            raise UsageError("no variable {!r} in {}".format(var, context))
        m = [0] * len(context)
        m[i] = 1
        return cls._raw(context, {tuple(m): Fraction(1)})

    @classmethod
    def variables(cls, context):
        return tuple(cls.variable(context, i) for i in range(len(context)))

    # ---------------------------------------------------------- inspection

    @property
    def nvars(self):
        return len(self.context)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        """The value of a constant polynomial"""
        if not self.is_constant():
            raise UsageError("{} is not constant".format(self))
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial"""
        return max((sum(m) for m in self.terms), default=-1)

    def monomials(self):
        """Exponent tuples, largest first under grevlex"""
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def sorted_terms(self):
        return [(m, self.terms[m]) for m in self.monomials()]

    def leading_term(self):
        if not self.terms:
            raise UsageError("the zero polynomial has no leading term")
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def coefficient(self, m):
        return self.terms.get(tuple(m), Fraction(0))

    def primitive(self):
        """Splits off the rational content. Returns (c, q) with q having
        integer coefficients of content 1 and positive leading
        coefficient, and self = c * q.
        """
        if not self.terms:
            return Fraction(0), self
        den = lcm_of_denominators(self.terms.values())
        g = integer_content(int(c * den) for c in self.terms.values())
        content = Fraction(g, den)
        if self.leading_coefficient() < 0:
            content = -content
        return content, self.scale(1 / content)

    # ---------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.context != self.context:
                raise UsageError("variable contexts differ: {} vs {}"
                                 .format(self.context, other.context))
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.context, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Poly._raw(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.context, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = rat(c)
        if not c:
            return Poly.zero(self.context)
        return Poly._raw(self.context, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = defaultdict(Fraction)
        for (m1, c1), (m2, c2) in itertools.product(self.terms.items(),
                                                    other.terms.items()):
            terms[_add_exps(m1, m2)] += c1 * c2
        return Poly._raw(self.context, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise UsageError("polynomial exponents must be nonnegative integers")
        result = Poly.one(self.context)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other):
        """Exact quotient q with q * other == self. Raises NotDivisible
        if there is none.
        """
        other = self._coerce(other)
        if other is None:
            raise UsageError("cannot divide a polynomial by {!r}".format(other))
        if other.is_zero():
            raise UsageError("division by the zero polynomial")
        if self.is_zero():
            return Poly.zero(self.context)
        if self.degree() < other.degree():
            raise NotDivisible("degree of divisor exceeds degree of dividend")
        lm_b, lc_b = other.leading_term()
        rem = dict(self.terms)
        quotient = {}
        while rem:
            lm_r = max(rem, key=grevlex_key)
            if any(e < f for e, f in zip(lm_r, lm_b)):
                raise NotDivisible("leading monomial {} is not a multiple of {}"
                                   .format(lm_r, lm_b))
            qm = tuple(map(operator.sub, lm_r, lm_b))
            qc = rem[lm_r] / lc_b
            quotient[qm] = qc
            for m, c in other.terms.items():
                mm = _add_exps(qm, m)
                v = rem.get(mm, 0) - qc * c
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Poly._raw(self.context, quotient)

    def diff(self, i):
        """Partial derivative with respect to variable index "i" """
        if not 0 <= i < self.nvars:
            raise UsageError("variable index {} out of range".format(i))
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                terms[tuple(mm)] = c * m[i]
        return Poly._raw(self.context, terms)

    def evaluate(self, point):
        """Exact value at "point" by nested Horner evaluation, one
        variable at a time.
        """
        point = [rat(v) for v in point]
        if len(point) != self.nvars:
            raise UsageError("point has {} coordinates, expected {}"
                             .format(len(point), self.nvars))
        return _horner(list(self.terms.items()), point, 0)

    # ---------------------------------------------------------- comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.context, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return 'Poly({!r}, {!r})'.format(self.context, str(self))

    def __str__(self):
        from darbouxsys.sysparse import render_poly
        return render_poly(self)


def _horner(items, point, i):
    if not items:
        return Fraction(0)
    if i == len(point):
        return sum((c for _, c in items), Fraction(0))
    groups = defaultdict(list)
    for m, c in items:
        groups[m[i]].append((m, c))
    x = point[i]
    acc = Fraction(0)
    for e in range(max(groups), -1, -1):
        acc = acc * x
        if e in groups:
            acc += _horner(groups[e], point, i + 1)
    return acc


def _monomial_gcd(*polys):
    exps = None
    for p in polys:
        for m in p.terms:
            exps = list(m) if exps is None else list(map(min, exps, m))
    return tuple(exps) if exps else None


def _shift_down(p, m0):
    return Poly._raw(p.context, {tuple(map(operator.sub, m, m0)): c
                                 for m, c in p.terms.items()})


def _normalize(num, den):
    """Cancels the common monomial factor, an exact polynomial quotient
    when the denominator divides the numerator, and makes the
    denominator an integer polynomial of content 1 with positive
    grevlex leading coefficient.
    """
    if num.is_zero():
        return num, Poly.one(num.context)
    m0 = _monomial_gcd(num, den)
    if any(m0):
        num, den = _shift_down(num, m0), _shift_down(den, m0)
    if not den.is_constant() and num.degree() >= den.degree():
        try:
            num = num.exact_div(den)
            den = Poly.one(num.context)
        except NotDivisible:
            pass
    content, den = den.primitive()
    if content != 1:
        num = num.scale(1 / content)
    return num, den


class RatFunc:

    """Quotient num/den of two Polys over the same variables. No
    multivariate gcd is taken; equality is decided by cross
    multiplication.
    """

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise UsageError("RatFunc numerator must be a Poly")
        if den is None:
            den = Poly.one(num.context)
        elif not isinstance(den, Poly):
            den = Poly.constant(num.context, den)
        if den.context != num.context:
            raise UsageError("variable contexts differ: {} vs {}"
                             .format(num.context, den.context))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def constant(cls, context, c):
        return cls._raw(Poly.constant(context, c), Poly.one(context))

    @classmethod
    def from_poly(cls, p):
        return cls._raw(p, Poly.one(p.context))

    @property
    def context(self):
        return self.num.context

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        """True iff every partial derivative vanishes"""
        if self.num.is_constant() and self.den.is_constant():
            return True
        return all(self.diff(i).is_zero() for i in range(self.nvars))

    def as_poly(self):
        if not self.is_polynomial():
            raise UsageError("{} is not a polynomial".format(self))
        return self.num.scale(1 / self.den.constant_value())

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.context != self.context:
                raise UsageError("variable contexts differ: {} vs {}"
                                 .format(self.context, other.context))
            return other
        if isinstance(other, Poly):
            if other.context != self.context:
                raise UsageError("variable contexts differ: {} vs {}"
                                 .format(self.context, other.context))
            return RatFunc.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.context, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return RatFunc(self.num + other.num, d1)
        if d1.is_constant() or d2.is_constant():
            return RatFunc(self.num * d2 + other.num * d1, d1 * d2)
        # one denominator often divides the other (partials of a common
        #  expression); use it as the common denominator when it does
        for (na, da), (nb, db) in (((self.num, d1), (other.num, d2)),
                                   ((other.num, d2), (self.num, d1))):
            try:
                q = db.exact_div(da)
            except NotDivisible:
                continue
            return RatFunc(na * q + nb, db)
        return RatFunc(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.constant(self.context, 0)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if not isinstance(e, int):
            raise UsageError("rational function exponents must be integers")
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def diff(self, i):
        """Partial derivative by the quotient rule"""
        dn = self.num.diff(i)
        if self.den.is_constant():
            return RatFunc._raw(dn, self.den)
        dd = self.den.diff(i)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point):
        """Exact value at "point"; ZeroDivisionError where the
        denominator vanishes.
        """
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at {}"
                                    .format(tuple(str(v) for v in point)))
        return self.num.evaluate(point) / d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return 'RatFunc({!r}, {!r})'.format(self.context, str(self))

    def __str__(self):
        from darbouxsys.sysparse import render_ratfunc
        return render_ratfunc(self)


_POLY_OPS = {'add': operator.add, 'sub': operator.sub, 'mul': operator.mul}
_RATFUNC_OPS = dict(_POLY_OPS, div=operator.truediv)


def poly_arith(a, b, op):
    """Exact sum, difference or product of two Polys over the same
    variables. "op" is one of "add", "sub", "mul".
    """
    if op not in _POLY_OPS:
        raise UsageError("unknown polynomial operation {!r}".format(op))
    if a.context != b.context:
        raise UsageError("variable contexts differ: {} vs {}"
                         .format(a.context, b.context))
    return _POLY_OPS[op](a, b)


def poly_exact_div(a, b):
    return a.exact_div(b)


def poly_diff(p, var):
    return p.diff(var)


def poly_eval(p, point):
    return p.evaluate(point)


def ratfunc_arith(a, b, op):
    """"op" is one of "add", "sub", "mul", "div" """
    if op not in _RATFUNC_OPS:
        raise UsageError("unknown rational function operation {!r}".format(op))
    a, b = _as_ratfunc(a), _as_ratfunc(b)
    if a.context != b.context:
        raise UsageError("variable contexts differ: {} vs {}"
                         .format(a.context, b.context))
    return _RATFUNC_OPS[op](a, b)


def ratfunc_diff(r, var):
    return _as_ratfunc(r).diff(var)


def ratfunc_equal(a, b):
    """a == b iff a.num * b.den == b.num * a.den"""
    if a.context != b.context:
        raise UsageError("variable contexts differ: {} vs {}"
                         .format(a.context, b.context))
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def _as_ratfunc(r):
    return RatFunc.from_poly(r) if isinstance(r, Poly) else r
