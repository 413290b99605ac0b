"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module provides the vector field acting as a derivation, and
Jacobian matrices of rational functions. Functions included:
    lie_derivative
    divergence
    jacobian_matrix
    functionally_independent
Classes:
    RfMatrix

10-17-2026
"""

import enum
import logging
from collections import namedtuple
import numpy as np
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.exceptions import UsageError
from darbouxsys.linalg import QMatrix, rank

logger = logging.getLogger(__name__)

# coordinates of independence test points are drawn from
#  [-SAMPLE_BOUND, SAMPLE_BOUND]
SAMPLE_BOUND = 2 ** 16
INDEPENDENCE_ATTEMPTS = 8


class Independence(enum.Enum):
    INDEPENDENT = 'independent'
    PROBABLY_DEPENDENT = 'probably_dependent'


IndependenceResult = namedtuple('IndependenceResult', 'verdict, point, rank')


def _check_context(X, f):
    if f.context != X.context:
        raise UsageError("function over {} does not match the field over {}"
                         .format(f.context, X.context))


def lie_derivative(X, f):
    """X(f) = P1 * df/dx1 + ... + Pn * df/dxn.

    Args: "X" VectorField
          "f" Poly or RatFunc
    Returns: same type as "f"
    """
    if isinstance(f, RatFunc):
        _check_context(X, f)
        num = lie_derivative(X, f.num)
        if f.den.is_constant():
            return RatFunc(num, f.den)
        dden = lie_derivative(X, f.den)
        return RatFunc(num * f.den - f.num * dden, f.den * f.den)
    _check_context(X, f)
    result = Poly.zero(X.context)
    for i, P in enumerate(X.components):
        if P.is_zero():
            continue
        df = f.diff(i)
        if not df.is_zero():
            result = result + P * df
    return result


def divergence(X):
    result = Poly.zero(X.context)
    for i, P in enumerate(X.components):
        result = result + P.diff(i)
    return result


class RfMatrix:

    """Dense matrix of RatFuncs, rows x cols, stored row-major"""

    __slots__ = ('rows', 'cols', 'entries')

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise UsageError("rows of unequal length")
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self.entries = tuple(RatFunc.from_poly(v) if isinstance(v, Poly) else v
                             for r in rows for v in r)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j):
        return [self[i, j] for i in range(self.rows)]

    def tolist(self):
        return [self.row(i) for i in range(self.rows)]

    def take_columns(self, cols):
        return RfMatrix([[self[i, j] for j in cols] for i in range(self.rows)])

    def replace_column(self, j, column):
        """Copy with column "j" replaced"""
        rows = self.tolist()
        for i, v in enumerate(column):
            rows[i][j] = v
        return RfMatrix(rows)

    def evaluate(self, point):
        """Exact numeric matrix at "point". Raises ZeroDivisionError if
        a denominator vanishes there.
        """
        return QMatrix([[v.evaluate(point) for v in row]
                        for row in self.tolist()])

    def det(self):
        """Determinant by cofactor expansion along the first row"""
        if self.rows != self.cols:
            raise UsageError("determinant of a non-square {}x{} matrix"
                             .format(self.rows, self.cols))
        return _det(self.tolist())

    def __eq__(self, other):
        if not isinstance(other, RfMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def __repr__(self):
        return 'RfMatrix({})'.format([[str(v) for v in row]
                                      for row in self.tolist()])


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0]
    return total


def jacobian_matrix(H):
    """Jacobian of the functions H: entry (j, i) is dH_j/dx_i.

    Args: "H" sequence of RatFunc (or Poly), 1 <= len(H) <= nvars
    Returns: RfMatrix
    """
    H = [RatFunc.from_poly(h) if isinstance(h, Poly) else h for h in H]
    if not H:
        raise UsageError("jacobian_matrix needs at least one function")
    context = H[0].context
    if any(h.context != context for h in H):
        raise UsageError("functions live over different variables")
    if len(H) > len(context):
        raise UsageError("{} functions in {} variables".format(len(H),
                                                              len(context)))
    return RfMatrix([[h.diff(i) for i in range(len(context))] for h in H])


def functionally_independent(H, seed=0, attempts=None, bound=None):
    """Probabilistic test for functional independence of H.

    The Jacobian is evaluated at pseudo-random integer points. Full row
    rank at any point proves independence and that point is returned as
    certificate; otherwise the answer is PROBABLY_DEPENDENT. Points where
    a denominator vanishes are skipped but still count as attempts.

    Args: "H" sequence of RatFunc
          "seed" integer seed for numpy.random.default_rng
          "attempts" number of points to try (INDEPENDENCE_ATTEMPTS)
          "bound" coordinates range over [-bound, bound] (SAMPLE_BOUND)
    Returns: IndependenceResult(verdict, point, rank); "point" and
             "rank" belong to the certificate, or to the best attempt
    """
    attempts = INDEPENDENCE_ATTEMPTS if attempts is None else attempts
    bound = SAMPLE_BOUND if bound is None else bound
    jac = jacobian_matrix(H)
    rng = np.random.default_rng(seed)
    best = IndependenceResult(Independence.PROBABLY_DEPENDENT, None, 0)
    for attempt in range(attempts):
        point = tuple(int(v) for v in rng.integers(-bound, bound, size=jac.cols,
                                                   endpoint=True))
        try:
            values = jac.evaluate(point)
        except ZeroDivisionError:
            logger.debug("attempt %d: denominator vanishes at %s, skipped",
                         attempt, point)
            continue
        r = rank(values)
        logger.debug("attempt %d: rank %d at %s", attempt, r, point)
        if r == jac.rows:
            return IndependenceResult(Independence.INDEPENDENT, point, r)
        if best.point is None or r > best.rank:
            best = IndependenceResult(Independence.PROBABLY_DEPENDENT, point, r)
    return best
