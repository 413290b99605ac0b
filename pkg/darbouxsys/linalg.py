"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module provides exact linear algebra over the rationals. Matrices
are numpy object arrays of Fractions; elimination is done fraction-free
(Bareiss) on integer rows. Functions included:
    nullspace
    solve_affine
    rank
    char_poly
    rational_roots
    split_rational_roots
Classes:
    QMatrix
    UniPoly
"""

import logging
import math
from collections import namedtuple
from fractions import Fraction
import numpy as np
from darbouxsys.exceptions import Inconsistent, UsageError
from darbouxsys.utils.misc import (canonical_integer_vector, divisors,
                                   integer_content, lcm_of_denominators)

logger = logging.getLogger(__name__)

AffineSolution = namedtuple('AffineSolution', 'particular, homogeneous')

_to_rat = np.frompyfunc(Fraction, 1, 1)


class QMatrix:

    """Dense rows x cols matrix of Fractions.

    QMatrix([[1, 2], [3, 4]]) builds from nested rows;
    QMatrix(entries, shape=(r, c)) from a row-major flat sequence.
    """

    __slots__ = ('array',)

    def __init__(self, data, shape=None):
        if shape is not None:
            rows, cols = shape
            data = list(data)
            if len(data) != rows * cols:
                raise UsageError("{} entries do not fill a {}x{} matrix"
                                 .format(len(data), rows, cols))
            array = np.empty((rows, cols), dtype=object)
            for k, v in enumerate(data):
                array[k // cols, k % cols] = v
        elif isinstance(data, np.ndarray):
            array = data.astype(object)
        else:
            data = [list(row) for row in data]
            if data and len({len(row) for row in data}) != 1:
                raise UsageError("rows of unequal length")
            cols = len(data[0]) if data else 0
            array = np.empty((len(data), cols), dtype=object)
            for i, row in enumerate(data):
                for j, v in enumerate(row):
                    array[i, j] = v
        if array.ndim != 2:
            raise UsageError("a matrix needs two dimensions")
        self.array = _to_rat(array).astype(object) if array.size else array

    @classmethod
    def zeros(cls, rows, cols):
        return cls([Fraction(0)] * (rows * cols), shape=(rows, cols))

    @classmethod
    def identity(cls, n):
        M = cls.zeros(n, n)
        for i in range(n):
            M.array[i, i] = Fraction(1)
        return M

    @classmethod
    def from_columns(cls, columns, rows):
        """Matrix whose columns are the given vectors (each of length
        "rows")
        """
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(rows)]
                   if columns else [[] for _ in range(rows)])

    @property
    def rows(self):
        return self.array.shape[0]

    @property
    def cols(self):
        return self.array.shape[1]

    @property
    def shape(self):
        return self.array.shape

    @property
    def entries(self):
        """Row-major list of entries"""
        return list(self.array.flatten())

    def tolist(self):
        return [list(row) for row in self.array]

    def row(self, i):
        return list(self.array[i, :])

    def column(self, j):
        return list(self.array[:, j])

    def __getitem__(self, key):
        return self.array[key]

    @property
    def T(self):
        return QMatrix(self.array.T.copy())

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise UsageError("shapes {} and {} do not multiply"
                                 .format(self.shape, other.shape))
            if self.cols == 0:
                return QMatrix.zeros(self.rows, other.cols)
            return QMatrix(self.array.dot(other.array))
        vec = np.array([Fraction(v) for v in other], dtype=object)
        if len(vec) != self.cols:
            raise UsageError("vector of length {} does not fit {} columns"
                             .format(len(vec), self.cols))
        if self.cols == 0:
            return [Fraction(0)] * self.rows
        return list(self.array.dot(vec))

    def __add__(self, other):
        return QMatrix(self.array + other.array)

    def __sub__(self, other):
        return QMatrix(self.array - other.array)

    def scale(self, c):
        return QMatrix(self.array * Fraction(c))

    def vstack(self, other):
        if self.cols != other.cols:
            raise UsageError("cannot stack {} on {}".format(other.shape,
                                                           self.shape))
        return QMatrix(np.vstack([self.array, other.array]))

    def take_columns(self, cols):
        return QMatrix(self.array[:, list(cols)].reshape(self.rows, len(cols)))

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and \
            all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def __repr__(self):
        return 'QMatrix({})'.format([[str(v) for v in row]
                                     for row in self.tolist()])


def _integer_rows(rows):
    """Scales every row of Fractions to integers (row scaling leaves
    kernels and ranks alone)
    """
    result = []
    for row in rows:
        den = lcm_of_denominators(row)
        result.append([int(v * den) for v in row])
    return result


def _bareiss_echelon(rows, ncols, order=None):
    """Fraction-free forward elimination in place. Every intermediate
    entry is a minor of the input, so the divisions by the previous
    pivot are exact. Returns the pivot columns, row i of the result
    having its leading entry in the i-th pivot column. "order", when
    given, is permuted along with the rows.
    """
    m = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            if order is not None:
                order[r], order[p] = order[p], order[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            ric = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - ric * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _back_substitute(rows, pivots, x, rhs_col=None):
    """Fills the pivot entries of "x" from the echelon rows, the free
    entries being already set
    """
    ncols = len(x)
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        row = rows[r]
        s = Fraction(row[rhs_col]) if rhs_col is not None else Fraction(0)
        for j in range(pc + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[pc] = s / row[pc]
    return x


def _kernel_from_echelon(rows, pivots, ncols):
    basis = []
    pivot_set = set(pivots)
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        basis.append(canonical_integer_vector(_back_substitute(rows, pivots, x)))
    return basis


def nullspace(M):
    """Canonical kernel basis of M: one vector per free column (in
    column order), scaled to integers with content 1 and a positive
    first nonzero entry.

    Returns: list of lists of Fractions
    """
    rows = _integer_rows(M.tolist())
    pivots = _bareiss_echelon(rows, M.cols)
    logger.debug("nullspace of %dx%d matrix: rank %d", M.rows, M.cols,
                 len(pivots))
    return _kernel_from_echelon(rows, pivots, M.cols)


def rank(M):
    rows = _integer_rows(M.tolist())
    return len(_bareiss_echelon(rows, M.cols))


def solve_affine(M, b):
    """Solves M x = b.

    Returns: AffineSolution(particular, homogeneous) where the particular
             solution has every free variable set to zero and homogeneous
             is nullspace(M)
    Raises: Inconsistent, carrying the index of an input row that the
            elimination reduced to 0 = nonzero
    """
    b = [Fraction(v) for v in b]
    if len(b) != M.rows:
        raise UsageError("right-hand side has {} entries, matrix has {} rows"
                         .format(len(b), M.rows))
    n = M.cols
    rows = _integer_rows([row + [bi] for row, bi in zip(M.tolist(), b)])
    order = list(range(M.rows))
    pivots = _bareiss_echelon(rows, n + 1, order)
    if pivots and pivots[-1] == n:
        bad = order[len(pivots) - 1]
        raise Inconsistent("row {} of the system is inconsistent".format(bad),
                           residual_row=bad)
    x = _back_substitute(rows, pivots, [Fraction(0)] * n, rhs_col=n)
    # the echelon rows of [M | b] restricted to M are an echelon form of M
    homogeneous = _kernel_from_echelon([row[:n] for row in rows], pivots, n)
    return AffineSolution(x, homogeneous)


def solve_matrix(M, B):
    """Unique X with M X = B; M must have full column rank"""
    if rank(M) != M.cols:
        raise UsageError("matrix is rank deficient; solution not unique")
    columns = [solve_affine(M, B.column(j)).particular for j in range(B.cols)]
    return QMatrix.from_columns(columns, M.cols)


class UniPoly:

    """Univariate polynomial with Fraction coefficients, lowest degree
    first.
    """

    __slots__ = ('coefficients',)

    def __init__(self, coefficients):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    def is_zero(self):
        return not self.coefficients

    def degree(self):
        return len(self.coefficients) - 1

    def leading_coefficient(self):
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def at_matrix(self, M):
        """p(M) by Horner's scheme on matrices"""
        n = M.rows
        result = QMatrix.zeros(n, n)
        eye = QMatrix.identity(n)
        for c in reversed(self.coefficients):
            result = result @ M + eye.scale(c)
        return result

    def deflate(self, root):
        """Exact quotient by (t - root); the caller guarantees that
        root is a root
        """
        out = []
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * root + c
            out.append(acc)
        if out[-1] != 0:
            raise UsageError("{} is not a root".format(root))
        return UniPoly(reversed(out[:-1]))

    def integer_coefficients(self):
        """Coefficients scaled to coprime integers"""
        den = lcm_of_denominators(self.coefficients)
        ints = [int(c * den) for c in self.coefficients]
        g = integer_content(ints)
        return [i // g for i in ints]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return 'UniPoly({})'.format([str(c) for c in self.coefficients])


def char_poly(M):
    """det(tI - M) by Berkowitz's division-free algorithm.

    The characteristic polynomial of the trailing principal submatrix
    of size m is extended to size m + 1 by a lower triangular Toeplitz
    matrix built from a, R, C and the powers of the submatrix.
    """
    if M.rows != M.cols:
        raise UsageError("char_poly needs a square matrix, got {}x{}"
                         .format(M.rows, M.cols))
    A = M.array
    n = M.rows
    q = [Fraction(1)]                   # highest degree first
    for k in range(n - 1, -1, -1):
        m = n - k
        a = A[k, k]
        R = A[k, k + 1:]
        C = A[k + 1:, k]
        sub = A[k + 1:, k + 1:]
        col = [Fraction(1), -a]
        v = C
        for _ in range(m - 1):
            col.append(-R.dot(v))
            v = sub.dot(v)
        q = [sum((col[i - j] * q[j] for j in range(min(i + 1, m))),
                 Fraction(0)) for i in range(m + 1)]
    return UniPoly(reversed(q))


def _numerator_candidates(a0, bound):
    """Positive divisors of a0 not exceeding bound. Picks whichever of
    factoring or scanning is cheaper.
    """
    a0 = abs(a0)
    if math.isqrt(a0) <= bound:
        return [d for d in divisors(a0) if d <= bound]
    return [d for d in range(1, bound + 1) if a0 % d == 0]


def rational_roots(p):
    """Distinct rational roots of p in ascending order, by the rational
    root theorem on the integer-scaled coefficients and exact trial
    evaluation.
    """
    if p.is_zero():
        raise UsageError("the zero polynomial has every number as a root")
    ints = p.integer_coefficients()
    roots = set()
    low = 0
    while ints[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
    ints = ints[low:]
    if len(ints) > 1:
        a0, an = ints[0], ints[-1]
        # Cauchy's bound on the size of any root
        cauchy = 1 + max(Fraction(abs(c), abs(an)) for c in ints[:-1])
        reduced = UniPoly(ints)
        for q in divisors(an):
            bound = math.floor(cauchy * q)
            for num in _numerator_candidates(a0, bound):
                if math.gcd(num, q) != 1:
                    continue
                for cand in (Fraction(num, q), Fraction(-num, q)):
                    if reduced(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def split_rational_roots(p):
    """Divides every rational root out of p as often as it divides.

    Returns: (roots with multiplicity as a dict, remainder UniPoly)
    """
    roots = {}
    rest = p
    for r in rational_roots(p):
        while not rest.is_zero() and rest.degree() > 0 and rest(r) == 0:
            rest = rest.deflate(r)
            roots[r] = roots.get(r, 0) + 1
    return roots, rest
