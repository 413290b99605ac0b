"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module verifies and searches Darboux polynomials f, X(f) = k * f,
with a polynomial cofactor k. Functions included:
    verify_darboux
    check_pair
    operator_matrix
    search_given_cofactor
    search_constant_cofactor

Searches work on the coefficient vectors of f over the monomials of
degree <= N, ordered largest first under grevlex, so the canonical
nullspace scaling gives kernels with positive leading coefficient and
integer content 1.

10-17-2026
"""

import logging
from collections import namedtuple
from fractions import Fraction
from darbouxsys.exact import Poly
from darbouxsys.exceptions import (CertificateError, NotDarboux, NotDivisible,
                                   ResourceCapError, UsageError)
from darbouxsys.lie import lie_derivative
from darbouxsys.linalg import (QMatrix, char_poly, nullspace, solve_matrix,
                               split_rational_roots)
from darbouxsys.utils.misc import basis_size, monomials_up_to
from darbouxsys.utils.timer import Timer

logger = logging.getLogger(__name__)

# refuse searches whose monomial basis is larger than this
MAX_BASIS_SIZE = 5000

DarbouxPair = namedtuple('DarbouxPair', 'f, k')
SearchReport = namedtuple('SearchReport',
                          'degree_bound, hits, spectrum_remainder_degree')


def verify_darboux(X, f):
    """Computes the cofactor of f.

    Returns: DarbouxPair(f, k) with X(f) = k * f
    Raises: NotDarboux if f does not divide X(f); UsageError for a
            constant f
    """
    if f.is_constant():
        raise UsageError("Darboux polynomials are nonconstant, got {}".format(f))
    lie = lie_derivative(X, f)
    try:
        k = lie.exact_div(f)
    except NotDivisible:
        raise NotDarboux("{} does not divide X({}) = {}".format(f, f, lie),
                         lie_derivative=lie)
    return DarbouxPair(f, k)


def check_pair(X, f, k):
    """Re-verifies a claimed pair (f, k); the claimed cofactor is only
    compared, never used.
    """
    pair = verify_darboux(X, f)
    if pair.k != k:
        raise UsageError("cofactor of {} is {}, not {}".format(f, pair.k, k))
    return pair


def _check_cap(X, N, max_basis):
    if N < 1:
        raise UsageError("degree bound must be at least 1, got {}".format(N))
    cap = MAX_BASIS_SIZE if max_basis is None else max_basis
    size = basis_size(X.dimension, N)
    if size > cap:
        raise ResourceCapError("degree {} needs {} monomials, cap is {}"
                               .format(N, size, cap), cap=cap, requested=size)
    return size


def _monomial(context, m):
    return Poly._raw(context, {m: Fraction(1)})


def operator_matrix(X, columns, rows, cofactor=None):
    """Matrix of a -> coefficients of X(f_a) - k * f_a where
    f_a = sum(a_m * m for m in columns), restricted to the "rows"
    monomials.
    """
    index = {m: r for r, m in enumerate(rows)}
    entries = [Fraction(0)] * (len(rows) * len(columns))
    ncols = len(columns)
    for j, m in enumerate(columns):
        mono = _monomial(X.context, m)
        image = lie_derivative(X, mono)
        if cofactor is not None and not cofactor.is_zero():
            image = image - cofactor * mono
        for mm, c in image.terms.items():
            r = index.get(mm)
            if r is not None:
                entries[r * ncols + j] = c
    return QMatrix(entries, shape=(len(rows), ncols))


def _poly_from_vector(context, columns, vec):
    return Poly._raw(context, {m: c for m, c in zip(columns, vec) if c})


def _top_degree(X, N):
    return max(N + X.degree() - 1, N)


def search_given_cofactor(X, k, N, max_basis=None):
    """All Darboux polynomials of degree <= N with cofactor k.

    Args: "X" VectorField
          "k" Poly or rational constant, deg k <= deg X - 1
          "N" degree bound, N >= 1
          "max_basis" basis size cap (MAX_BASIS_SIZE)
    Returns: canonical basis of the solution space as a list of Polys
             (for k = 0 the constants are factored out)
    """
    if not isinstance(k, Poly):
        k = Poly.constant(X.context, k)
    if k.degree() > X.degree() - 1:
        raise UsageError("cofactor {} has degree {}, at most {} is possible"
                         .format(k, k.degree(), X.degree() - 1))
    _check_cap(X, N, max_basis)
    n = X.dimension
    columns = list(monomials_up_to(n, N))
    if k.is_zero():
        columns = columns[:-1]
    rows = monomials_up_to(n, _top_degree(X, N))
    M = operator_matrix(X, columns, rows, cofactor=k)
    logger.debug("cofactor %s, degree %d: %dx%d system", k, N, M.rows, M.cols)
    found = []
    for vec in nullspace(M):
        f = _poly_from_vector(X.context, columns, vec)
        if verify_darboux(X, f).k != k:
            raise CertificateError("search hit {} does not have cofactor {}"
                                   .format(f, k))
        found.append(f)
    return found


def search_constant_cofactor(X, N, max_basis=None):
    """All rational c admitting a Darboux polynomial of degree <= N with
    cofactor c.

    The image of f under X splits into the part of degree <= N (block A,
    square in the monomial basis) and the rest (block B). Any solution
    lies in W = ker B and is an eigenvector of the restriction
    S = (K^T K)^-1 K^T A K of A to W, K a basis matrix of W. Rational
    eigenvalues of S are candidates, each checked against the full
    system [B; A - cI].

    Returns: SearchReport(degree_bound, hits, spectrum_remainder_degree),
             hits being (cofactor, kernel basis) sorted by cofactor
    """
    _check_cap(X, N, max_basis)
    n = X.dimension
    columns = list(monomials_up_to(n, N))
    m = len(columns)
    high = [mono for mono in monomials_up_to(n, _top_degree(X, N))
            if sum(mono) > N]
    A = operator_matrix(X, columns, columns)
    B = operator_matrix(X, columns, high)
    logger.debug("degree %d: A is %dx%d, B is %dx%d", N, A.rows, A.cols,
                 B.rows, B.cols)
    W = nullspace(B)
    if not W:
        return SearchReport(N, [], 0)
    K = QMatrix.from_columns(W, m)
    Kt = K.T
    S = solve_matrix(Kt @ K, Kt @ A @ K)
    roots, rest = split_rational_roots(char_poly(S))
    remainder = rest.degree() if rest.degree() > 0 else 0
    logger.debug("restricted operator %dx%d, candidates %s, remainder degree %d",
                 S.rows, S.cols, [str(c) for c in roots], remainder)
    hits = []
    with Timer('constant cofactor verification', total=len(roots)) as timer:
        for c in sorted(roots):
            stacked = B.vstack(A - QMatrix.identity(m).scale(c))
            cols = columns
            if c == 0:
                # constants are always in the kernel of X
                stacked = stacked.take_columns(range(m - 1))
                cols = columns[:-1]
            kernel = []
            for vec in nullspace(stacked):
                f = _poly_from_vector(X.context, cols, vec)
                k = verify_darboux(X, f).k
                if k != c:
                    raise CertificateError("search hit {} has cofactor {}, "
                                           "expected {}".format(f, k, c))
                kernel.append(f)
            if kernel:
                hits.append((Poly.constant(X.context, c), kernel))
            else:
                logger.debug("candidate %s has an empty verified kernel", c)
            timer.progress()
    return SearchReport(N, hits, remainder)
