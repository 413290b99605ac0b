"""Random polynomials, fields and rational functions for the property
tests, plus a small dense kernel solver used as an independent oracle.
"""

import math
from fractions import Fraction
import numpy as np
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.sysparse import VectorField
from darbouxsys.utils.misc import monomials_up_to

XYZ = ('x', 'y', 'z')
XY = ('x', 'y')


def random_coefficient(rng, bound=5, fractions=False):
    c = 0
    while c == 0:
        c = int(rng.integers(-bound, bound, endpoint=True))
    if fractions:
        return Fraction(c, int(rng.integers(1, 4, endpoint=True)))
    return Fraction(c)


def random_poly(rng, context, max_degree, nterms=4, bound=5, fractions=False):
    """Sum of up to "nterms" random terms of degree <= max_degree"""
    monos = monomials_up_to(len(context), max_degree)
    terms = {}
    for _ in range(nterms):
        m = monos[int(rng.integers(len(monos)))]
        terms[m] = random_coefficient(rng, bound, fractions)
    return Poly(context, terms)


def random_nonzero_poly(rng, context, max_degree, **kwargs):
    p = Poly.zero(context)
    while p.is_zero():
        p = random_poly(rng, context, max_degree, **kwargs)
    return p


def random_field(rng, context, degree, nterms=3):
    components = [random_poly(rng, context, degree, nterms)
                  for _ in context]
    while all(p.is_zero() for p in components):
        components[0] = random_poly(rng, context, degree, nterms)
    return VectorField(context, components)


def random_ratfunc(rng, context, degree, nterms=2):
    num = random_nonzero_poly(rng, context, degree, nterms=nterms)
    den = random_nonzero_poly(rng, context, degree, nterms=nterms)
    return RatFunc(num, den)


def random_matrix(rng, rows, cols, bound=3):
    return [[Fraction(int(v)) for v in row]
            for row in rng.integers(-bound, bound, size=(rows, cols),
                                    endpoint=True)]


def dense_kernel(rows, ncols):
    """Kernel basis by Gauss-Jordan elimination over Fractions: one
    vector per free column, scaled to coprime integers with a positive
    first nonzero entry.
    """
    A = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        lead = A[r][c]
        A[r] = [v / lead for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(A, pivots):
            v[pc] = -row[free]
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for i in ints:
            g = math.gcd(g, i)
        sign = 1 if next(i for i in ints if i) > 0 else -1
        basis.append([Fraction(sign * i // g) for i in ints])
    return basis


def oracle_given_cofactor(X, k, N, rng, oversample=3):
    """Darboux polynomials of degree <= N with cofactor k, assembled by
    evaluating X(f) - k f at random integer points instead of matching
    coefficients
    """
    n = len(X.context)
    columns = list(monomials_up_to(n, N))
    if k.is_zero():
        columns = columns[:-1]
    images = []
    for m in columns:
        mono = Poly(X.context, {m: 1})
        image = Poly.zero(X.context)
        for i, P in enumerate(X.components):
            image = image + P * mono.diff(i)
        images.append(image - k * mono)
    npoints = oversample * len(monomials_up_to(n, N + X.degree()))
    rows = []
    for _ in range(npoints):
        point = [int(v) for v in rng.integers(-1000, 1000, size=n,
                                              endpoint=True)]
        rows.append([img.evaluate(point) for img in images])
    return [Poly(X.context, {m: c for m, c in zip(columns, v) if c})
            for v in dense_kernel(rows, len(columns))]


def in_span(p, basis):
    """True iff p is a linear combination of the polynomials in basis"""
    monos = set(p.terms)
    for b in basis:
        monos.update(b.terms)
    monos = sorted(monos)
    vectors = [[b.coefficient(m) for m in monos] for b in basis]
    before = len(basis) - len(dense_kernel(_transpose(vectors, len(monos)),
                                           len(basis))) if basis else 0
    with_p = vectors + [[p.coefficient(m) for m in monos]]
    after = len(with_p) - len(dense_kernel(_transpose(with_p, len(monos)),
                                           len(with_p)))
    return before == after


def _transpose(vectors, length):
    return [[v[i] for v in vectors] for i in range(length)]
