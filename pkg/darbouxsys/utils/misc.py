"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module provides tools that are useful but not, strictly
speaking, related to vector fields. Functions included:
    grevlex_key
    monomials_of_degree
    monomials_up_to
    basis_size
    lcm_of_denominators
    integer_content
    canonical_integer_vector
    divisors

10-17-2026
"""

import functools
import itertools
import math
from fractions import Fraction
from scipy.special import comb


def grevlex_key(m):
    """Sort key of an exponent tuple under graded reverse lexicographic
    order. Larger keys are larger monomials.
    """
    return (sum(m), tuple(-e for e in reversed(m)))


@functools.lru_cache(maxsize=None)
def monomials_of_degree(nvars, d):
    """All exponent tuples of length "nvars" with total degree "d",
    largest first under grevlex.

    Args: "nvars" number of variables
          "d" total degree
    Returns: tuple of tuples
    """
    if nvars == 0:
        return ((),) if d == 0 else ()
    monos = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        monos.append(tuple(exps))
    return tuple(sorted(monos, key=grevlex_key, reverse=True))


@functools.lru_cache(maxsize=None)
def monomials_up_to(nvars, N):
    """All exponent tuples of total degree <= N, largest first under
    grevlex (so the constant monomial comes last).
    """
    monos = []
    for d in range(N, -1, -1):
        monos.extend(monomials_of_degree(nvars, d))
    return tuple(monos)


def basis_size(nvars, N):
    """Number of monomials of total degree <= N in "nvars" variables"""
    return int(comb(nvars + N, N, exact=True))


def lcm_of_denominators(values):
    """Least common multiple of the denominators of a sequence of
    Fractions (1 for an empty sequence)
    """
    result = 1
    for v in values:
        result = math.lcm(result, Fraction(v).denominator)
    return result


def integer_content(ints):
    """gcd of a sequence of integers (0 if all of them vanish)"""
    result = 0
    for i in ints:
        result = math.gcd(result, i)
    return result


def canonical_integer_vector(vec):
    """Scales a rational vector to integer entries with content 1 and a
    positive first nonzero entry. The zero vector is returned as is.

    Args: "vec" sequence of Fractions/ints
    Returns: list of Fractions
    """
    vec = [Fraction(v) for v in vec]
    lead = next((v for v in vec if v != 0), None)
    if lead is None:
        return vec
    den = lcm_of_denominators(vec)
    ints = [int(v * den) for v in vec]
    g = integer_content(ints)
    sign = 1 if lead > 0 else -1
    return [Fraction(sign * i // g) for i in ints]


def divisors(n):
    """Positive divisors of a nonzero integer, ascending"""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]
