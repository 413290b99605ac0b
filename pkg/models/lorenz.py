"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


The Lorenz system

    x' = s(y - x),   y' = rx - y - xz,   z' = -bz + xy

and its six families of irreducible invariant algebraic surfaces, each
valid on a parameter subvariety. Functions included:
    lorenz
    families
    invariant_surfaces
    multiplier_condition
"""

from collections import namedtuple
from fractions import Fraction
from darbouxsys.exact import Poly, rat
from darbouxsys.exceptions import NoSolution
from darbouxsys.darboux import DarbouxPair
from darbouxsys.integrability import multiplier_exponents
from darbouxsys.sysparse import VectorField

VARIABLES = ('x', 'y', 'z')

SurfaceFamily = namedtuple('SurfaceFamily', 'name, condition, build')
InvariantSurface = namedtuple('InvariantSurface', 'family, f, k')
SurfaceMultiplier = namedtuple('SurfaceMultiplier',
                               'family, exponent, rational')


def _coords():
    return Poly.variables(VARIABLES)


def lorenz(s, r, b):
    """Lorenz vector field for rational parameters"""
    s, r, b = rat(s), rat(r), rat(b)
    x, y, z = _coords()
    return VectorField(VARIABLES, (s * (y - x), r * x - y - x * z,
                                   -b * z + x * y))


def _quadratic_b2s(s, r, b):
    x, y, z = _coords()
    return x ** 2 - 2 * s * z, -2 * s


def _quartic_s13(s, r, b):
    x, y, z = _coords()
    f = x ** 4 - Fraction(4, 3) * x ** 2 * z - Fraction(4, 9) * y ** 2 \
        - Fraction(8, 9) * x * y + Fraction(4, 3) * r * x ** 2
    return f, Fraction(-4, 3)


def _circular_b1r0(s, r, b):
    x, y, z = _coords()
    return y ** 2 + z ** 2, Fraction(-2)


def _quartic_b4s1(s, r, b):
    x, y, z = _coords()
    f = x ** 4 - 4 * x ** 2 * z - 4 * y ** 2 + 8 * x * y - 4 * r * x ** 2 \
        - 16 * (1 - r) * z
    return f, Fraction(-4)


def _quadric_b1s1(s, r, b):
    x, y, z = _coords()
    return y ** 2 + z ** 2 - r * x ** 2, Fraction(-2)


def _quartic_b6s2(s, r, b):
    x, y, z = _coords()
    a = 4 * s - 2
    f = x ** 4 - 4 * s * x ** 2 * z - 4 * s ** 2 * y ** 2 + 4 * s * a * x * y \
        - a ** 2 * x ** 2
    return f, -4 * s


_FAMILIES = (
    SurfaceFamily('b = 2s', lambda s, r, b: b == 2 * s, _quadratic_b2s),
    SurfaceFamily('b = 0, s = 1/3', lambda s, r, b: b == 0 and
                  s == Fraction(1, 3), _quartic_s13),
    SurfaceFamily('b = 1, r = 0', lambda s, r, b: b == 1 and r == 0,
                  _circular_b1r0),
    SurfaceFamily('b = 4, s = 1', lambda s, r, b: b == 4 and s == 1,
                  _quartic_b4s1),
    SurfaceFamily('b = 1, s = 1', lambda s, r, b: b == 1 and s == 1,
                  _quadric_b1s1),
    SurfaceFamily('b = 6s - 2, r = 2s - 1',
                  lambda s, r, b: b == 6 * s - 2 and r == 2 * s - 1,
                  _quartic_b6s2),
)


def families():
    """The six surface families, in table order"""
    return _FAMILIES


def invariant_surfaces(s, r, b):
    """Invariant algebraic surfaces whose parameter condition holds at
    (s, r, b).

    Returns: list of InvariantSurface(family name, f, cofactor k)
    """
    s, r, b = rat(s), rat(r), rat(b)
    found = []
    for family in _FAMILIES:
        if family.condition(s, r, b):
            f, k = family.build(s, r, b)
            found.append(InvariantSurface(family.name, f,
                                          Poly.constant(VARIABLES, k)))
    return found


def multiplier_condition(s, r, b):
    """Single-surface Jacobian multipliers f^l at (s, r, b). Since the
    cofactors are constants, l * k = -div = s + 1 + b fixes l; the
    multiplier is rational iff l is an integer.

    Returns: list of SurfaceMultiplier(family, exponent or None, rational)
    """
    X = lorenz(s, r, b)
    result = []
    for surface in invariant_surfaces(s, r, b):
        try:
            cert = multiplier_exponents([DarbouxPair(surface.f, surface.k)], X)
        except NoSolution:
            result.append(SurfaceMultiplier(surface.family, None, False))
            continue
        ell, = cert.exponents
        result.append(SurfaceMultiplier(surface.family, ell,
                                        ell.denominator == 1))
    return result
