import os
import unittest
from fractions import Fraction
import numpy as np
from darbouxsys import darboux
from darbouxsys.cli import FIXTURES
from darbouxsys.exact import Poly
from darbouxsys.exceptions import (NotDarboux, ResourceCapError,
                                   UsageError)
from darbouxsys.sysparse import VectorField, load_system
from models.lorenz import lorenz
import randsys

XYZ = randsys.XYZ
XY = randsys.XY
x, y, z = Poly.variables(XYZ)
u, v = Poly.variables(XY)


def _field(name):
    return load_system(os.path.join(FIXTURES, 'systems', name)).field


class TestVerifyDarboux(unittest.TestCase):
    """Test darbouxsys.darboux.verify_darboux()"""
    def test_lorenz_quadric(self):
        pair = darboux.verify_darboux(_field('lorenz_b2s.vf'), x ** 2 - 2 * z)
        self.assertEqual(pair.k, -2)

    def test_lorenz_quadric_b1s1(self):
        f = y ** 2 + z ** 2 - 28 * x ** 2
        self.assertEqual(darboux.verify_darboux(_field('lorenz_b1s1.vf'), f).k,
                         -2)

    def test_polynomial_cofactor(self):
        X = VectorField(XY, (u ** 2, v))
        self.assertEqual(darboux.verify_darboux(X, u).k, u)

    def test_not_darboux(self):
        X = _field('lorenz_b2s.vf')
        with self.assertRaises(NotDarboux) as ctx:
            darboux.verify_darboux(X, x)
        self.assertEqual(ctx.exception.lie_derivative, y - x)

    def test_constant(self):
        with self.assertRaises(UsageError):
            darboux.verify_darboux(_field('lorenz_b2s.vf'), Poly.one(XYZ))

    def test_check_pair(self):
        X = _field('lorenz_b2s.vf')
        f = x ** 2 - 2 * z
        self.assertEqual(darboux.check_pair(X, f, Poly.constant(XYZ, -2)).f, f)
        with self.assertRaises(UsageError):
            darboux.check_pair(X, f, Poly.constant(XYZ, 5))

    def test_cofactor_additivity(self):
        X = _field('lorenz_b1s1.vf')
        f = y ** 2 + z ** 2 - 28 * x ** 2
        self.assertEqual(darboux.verify_darboux(X, f * f).k, -4)
        rng = np.random.default_rng(51)
        for _ in range(100):
            a = [int(c) for c in rng.integers(-3, 3, size=3, endpoint=True)]
            X = VectorField(XYZ, (a[0] * x, a[1] * y, a[2] * z + x))
            # x, y and the products of their powers are Darboux
            e = [int(c) for c in rng.integers(0, 3, size=4, endpoint=True)]
            f = x ** (e[0] + 1) * y ** e[1]
            g = x ** e[2] * y ** (e[3] + 1)
            kf = darboux.verify_darboux(X, f).k
            kg = darboux.verify_darboux(X, g).k
            self.assertEqual(darboux.verify_darboux(X, f * g).k, kf + kg)


class TestSearchGivenCofactor(unittest.TestCase):
    """Test darbouxsys.darboux.search_given_cofactor()"""
    def test_linear_field(self):
        X = VectorField(XY, (u, v))
        self.assertEqual(darboux.search_given_cofactor(X, 1, 1), [u, v])

    def test_lorenz_circle(self):
        X = lorenz(2, 0, 1)
        found = darboux.search_given_cofactor(X, -2, 2)
        self.assertTrue(randsys.in_span(y ** 2 + z ** 2, found))
        for f in found:
            self.assertEqual(darboux.verify_darboux(X, f).k, -2)

    def test_no_solution(self):
        self.assertEqual(darboux.search_given_cofactor(lorenz(2, 0, 1), 5, 2),
                         [])

    def test_zero_cofactor_skips_constants(self):
        X = VectorField(XY, (v, -u))
        self.assertEqual(darboux.search_given_cofactor(X, 0, 2),
                         [u ** 2 + v ** 2])

    def test_cofactor_degree(self):
        with self.assertRaises(UsageError):
            darboux.search_given_cofactor(lorenz(2, 0, 1), x ** 2, 2)

    def test_degree_bound(self):
        with self.assertRaises(UsageError):
            darboux.search_given_cofactor(lorenz(2, 0, 1), -2, 0)

    def test_cap(self):
        with self.assertRaises(ResourceCapError) as ctx:
            darboux.search_given_cofactor(lorenz(2, 0, 1), -2, 3,
                                          max_basis=10)
        self.assertEqual(ctx.exception.requested, 20)
        self.assertEqual(ctx.exception.cap, 10)

    def test_matches_evaluation_oracle(self):
        rng = np.random.default_rng(52)
        for case in range(25):
            N = 1 + case % 2
            X = randsys.random_field(rng, XY, 2)
            if case % 3:
                # give the field the invariant line u = 0
                L = randsys.random_poly(rng, XY, 1, nterms=2)
                X = VectorField(XY, (u * L, X[1]))
                k = L
            else:
                k = randsys.random_poly(rng, XY, 1, nterms=2)
            if X.degree() < 2:
                X = VectorField(XY, (X[0] + u * v, X[1]))
                if case % 3:
                    k = k + v
            expected = randsys.oracle_given_cofactor(X, k, N, rng)
            self.assertEqual(darboux.search_given_cofactor(X, k, N), expected)
            if case % 3:
                self.assertTrue(randsys.in_span(u, expected))


class TestSearchConstantCofactor(unittest.TestCase):
    """Test darbouxsys.darboux.search_constant_cofactor()"""
    def assertHit(self, report, c, f):
        hits = dict((k.constant_value(), kernel) for k, kernel in report.hits)
        self.assertIn(c, hits)
        self.assertTrue(randsys.in_span(f, hits[c]))

    def test_lorenz_circle(self):
        report = darboux.search_constant_cofactor(_field('lorenz_b1r0.vf'), 2)
        self.assertEqual(report.degree_bound, 2)
        self.assertHit(report, -2, y ** 2 + z ** 2)

    def test_lorenz_quadric(self):
        report = darboux.search_constant_cofactor(_field('lorenz_b2s.vf'), 2)
        self.assertHit(report, -2, x ** 2 - 2 * z)

    def test_rotation(self):
        X = VectorField(XY, (v, -u))
        report = darboux.search_constant_cofactor(X, 2)
        self.assertEqual([(k.constant_value(), kernel)
                          for k, kernel in report.hits],
                         [(0, [u ** 2 + v ** 2])])
        self.assertEqual(report.spectrum_remainder_degree, 4)

    def test_hits_are_verified(self):
        X = VectorField(XYZ, (x, 2 * y, -z))
        report = darboux.search_constant_cofactor(X, 2)
        cofactors = [k.constant_value() for k, _ in report.hits]
        self.assertEqual(cofactors, sorted(cofactors))
        for k, kernel in report.hits:
            for f in kernel:
                self.assertEqual(darboux.verify_darboux(X, f).k, k)
        self.assertEqual(cofactors, [-2, -1, 0, 1, 2, 3, 4])
        self.assertEqual(report.spectrum_remainder_degree, 0)

    def test_cap(self):
        with self.assertRaises(ResourceCapError):
            darboux.search_constant_cofactor(lorenz(1, 28, 2), 3, max_basis=19)


class TestOperatorMatrix(unittest.TestCase):
    """Test darbouxsys.darboux.operator_matrix()"""
    def test_diagonal(self):
        X = VectorField(XY, (u, 2 * v))
        columns = [(1, 0), (0, 1)]
        M = darboux.operator_matrix(X, columns, columns,
                                    cofactor=Poly.constant(XY, 1))
        self.assertEqual(M.tolist(), [[0, 0], [0, Fraction(1)]])


if __name__ == '__main__':
    unittest.main()
