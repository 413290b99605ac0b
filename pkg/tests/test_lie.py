import unittest
from fractions import Fraction
import numpy as np
from numpy import testing
from darbouxsys import lie, linalg
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.exceptions import UsageError
from darbouxsys.sysparse import VectorField
from models.lorenz import lorenz
import randsys

XYZ = randsys.XYZ
x, y, z = Poly.variables(XYZ)
one, zero = Poly.one(XYZ), Poly.zero(XYZ)


class TestLieDerivative(unittest.TestCase):
    """Test darbouxsys.lie.lie_derivative()"""
    def test_lorenz_quadric(self):
        X = lorenz(1, 28, 2)
        f = x ** 2 - 2 * z
        self.assertEqual(lie.lie_derivative(X, f), -2 * f)

    def test_lorenz_circle(self):
        X = lorenz(10, 0, 1)
        f = y ** 2 + z ** 2
        self.assertEqual(lie.lie_derivative(X, f), -2 * f)

    def test_one_variable(self):
        u, = Poly.variables(('u',))
        X = VectorField(('u',), (u,))
        self.assertEqual(lie.lie_derivative(X, u ** 3), 3 * u ** 3)

    def test_rational_first_integral(self):
        X = VectorField(XYZ, (x, y, z))
        self.assertTrue(lie.lie_derivative(X, RatFunc(x, y)).is_zero())
        self.assertTrue(lie.lie_derivative(X, RatFunc(y, z)).is_zero())

    def test_quotient_rule(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            X = randsys.random_field(rng, XYZ, 2)
            f = randsys.random_nonzero_poly(rng, XYZ, 2)
            g = randsys.random_nonzero_poly(rng, XYZ, 2)
            expected = RatFunc(lie.lie_derivative(X, f) * g
                               - f * lie.lie_derivative(X, g), g * g)
            self.assertEqual(lie.lie_derivative(X, RatFunc(f, g)), expected)

    def test_leibniz(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            X = randsys.random_field(rng, XYZ, 2)
            f = randsys.random_poly(rng, XYZ, 2, fractions=True)
            g = randsys.random_poly(rng, XYZ, 2, fractions=True)
            self.assertEqual(lie.lie_derivative(X, f * g),
                             lie.lie_derivative(X, f) * g
                             + f * lie.lie_derivative(X, g))

    def test_linearity(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            X = randsys.random_field(rng, XYZ, 2)
            f = randsys.random_poly(rng, XYZ, 3)
            g = randsys.random_poly(rng, XYZ, 3)
            a, b = (randsys.random_coefficient(rng, fractions=True)
                    for _ in range(2))
            self.assertEqual(lie.lie_derivative(X, a * f + b * g),
                             a * lie.lie_derivative(X, f)
                             + b * lie.lie_derivative(X, g))

    def test_context_mismatch(self):
        X = VectorField(('u', 'v'), Poly.variables(('u', 'v')))
        with self.assertRaises(UsageError):
            lie.lie_derivative(X, x)


class TestDivergence(unittest.TestCase):
    """Test darbouxsys.lie.divergence()"""
    def test_lorenz(self):
        self.assertEqual(lie.divergence(lorenz(1, 28, 2)), -4)
        self.assertEqual(lie.divergence(lorenz(10, 28, Fraction(8, 3))),
                         Fraction(-41, 3))

    def test_rotation(self):
        X = VectorField(('x', 'y'), (Poly.variable(('x', 'y'), 1),
                                     -Poly.variable(('x', 'y'), 0)))
        self.assertTrue(lie.divergence(X).is_zero())

    def test_diagonal(self):
        self.assertEqual(lie.divergence(VectorField(XYZ, (x, y, z))), 3)


class TestJacobianMatrix(unittest.TestCase):
    """Test darbouxsys.lie.jacobian_matrix()"""
    def test_two_integrals(self):
        jac = lie.jacobian_matrix([RatFunc(x, y), RatFunc(y, z)])
        self.assertEqual((jac.rows, jac.cols), (2, 3))
        self.assertEqual(jac[0, 0], RatFunc(Poly.one(XYZ), y))
        self.assertEqual(jac[0, 1], RatFunc(-x, y ** 2))
        self.assertTrue(jac[0, 2].is_zero())
        self.assertEqual(jac[1, 2], RatFunc(-y, z ** 2))

    def test_polynomials(self):
        jac = lie.jacobian_matrix([x * y + z])
        self.assertEqual(jac.row(0), [y, x, 1])

    def test_bad_sizes(self):
        with self.assertRaises(UsageError):
            lie.jacobian_matrix([])
        with self.assertRaises(UsageError):
            lie.jacobian_matrix([x, y, z, x + y])

    def test_evaluate(self):
        jac = lie.jacobian_matrix([RatFunc(x, y), RatFunc(y, z)])
        values = jac.evaluate((2, 1, 1))
        testing.assert_array_equal(values.array,
                                   np.array([[1, -2, 0], [0, 1, -1]],
                                            dtype=object))
        with self.assertRaises(ZeroDivisionError):
            jac.evaluate((1, 0, 1))


class TestRfMatrixDet(unittest.TestCase):
    """Test darbouxsys.lie.RfMatrix.det()"""
    def test_two_by_two(self):
        M = lie.RfMatrix([[x, y], [z, one]])
        self.assertEqual(M.det(), x - y * z)

    def test_three_by_three(self):
        M = lie.RfMatrix([[x, zero, zero], [zero, y, zero], [one, one, z]])
        self.assertEqual(M.det(), x * y * z)

    def test_replace_column(self):
        M = lie.RfMatrix([[x, y], [z, one]]).replace_column(0, [one, one])
        self.assertEqual(M.det(), 1 - y)

    def test_not_square(self):
        with self.assertRaises(UsageError):
            lie.RfMatrix([[x, y]]).det()


class TestFunctionallyIndependent(unittest.TestCase):
    """Test darbouxsys.lie.functionally_independent()"""
    def test_independent(self):
        H = [RatFunc(x, y), RatFunc(y, z)]
        result = lie.functionally_independent(H, seed=1)
        self.assertIs(result.verdict, lie.Independence.INDEPENDENT)
        self.assertEqual(result.rank, 2)
        # the certificate point reproduces the rank
        values = lie.jacobian_matrix(H).evaluate(result.point)
        self.assertEqual(linalg.rank(values), 2)

    def test_dependent(self):
        H = [RatFunc(x + y), RatFunc((x + y) ** 2)]
        result = lie.functionally_independent(H, seed=1)
        self.assertIs(result.verdict, lie.Independence.PROBABLY_DEPENDENT)
        self.assertEqual(result.rank, 1)

    def test_single_function(self):
        result = lie.functionally_independent([RatFunc(x)])
        self.assertIs(result.verdict, lie.Independence.INDEPENDENT)

    def test_seeded(self):
        H = [RatFunc(x, y), RatFunc(y, z)]
        self.assertEqual(lie.functionally_independent(H, seed=5),
                         lie.functionally_independent(H, seed=5))


if __name__ == '__main__':
    unittest.main()
