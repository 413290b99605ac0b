import os
import unittest
from fractions import Fraction
import numpy as np
from darbouxsys import sysparse
from darbouxsys.cli import FIXTURES
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.exceptions import ParseError, UsageError
import randsys

XYZ = randsys.XYZ
x, y, z = Poly.variables(XYZ)

LORENZ = """\
# Lorenz system at the classical parameters
system "lorenz"
vars x y z
param s = 10
param r = 28
param b = 8/3
eq x' = s*(y - x)
eq y' = r*x - y - x*z
eq z' = -b*z + x*y   # trailing comment
"""


def _system(path):
    return sysparse.load_system(os.path.join(FIXTURES, 'systems', path))


class TestParseSystem(unittest.TestCase):
    """Test darbouxsys.sysparse.parse_system()"""
    def test_lorenz(self):
        system = sysparse.parse_system(LORENZ)
        self.assertEqual(system.name, 'lorenz')
        self.assertEqual(system.variables, XYZ)
        self.assertEqual(system.parameters['b'], Fraction(8, 3))
        self.assertEqual(system.field.components,
                         (10 * y - 10 * x, 28 * x - y - x * z,
                          Fraction(-8, 3) * z + x * y))
        self.assertEqual(system.field.dimension, 3)
        self.assertEqual(system.field.degree(), 2)

    def test_deterministic(self):
        self.assertEqual(sysparse.parse_system(LORENZ),
                         sysparse.parse_system(LORENZ))

    def test_default_name(self):
        system = sysparse.parse_system("vars x\neq x' = x", default_name='one')
        self.assertEqual(system.name, 'one')
        self.assertEqual(system.field.components, (Poly.variable(('x',), 0),))

    def test_negative_parameter(self):
        system = sysparse.parse_system("vars x\nparam a = -1\neq x' = a*x")
        self.assertEqual(system.field[0], -Poly.variable(('x',), 0))

    def test_named_polys(self):
        text = ("vars x y\nparam s = 2\npoly q = x^2 - s*y\n"
                "poly q2 = q^2\neq x' = y\neq y' = x")
        system = sysparse.parse_system(text)
        X, Y = Poly.variables(('x', 'y'))
        self.assertEqual(system.named_polys['q'], X ** 2 - 2 * Y)
        self.assertEqual(system.named_polys['q2'], (X ** 2 - 2 * Y) ** 2)
        self.assertEqual(system.parse_poly('q + 1'), X ** 2 - 2 * Y + 1)

    def test_load_fixture(self):
        system = _system('lorenz_b2s.vf')
        self.assertEqual(system.name, 'lorenz_b2s')
        self.assertEqual(system.named_polys['quadric'], x ** 2 - 2 * z)
        self.assertEqual(system.field.components,
                         (y - x, 28 * x - y - x * z, -2 * z + x * y))

    def test_file_stem_names_system(self):
        path = os.path.join(FIXTURES, 'systems', 'lin2.vf')
        with open(path, encoding='utf-8') as fh:
            text = fh.read().replace('system "lin2"', '')
        system = sysparse.parse_system(text, default_name='lin2_copy')
        self.assertEqual(system.name, 'lin2_copy')
        self.assertEqual(_system('lorenz_b1r0s2.vf').field.components[0],
                         2 * y - 2 * x)


class TestParseErrors(unittest.TestCase):
    """Test darbouxsys.sysparse.parse_system() diagnostics"""
    def assertParseError(self, text, line, column, fragment):
        with self.assertRaises(ParseError) as ctx:
            sysparse.parse_system(text)
        err = ctx.exception
        self.assertEqual((err.line, err.column), (line, column))
        self.assertIn(fragment, err.message)
        self.assertTrue(str(err).startswith('line {}, column {}: '
                                            .format(line, column)))

    def test_division(self):
        self.assertParseError("vars x y\neq x' = x/y\neq y' = y", 2, 10,
                              'division')

    def test_unknown_identifier(self):
        self.assertParseError("vars x\neq x' = q", 2, 9, "'q'")

    def test_unbound_parameter(self):
        self.assertParseError("vars x\nparam a\neq x' = a*x", 2, 7,
                              'unbound parameter')

    def test_negative_exponent(self):
        self.assertParseError("vars x\neq x' = x^-2", 2, 11,
                              'negative exponent')

    def test_fractional_exponent(self):
        self.assertParseError("vars x\neq x' = x^(1/2)", 2, 11,
                              'fractional exponent')

    def test_missing_equation(self):
        self.assertParseError("vars x y\neq x' = y", 1, 1,
                              "no equation for variable 'y'")

    def test_second_equation(self):
        self.assertParseError("vars x\neq x' = x\neq x' = 1", 3, 4,
                              'second equation')

    def test_undeclared_variable(self):
        self.assertParseError("vars x\neq x' = x\neq w' = 1", 3, 4,
                              'undeclared')

    def test_zero_literal_denominator(self):
        self.assertParseError("vars x\neq x' = 1/0*x", 2, 9, 'zero')

    def test_unknown_statement(self):
        self.assertParseError("vars x\nfoo x\neq x' = x", 2, 1,
                              'unknown statement')

    def test_zero_field(self):
        self.assertParseError("vars x\neq x' = x - x", 1, 1, 'zero')

    def test_missing_vars(self):
        with self.assertRaises(ParseError):
            sysparse.parse_system("eq x' = 1")

    def test_superscript_digit(self):
        self.assertParseError("vars x\neq x' = x²", 2, 10,
                              "unexpected character")

    def test_non_ascii_letter(self):
        self.assertParseError("vars x\neq x' = λ*x", 2, 9,
                              "unexpected character")

    def test_parse_error_is_usage_error(self):
        self.assertTrue(issubclass(ParseError, UsageError))

    def test_invalid_utf8_file(self):
        with self.assertRaises(ParseError) as ctx:
            _system('bad_utf8.vf')
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 10))
        self.assertIn('0xff', ctx.exception.message)


class TestParsePoly(unittest.TestCase):
    """Test darbouxsys.sysparse.parse_poly()"""
    def test_precedence(self):
        self.assertEqual(sysparse.parse_poly('-x^2', XYZ), -(x ** 2))
        self.assertEqual(sysparse.parse_poly('2^3^2', XYZ), 512)
        self.assertEqual(sysparse.parse_poly('x*y + 1', XYZ), x * y + 1)
        self.assertEqual(sysparse.parse_poly('(x + 1)^2', XYZ),
                         x ** 2 + 2 * x + 1)
        self.assertEqual(sysparse.parse_poly('x - y - z', XYZ), x - y - z)

    def test_parameters(self):
        p = sysparse.parse_poly('s*x', XYZ, {'s': Fraction(1, 3)})
        self.assertEqual(p, Fraction(1, 3) * x)

    def test_exponent_expression(self):
        self.assertEqual(sysparse.parse_poly('x^(1 + 1)', XYZ), x ** 2)

    def test_non_constant_exponent(self):
        with self.assertRaises(ParseError):
            sysparse.parse_poly('x^y', XYZ)

    def test_trailing_garbage(self):
        with self.assertRaises(ParseError) as ctx:
            sysparse.parse_poly('x y', XYZ)
        self.assertEqual(ctx.exception.column, 3)

    def test_unbalanced(self):
        with self.assertRaises(ParseError):
            sysparse.parse_poly('(x + y', XYZ)


class TestParseRatfunc(unittest.TestCase):
    """Test darbouxsys.sysparse.parse_ratfunc()"""
    def test_quotients(self):
        self.assertEqual(sysparse.parse_ratfunc('x/y', XYZ), RatFunc(x, y))
        self.assertEqual(sysparse.parse_ratfunc('1/(y*z^2)', XYZ),
                         RatFunc(Poly.one(XYZ), y * z ** 2))
        self.assertEqual(sysparse.parse_ratfunc('(x/y)^2', XYZ),
                         RatFunc(x ** 2, y ** 2))

    def test_division_by_zero(self):
        with self.assertRaises(ParseError):
            sysparse.parse_ratfunc('x/(y - y)', XYZ)


class TestParsePairs(unittest.TestCase):
    """Test darbouxsys.sysparse.parse_pairs()"""
    def test_pairs(self):
        system = _system('lorenz_b2s.vf')
        pairs = sysparse.parse_pairs("# comment\nquadric ; -2\n\nx ; x\n",
                                     system)
        self.assertEqual(pairs, [(x ** 2 - 2 * z, Poly.constant(XYZ, -2)),
                                 (x, x)])

    def test_missing_separator(self):
        system = _system('lorenz_b2s.vf')
        with self.assertRaises(ParseError) as ctx:
            sysparse.parse_pairs("x ; 1\nx 1", system)
        self.assertEqual(ctx.exception.line, 2)


class TestRender(unittest.TestCase):
    """Test darbouxsys.sysparse.render_poly() and render_ratfunc()"""
    def test_render_poly(self):
        self.assertEqual(sysparse.render_poly(x ** 2 - 2 * z), 'x^2 - 2*z')
        self.assertEqual(sysparse.render_poly(Poly.zero(XYZ)), '0')
        self.assertEqual(sysparse.render_poly(Fraction(-1, 2) * x), '-1/2*x')
        self.assertEqual(sysparse.render_poly(z ** 2 + y ** 2), 'y^2 + z^2')
        self.assertEqual(sysparse.render_poly(x * y - 1), 'x*y - 1')

    def test_render_ratfunc(self):
        self.assertEqual(sysparse.render_ratfunc(RatFunc(x, y)), 'x/y')
        self.assertEqual(sysparse.render_ratfunc(
            RatFunc(Poly.one(XYZ), y * z ** 2)), '1/(y*z^2)')
        self.assertEqual(sysparse.render_ratfunc(RatFunc(x + 1, y)),
                         '(x + 1)/y')
        self.assertEqual(sysparse.render_ratfunc(RatFunc(x ** 2, 2 * y)),
                         '1/2*x^2/y')
        self.assertEqual(str(RatFunc(4 * x, Poly.constant(XYZ, 2))), '2*x')

    def test_poly_round_trip(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            p = randsys.random_poly(rng, XYZ, 4, nterms=5, fractions=True)
            self.assertEqual(sysparse.parse_poly(sysparse.render_poly(p), XYZ),
                             p)

    def test_ratfunc_round_trip(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            r = randsys.random_ratfunc(rng, XYZ, 2)
            self.assertEqual(sysparse.parse_ratfunc(str(r), XYZ), r)


if __name__ == '__main__':
    unittest.main()
