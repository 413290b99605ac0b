"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


This module builds and checks integrability certificates of a vector
field X: Jacobian multipliers J (X(J) = -J div X), Darboux first
integrals, first integrals of the form w0 + sum(c_i * ln w_i) with
rational w_i, and the multiplier determined by n - 1 rational first
integrals through Cramer's rule. Functions included:
    multiplier_exponents
    darboux_function
    first_integral_exponents
    rational_first_integral
    verify_jacobian_multiplier
    verify_log_derivative_multiplier
    solve_log_coefficients
    verify_elementary_first_integral
    cramer_multiplier
    euler_identity_residual

All constants (exponents, log coefficients) are rational. Problems that
need irrational or complex constants come back as NoSolution or as an
empty list.
"""

import enum
import itertools
import logging
from collections import namedtuple
from fractions import Fraction
from scipy.special import comb
from darbouxsys.exact import Poly, RatFunc
from darbouxsys.exceptions import (CertificateError, DegenerateInput,
                                   Inconsistent, NoSolution, NotFirstIntegral,
                                   UsageError)
from darbouxsys.lie import (divergence, functionally_independent,
                            jacobian_matrix, lie_derivative)
from darbouxsys.linalg import QMatrix, nullspace, solve_affine
from darbouxsys.utils.misc import grevlex_key

logger = logging.getLogger(__name__)

# largest number of constraint subsets the exact l-infinity search visits
MAX_VERTEX_SUBSETS = 20000


class Verdict(enum.Enum):
    VERIFIED = 'verified'
    FAILED = 'failed'
    CONSTANT_WARNING = 'constant_warning'


MultiplierVerdict = namedtuple('MultiplierVerdict', 'verdict, residual')

MultiplierCertificate = namedtuple(
    'MultiplierCertificate',
    'pairs, exponents, multiplier, residual_checked, first_integral_directions')

ElementaryIntegralExpr = namedtuple('ElementaryIntegralExpr', 'w0, terms')

CramerData = namedtuple(
    'CramerData',
    'H, Lambda, Lambdas, h, J, pivot, constant_warning, independence')


class FirstIntegralCertificate(namedtuple('FirstIntegralCertificate',
                                          'pairs, lambdas')):

    """sum(lambda_i * k_i) = 0, so sum(lambda_i * ln f_i) is a first
    integral
    """

    __slots__ = ()

    def as_expression(self):
        context = self.pairs[0].f.context
        terms = [(lam, RatFunc.from_poly(pair.f))
                 for lam, pair in zip(self.lambdas, self.pairs) if lam]
        return ElementaryIntegralExpr(RatFunc.constant(context, 0), terms)


def _as_ratfunc(r):
    return RatFunc.from_poly(r) if isinstance(r, Poly) else r


def _coefficient_system(polys, target=None):
    """Coefficient matching for sum(x_i * polys[i]) = target.

    Returns: (matrix, right-hand side, row monomials)
    """
    monos = set()
    for p in polys:
        monos.update(p.terms)
    if target is not None:
        monos.update(target.terms)
    monos = sorted(monos, key=grevlex_key, reverse=True)
    M = QMatrix([[p.coefficient(m) for p in polys] for m in monos]) \
        if monos else QMatrix.zeros(0, len(polys))
    b = [target.coefficient(m) if target is not None else Fraction(0)
         for m in monos]
    return M, b, monos


def _render_monomial(context, m):
    return str(Poly._raw(context, {m: Fraction(1)}))


def _linf_minimal(particular, homogeneous, max_subsets):
    """Point of the affine family particular + span(homogeneous) with
    the smallest max-norm, ties going to the lexicographically smallest
    vector.

    Minimizes t subject to -t <= x_i(mu) <= t. The optimum sits on a
    vertex where q + 1 constraints are tight (q = len(homogeneous)), so
    every such subset is solved exactly and the feasible ones compared.
    """
    p = len(particular)
    q = len(homogeneous)
    if q == 0:
        return list(particular)
    nsubsets = int(comb(2 * p, q + 1, exact=True))
    if nsubsets > max_subsets:
        logger.warning("exponent search needs %d subsets (cap %d); "
                       "keeping the echelon solution", nsubsets, max_subsets)
        return list(particular)
    # constraint (i, sign): sign * x_i(mu) - t <= 0
    constraints = [(i, sign) for i in range(p) for sign in (1, -1)]

    def point(mu):
        return [particular[i] + sum(m * h[i] for m, h in zip(mu, homogeneous))
                for i in range(p)]

    best_key = None
    best = None
    for subset in itertools.combinations(constraints, q + 1):
        rows = []
        rhs = []
        for i, sign in subset:
            rows.append([sign * h[i] for h in homogeneous] + [Fraction(-1)])
            rhs.append(-sign * particular[i])
        try:
            sol = solve_affine(QMatrix(rows), rhs)
        except Inconsistent:
            continue
        if sol.homogeneous:
            continue
        mu, t = sol.particular[:q], sol.particular[q]
        x = point(mu)
        if any(abs(v) > t for v in x):
            continue
        key = (t, tuple(x))
        if best_key is None or key < best_key:
            best_key, best = key, x
    logger.debug("l-infinity minimal exponents %s over %d subsets",
                 [str(v) for v in best], nsubsets)
    return best


def darboux_function(pairs, exponents):
    """prod(f_i ** l_i) for integer exponents"""
    context = pairs[0].f.context if pairs else None
    result = None
    for pair, e in zip(pairs, exponents):
        if Fraction(e).denominator != 1:
            raise UsageError("exponent {} is not an integer".format(e))
        term = RatFunc.from_poly(pair.f) ** int(e)
        result = term if result is None else result * term
    if result is None:
        if context is None:
            raise UsageError("no pairs to build a Darboux function from")
        result = RatFunc.constant(context, 1)
    return result


def multiplier_exponents(pairs, X, max_subsets=None):
    """Exponents l with sum(l_i * k_i) = -div X, so that
    prod(f_i ** l_i) is a Jacobian multiplier.

    Args: "pairs" sequence of verified DarbouxPairs
          "X" VectorField
          "max_subsets" cap for the l-infinity search (MAX_VERTEX_SUBSETS)
    Returns: MultiplierCertificate; the multiplier is materialized iff
             all exponents are integers
    Raises: NoSolution, naming a monomial where the coefficients cannot
            match
    """
    pairs = list(pairs)
    div = divergence(X)
    M, b, monos = _coefficient_system([pair.k for pair in pairs], -div)
    try:
        sol = solve_affine(M, b)
    except Inconsistent as err:
        mono = _render_monomial(X.context, monos[err.residual_row])
        raise NoSolution("no exponents match the coefficient of {} in "
                         "-div X = {}".format(mono, -div), residual=mono)
    cap = MAX_VERTEX_SUBSETS if max_subsets is None else max_subsets
    exponents = _linf_minimal(sol.particular, sol.homogeneous, cap)
    multiplier = None
    if all(e.denominator == 1 for e in exponents) and pairs:
        multiplier = darboux_function(pairs, exponents)
        check = verify_jacobian_multiplier(X, multiplier)
        if check.verdict is Verdict.FAILED:
            raise CertificateError("multiplier {} leaves residual {}"
                                   .format(multiplier, check.residual))
    elif not verify_log_derivative_multiplier(X, pairs, exponents):
        raise CertificateError("exponents {} fail the log-derivative check"
                               .format([str(e) for e in exponents]))
    return MultiplierCertificate(pairs, exponents, multiplier, True,
                                 sol.homogeneous)


def first_integral_exponents(pairs, X=None):
    """Canonical basis of the lambda with sum(lambda_i * k_i) = 0.

    With "X" given, every certificate is also checked through
    sum(lambda_i * X(f_i) / f_i) = 0.

    Returns: list of FirstIntegralCertificate
    """
    pairs = list(pairs)
    if not pairs:
        return []
    M, _, _ = _coefficient_system([pair.k for pair in pairs])
    certs = [FirstIntegralCertificate(pairs, lam) for lam in nullspace(M)]
    if X is not None:
        for cert in certs:
            if not verify_elementary_first_integral(X, cert.as_expression()):
                raise CertificateError("lambdas {} fail the first integral "
                                       "identity".format(cert.lambdas))
    return certs


def rational_first_integral(cert, X=None):
    """prod(f_i ** lambda_i) for a certificate with integer lambdas. With
    "X" given, X(H) = 0 is checked.
    """
    H = darboux_function(cert.pairs, cert.lambdas)
    if X is not None and not lie_derivative(X, H).is_zero():
        raise CertificateError("{} is not a first integral".format(H))
    return H


def verify_jacobian_multiplier(X, J):
    """Residual X(J) + J * div X.

    Returns: MultiplierVerdict(verdict, residual); CONSTANT_WARNING when
             the identity holds but J is constant
    """
    J = _as_ratfunc(J)
    if J.is_zero():
        raise UsageError("the zero function is not a multiplier")
    residual = lie_derivative(X, J) + J * divergence(X)
    if not residual.is_zero():
        return MultiplierVerdict(Verdict.FAILED, residual)
    if J.is_constant():
        return MultiplierVerdict(Verdict.CONSTANT_WARNING, residual)
    return MultiplierVerdict(Verdict.VERIFIED, residual)


def _log_derivative(X, f):
    """X(f) / f"""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise UsageError("logarithm of the zero function")
    return lie_derivative(X, f) / f


def verify_log_derivative_multiplier(X, pairs, exponents):
    """True iff sum(l_i * X(f_i) / f_i) + div X = 0, which says that
    prod(f_i ** l_i) is a multiplier also for fractional l_i.
    """
    pairs = list(pairs)
    exponents = [Fraction(e) for e in exponents]
    if len(pairs) != len(exponents):
        raise UsageError("{} pairs but {} exponents".format(len(pairs),
                                                           len(exponents)))
    total = RatFunc.from_poly(divergence(X))
    for pair, e in zip(pairs, exponents):
        if e:
            total = total + _log_derivative(X, pair.f) * e
    return total.is_zero()


def _identity_terms(X, w0, ws):
    """X(w0) and X(w_i) / w_i"""
    g0 = lie_derivative(X, _as_ratfunc(w0))
    return g0, [_log_derivative(X, w) for w in ws]


def solve_log_coefficients(X, w0, ws):
    """All c with X(w0) + sum(c_i * X(w_i) / w_i) = 0.

    The denominators are cleared with the product of the distinct ones
    and the coefficients of the resulting polynomial identity matched.

    Returns: AffineSolution(particular, homogeneous)
    Raises: NoSolution
    """
    g0, gs = _identity_terms(X, w0, ws)
    dens = []
    for g in [g0] + gs:
        if not any(g.den == d for d in dens):
            dens.append(g.den)
    common = Poly.one(X.context)
    for d in dens:
        common = common * d
    numerators = [g.num * common.exact_div(g.den) for g in [g0] + gs]
    M, b, monos = _coefficient_system(numerators[1:], -numerators[0])
    try:
        return solve_affine(M, b)
    except Inconsistent as err:
        mono = _render_monomial(X.context, monos[err.residual_row])
        raise NoSolution("no log coefficients match the coefficient of {}"
                         .format(mono), residual=mono)


def verify_elementary_first_integral(X, expr):
    """True iff H = w0 + sum(c_i * ln w_i) satisfies
    X(w0) + sum(c_i * X(w_i) / w_i) = 0 exactly
    """
    cs = [Fraction(c) for c, _ in expr.terms]
    g0, gs = _identity_terms(X, expr.w0, [w for _, w in expr.terms])
    total = g0
    for c, g in zip(cs, gs):
        if c:
            total = total + g * c
    return total.is_zero()


def _cramer_determinants(jac, pivot):
    """Lambda (minor without the pivot column) and the Lambda_s (the
    same minor with column s replaced by the pivot column), in the
    order of the non-pivot variables.
    """
    n = jac.cols
    others = [i for i in range(n) if i != pivot]
    minor = jac.take_columns(others)
    Lambda = minor.det()
    pivot_col = jac.column(pivot)
    Lambdas = [minor.replace_column(k, pivot_col).det()
               for k in range(len(others))]
    return others, Lambda, Lambdas


def cramer_multiplier(X, H, seed=0):
    """Jacobian multiplier from n - 1 rational first integrals.

    X(H_j) = 0 for all j is a linear system for the P_s with s != pivot;
    Cramer's rule gives P_s = -P_pivot * Lambda_s / Lambda. Then
    h = P_pivot / Lambda = -P_s / Lambda_s and J = 1 / h. Pivots are
    tried from the last variable down until Lambda != 0.

    Args: "X" VectorField in n >= 2 variables
          "H" n - 1 RatFuncs (or Polys), each a first integral
          "seed" seed of the independence screen
    Returns: CramerData
    Raises: NotFirstIntegral, DegenerateInput when every Lambda vanishes
    """
    n = X.dimension
    H = [_as_ratfunc(h) for h in H]
    if n < 2:
        raise UsageError("the Cramer construction needs two or more variables")
    if len(H) != n - 1:
        raise UsageError("{} variables need {} first integrals, got {}"
                         .format(n, n - 1, len(H)))
    for j, h in enumerate(H):
        residual = lie_derivative(X, h)
        if not residual.is_zero():
            raise NotFirstIntegral("X({}) = {} is not zero".format(h, residual),
                                   residual=residual)
    independence = functionally_independent(H, seed=seed)
    logger.debug("independence screen: %s", independence.verdict.value)
    jac = jacobian_matrix(H)
    for pivot in range(n - 1, -1, -1):
        others, Lambda, Lambdas = _cramer_determinants(jac, pivot)
        if Lambda.is_zero():
            logger.debug("pivot %s: Lambda vanishes", X.context[pivot])
            continue
        logger.debug("pivot %s: Lambda = %s", X.context[pivot], Lambda)
        P = [RatFunc.from_poly(p) for p in X.components]
        h = P[pivot] / Lambda
        if h.is_zero():
            raise CertificateError("P_pivot vanishes for a nonzero field")
        J = h.inverse()
        if h * Lambda != P[pivot]:
            raise CertificateError("h * Lambda != P_{}".format(pivot))
        for s, Ls in zip(others, Lambdas):
            if h * Ls != -P[s]:
                raise CertificateError("h * Lambda_{} != -P_{}".format(s, s))
        check = verify_jacobian_multiplier(X, J)
        if check.verdict is Verdict.FAILED:
            raise CertificateError("J = {} leaves residual {}"
                                   .format(J, check.residual))
        return CramerData(H, Lambda, Lambdas, h, J, pivot,
                          check.verdict is Verdict.CONSTANT_WARNING,
                          independence)
    raise DegenerateInput("Lambda vanishes for every pivot; the integrals are "
                          "functionally dependent")


def euler_identity_residual(H, pivot):
    """sum(d_s Lambda_s) - d_pivot Lambda over the non-pivot s. It
    vanishes identically for any n - 1 functions H.
    """
    H = [_as_ratfunc(h) for h in H]
    jac = jacobian_matrix(H)
    if jac.rows != jac.cols - 1:
        raise UsageError("{} functions in {} variables; expected {}"
                         .format(jac.rows, jac.cols, jac.cols - 1))
    if not 0 <= pivot < jac.cols:
        raise UsageError("pivot {} out of range".format(pivot))
    others, Lambda, Lambdas = _cramer_determinants(jac, pivot)
    total = -Lambda.diff(pivot)
    for s, Ls in zip(others, Lambdas):
        total = total + Ls.diff(s)
    return total
