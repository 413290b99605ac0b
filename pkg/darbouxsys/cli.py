"""
This file is part of darbouxsys.

Darbouxsys is free software: you can redistribute it and/or modify
it under the terms of the BSD 3-clause license. See LICENSE.txt
for exact terms and conditions.


Command line front end. Every subcommand reads a .vf system, runs one
analysis and prints a report, as text or (with --json) as a JSON
document with the keys command, system, status, payload and
diagnostics. Exit codes:
    0  ok
    1  negative mathematical result (not Darboux, no solution, false)
    2  usage or parse error
    3  resource cap exceeded
    4  internal self-check failed

Vector fields with rational components are not accepted; multiply
through by the common denominator first. This keeps every Darboux
polynomial and shifts its cofactor.
"""

import argparse
import json
import logging
import os
import sys
from darbouxsys import darboux, integrability, lie, sysparse
from darbouxsys.exact import rat
from darbouxsys.exceptions import (CertificateError, NegativeResult,
                                   ResourceCapError, UsageError)
from darbouxsys.utils.timer import Timer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(
    __file__))), 'fixtures')


class Report():

    """Outcome of one subcommand"""

    def __init__(self, command, system, status='ok', payload=None,
                 diagnostics=None):
        self.command = command
        self.system = system
        self.status = status
        self.payload = payload if payload is not None else {}
        self.diagnostics = diagnostics if diagnostics is not None else []

    def as_dict(self):
        return {
            'command': self.command,
            'system': self.system,
            'status': self.status,
            'payload': self.payload,
            'diagnostics': self.diagnostics,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self):
        lines = ['{} {}: {}'.format(self.command, self.system, self.status)]
        lines.extend(_text_lines(self.payload, 1))
        for d in self.diagnostics:
            lines.append('! ' + d)
        return '\n'.join(lines)


def _text_lines(value, depth):
    pad = '  ' * depth
    if isinstance(value, dict):
        for key in sorted(value):
            v = value[key]
            if isinstance(v, (dict, list)):
                yield '{}{}:'.format(pad, key)
                yield from _text_lines(v, depth + 1)
            else:
                yield '{}{}: {}'.format(pad, key, v)
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                yield pad + '-'
                yield from _text_lines(v, depth + 1)
            else:
                yield '{}- {}'.format(pad, v)
    else:
        yield pad + str(value)


def _strings(values):
    return [str(v) for v in values]


def _flag(value):
    return 'true' if value else 'false'


def _resolve(path, subdir):
    """"path" as given, else the shipped fixture of that name"""
    if os.path.exists(path):
        return path
    shipped = os.path.join(FIXTURES, subdir, path)
    if os.path.exists(shipped):
        return shipped
    raise UsageError("no such file: {}".format(path))


def _load_pairs(system, path):
    """Pairs file, every cofactor re-verified"""
    with open(_resolve(path, 'pairs'), encoding='utf-8') as fh:
        text = fh.read()
    return [darboux.check_pair(system.field, f, k)
            for f, k in sysparse.parse_pairs(text, system)]


def render_expression(expr):
    """w0 + c1*ln(w1) + ... as text, e.g. "-x + ln(y)" """
    parts = []
    if not expr.w0.is_zero():
        parts.append(str(expr.w0))
    for c, w in expr.terms:
        a = abs(rat(c))
        body = 'ln({})'.format(w) if a == 1 else '{}*ln({})'.format(a, w)
        if not parts:
            parts.append('-' + body if c < 0 else body)
        else:
            parts.append('{} {}'.format('-' if c < 0 else '+', body))
    return ' '.join(parts) if parts else '0'


def _kernel_entries(polys):
    return [{'poly': str(f), 'degree': str(f.degree())} for f in polys]


# ------------------------------------------------------------- subcommands

def cmd_verify_darboux(system, args, report):
    f = system.parse_poly(args.poly)
    pair = darboux.verify_darboux(system.field, f)
    report.payload = {'poly': str(pair.f), 'cofactor': str(pair.k)}


def cmd_search_darboux(system, args, report):
    X = system.field
    if args.cofactor is not None:
        k = system.parse_poly(args.cofactor)
        with Timer('search with cofactor {}'.format(k)):
            found = darboux.search_given_cofactor(X, k, args.degree,
                                                  max_basis=args.max_basis)
        report.payload = {'cofactor': str(k), 'degree_bound': str(args.degree),
                          'kernel': _kernel_entries(found)}
        if not found:
            report.status = 'no_solution'
            report.diagnostics.append("no Darboux polynomial of degree <= {} "
                                      "with cofactor {}".format(args.degree, k))
        return
    with Timer('constant cofactor search'):
        result = darboux.search_constant_cofactor(X, args.degree,
                                                  max_basis=args.max_basis)
    report.payload = {
        'degree_bound': str(result.degree_bound),
        'hits': [{'cofactor': str(c), 'kernel': _kernel_entries(kernel)}
                 for c, kernel in result.hits],
        'spectrum_remainder_degree': str(result.spectrum_remainder_degree),
    }
    if result.spectrum_remainder_degree:
        report.diagnostics.append("irrational spectrum remainder of degree {}"
                                  .format(result.spectrum_remainder_degree))
    if not result.hits:
        report.status = 'no_solution'
        report.diagnostics.append("no rational constant cofactor up to "
                                  "degree {}".format(args.degree))


def _certificate_payload(X, cert):
    payload = {
        'pairs': [{'poly': str(p.f), 'cofactor': str(p.k)} for p in cert.pairs],
        'exponents': _strings(cert.exponents),
        'first_integral_directions': [_strings(v) for v in
                                      cert.first_integral_directions],
        'residual_checked': _flag(cert.residual_checked),
    }
    if cert.multiplier is not None:
        payload['multiplier'] = str(cert.multiplier)
        verdict = integrability.verify_jacobian_multiplier(X, cert.multiplier)
        payload['verdict'] = verdict.verdict.value
    else:
        payload['verdict'] = 'log_derivative'
    return payload


def cmd_multiplier(system, args, report):
    pairs = _load_pairs(system, args.pairs)
    cert = integrability.multiplier_exponents(pairs, system.field)
    report.payload = _certificate_payload(system.field, cert)
    if cert.multiplier is not None and cert.multiplier.is_constant():
        report.diagnostics.append("ConstantWarning: the multiplier is constant")


def _integral_payload(X, cert):
    entry = {'lambdas': _strings(cert.lambdas),
             'expression': render_expression(cert.as_expression())}
    H = integrability.rational_first_integral(cert, X)
    entry['rational'] = str(H)
    return entry


def cmd_first_integrals(system, args, report):
    pairs = _load_pairs(system, args.pairs)
    certs = integrability.first_integral_exponents(pairs, system.field)
    report.payload = {'integrals': [_integral_payload(system.field, c)
                                    for c in certs]}
    if not certs:
        report.status = 'no_solution'
        report.diagnostics.append("the cofactors are linearly independent")


def _parse_log_term(system, text):
    c, sep, expr = text.partition(':')
    if not sep:
        raise UsageError("--log expects C:EXPR, got {!r}".format(text))
    return rat(c.strip()), system.parse_ratfunc(expr)


def cmd_verify_integral(system, args, report):
    expr = integrability.ElementaryIntegralExpr(
        system.parse_ratfunc(args.w0),
        [_parse_log_term(system, t) for t in args.log])
    ok = integrability.verify_elementary_first_integral(system.field, expr)
    report.payload = {'expression': render_expression(expr),
                      'verdict': _flag(ok)}
    if not ok:
        report.status = 'no_solution'
        report.diagnostics.append("X(H) is not zero")


def cmd_solve_log_coeffs(system, args, report):
    w0 = system.parse_ratfunc(args.w0)
    ws = [system.parse_ratfunc(w) for w in args.w]
    sol = integrability.solve_log_coefficients(system.field, w0, ws)
    report.payload = {'w0': str(w0), 'ws': _strings(ws),
                      'particular': _strings(sol.particular),
                      'homogeneous': [_strings(v) for v in sol.homogeneous]}


def cmd_cramer(system, args, report):
    X = system.field
    H = [system.parse_ratfunc(h) for h in args.integral]
    data = integrability.cramer_multiplier(X, H, seed=args.seed)
    others = [v for i, v in enumerate(X.context) if i != data.pivot]
    report.payload = {
        'H': _strings(data.H),
        'Lambda': str(data.Lambda),
        'Lambdas': {v: str(L) for v, L in zip(others, data.Lambdas)},
        'h': str(data.h),
        'J': str(data.J),
        'pivot': X.context[data.pivot],
        'constant_warning': _flag(data.constant_warning),
        'independence': data.independence.verdict.value,
    }
    if data.constant_warning:
        report.diagnostics.append("ConstantWarning: J is constant")
    if data.independence.verdict is lie.Independence.PROBABLY_DEPENDENT:
        report.diagnostics.append("independence screen found no full rank "
                                  "point")


def cmd_report(system, args, report):
    X = system.field
    with Timer('constant cofactor search'):
        search = darboux.search_constant_cofactor(X, args.degree,
                                                  max_basis=args.max_basis)
    pairs = [darboux.DarbouxPair(f, k) for k, kernel in search.hits
             for f in kernel]
    named = {}
    with Timer('named polynomials'):
        for name in sorted(system.named_polys):
            f = system.named_polys[name]
            try:
                pair = darboux.verify_darboux(X, f)
            except NegativeResult:
                named[name] = 'not Darboux'
                continue
            except UsageError as err:
                named[name] = str(err)
                continue
            named[name] = str(pair.k)
            if all(p.f != pair.f for p in pairs):
                pairs.append(pair)
    payload = {
        'divergence': str(lie.divergence(X)),
        'search': {
            'degree_bound': str(search.degree_bound),
            'hits': [{'cofactor': str(c), 'kernel': _kernel_entries(kernel)}
                     for c, kernel in search.hits],
            'spectrum_remainder_degree': str(search.spectrum_remainder_degree),
        },
        'named_polys': named,
    }
    with Timer('multiplier synthesis'):
        try:
            cert = integrability.multiplier_exponents(pairs, X)
            payload['multiplier'] = _certificate_payload(X, cert)
        except NegativeResult as err:
            payload['multiplier'] = {'verdict': 'no_solution'}
            report.diagnostics.append('multiplier: {}'.format(err))
    with Timer('first integral synthesis'):
        certs = integrability.first_integral_exponents(pairs, X) if pairs else []
        payload['first_integrals'] = [_integral_payload(X, c) for c in certs]
    report.payload = payload


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--system', required=True, metavar='FILE',
                        help='.vf system file (shipped fixtures are found '
                             'by name)')
    common.add_argument('--json', action='store_true',
                        help='print the report as JSON')
    common.add_argument('--seed', type=int, default=0,
                        help='seed for randomized checks (default: 0)')
    common.add_argument('--max-basis', type=int, default=None, metavar='M',
                        help='refuse searches over more than M monomials '
                             '(default: {})'.format(darboux.MAX_BASIS_SIZE))
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress to stderr (-vv for debug output)')

    parser = argparse.ArgumentParser(
        prog='darbouxsys',
        description='Exact Darboux integrability analysis of polynomial '
                    'vector fields.')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('verify-darboux', parents=[common],
                       help='cofactor of a polynomial, if it is Darboux')
    p.add_argument('--poly', required=True, metavar='EXPR')
    p.set_defaults(handler=cmd_verify_darboux)

    p = sub.add_parser('search-darboux', parents=[common],
                       help='search Darboux polynomials up to a degree')
    p.add_argument('--degree', type=int, required=True, metavar='N')
    mode = p.add_mutually_exclusive_group()
    mode.add_argument('--cofactor', metavar='EXPR')
    mode.add_argument('--constant', action='store_true',
                      help='search all rational constant cofactors (default)')
    p.set_defaults(handler=cmd_search_darboux)

    p = sub.add_parser('multiplier', parents=[common],
                       help='Jacobian multiplier from Darboux pairs')
    p.add_argument('--pairs', required=True, metavar='FILE',
                   help='lines "EXPR ; EXPR" (polynomial ; cofactor)')
    p.set_defaults(handler=cmd_multiplier)

    p = sub.add_parser('first-integrals', parents=[common],
                       help='Darboux first integrals from Darboux pairs')
    p.add_argument('--pairs', required=True, metavar='FILE')
    p.set_defaults(handler=cmd_first_integrals)

    p = sub.add_parser('verify-integral', parents=[common],
                       help='check H = w0 + sum(c * ln w)')
    p.add_argument('--w0', default='0', metavar='EXPR')
    p.add_argument('--log', action='append', default=[], metavar='C:EXPR',
                   help='one logarithmic term; negative C needs --log=-1:y')
    p.set_defaults(handler=cmd_verify_integral)

    p = sub.add_parser('solve-log-coeffs', parents=[common],
                       help='all c making w0 + sum(c * ln w) a first integral')
    p.add_argument('--w0', default='0', metavar='EXPR')
    p.add_argument('--w', action='append', required=True, metavar='EXPR')
    p.set_defaults(handler=cmd_solve_log_coeffs)

    p = sub.add_parser('cramer', parents=[common],
                       help='Jacobian multiplier from n - 1 first integrals')
    p.add_argument('--integral', action='append', required=True,
                   metavar='EXPR')
    p.set_defaults(handler=cmd_cramer)

    p = sub.add_parser('report', parents=[common],
                       help='search, multiplier and first integrals at once')
    p.add_argument('--degree', type=int, required=True, metavar='N')
    p.set_defaults(handler=cmd_report)
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def run(args):
    """Runs the parsed command. Returns (exit code, Report)."""
    report = Report(args.command, os.path.splitext(
        os.path.basename(args.system))[0])
    try:
        system = sysparse.load_system(_resolve(args.system, 'systems'))
        report.system = system.name
        args.handler(system, args, report)
    except NegativeResult as err:
        report.status = 'no_solution'
        report.payload.setdefault('result', type(err).__name__)
        for attr in ('lie_derivative', 'residual'):
            value = getattr(err, attr, None)
            if value is not None:
                report.payload[attr] = str(value)
        report.diagnostics.append('{}: {}'.format(type(err).__name__, err))
        return EXIT_NEGATIVE, report
    except ResourceCapError as err:
        report.status = 'error'
        report.diagnostics.append('{}: {}'.format(type(err).__name__, err))
        return EXIT_RESOURCE, report
    except (UsageError, OSError) as err:
        report.status = 'error'
        report.diagnostics.append('{}: {}'.format(type(err).__name__, err))
        return EXIT_USAGE, report
    except CertificateError as err:
        logger.error("internal self-check failed: %s", err)
        report.status = 'error'
        report.diagnostics.append('{}: {}'.format(type(err).__name__, err))
        return EXIT_INTERNAL, report
    if report.status == 'no_solution':
        return EXIT_NEGATIVE, report
    return EXIT_OK, report


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    _configure_logging(args.verbose)
    code, report = run(args)
    print(report.to_json() if args.json else report.to_text())
    return code
