"""Prints the Lorenz invariant surface table: for each family a few
parameter points on its condition, the verified cofactor, the exponent
of the single-surface Jacobian multiplier and whether a degree 2
constant cofactor search finds the surface again.
"""
import logging
from fractions import Fraction
from darbouxsys import darboux
from darbouxsys.utils.timer import Timer
from models import lorenz


# Parameters
samples = {
    'b = 2s': [(1, 28, 2), (10, 28, 20), (Fraction(1, 2), 3, 1)],
    'b = 0, s = 1/3': [(Fraction(1, 3), r, 0) for r in (0, 1, 28)],
    'b = 1, r = 0': [(s, 0, 1) for s in (2, 10)],
    'b = 4, s = 1': [(1, r, 4) for r in (0, 28)],
    'b = 1, s = 1': [(1, r, 1) for r in (1, 28)],
    'b = 6s - 2, r = 2s - 1': [(s, 2 * s - 1, 6 * s - 2) for s in (1, 2)],
}
search_degree = 2
logging.basicConfig(level=logging.INFO)

# Body
rows = []
with Timer('lorenz table', total=sum(map(len, samples.values()))) as timer:
    for family in lorenz.families():
        for s, r, b in samples[family.name]:
            s, r, b = Fraction(s), Fraction(r), Fraction(b)
            X = lorenz.lorenz(s, r, b)
            f, k = family.build(s, r, b)
            k_checked = darboux.verify_darboux(X, f).k
            multipliers = {m.family: m for m in
                           lorenz.multiplier_condition(s, r, b)}
            ell = multipliers[family.name].exponent
            found = '-'
            if f.degree() <= search_degree:
                report = darboux.search_constant_cofactor(X, search_degree)
                found = 'yes' if any(c == k_checked for c, _ in report.hits) \
                    else 'no'
            rows.append((family.name, '({}, {}, {})'.format(s, r, b),
                         str(k_checked), str(ell), found))
            timer.progress()

header = ('family', '(s, r, b)', 'cofactor', 'exponent', 'search')
widths = [max(len(row[i]) for row in rows + [header]) for i in range(5)]
for row in [header] + rows:
    print('  '.join(cell.ljust(w) for cell, w in zip(row, widths)))
