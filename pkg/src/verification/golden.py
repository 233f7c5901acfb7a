"""
Golden Values
=============
Reference tables and spot values the verification suites compare against.
Polynomials are listed with descending coefficients and converted on use.
"""
from fractions import Fraction

from src.exact_poly.families import Family, FamilySpec
from src.exact_poly.poly import ExactPoly

POLYNOMIAL_TABLES = {
    (Family.EVEN_P, 2): [
        [1], [1, -6], [1, -28, 84], [1, -66, 924, -1848],
        [1, -120, 3960, -36960, 55440],
    ],
    (Family.EVEN_Q, 2): [
        [1], [1, -10], [1, -36, 180], [1, -78, 1404, -4680],
        [1, -136, 5304, -63648, 159120],
    ],
    (Family.ODD_P, -1): [
        [1], [1, 3], [1, 9, 15], [1, 19, 90, 105], [1, 33, 321, 1050, 945],
        [1, 51, 852, 5631, 14175, 10395],
    ],
    (Family.ODD_Q, -1): [
        [1], [1, 1], [1, 7, 3], [1, 17, 58, 15], [1, 31, 261, 582, 105],
        [1, 49, 756, 4209, 6927, 945],
    ],
    (Family.ODD_P, 1): [
        [1], [1, 7], [1, 25, 91], [1, 55, 698, 1729], [1, 97, 2685, 22970, 43225],
    ],
    (Family.ODD_Q, 1): [
        [1], [1, 5], [1, 23, 55], [1, 53, 602, 935], [1, 95, 2505, 18790, 21505],
    ],
}

# (n_lo, n_hi) -> eigenvalues in order
SPECTRA = {
    2: (0, [3, 5, 11, 13, 19, 21]),
    0: (0, [1, 3, 5, 7]),
    1: (-3, [-15, -9, -3, 3, 9, 15]),
    -1: (-3, [-5, -3, -1, 1, 3, 5]),
}

SFRACTION_EXAMPLES = {
    (Family.ODD_P, 1): [7, 5, 13, 11],
    (Family.ODD_Q, 1): [5, 7, 11, 13],
    (Family.ODD_Q, -1): [1, 3, 3, 5, 5, 7],
    (Family.EVEN_P, 0): [2, 4, 6],
}

PHI3_FIRST = Fraction(5, 24)


def table_polynomials(spec: FamilySpec) -> list[ExactPoly] | None:
    """The reference table for spec, or None when there is none."""
    rows = POLYNOMIAL_TABLES.get((spec.family, spec.N))
    if rows is None:
        return None
    return [ExactPoly(tuple(reversed(row))) for row in rows]
