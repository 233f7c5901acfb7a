"""Tests for the exact polynomial families and their identities."""
import pytest
import sympy

from src.errors import ParameterError
from src.exact_poly.families import (
    Family,
    FamilySpec,
    hermite_coincidence,
    initial_shift,
    laguerre_from_family,
    laguerre_order,
    polynomial,
    polynomials,
    recurrence_coeffs,
)
from src.exact_poly.identities import check_diff_relation, check_ode_identity
from src.exact_poly.poly import ExactPoly


def P(*coeffs_high_first):
    """Build an ExactPoly from descending coefficients, as the tables print them."""
    return ExactPoly(tuple(reversed(coeffs_high_first)))


GOLDEN = {
    (Family.EVEN_P, 2): [
        P(1), P(1, -6), P(1, -28, 84), P(1, -66, 924, -1848),
        P(1, -120, 3960, -36960, 55440),
    ],
    (Family.EVEN_Q, 2): [
        P(1), P(1, -10), P(1, -36, 180), P(1, -78, 1404, -4680),
        P(1, -136, 5304, -63648, 159120),
    ],
    (Family.ODD_P, -1): [
        P(1), P(1, 3), P(1, 9, 15), P(1, 19, 90, 105), P(1, 33, 321, 1050, 945),
        P(1, 51, 852, 5631, 14175, 10395),
    ],
    (Family.ODD_Q, -1): [
        P(1), P(1, 1), P(1, 7, 3), P(1, 17, 58, 15), P(1, 31, 261, 582, 105),
        P(1, 49, 756, 4209, 6927, 945),
    ],
    (Family.ODD_P, 1): [
        P(1), P(1, 7), P(1, 25, 91), P(1, 55, 698, 1729), P(1, 97, 2685, 22970, 43225),
    ],
    (Family.ODD_Q, 1): [
        P(1), P(1, 5), P(1, 23, 55), P(1, 53, 602, 935), P(1, 95, 2505, 18790, 21505),
    ],
}

ALL_SPECS = [
    FamilySpec(fam, N)
    for N in (-1, 0, 1, 2, 3, 4, 5)
    for fam in Family
    if fam.is_even == (N % 2 == 0)
]


# --- FamilySpec -----------------------------------------------------------

def test_spec_accepts_letter():
    assert FamilySpec("P", 1).family is Family.ODD_P


@pytest.mark.parametrize("family, N", [
    (Family.EVEN_P, 1), (Family.EVEN_Q, -1), (Family.ODD_P, 2), (Family.ODD_Q, 0),
])
def test_spec_rejects_parity_mismatch(family, N):
    with pytest.raises(ParameterError):
        FamilySpec(family, N)


def test_spec_rejects_small_n():
    with pytest.raises(ParameterError):
        FamilySpec(Family.ODD_P, -3)


def test_spec_rejects_unknown_family():
    with pytest.raises(ParameterError):
        FamilySpec("x", 1)


# --- recurrence -----------------------------------------------------------

def test_recurrence_even_p_n2():
    rc = recurrence_coeffs(FamilySpec(Family.EVEN_P, 2), 1)
    assert (rc.b, rc.c) == (22, 48)


def test_recurrence_even_q_n2():
    rc = recurrence_coeffs(FamilySpec(Family.EVEN_Q, 2), 1)
    assert (rc.b, rc.c) == (26, 80)


def test_recurrence_odd_p_minus_one():
    rc = recurrence_coeffs(FamilySpec(Family.ODD_P, -1), 1)
    assert (rc.b, rc.c) == (-6, 3)


def test_recurrence_odd_n0_coupling():
    assert recurrence_coeffs(FamilySpec(Family.ODD_P, 3), 0).c == -1


def test_recurrence_rejects_negative_index():
    with pytest.raises(ParameterError):
        recurrence_coeffs(FamilySpec(Family.EVEN_P, 2), -1)


def test_initial_shift_matches_first_member():
    for spec in ALL_SPECS:
        assert polynomial(spec, 1) == ExactPoly.z() - initial_shift(spec)


# --- polynomials ----------------------------------------------------------

@pytest.mark.parametrize("key", list(GOLDEN))
def test_golden_tables(key):
    family, N = key
    table = GOLDEN[key]
    assert polynomials(FamilySpec(family, N), len(table) - 1) == table


def test_polynomial_zero_is_one():
    for spec in ALL_SPECS:
        assert polynomial(spec, 0) == ExactPoly.const(1)


def test_monic_and_degree():
    for spec in ALL_SPECS:
        for n in range(13):
            f = polynomial(spec, n)
            assert f.degree == n
            assert f.is_monic()


def test_coefficients_outgrow_64_bits():
    f = polynomial(FamilySpec(Family.EVEN_Q, 2), 12)
    assert max(abs(c) for c in f.coeffs) > 2**63


def test_pretty_descending():
    assert polynomial(FamilySpec(Family.ODD_P, 1), 4).pretty() == "z^4+97z^3+2685z^2+22970z+43225"
    assert polynomial(FamilySpec(Family.EVEN_P, 2), 2).pretty() == "z^2-28z+84"
    assert polynomial(FamilySpec(Family.EVEN_Q, 2), 0).pretty() == "1"


def test_strings_preserve_exactness():
    f = polynomial(FamilySpec(Family.EVEN_P, 4), 10)
    assert ExactPoly.from_strings(f.to_strings()) == f


# --- identities -----------------------------------------------------------

def test_ode_identity_even_example():
    assert check_ode_identity(FamilySpec(Family.EVEN_P, 2), 2).is_zero()


def test_diff_relation_even_example():
    assert check_diff_relation(FamilySpec(Family.EVEN_Q, 2), 1).is_zero()


def test_coupled_identities_odd_examples():
    assert check_ode_identity(FamilySpec(Family.ODD_P, 1), 1).is_zero()
    assert check_ode_identity(FamilySpec(Family.ODD_Q, 1), 1).is_zero()
    assert check_diff_relation(FamilySpec(Family.ODD_Q, -1), 2).is_zero()


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
def test_identities_vanish(spec):
    for n in range(11):
        ode = check_ode_identity(spec, n)
        rel = check_diff_relation(spec, n)
        assert ode.is_zero(), f"{spec.label} n={n}: {ode.first_nonzero()}"
        assert rel.is_zero(), f"{spec.label} n={n}: {rel.first_nonzero()}"


def test_nonzero_residual_reports_term():
    bogus = ExactPoly.of(0, 0, 5)
    assert bogus.first_nonzero() == (2, 5)


# --- Hermite and Laguerre -------------------------------------------------

@pytest.mark.parametrize("n", range(9))
def test_hermite_coincidence(n):
    assert hermite_coincidence(n)["ok"]


def test_hermite_matches_sympy():
    x = sympy.Symbol("x")
    for n in range(5):
        expected = sympy.Poly(sympy.hermite(2 * n, x), x).all_coeffs()[::-1]
        got = polynomial(FamilySpec(Family.EVEN_P, 0), n).substitute_monomial(4, 2)
        assert list(got.coeffs) == [int(c) for c in expected]


def test_odd_hermite_carries_factor_two():
    x = sympy.Symbol("x")
    for n in range(5):
        expected = sympy.Poly(sympy.hermite(2 * n + 1, x), x).all_coeffs()[::-1]
        q = polynomial(FamilySpec(Family.EVEN_Q, 0), n).substitute_monomial(4, 2).shift(1)
        assert list((q * 2).coeffs) == [int(c) for c in expected]
        assert not (q - ExactPoly(tuple(int(c) for c in expected))).is_zero()
    assert hermite_coincidence(1)["odd_residual"].is_zero()


@pytest.mark.parametrize("family", [Family.EVEN_P, Family.EVEN_Q])
def test_laguerre_matches_sympy(family):
    spec = FamilySpec(family, 2)
    alpha = sympy.Rational(-1 if family is Family.EVEN_P else 1, 4)
    assert laguerre_order(spec) == float(alpha)
    for n in range(5):
        expected = float(sympy.assoc_laguerre(n, alpha, sympy.Rational(3, 2)))
        assert laguerre_from_family(spec, n, 1.5) == pytest.approx(expected, rel=1e-12)


def test_laguerre_rejects_odd_family():
    with pytest.raises(ParameterError):
        laguerre_from_family(FamilySpec(Family.ODD_P, 1), 1, 0.5)
