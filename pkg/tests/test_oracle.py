"""Tests for the numerical oracle: quadrature, differences, shooting and weights."""
import math

import numpy as np
import pytest

from src.errors import AccuracyError, BracketError, ParameterError
from src.exact_poly.families import Family, FamilySpec
from src.exact_poly.moments import moments_from_sfraction, norm_exact
from src.oracle.differences import first_derivative, second_derivative, second_derivative_5pt
from src.oracle.quadrature import adaptive_quad, gk15
from src.oracle.shooting import ShootingConfig, shoot_eigenvalue, spectrum_scan
from src.oracle.weights import (
    inner_product_even,
    moment_bridge,
    moment_gamma_form,
    moment_numeric_even,
    norm_gamma_form,
    orthogonality_numeric_even,
    weight_even,
)


# --- quadrature -------------------------------------------------------------------

def test_quad_linear():
    value, err = adaptive_quad(lambda x: x, 0.0, 1.0)
    assert value == pytest.approx(0.5, abs=1e-15)
    assert err <= 1e-10


def test_quad_infinite_range():
    value, _ = adaptive_quad(lambda x: np.exp(-x), 0.0, np.inf, tol=1e-12)
    assert value == pytest.approx(1.0, abs=1e-11)
    value, _ = adaptive_quad(lambda x: np.exp(-x * x), -np.inf, np.inf, tol=1e-12)
    assert value == pytest.approx(math.sqrt(math.pi), abs=1e-11)


def test_quad_reversed_limits_and_breakpoints():
    f = lambda x: np.abs(x - 0.3)  # noqa: E731
    value, _ = adaptive_quad(f, 1.0, 0.0, breakpoints=(0.3,))
    assert value == pytest.approx(-(0.3**2 / 2 + 0.7**2 / 2), abs=1e-14)


def test_quad_is_deterministic():
    f = lambda x: np.cos(7 * x) / (1 + x * x)  # noqa: E731
    first = adaptive_quad(f, 0.0, 20.0, tol=1e-12)
    second = adaptive_quad(f, 0.0, 20.0, tol=1e-12)
    assert first == second


def test_quad_reports_unreachable_tolerance():
    with pytest.raises(AccuracyError) as info:
        adaptive_quad(lambda x: x**-0.9, 0.0, 1.0, tol=1e-14, max_intervals=5)
    assert info.value.value > 0
    assert info.value.error > 1e-14


def test_gk15_exact_for_low_degree():
    value, err = gk15(lambda x: 3 * x**2, 0.0, 2.0)
    assert value == pytest.approx(8.0, rel=1e-15)
    assert err < 1e-12


# --- finite differences -------------------------------------------------------------

def test_first_derivative():
    assert first_derivative(math.exp, 0.7, 1e-2) == pytest.approx(math.exp(0.7), rel=1e-9)


def test_second_derivative_richardson_beats_plain_stencil():
    exact = -math.sin(1.0)
    plain = abs(second_derivative_5pt(math.sin, 1.0, 0.05) - exact)
    richardson = abs(second_derivative(math.sin, 1.0, 0.05) - exact)
    assert richardson < plain
    assert richardson < 1e-10


def test_differences_reject_bad_step():
    with pytest.raises(ParameterError):
        first_derivative(math.sin, 0.0, 0.0)
    with pytest.raises(ParameterError):
        second_derivative(math.sin, 0.0, -1e-3)


# --- shooting ------------------------------------------------------------------------

def test_shooting_config_validation():
    with pytest.raises(ParameterError):
        ShootingConfig(bracket=(4.0, 2.0))
    with pytest.raises(ParameterError):
        ShootingConfig(bracket=(0.0, math.inf))
    with pytest.raises(ParameterError):
        ShootingConfig(bracket=(2.0, 4.0), step=0.0)


def test_shooting_rejects_short_domain():
    with pytest.raises(ParameterError):
        shoot_eigenvalue(2, ShootingConfig(bracket=(2.0, 4.0), L=2.0))


@pytest.mark.slow
@pytest.mark.parametrize(
    "N, bracket, expected, tol",
    [
        (2, (2.0, 4.0), 3.0, 1e-6),
        (1, (-4.0, -2.0), -3.0, 1e-6),
        (0, (0.5, 1.5), 1.0, 1e-8),
        (3, (4.0, 6.0), 5.0, 1e-6),
        (-1, (0.5, 1.5), 1.0, 1e-6),
        (-1, (-3.5, -2.5), -3.0, 1e-6),
    ],
)
def test_shoot_eigenvalue(N, bracket, expected, tol):
    result = shoot_eigenvalue(N, ShootingConfig.from_settings(bracket))
    assert result.converged
    assert bracket[0] <= result.E <= bracket[1]
    assert result.E == pytest.approx(expected, abs=tol)


@pytest.mark.slow
def test_shoot_eigenvalue_without_root():
    with pytest.raises(BracketError):
        shoot_eigenvalue(2, ShootingConfig.from_settings((5.5, 5.6)))


@pytest.mark.slow
def test_scan_even_N_with_node_counts():
    results = spectrum_scan(2, (0.0, 22.0))
    assert [r.E for r in results] == pytest.approx([3, 5, 11, 13, 19, 21], abs=1e-6)
    assert [r.n_nodes for r in results] == list(range(6))


@pytest.mark.slow
def test_scan_odd_N_is_two_sided():
    results = spectrum_scan(1, (-20.0, 20.0))
    assert [r.E for r in results] == pytest.approx([-15, -9, -3, 3, 9, 15], abs=1e-6)


@pytest.mark.slow
def test_scan_bateman_case_finds_only_odd_integers():
    results = spectrum_scan(-1, (-6.0, 6.0))
    assert [r.E for r in results] == pytest.approx([-5, -3, -1, 1, 3, 5], abs=1e-6)


def test_scan_keeps_root_on_either_grid_end(monkeypatch):
    from src.oracle import shooting

    monkeypatch.setattr(shooting._Shooter, "defect", lambda self, E: np.asarray(E, dtype=float) - 3.0)
    monkeypatch.setattr(shooting._Shooter, "count_nodes", lambda self, E: 0)
    assert [r.E for r in spectrum_scan(2, (2.0, 3.0), scan_step=0.5)] == [3.0]
    assert [r.E for r in spectrum_scan(2, (3.0, 4.0), scan_step=0.5)] == [3.0]


@pytest.mark.slow
def test_scan_empty_range():
    assert spectrum_scan(2, (5.5, 5.6)) == []


# --- weights -------------------------------------------------------------------------

def test_weight_is_normalized():
    spec = FamilySpec(Family.EVEN_Q, 2)
    value, _ = adaptive_quad(lambda z: np.array([weight_even(spec, float(t)) for t in z]), 0.0, np.inf, tol=1e-10)
    assert value == pytest.approx(1.0, abs=1e-9)
    assert weight_even(spec, -1.0) == 0.0


def test_moment_gamma_form_values():
    assert moment_gamma_form(FamilySpec(Family.EVEN_P, 0), 0) == 1.0
    assert moment_gamma_form(FamilySpec(Family.EVEN_P, 2), 1) == pytest.approx(6.0, rel=1e-14)
    assert moment_gamma_form(FamilySpec(Family.EVEN_P, 0), 1) == pytest.approx(2.0, rel=1e-14)


@pytest.mark.parametrize("N", [0, 2, 4])
@pytest.mark.parametrize("family", [Family.EVEN_P, Family.EVEN_Q])
def test_gamma_moments_equal_sfraction_moments(N, family):
    spec = FamilySpec(family, N)
    exact = moments_from_sfraction(spec, 9)
    for n in range(9):
        assert moment_gamma_form(spec, n) == pytest.approx(float(exact.values[n]), rel=1e-12)


@pytest.mark.parametrize(
    "spec",
    [FamilySpec(fam, N) for N in (-1, 0, 1, 2, 3, 4, 5) for fam in Family if fam.is_even == (N % 2 == 0)],
    ids=lambda s: s.label,
)
def test_norm_gamma_form_matches_exact_norm(spec):
    for n in range(7):
        assert norm_gamma_form(spec, n) == pytest.approx(float(norm_exact(spec, n)), rel=1e-10)


def test_orthogonality_off_diagonal():
    assert abs(orthogonality_numeric_even(2, Family.EVEN_P, 1, 2)) < 1e-8
    assert abs(orthogonality_numeric_even(2, "q", 0, 3)) < 1e-6


def test_orthogonality_diagonal():
    spec = FamilySpec(Family.EVEN_P, 2)
    value, _ = inner_product_even(spec, 2, 2)
    assert value == pytest.approx(float(norm_exact(spec, 2)), rel=1e-7)
    assert abs(orthogonality_numeric_even(2, Family.EVEN_P, 2, 2)) < 1e-7 * value


@pytest.mark.parametrize("n", range(4))
def test_hermite_orthogonality(n):
    """N = 0: p_n(4x^2) = H_{2n}(x), so the norm is 4^n (2n)!."""
    value, _ = inner_product_even(FamilySpec(Family.EVEN_P, 0), n, n)
    assert value == pytest.approx(4**n * math.factorial(2 * n), rel=1e-9)


def test_moment_numeric():
    assert moment_numeric_even(0, Family.EVEN_P, 0) == pytest.approx(1.0, rel=1e-10)
    assert moment_numeric_even(2, Family.EVEN_Q, 3) == pytest.approx(
        moment_gamma_form(FamilySpec(Family.EVEN_Q, 2), 3), rel=1e-9
    )


@pytest.mark.parametrize("N", [0, 2])
@pytest.mark.parametrize("family", [Family.EVEN_P, Family.EVEN_Q])
def test_moment_bridge_has_unit_scale(N, family):
    result = moment_bridge(N, family, count=7)
    assert result["consistent"]
    assert result["scale"] == pytest.approx(1.0, rel=1e-9)


def test_weights_reject_odd_families():
    with pytest.raises(ParameterError):
        orthogonality_numeric_even(1, Family.ODD_P, 0, 1)
    with pytest.raises(ParameterError):
        moment_numeric_even(2, Family.EVEN_P, 9)
