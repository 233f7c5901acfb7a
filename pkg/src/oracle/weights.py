"""
Weight Functions, Norms and Moments
===================================

CONCEPT: Even-N weights
-----------------------
With A = 2(N+2) and s = 1/(N+2) the even families are orthogonal on [0, inf)
against

    w_p(z) = e^{-z/A} z^{-s} A^{s-1} / G(1-s)
    w_q(z) = e^{-z/A} z^{+s} A^{-s-1} / G(1+s)

both normalized to total mass 1. Writing sigma = -s (p) or +s (q), the
substitution z = u^{1/(1+sigma)} turns z^sigma dz into du/(1+sigma), so the
quadrature never sees the z^sigma endpoint. The range is cut at
z = A(60 + 2 deg) and the dropped tail is bounded with the upper incomplete
gamma function.

CONCEPT: Gamma forms
--------------------
    moments    a_n = A^n G(n+1+sigma) / G(1+sigma)
    even norms A^{2n} n! G(n+1+sigma) / G(1+sigma)
    odd norms  (1/pi) sin(pi/A) A^{2n+1} G(n+1-1/A) G(n+1+1/A)

The odd weights are principal-part integrals and are never evaluated; the
odd norm is checked against the exact product of recurrence coefficients.
"""
import logging
import math

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import special

from src.errors import AccuracyError, EvaluationError, ParameterError
from src.exact_poly.families import Family, FamilySpec, check_index, polynomial
from src.exact_poly.moments import moments_from_sfraction
from src.exact_poly.poly import ExactPoly
from src.oracle.quadrature import adaptive_quad

logger = logging.getLogger(__name__)

_MAX_INDEX = 8


def _even_spec(N: int, family: Family | str) -> FamilySpec:
    spec = FamilySpec(Family(family), N)
    if not spec.is_even:
        raise ParameterError(f"{spec.label} has no elementary weight; use an even family")
    return spec


def _sigma(spec: FamilySpec) -> float:
    s = 1.0 / (spec.N + 2)
    return -s if spec.family == Family.EVEN_P else s


def weight_even(spec: FamilySpec, z: float) -> float:
    if not spec.is_even:
        raise ParameterError(f"{spec.label} has no elementary weight")
    if z < 0:
        return 0.0
    A, sigma = spec.alpha, _sigma(spec)
    return math.exp(-z / A) * z**sigma * A ** (-sigma - 1) / math.gamma(1 + sigma)


def moment_gamma_form(spec: FamilySpec, n: int) -> float:
    if not spec.is_even:
        raise ParameterError(f"moment Gamma form is given for even families, not {spec.label}")
    check_index(n)
    sigma = _sigma(spec)
    return float(spec.alpha) ** n * math.exp(math.lgamma(n + 1 + sigma) - math.lgamma(1 + sigma))


def norm_gamma_form(spec: FamilySpec, n: int) -> float:
    """The closed-form value of the weighted integral of f_n^2."""
    check_index(n)
    A = float(spec.alpha)
    if spec.is_even:
        return A**n * math.factorial(n) * moment_gamma_form(spec, n)
    e = 1.0 / A
    return math.sin(math.pi * e) / math.pi * A ** (2 * n + 1) * math.gamma(n + 1 - e) * math.gamma(n + 1 + e)


def _integrate_against_weight(spec: FamilySpec, factors: list[ExactPoly], scale: float) -> tuple[float, float]:
    """int_0^inf w(z) prod(factors)(z) dz, with an error bound that includes the cut tail."""
    A, sigma = spec.alpha, _sigma(spec)
    poly = ExactPoly.const(1)
    for f in factors:
        poly = poly * f
    coeffs = np.array([float(c) for c in poly.coeffs])
    factor_coeffs = [np.array([float(c) for c in f.coeffs]) for f in factors]
    const = A ** (-sigma - 1) / math.gamma(1 + sigma) / (1 + sigma)
    power = 1.0 / (1 + sigma)
    cut = 60.0 + 2 * poly.degree
    u_max = (A * cut) ** (1 + sigma)

    def integrand(u):
        z = u**power
        value = const * np.exp(-z / A)
        for c in factor_coeffs:
            value = value * npoly.polyval(z, c)
        return value

    try:
        value, err = adaptive_quad(integrand, 0.0, u_max, tol=1e-11 * scale, rel_tol=1e-11)
    except AccuracyError as exc:
        raise EvaluationError(
            f"weighted integral for {spec.label} did not converge", partial=exc.value, bound=exc.error
        )

    # int_Z^inf w z^k dz = A^k G(k+1+sigma, cut) / G(1+sigma)
    tail = sum(
        abs(c) * A**k * special.gammaincc(k + 1 + sigma, cut) * math.exp(math.lgamma(k + 1 + sigma) - math.lgamma(1 + sigma))
        for k, c in enumerate(coeffs)
    )
    return value, err + tail


def inner_product_even(spec: FamilySpec, m: int, n: int) -> tuple[float, float]:
    check_index(m, "m")
    check_index(n)
    if max(m, n) > _MAX_INDEX:
        raise ParameterError(f"indices above {_MAX_INDEX} are out of the quadrature's range")
    scale = math.sqrt(norm_gamma_form(spec, m) * norm_gamma_form(spec, n))
    return _integrate_against_weight(spec, [polynomial(spec, m), polynomial(spec, n)], scale)


def orthogonality_numeric_even(N: int, family: Family | str, m: int, n: int) -> float:
    """Numeric weighted inner product minus its closed form (0 off the diagonal)."""
    spec = _even_spec(N, family)
    value, err = inner_product_even(spec, m, n)
    expected = norm_gamma_form(spec, n) if m == n else 0.0
    logger.debug("[Weights] %s <%d,%d> = %.12e (err %.1e)", spec.label, m, n, value, err)
    return value - expected


def moment_numeric_even(N: int, family: Family | str, n: int) -> float:
    spec = _even_spec(N, family)
    check_index(n)
    if n > _MAX_INDEX:
        raise ParameterError(f"moment index above {_MAX_INDEX} is out of the quadrature's range")
    value, _ = _integrate_against_weight(spec, [ExactPoly.const(1).shift(n)], moment_gamma_form(spec, n))
    return value


def moment_bridge(N: int, family: Family | str, count: int = _MAX_INDEX + 1, tol: float = 1e-7) -> dict:
    """
    Three-way moment comparison: numeric integral, Gamma form, S-fraction.

    `scale` estimates s in a_n(S-fraction) = s^n a_n(Gamma form) from every
    n >= 1; `consistent` says all three agree with one n-independent s.
    """
    spec = _even_spec(N, family)
    if not 2 <= count <= _MAX_INDEX + 1:
        raise ParameterError(f"count must be in [2, {_MAX_INDEX + 1}], got {count}")
    exact = moments_from_sfraction(spec, count)
    rows = []
    scales = []
    for n in range(count):
        gamma_form = moment_gamma_form(spec, n)
        numeric = moment_numeric_even(N, family, n)
        cf = float(exact.values[n])
        if n >= 1:
            scales.append((cf / gamma_form) ** (1.0 / n))
        rows.append({"n": n, "numeric": numeric, "gamma_form": gamma_form, "sfraction": str(exact.values[n])})

    s = scales[0]
    spread = max(abs(v - s) for v in scales) / abs(s)
    numeric_ok = all(abs(r["numeric"] - r["gamma_form"]) <= tol * abs(r["gamma_form"]) for r in rows)
    consistent = spread <= tol and numeric_ok
    logger.info("[Weights] %s moment bridge s = %.12g (spread %.1e)", spec.label, s, spread)
    return {"family": spec.label, "scale": s, "spread": spread, "consistent": consistent, "moments": rows}
