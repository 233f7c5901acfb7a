"""
Confluent Hypergeometric Functions
==================================

CONCEPT: Which representation where
-----------------------------------
1F1(a, b; x)
    Taylor series sum (a)_k/(b)_k x^k/k!. Below the Kummer threshold (x < -30
    by default) the alternating series cancels catastrophically, so it is
    evaluated as e^x 1F1(b-a, b; -x), whose terms are all positive.

U(a, b; t), t > 0
    t <= tricomi_series_max: the Gamma-weighted pair of 1F1 branches
        U = G(1-b)/G(a-b+1) M(a,b,t) + G(b-1)/G(a) t^(1-b) M(a-b+1,2-b,t)
    with 1/G from scipy's rgamma so a Gamma pole gives an exact zero.
    Larger t (or integer b): the decaying integral
        U = t^-a / G(a) int_0^inf e^-v v^(a-1) (1 + v/t)^(b-a-1) dv,   a > 0,
    and for a <= 0 the downward recurrence
        U(a-1) = (t + 2a - b) U(a) - a(a-b+1) U(a+1)
    seeded at a+m in (0, 1).
"""
import logging
import math
from typing import Literal

import numpy as np
from scipy import special

from src.errors import AccuracyError, DomainError, EvaluationError
from src.oracle.quadrature import adaptive_quad
from src.specfun.values import DEFAULT_CONFIG, EvalConfig, MethodTag, SpecialValue

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def _series_1f1(a: float, b: float, x: float, cfg: EvalConfig) -> tuple[float, float]:
    """Direct Taylor sum with a geometric tail bound."""
    term = 1.0
    total = 1.0
    abs_sum = 1.0
    small_in_a_row = 0
    for k in range(cfg.max_series_terms):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        abs_sum += abs(term)
        if term == 0.0:
            return total, 2 * _EPS * abs_sum
        if abs(term) <= max(cfg.target_rel_tol * abs(total), _EPS * abs_sum):
            small_in_a_row += 1
        else:
            small_in_a_row = 0
        if small_in_a_row >= 2 and k + 1 > abs(x):
            ratio = abs(x) * abs(a + k + 1) / (abs(b + k + 1) * (k + 2))
            tail = abs(term) * ratio / (1 - ratio) if ratio < 1 else abs(term)
            return total, tail + 2 * _EPS * abs_sum
    raise EvaluationError(
        f"1F1({a}, {b}; {x}) did not converge in {cfg.max_series_terms} terms",
        partial=total,
        bound=abs(term),
    )


def kummer_1f1(
    a: float,
    b: float,
    x: float,
    cfg: EvalConfig = DEFAULT_CONFIG,
    method: Literal["auto", "series", "transformed"] = "auto",
) -> SpecialValue:
    if _is_nonpositive_integer(b):
        raise DomainError(f"1F1 is undefined for b = {b}")
    if method == "auto":
        method = "transformed" if x < cfg.kummer_threshold else "series"

    if method == "series":
        value, err = _series_1f1(a, b, x, cfg)
        return SpecialValue(value, err, MethodTag.SERIES)

    s, err = _series_1f1(b - a, b, -x, cfg)
    scale = math.exp(x)
    return SpecialValue(scale * s, scale * err, MethodTag.KUMMER_TRANSFORMED)


def _check_u_args(a: float, b: float, t: float) -> None:
    if not t > 0:
        raise DomainError(f"U(a, b; t) needs t > 0, got t = {t}")


def _u_branches(a: float, b: float, t: float, cfg: EvalConfig) -> tuple[float, float]:
    """The two-branch 1F1 combination (b not an integer)."""
    c1 = special.gamma(1 - b) * special.rgamma(a - b + 1)
    c2 = special.gamma(b - 1) * special.rgamma(a)
    value = 0.0
    err = 0.0
    if c1 != 0.0:
        m1 = kummer_1f1(a, b, t, cfg)
        value += c1 * m1.value
        err += abs(c1) * m1.est_abs_error + _EPS * abs(c1 * m1.value)
    if c2 != 0.0:
        m2 = kummer_1f1(a - b + 1, 2 - b, t, cfg)
        w = t ** (1 - b)
        value += c2 * w * m2.value
        err += abs(c2 * w) * m2.est_abs_error + _EPS * abs(c2 * w * m2.value)
    return value, err


def _u_integral(a: float, b: float, t: float, cfg: EvalConfig) -> tuple[float, float]:
    """Integral representation, a > 0."""
    p = b - a - 1.0
    if a < 1.0:
        # v = u^(1/a) removes the v^(a-1) endpoint singularity
        inv_a = 1.0 / a

        def integrand(u):
            with np.errstate(over="ignore", invalid="ignore"):
                v = u**inv_a
                val = np.exp(-v + p * np.log1p(v / t)) * inv_a
            return np.where(np.isfinite(v), val, 0.0)
    else:
        def integrand(v):
            with np.errstate(over="ignore", invalid="ignore"):
                val = np.exp(-v + (a - 1.0) * np.log(v) + p * np.log1p(v / t))
            return np.where(np.isfinite(v), val, 0.0)

    try:
        integral, err = adaptive_quad(
            integrand, 0.0, np.inf, tol=cfg.quad_abs_tol, rel_tol=cfg.target_rel_tol
        )
    except AccuracyError as exc:
        raise EvaluationError(
            f"U({a}, {b}; {t}) integral did not converge", partial=exc.value, bound=exc.error
        )
    pref = t ** (-a) * special.rgamma(a)
    return pref * integral, abs(pref) * err


def tricomi_u(a: float, b: float, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
    """Confluent hypergeometric function of the second kind, real x > 0."""
    _check_u_args(a, b, x)
    b_integer = float(b).is_integer()

    if not b_integer and x <= cfg.tricomi_series_max:
        value, err = _u_branches(a, b, x, cfg)
        return SpecialValue(value, err, MethodTag.SERIES)

    if _is_nonpositive_integer(a):
        # polynomial case: U(-m, b; x) = (-1)^m (b)_m M(-m, b; x)
        m = int(-a)
        if _is_nonpositive_integer(b):
            raise DomainError(f"U({a}, {b}; x) polynomial form needs b > 0 here")
        m_val = kummer_1f1(a, b, x, cfg)
        coef = (-1) ** m * special.poch(b, m)
        return SpecialValue(coef * m_val.value, abs(coef) * m_val.est_abs_error, MethodTag.SERIES)

    if a > 0:
        value, err = _u_integral(a, b, x, cfg)
        return SpecialValue(value, err, MethodTag.INTEGRAL_REP)

    m = math.ceil(-a)
    a_top = a + m  # in (0, 1)
    u_hi, e_hi = _u_integral(a_top + 1, b, x, cfg)
    u_lo, e_lo = _u_integral(a_top, b, x, cfg)
    rel = max(e_hi / abs(u_hi) if u_hi else 0.0, e_lo / abs(u_lo) if u_lo else 0.0)
    for k in range(m):
        aa = a_top - k
        u_hi, u_lo = u_lo, (x + 2 * aa - b) * u_lo - aa * (aa - b + 1) * u_hi
    logger.debug("[Tricomi] U(%s, %s; %s) by %d downward steps", a, b, x, m)
    err = abs(u_lo) * (rel + (m + 1) * _EPS) * (m + 1)
    return SpecialValue(u_lo, err, MethodTag.INTEGRAL_REP)


def tricomi_u_derivative(a: float, b: float, x: float, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """d^k/dx^k U(a, b; x) = (-1)^k (a)_k U(a+k, b+k; x)."""
    if k == 0:
        return tricomi_u(a, b, x, cfg).value
    return (-1) ** k * special.poch(a, k) * tricomi_u(a + k, b + k, x, cfg).value


def kummer_1f1_derivative(a: float, b: float, x: float, k: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """d^k/dx^k M(a, b; x) = (a)_k/(b)_k M(a+k, b+k; x)."""
    if k == 0:
        return kummer_1f1(a, b, x, cfg).value
    return special.poch(a, k) / special.poch(b, k) * kummer_1f1(a + k, b + k, x, cfg).value
