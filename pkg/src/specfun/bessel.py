"""
Modified Bessel K and the Generalized Airy Functions
====================================================

CONCEPT: K_nu from its integral
-------------------------------
    K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
            = e^-x int_0^inf exp(-2x sinh^2(t/2)) cosh(nu t) dt

The second form keeps the integrand O(1) at t = 0 for any x. The range is cut
where x(cosh t - 1) - |nu| t exceeds the log of the requested accuracy, so
the truncation point comes from the decay of the integrand, not a constant.

CONCEPT: Generalized Airy A_N
-----------------------------
For odd N >= 1, A_N solves A'' = x^(2/(N+1)) A and decays at +inf:

    A_N(x) = C sqrt(x) K_nu(zeta),   nu = (N+1)/(2(N+2)),
    zeta = (N+1)/(N+2) x^((N+2)/(N+1)),  C = [4(N+1)]^nu / (2 pi sqrt(N+2))

A_1 is the ordinary Airy function Ai. The derivative uses
K_nu' = -(K_{nu-1} + K_{nu+1})/2 with K_{nu-1} = K_{1-nu}.
"""
import logging
import math

import numpy as np
from scipy import special

from src.errors import AccuracyError, DomainError, EvaluationError
from src.oracle.quadrature import adaptive_quad
from src.specfun.values import DEFAULT_CONFIG, EvalConfig, MethodTag, SpecialValue

logger = logging.getLogger(__name__)


def _k_cutoff(nu: float, x: float, log_target: float) -> float:
    t = 1.0
    while 2.0 * x * math.sinh(0.5 * t) ** 2 - abs(nu) * t <= log_target + 5.0 and t < 700.0:
        t *= 1.25
    return t


def bessel_k(nu: float, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
    if not x > 0:
        raise DomainError(f"K_nu(x) needs x > 0, got x = {x}")
    if abs(nu) >= 2:
        raise DomainError(f"K_nu is only provided for |nu| < 2, got nu = {nu}")

    log_target = -math.log(cfg.target_rel_tol * 1e-2)
    t_max = _k_cutoff(nu, x, log_target)

    def integrand(t):
        return np.exp(-2.0 * x * np.sinh(0.5 * t) ** 2) * np.cosh(nu * t)

    try:
        integral, err = adaptive_quad(integrand, 0.0, t_max, tol=0.0, rel_tol=cfg.target_rel_tol)
    except AccuracyError as exc:
        raise EvaluationError(
            f"K_{nu}({x}) quadrature did not converge", partial=exc.value, bound=exc.error
        )
    scale = math.exp(-x)
    return SpecialValue(scale * integral, scale * err, MethodTag.INTEGRAL_REP)


def airy_ai(x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
    """Ai(x) for x >= 0 through K_{1/3}."""
    if x < 0:
        raise DomainError(f"Ai is only provided for x >= 0, got x = {x}")
    if x == 0:
        value = 3.0 ** (-2.0 / 3.0) / special.gamma(2.0 / 3.0)
        return SpecialValue(value, 0.0, MethodTag.INTEGRAL_REP)
    k = bessel_k(1.0 / 3.0, 2.0 * x**1.5 / 3.0, cfg)
    pref = math.sqrt(x / 3.0) / math.pi
    return SpecialValue(pref * k.value, pref * k.est_abs_error, MethodTag.INTEGRAL_REP)


def airy_ai_prime(x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
    """Ai'(x) = -x K_{2/3}(2x^{3/2}/3) / (pi sqrt 3) for x >= 0."""
    if x < 0:
        raise DomainError(f"Ai' is only provided for x >= 0, got x = {x}")
    if x == 0:
        value = -(3.0 ** (-1.0 / 3.0)) / special.gamma(1.0 / 3.0)
        return SpecialValue(value, 0.0, MethodTag.INTEGRAL_REP)
    k = bessel_k(2.0 / 3.0, 2.0 * x**1.5 / 3.0, cfg)
    pref = -x / (math.pi * math.sqrt(3.0))
    return SpecialValue(pref * k.value, abs(pref) * k.est_abs_error, MethodTag.INTEGRAL_REP)


def _check_airy_order(N: int) -> None:
    if not isinstance(N, int) or N < 1 or N % 2 == 0:
        raise DomainError(f"generalized Airy needs odd N >= 1, got N = {N}")


def airy_constants(N: int) -> tuple[float, float]:
    """(nu, C) of the Bessel form of A_N."""
    _check_airy_order(N)
    nu = (N + 1) / (2 * (N + 2))
    C = (4 * (N + 1)) ** nu / (2 * math.pi * math.sqrt(N + 2))
    return nu, C


def generalized_airy(
    N: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG
) -> tuple[SpecialValue, SpecialValue]:
    """(A_N(x), A_N'(x)) for odd N >= 1 and x >= 0; x = 0 is the limit."""
    nu, C = airy_constants(N)
    if x < 0:
        raise DomainError(f"A_N is only provided for x >= 0, got x = {x}")
    ratio = (N + 1) / (N + 2)

    if x == 0:
        value = C * special.gamma(nu) * 2.0 ** (nu - 1) * ratio ** (-nu)
        deriv = C * 0.5 * special.gamma(-nu) * ((N + 1) / (2 * (N + 2))) ** nu
        return (
            SpecialValue(value, 0.0, MethodTag.INTEGRAL_REP),
            SpecialValue(deriv, 0.0, MethodTag.INTEGRAL_REP),
        )

    zeta = ratio * x ** ((N + 2) / (N + 1))
    k_nu = bessel_k(nu, zeta, cfg)
    k_lo = bessel_k(1.0 - nu, zeta, cfg)
    k_hi = bessel_k(nu + 1.0, zeta, cfg)
    sx = math.sqrt(x)

    value = C * sx * k_nu.value
    value_err = C * sx * k_nu.est_abs_error

    k_prime = -0.5 * (k_lo.value + k_hi.value)
    k_prime_err = 0.5 * (k_lo.est_abs_error + k_hi.est_abs_error)
    # d zeta / dx = x^(1/(N+1))
    dzeta = x ** (1.0 / (N + 1))
    deriv = C * (k_nu.value / (2 * sx) + sx * dzeta * k_prime)
    deriv_err = C * (k_nu.est_abs_error / (2 * sx) + sx * dzeta * k_prime_err)
    return (
        SpecialValue(value, value_err, MethodTag.INTEGRAL_REP),
        SpecialValue(deriv, deriv_err, MethodTag.INTEGRAL_REP),
    )


def airy_integral_closed_form(N: int) -> float:
    """int_0^inf A_N(x) dx from Gamma functions."""
    _check_airy_order(N)
    s = N + 2
    return (
        special.gamma((N + 1) / s)
        * special.gamma((N + 1) / (2 * s))
        * 2.0 ** (-(N + 7) / (2 * s))
        * (N + 1) ** (1.0 / s)
        * s ** (-3.0 / (2 * s))
        / math.pi
    )


def airy_integral_numeric(N: int, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """
    int_0^inf A_N(x) dx by quadrature, returned as (value, error).

    The range stops where zeta reaches 45, beyond which A_N < 1e-19.
    """
    nu, C = airy_constants(N)
    ratio = (N + 1) / (N + 2)
    x_max = (45.0 / ratio) ** ((N + 1) / (N + 2))

    def integrand(xs):
        zetas = ratio * xs ** ((N + 2) / (N + 1))
        return np.array([C * math.sqrt(x) * bessel_k(nu, z, cfg).value for x, z in zip(xs, zetas)])

    try:
        return adaptive_quad(integrand, 0.0, x_max, tol=cfg.quad_abs_tol, rel_tol=cfg.target_rel_tol)
    except AccuracyError as exc:
        raise EvaluationError(
            f"integral of A_{N} did not converge", partial=exc.value, bound=exc.error
        )
