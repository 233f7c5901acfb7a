"""
Generating Functions
====================

CONCEPT: Even families
----------------------
With A = 2(N+2) the even generating functions are elementary:

    G_p(z, t) = (1 - At)^{-1 + 1/(N+2)} exp(-zt / (1 - At)) = sum (-1)^n p_n(z) t^n / n!
    G_q(z, t) = (1 - At)^{-1 - 1/(N+2)} exp(-zt / (1 - At)) = sum (-1)^n q_n(z) t^n / n!

(the Laguerre generating function after z = A t_L).

CONCEPT: Odd families
---------------------
sum F_n(z) t^n / n! (F = P or Q) satisfies a second-order equation in t whose
solutions are

    (1 - At)^{-lam} f(w),   w = z / (A (1 - At)),   lam = 1 + 1/A,

with f any solution of Kummer's equation w f'' + (2 lam - 1 - w) f' - lam f = 0.
f is written as c_M M(lam, 2lam-1; w) + c_U U(lam, 2lam-1; w); the two
constants are fixed by F_0 and F_1, after which every higher coefficient is a
prediction. For N = -1 this is the Bateman-function form of the generating
function (2lam - 1 = 2, so U goes through its integral representation).

Taylor coefficients come from power-series composition around t = 0 using
the derivatives of M and U at w0 = z/A.
"""
import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from src.errors import EvaluationError, ParameterError
from src.exact_poly.families import Family, FamilySpec, polynomial
from src.specfun.hypergeometric import kummer_1f1_derivative, tricomi_u_derivative
from src.specfun.values import DEFAULT_CONFIG, EvalConfig


def _truncate(c: np.ndarray, count: int) -> np.ndarray:
    out = np.zeros(count)
    out[: min(count, len(c))] = c[:count]
    return out


def _binomial_series(power: float, count: int) -> np.ndarray:
    """(1 - u)^{-power} in powers of u."""
    c = np.ones(count)
    for j in range(1, count):
        c[j] = c[j - 1] * (power + j - 1) / j
    return c


def _exp_series(v: np.ndarray, count: int) -> np.ndarray:
    """exp(v(u)) for a series with v[0] = 0, from n e_n = sum k v_k e_{n-k}."""
    e = np.zeros(count)
    e[0] = 1.0
    for n in range(1, count):
        e[n] = sum(k * v[k] * e[n - k] for k in range(1, n + 1)) / n
    return e


def _compose(derivs: list[float], h: np.ndarray, count: int) -> np.ndarray:
    """sum_k derivs[k]/k! h(u)^k for a series h with h[0] = 0."""
    total = np.zeros(count)
    power = _truncate(np.array([1.0]), count)
    for k, d in enumerate(derivs):
        total += d / math.factorial(k) * power
        power = _truncate(npoly.polymul(power, h), count)
    return total


def _in_t(series_u: np.ndarray, A: int) -> np.ndarray:
    return series_u * float(A) ** np.arange(len(series_u))


def _even_coefficients(spec: FamilySpec, z: float, count: int) -> np.ndarray:
    A = spec.alpha
    shift = 1.0 / (spec.N + 2)
    power = 1.0 - shift if spec.family == Family.EVEN_P else 1.0 + shift
    # -z t / (1 - A t) = -(z/A) (u + u^2 + ...) with u = A t
    v = np.concatenate([[0.0], np.full(count - 1, -z / A)])
    series = _truncate(npoly.polymul(_binomial_series(power, count), _exp_series(v, count)), count)
    return _in_t(series, A)


def _odd_coefficients(spec: FamilySpec, z: float, count: int, cfg: EvalConfig) -> np.ndarray:
    A = spec.alpha
    lam = 1.0 + 1.0 / A
    b = 2 * lam - 1
    w0 = z / A
    if not w0 > 0:
        raise ParameterError(f"odd generating functions need z > 0, got z = {z}")
    h = np.concatenate([[0.0], np.full(count - 1, w0)])
    envelope = _binomial_series(lam, count)

    m_derivs = [kummer_1f1_derivative(lam, b, w0, k, cfg) for k in range(count)]
    u_derivs = [tricomi_u_derivative(lam, b, w0, k, cfg) for k in range(count)]
    g_m = _in_t(_truncate(npoly.polymul(envelope, _compose(m_derivs, h, count)), count), A)
    g_u = _in_t(_truncate(npoly.polymul(envelope, _compose(u_derivs, h, count)), count), A)

    f0 = float(polynomial(spec, 0)(z))
    f1 = float(polynomial(spec, 1)(z)) if count > 1 else 0.0
    if count == 1:
        return np.array([f0])
    system = np.array([[g_m[0], g_u[0]], [g_m[1], g_u[1]]])
    if abs(np.linalg.det(system)) < 1e-14 * np.abs(system).max() ** 2:
        raise EvaluationError(f"M and U series are degenerate at z = {z}")
    c_m, c_u = np.linalg.solve(system, [f0, f1])
    return c_m * g_m + c_u * g_u


def generating_function_coefficients(
    spec: FamilySpec, z: float, count: int, cfg: EvalConfig = DEFAULT_CONFIG
) -> list[float]:
    """First `count` Taylor coefficients in t of the family's generating function at z."""
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    if spec.is_even:
        return [float(c) for c in _even_coefficients(spec, z, count)]
    return [float(c) for c in _odd_coefficients(spec, z, count, cfg)]


def expected_coefficients(spec: FamilySpec, z: float, count: int) -> list[float]:
    """The same coefficients from the exact polynomials: (-1)^n p_n(z)/n! or P_n(z)/n!."""
    sign = -1 if spec.is_even else 1
    return [
        sign**n * float(polynomial(spec, n)(z)) / math.factorial(n) for n in range(count)
    ]
