"""
Closed-Form Eigenfunctions
==========================

CONCEPT: Routes
---------------
Each eigenfunction has more than one closed form, and each form only works on
part of the real line:

    LaguerreForm       even N, all x:  e^{-x^{N+2}/(N+2)} p_m(z)  or  x e^{..} q_m(z)
    TricomiForm        odd N, x >= 0:  e^{-x^{N+2}/(N+2)} U(a, b; 2x^{N+2}/(N+2))
    AiryDecomposition  odd N >= 1, all x:
                       y_{-m-1}(x) = c x A_N((cx)^{N+1}) P_m(z) + A_N'((cx)^{N+1}) Q_m(z)
                       with c = 2^{-(N+1)/(2(N+2))}
    BesselK0Form       N = -1:  y_{-m-1}(x) = x K_0(x) P_m(4x) + x K_0'(x) Q_m(4x), x >= 0
    BatemanForm        N = -1, all x:  y_n = k_{E_n}(x)

z = 4x^{N+2} throughout. For n >= 0 the odd-N forms are reached through the
reflection y_n(x) = y_{-n-1}(-x).

CONCEPT: One normalization
--------------------------
The canonical eigenfunction is the Laguerre form (even N), the Airy
decomposition (odd N >= 1) or the Bateman function (N = -1); the reflection
holds exactly for all of them. Any other route is proportional, and an
EigenfunctionHandle carries the factor that matches the canonical form at
x0 = 1 (x0 = -1 when the route cannot reach +1).
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import special

from src.errors import DomainError, EvaluationError, ParameterError
from src.exact_poly.families import Family, FamilySpec, polynomial
from src.exact_poly.poly import ExactPoly
from src.specfun.bateman import bateman_k
from src.specfun.bessel import bessel_k, generalized_airy
from src.specfun.hypergeometric import tricomi_u
from src.specfun.values import DEFAULT_CONFIG, EvalConfig, MethodTag, SpecialValue
from src.spectra.eigen import EigenSpec

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
REFERENCE_POINTS = (1.0, -1.0)


class Route(str, Enum):
    LAGUERRE = "LaguerreForm"
    TRICOMI = "TricomiForm"
    AIRY = "AiryDecomposition"
    BESSEL_K0 = "BesselK0Form"
    BATEMAN = "BatemanForm"


def _poly_eval(p: ExactPoly, z: float) -> tuple[float, float]:
    """p(z) in floating point with a rounding bound."""
    value = float(p(z))
    magnitude = sum(abs(float(c)) * abs(z) ** k for k, c in enumerate(p.coeffs))
    return value, 4 * p.degree * _EPS * magnitude + _EPS * abs(value)


def _odd_pair(N: int, m: int) -> tuple[ExactPoly, ExactPoly]:
    return polynomial(FamilySpec(Family.ODD_P, N), m), polynomial(FamilySpec(Family.ODD_Q, N), m)


def route_allowed(spec: EigenSpec, route: Route, x: float) -> bool:
    """Whether `route` can evaluate `spec` at x."""
    N, n = spec.N, spec.n
    if route == Route.LAGUERRE:
        return not spec.odd_N
    if not spec.odd_N:
        return False
    if route == Route.TRICOMI:
        return x >= 0
    if route == Route.AIRY:
        return N >= 1
    if route == Route.BESSEL_K0:
        return N == -1 and (x >= 0 if n < 0 else x <= 0)
    if route == Route.BATEMAN:
        return N == -1
    return False


def canonical_route(spec: EigenSpec) -> Route:
    if not spec.odd_N:
        return Route.LAGUERRE
    return Route.BATEMAN if spec.N == -1 else Route.AIRY


# --- raw routes (unscaled) ---

def _laguerre(spec: EigenSpec, x: float, cfg: EvalConfig) -> SpecialValue:
    N = spec.N
    xp = x ** (N + 2)
    z = 4.0 * xp
    envelope = math.exp(-xp / (N + 2))
    if spec.n % 2 == 0:
        value, bound = _poly_eval(polynomial(FamilySpec(Family.EVEN_P, N), spec.m), z)
        factor = envelope
    else:
        value, bound = _poly_eval(polynomial(FamilySpec(Family.EVEN_Q, N), spec.m), z)
        factor = x * envelope
    return SpecialValue(factor * value, abs(factor) * bound, MethodTag.SERIES)


def _tricomi(spec: EigenSpec, x: float, cfg: EvalConfig) -> SpecialValue:
    if x < 0:
        raise DomainError(f"Tricomi form needs x >= 0, got x = {x}")
    N = spec.N
    a = -(spec.E - N - 1) / (2 * (N + 2))
    b = 1 - 1 / (N + 2)
    if x == 0:
        # U(a, b; 0) = G(1-b)/G(a-b+1) for b < 1
        value = special.gamma(1 - b) * special.rgamma(a - b + 1)
        return SpecialValue(value, _EPS * abs(value), MethodTag.SERIES)
    xp = x ** (N + 2)
    u = tricomi_u(a, b, 2 * xp / (N + 2), cfg)
    envelope = math.exp(-xp / (N + 2))
    return SpecialValue(envelope * u.value, envelope * u.est_abs_error, u.method_tag)


def _airy(spec: EigenSpec, x: float, cfg: EvalConfig) -> SpecialValue:
    if spec.n >= 0:
        return _airy(spec.reflected(), -x, cfg)
    N, m = spec.N, spec.m
    c = 2.0 ** (-(N + 1) / (2 * (N + 2)))
    arg = (c * x) ** (N + 1)
    a_val, a_der = generalized_airy(N, arg, cfg)
    P, Q = _odd_pair(N, m)
    z = 4.0 * x ** (N + 2)
    p_val, p_err = _poly_eval(P, z)
    q_val, q_err = _poly_eval(Q, z)
    first = c * x * a_val.value * p_val
    second = a_der.value * q_val
    err = (
        abs(c * x) * (a_val.est_abs_error * abs(p_val) + abs(a_val.value) * p_err)
        + a_der.est_abs_error * abs(q_val) + abs(a_der.value) * q_err
        + _EPS * (abs(first) + abs(second))
    )
    return SpecialValue(first + second, err, MethodTag.DECOMPOSITION)


def _bessel_k0(spec: EigenSpec, x: float, cfg: EvalConfig) -> SpecialValue:
    if spec.n >= 0:
        return _bessel_k0(spec.reflected(), -x, cfg)
    if x < 0:
        raise DomainError(f"K0 form of y_{spec.n} needs x >= 0, got x = {x}")
    P, Q = _odd_pair(-1, spec.m)
    if x == 0:
        # x K_0(x) -> 0 and x K_0'(x) = -x K_1(x) -> -1
        return SpecialValue(-float(Q(0)), 0.0, MethodTag.DECOMPOSITION)
    k0 = bessel_k(0.0, x, cfg)
    k1 = bessel_k(1.0, x, cfg)
    z = 4.0 * x
    p_val, p_err = _poly_eval(P, z)
    q_val, q_err = _poly_eval(Q, z)
    first = x * k0.value * p_val
    second = -x * k1.value * q_val
    err = x * (
        k0.est_abs_error * abs(p_val) + k0.value * p_err
        + k1.est_abs_error * abs(q_val) + k1.value * q_err
    ) + _EPS * (abs(first) + abs(second))
    return SpecialValue(first + second, err, MethodTag.DECOMPOSITION)


def _bateman(spec: EigenSpec, x: float, cfg: EvalConfig) -> SpecialValue:
    return bateman_k(float(spec.E), x, cfg)


_ROUTES = {
    Route.LAGUERRE: _laguerre,
    Route.TRICOMI: _tricomi,
    Route.AIRY: _airy,
    Route.BESSEL_K0: _bessel_k0,
    Route.BATEMAN: _bateman,
}


def evaluate_route(spec: EigenSpec, route: Route, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
    """One route without any normalization factor."""
    if not route_allowed(spec, route, x):
        raise DomainError(f"{route.value} cannot evaluate (N={spec.N}, n={spec.n}) at x = {x}")
    return _ROUTES[route](spec, x, cfg)


@dataclass(frozen=True)
class EigenfunctionHandle:
    spec: EigenSpec
    route: Route
    scale: float
    reference_x: float

    def allows(self, x: float) -> bool:
        return route_allowed(self.spec, self.route, x)

    def evaluate(self, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SpecialValue:
        raw = evaluate_route(self.spec, self.route, x, cfg)
        s = abs(self.scale)
        return SpecialValue(self.scale * raw.value, s * raw.est_abs_error, raw.method_tag)

    def __call__(self, x: float) -> float:
        return self.evaluate(x).value


@lru_cache(maxsize=512)
def eigenfunction_handle(spec: EigenSpec, route: Route, cfg: EvalConfig = DEFAULT_CONFIG) -> EigenfunctionHandle:
    """Bind `route` to `spec` with the factor that matches the canonical form."""
    canonical = canonical_route(spec)
    if route == canonical:
        return EigenfunctionHandle(spec, route, 1.0, REFERENCE_POINTS[0])
    for x0 in REFERENCE_POINTS:
        if route_allowed(spec, route, x0) and route_allowed(spec, canonical, x0):
            target = evaluate_route(spec, canonical, x0, cfg).value
            raw = evaluate_route(spec, route, x0, cfg).value
            if raw == 0.0:
                raise EvaluationError(f"{route.value} vanishes at reference point x0 = {x0}")
            logger.debug("[Eigenfunction] %s scale %.6e at x0=%s (N=%d, n=%d)", route.value, target / raw, x0, spec.N, spec.n)
            return EigenfunctionHandle(spec, route, target / raw, x0)
    raise ParameterError(f"route {route.value} is not available for (N={spec.N}, n={spec.n})")


def default_route(spec: EigenSpec, x: float) -> Route:
    """The route used to evaluate the eigenfunction at a single point."""
    if not spec.odd_N:
        return Route.LAGUERRE
    if x > 0 and spec.n >= 0:
        return Route.TRICOMI
    if spec.N >= 1:
        return Route.AIRY
    if route_allowed(spec, Route.BESSEL_K0, x):
        return Route.BESSEL_K0
    return Route.TRICOMI


def eigenfunction(spec: EigenSpec, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> tuple[SpecialValue, Route]:
    """Canonically normalized y(x), with the route that produced it."""
    route = default_route(spec, x)
    if spec.odd_N and spec.N == -1 and route == Route.TRICOMI and x < 0:
        # y_n(x) = y_{-n-1}(-x), here with -n-1 >= 0 and -x > 0
        value, _ = eigenfunction(spec.reflected(), -x, cfg)
        return value, route
    return eigenfunction_handle(spec, route, cfg).evaluate(x, cfg), route


def eigenfunction_even(N: int, n: int, x: float) -> float:
    if N % 2 != 0:
        raise ParameterError(f"eigenfunction_even needs even N, got N = {N}")
    return eigenfunction(EigenSpec.of(N, n), x)[0].value


def eigenfunction_odd(N: int, n: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if N % 2 == 0:
        raise ParameterError(f"eigenfunction_odd needs odd N, got N = {N}")
    return eigenfunction(EigenSpec.of(N, n), x, cfg)[0].value


def decomposition_consistency(
    N: int,
    n: int,
    xs: list[float],
    first: Route = Route.TRICOMI,
    second: Route | None = None,
    tol: float = 1e-8,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> dict:
    """
    Pointwise ratio first/second of two routes for the same eigenfunction.

    The second route defaults to the polynomial decomposition: the Airy form
    for N >= 1, the K0 form (n < 0) or the Bateman function (n >= 0) for
    N = -1. Points where either route cannot be evaluated, vanishes, or has
    a relative error estimate above tol/4 are skipped and listed, which keeps
    the spread of the usable ratios within tol. "points" is the number used
    out of "total".
    """
    spec = EigenSpec.of(N, n)
    if not spec.odd_N:
        raise ParameterError(f"decomposition_consistency needs odd N, got N = {N}")
    if second is None:
        if N >= 1:
            second = Route.AIRY
        else:
            second = Route.BESSEL_K0 if n < 0 else Route.BATEMAN

    ratios = []
    skipped = []
    for x in xs:
        if not (route_allowed(spec, first, x) and route_allowed(spec, second, x)):
            skipped.append({"x": x, "reason": "route unavailable"})
            continue
        try:
            a = evaluate_route(spec, first, x, cfg)
            b = evaluate_route(spec, second, x, cfg)
        except EvaluationError as exc:
            skipped.append({"x": x, "reason": f"evaluation failed: {exc}"})
            continue
        if a.value == 0.0 or b.value == 0.0:
            skipped.append({"x": x, "reason": "representation vanishes"})
            continue
        worst = max(a.est_abs_error / abs(a.value), b.est_abs_error / abs(b.value))
        if worst > tol / 4:
            skipped.append({"x": x, "reason": f"relative error estimate {worst:.1e}"})
            continue
        ratios.append(a.value / b.value)

    if not ratios:
        raise EvaluationError(f"no usable sample points for (N={N}, n={n})")
    mean = sum(ratios) / len(ratios)
    spread = (max(ratios) - min(ratios)) / abs(mean)
    if skipped:
        logger.info("[Eigenfunction] consistency (N=%d, n=%d) skipped %d points", N, n, len(skipped))
    return {
        "N": N,
        "n": n,
        "routes": (first.value, second.value),
        "ratio": mean,
        "spread": spread,
        "points": len(ratios),
        "total": len(xs),
        "skipped": skipped,
    }


def reflection_defect(N: int, n: int, xs: list[float], cfg: EvalConfig = DEFAULT_CONFIG) -> dict:
    """
    y_n(-x) from the canonical evaluation against y_{-n-1}(x) from the
    Tricomi form, for x >= 0.

    The two sides share only the normalization fixed at x0 = 1, so a wrong
    partner index or a missing sign flip in the reflection shows up as a
    deviation of order one. Deviations are relative, floored at 1e-3 of the
    largest sampled value.
    """
    spec = EigenSpec.of(N, n)
    if not spec.odd_N:
        raise ParameterError(f"reflection needs odd N, got N = {N}")
    if any(x < 0 for x in xs):
        raise DomainError("reflection samples must be >= 0")
    mirror = eigenfunction_handle(EigenSpec.of(N, -n - 1), Route.TRICOMI, cfg)
    pairs = [(eigenfunction(spec, -x, cfg)[0].value, mirror.evaluate(x, cfg).value) for x in xs]
    peak = max(abs(b) for _, b in pairs)
    if peak == 0.0:
        raise EvaluationError(f"mirror of (N={N}, n={n}) vanishes on every sample")
    deviations = [abs(a - b) / max(abs(b), 1e-3 * peak) for a, b in pairs]
    return {"N": N, "n": n, "deviation": max(deviations), "points": len(xs)}
