"""ODE residual of a closed-form eigenfunction, y'' by finite differences."""
import math

from src.config import get_settings
from src.errors import DomainError
from src.oracle.differences import second_derivative
from src.specfun.values import DEFAULT_CONFIG, EvalConfig
from src.spectra.eigen import EigenSpec
from src.spectra.eigenfunctions import (
    default_route,
    eigenfunction,
    eigenfunction_handle,
    route_allowed,
)


def local_wavenumber(N: int, E: float, x: float) -> float:
    """sqrt(1 + x^{2N+2} + |E||x|^N), the scale y varies on near x."""
    ax = max(abs(x), 1e-300)
    return math.sqrt(1.0 + ax ** (2 * N + 2) + abs(E) * ax**N)


def default_step(spec: EigenSpec, x: float) -> float:
    scaled = get_settings().numerics.get("fd_scaled_step", 0.1)
    return scaled / local_wavenumber(spec.N, spec.E, x)


def ode_residual(
    spec: EigenSpec,
    x: float,
    h: float | None = None,
    energy: float | None = None,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> float:
    """
    |-y'' + x^{2N+2} y - E x^N y| / (|y| (1 + x^{2N+2} + |E||x|^N)).

    `energy` replaces spec.E in the residual only, so a wrong energy can be
    shown to fail. The whole stencil uses one route; N = -1 needs the
    stencil to stay on one side of 0.
    """
    E = float(spec.E if energy is None else energy)
    if h is None:
        h = default_step(spec, x)
    lo, hi = x - 2 * h, x + 2 * h
    if spec.N == -1 and lo <= 0 <= hi:
        raise DomainError(f"N = -1 stencil at x = {x} with h = {h} crosses the origin")

    route = default_route(spec, x)
    single_route = route_allowed(spec, route, lo) and route_allowed(spec, route, hi)
    handle = eigenfunction_handle(spec, route, cfg) if single_route else None

    def y(s: float) -> float:
        if handle is None:
            return eigenfunction(spec, s, cfg)[0].value
        return handle.evaluate(s, cfg).value

    yx = y(x)
    ypp = second_derivative(y, x, h)
    N = spec.N
    weight = 0.0 if (N < 0 and x == 0) else x**N
    residual = -ypp + x ** (2 * N + 2) * yx - E * weight * yx
    scale = abs(yx) * (1.0 + abs(x) ** (2 * N + 2) + abs(E) * abs(weight))
    if scale == 0.0:
        return abs(residual)
    return abs(residual) / scale
