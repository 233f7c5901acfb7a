"""
WKB Action
==========

    S(E) = int_0^B sqrt(E x^N - x^{2N+2}) dx,    B = E^{1/(N+2)}

The integrand has a square-root zero at B and, for N = -1, an x^{-1/2}
singularity at 0. Substituting x = B u^{2/(N+2)} and then u = sin(phi)
leaves a smooth integrand on [0, pi/2], so the quadrature sees neither end
point. The integral itself is E pi / (2(N+2)) for every N.

For odd N the quantization S = (n + 1/2) pi reproduces E_n = (2n+1)(N+2)
exactly. For even N the true eigenvalues sit a fixed distance away:
`action_offset` returns S(E_n) - (n//2 + 1/2) pi.
"""
import math

import numpy as np

from src.errors import ParameterError
from src.oracle.quadrature import adaptive_quad
from src.spectra.eigen import check_order, eigenvalue


def wkb_action(N: int, E: float, tol: float = 1e-13) -> float:
    check_order(N)
    if not E > 0:
        raise ParameterError(f"wkb_action needs E > 0, got E = {E}")
    k = N + 2
    B = E ** (1.0 / k)
    power = 2.0 / k

    def integrand(phi):
        u = np.sin(phi)
        x = B * u**power
        # dx/dphi = B * power * u^(power-1) * cos(phi), written so u -> 0 stays finite
        with np.errstate(divide="ignore", invalid="ignore"):
            radicand = np.maximum(E * x**N - x ** (2 * N + 2), 0.0)
            jac = B * power * u ** (power - 1.0) * np.cos(phi)
            val = np.sqrt(radicand) * jac
        return np.where(np.isfinite(val), val, 0.0)

    value, _ = adaptive_quad(integrand, 0.0, math.pi / 2, tol=tol * max(1.0, abs(E)))
    return value


def wkb_action_exact(N: int, E: float) -> float:
    check_order(N)
    return E * math.pi / (2 * (N + 2))


def action_offset(N: int, n: int) -> float:
    """Signed WKB shortfall for even N: -pi/(2(N+2)) at even n, +pi/(2(N+2)) at odd n."""
    if N % 2 != 0:
        raise ParameterError(f"action_offset is defined for even N, got N = {N}")
    E = eigenvalue(N, n)
    return wkb_action(N, float(E)) - (n // 2 + 0.5) * math.pi
