"""
Shooting Oracle
===============

CONCEPT: What is being solved
-----------------------------
    y'' = q(x) y,    q(x) = x^{2N+2} - E x^N,    y -> 0 as x -> +-inf

The domain is cut at +-L, well inside the forbidden region of every energy in
the bracket. Both ends start from the decaying WKB solution

    y'/y = -+ sqrt(q) - q'/(4q)

and are integrated inward with classical RK4 to the match point. The step
is set from the local size of q (small in the oscillating region, larger
where the solution only grows), on a grid fixed by the bracket, so the same
grid serves every energy in it.

CONCEPT: Matching defect
------------------------
D(E) = W(y_left, y_right) / (|(y_l, y_l')| |(y_r, y_r')|) at the match point.
It is continuous in E and vanishes exactly at eigenvalues, where it changes
sign. Refinement is Illinois-modified regula falsi on D.

CONCEPT: N = -1
---------------
x^N = 1/x is singular at 0. The left solution stops at x = -0.5, is written
in the local Frobenius basis

    y1 = x (1 + a_1 x + ...),    y2 = -E y1 log|x| + (1 + b_2 x^2 + ...)

and the same combination is evaluated at x = +0.5, where it is matched
against the right solution. No integration crosses 0.

The scan runs all energies of a grid through the integrator at once (numpy
arrays); refinement runs one energy at a time on plain floats.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.config import get_settings
from src.errors import BracketError, ParameterError, StepError
from src.spectra.eigen import check_order

logger = logging.getLogger(__name__)

_RESCALE_AT = 1e150
_FROBENIUS_X = 0.5
_FROBENIUS_TERMS = 60


@dataclass(frozen=True)
class ShootingConfig:
    bracket: tuple[float, float]
    L: float | None = None
    step: float = 0.01
    match_point: float | None = None
    tol_E: float = 1e-9
    oscillation_safety: float = 0.02
    evanescent_safety: float = 0.1
    tail_action: float = 18.0

    def __post_init__(self):
        lo, hi = self.bracket
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise ParameterError(f"bracket must be a finite interval (lo < hi), got {self.bracket}")
        if not self.step > 0 or not self.tol_E > 0:
            raise ParameterError("step and tol_E must be positive")
        if self.L is not None and not self.L > 0:
            raise ParameterError(f"L must be positive, got {self.L}")

    @classmethod
    def from_settings(cls, bracket: tuple[float, float], **overrides) -> "ShootingConfig":
        numerics = get_settings().numerics
        values = {
            "step": numerics.get("shooting_step", 0.01),
            "tol_E": numerics.get("shooting_tol_E", 1e-10),
            "oscillation_safety": numerics.get("shooting_oscillation_safety", 0.02),
            "evanescent_safety": numerics.get("shooting_evanescent_safety", 0.1),
            "tail_action": numerics.get("shooting_tail_action", 18.0),
        }
        values.update(overrides)
        return cls(bracket=bracket, **values)

    def with_bracket(self, bracket: tuple[float, float]) -> "ShootingConfig":
        return ShootingConfig(
            bracket, self.L, self.step, self.match_point, self.tol_E,
            self.oscillation_safety, self.evanescent_safety, self.tail_action,
        )


@dataclass(frozen=True)
class ShootResult:
    E: float
    matching_defect: float
    n_nodes: int
    converged: bool


@dataclass(frozen=True)
class _Grid:
    """Inward step sequence from one end to the match point, with q's pieces pre-evaluated."""
    start: float
    steps: list[float]
    # x^{2N+2} and x^N at the start of each step, its midpoint and its end
    p2: list[tuple[float, float, float]]
    pn: list[tuple[float, float, float]]


def _turning_point(N: int, E_abs: float) -> float:
    return E_abs ** (1.0 / (N + 2)) if E_abs > 0 else 0.0


def _q_bound(N: int, E_abs: float, x: float) -> tuple[float, float]:
    """(x^{2N+2}, E_abs |x|^N): q lies between their difference and their sum."""
    ax = abs(x)
    return ax ** (2 * N + 2), E_abs * ax**N


def _cutoff(N: int, E_abs: float, cfg: ShootingConfig) -> float:
    if cfg.L is not None:
        return cfg.L
    x_t = _turning_point(N, E_abs)
    x = max(x_t, 1e-3)
    action = 0.0
    dx = 1e-3 * max(1.0, x_t)
    while action < cfg.tail_action:
        grow, pull = _q_bound(N, E_abs, x)
        action += math.sqrt(max(grow - pull, 0.0)) * dx
        x += dx
    return max(x, x_t + 2.0)


def _step_size(N: int, E_abs: float, x: float, cfg: ShootingConfig) -> float:
    grow, pull = _q_bound(N, E_abs, x)
    size = math.sqrt(1.0 + grow + pull)
    safety = cfg.evanescent_safety if grow > 2.0 * pull + 1.0 else cfg.oscillation_safety
    return min(cfg.step, safety / size)


def _make_grid(N: int, E_abs: float, start: float, end: float, cfg: ShootingConfig) -> _Grid:
    direction = 1.0 if end > start else -1.0
    steps = []
    x = start
    while (end - x) * direction > 1e-14:
        h = _step_size(N, E_abs, x, cfg)
        h = min(h, abs(end - x))
        steps.append(direction * h)
        x += direction * h
    p2, pn = [], []
    x = start
    for h in steps:
        pts = (x, x + h / 2, x + h)
        p2.append(tuple(p ** (2 * N + 2) for p in pts))
        pn.append(tuple(p**N for p in pts))
        x += h
    return _Grid(start, steps, p2, pn)


def _wkb_seed(N: int, E, x: float, decaying_right: bool):
    """(y, y') at the cut-off from the decaying WKB solution; E may be an array."""
    q = x ** (2 * N + 2) - E * x**N
    dq = (2 * N + 2) * x ** (2 * N + 1) - E * N * x ** (N - 1)
    if np.any(np.asarray(q) <= 0):
        raise ParameterError(f"cut-off x = {x} is not in the forbidden region for every energy")
    root = q**0.5
    slope = (-root if decaying_right else root) - dq / (4 * q)
    return 1.0 + 0.0 * E, slope


def _integrate(grid: _Grid, E, y, v, record: bool = False):
    """Classical RK4 over the grid. Works on floats or numpy arrays of energies."""
    trace = [y] if record else None
    vector = isinstance(y, np.ndarray)
    for i, h in enumerate(grid.steps):
        a2, m2, b2 = grid.p2[i]
        an, mn, bn = grid.pn[i]
        q0 = a2 - E * an
        qm = m2 - E * mn
        q1 = b2 - E * bn
        k1y, k1v = v, q0 * y
        k2y, k2v = v + 0.5 * h * k1v, qm * (y + 0.5 * h * k1y)
        k3y, k3v = v + 0.5 * h * k2v, qm * (y + 0.5 * h * k2y)
        k4y, k4v = v + h * k3v, q1 * (y + h * k3y)
        y = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v = v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if i % 16 == 0:
            if vector:
                big = np.maximum(np.abs(y), np.abs(v)) > _RESCALE_AT
                if big.any():
                    y = np.where(big, y / _RESCALE_AT, y)
                    v = np.where(big, v / _RESCALE_AT, v)
                if not np.all(np.isfinite(y)):
                    raise StepError(f"integrator overflowed near x = {grid.start + sum(grid.steps[: i + 1])}")
            else:
                if max(abs(y), abs(v)) > _RESCALE_AT:
                    y, v = y / _RESCALE_AT, v / _RESCALE_AT
                if not math.isfinite(y):
                    raise StepError("integrator produced a non-finite value")
        if record:
            trace.append(y)
    return y, v, trace


def _frobenius_basis(E, x: float):
    """(y1, y1', y2, y2') of x y'' + E y - x y = 0 at x != 0."""
    a = [1.0 + 0.0 * E]
    for j in range(1, _FROBENIUS_TERMS):
        prev2 = a[j - 2] if j >= 2 else 0.0
        a.append((prev2 - E * a[j - 1]) / (j * (j + 1)))
    C = -E
    b = [1.0 + 0.0 * E, 0.0 * E]
    for j in range(1, _FROBENIUS_TERMS - 1):
        b.append((b[j - 1] - E * b[j] - C * (2 * j + 1) * a[j]) / (j * (j + 1)))

    y1 = sum(a[k] * x ** (k + 1) for k in range(_FROBENIUS_TERMS))
    dy1 = sum(a[k] * (k + 1) * x**k for k in range(_FROBENIUS_TERMS))
    w = sum(b[k] * x**k for k in range(len(b)))
    dw = sum(k * b[k] * x ** (k - 1) for k in range(1, len(b)))
    log = math.log(abs(x))
    y2 = C * y1 * log + w
    dy2 = C * (dy1 * log + y1 / x) + dw
    return y1, dy1, y2, dy2


def _connect_through_origin(E, y, v):
    """Carry (y, y') at x = -0.5 to x = +0.5 through the Frobenius basis."""
    y1, d1, y2, d2 = _frobenius_basis(E, -_FROBENIUS_X)
    det = y1 * d2 - y2 * d1
    A = (y * d2 - v * y2) / det
    B = (y1 * v - d1 * y) / det
    y1, d1, y2, d2 = _frobenius_basis(E, _FROBENIUS_X)
    return A * y1 + B * y2, A * d1 + B * d2


class _Shooter:
    """Grids and matching defect for one N and one energy range."""

    def __init__(self, N: int, cfg: ShootingConfig):
        check_order(N)
        self.N = N
        self.cfg = cfg
        E_abs = max(abs(cfg.bracket[0]), abs(cfg.bracket[1]))
        self.L = _cutoff(N, E_abs, cfg)
        x_t = _turning_point(N, E_abs)
        if cfg.L is not None and cfg.L <= x_t + 2.0:
            raise ParameterError(f"L = {cfg.L} must exceed the turning point {x_t:.3f} + 2")
        if N == -1:
            self.match = _FROBENIUS_X
            left_end = -_FROBENIUS_X
        else:
            self.match = 0.0 if cfg.match_point is None else cfg.match_point
            left_end = self.match
        self.left = _make_grid(N, E_abs, -self.L, left_end, cfg)
        self.right = _make_grid(N, E_abs, self.L, self.match, cfg)
        logger.debug(
            "[Shooting] N=%d L=%.3f steps %d+%d", N, self.L, len(self.left.steps), len(self.right.steps)
        )

    def _sides(self, E, record: bool = False):
        yl, vl = _wkb_seed(self.N, E, -self.L, decaying_right=False)
        yr, vr = _wkb_seed(self.N, E, self.L, decaying_right=True)
        yl, vl, trace_l = _integrate(self.left, E, yl, vl, record)
        yr, vr, trace_r = _integrate(self.right, E, yr, vr, record)
        if self.N == -1:
            yl, vl = _connect_through_origin(E, yl, vl)
        return (yl, vl, trace_l), (yr, vr, trace_r)

    def defect(self, E):
        (yl, vl, _), (yr, vr, _) = self._sides(E)
        norm = ((yl * yl + vl * vl) * (yr * yr + vr * vr)) ** 0.5
        return (yl * vr - vl * yr) / norm

    def count_nodes(self, E: float) -> int:
        (yl, vl, trace_l), (yr, vr, trace_r) = self._sides(E, record=True)
        # scale the right branch onto the left one at the match point
        factor = (yl * yr + vl * vr) / (yr * yr + vr * vr)
        # the match-point samples are dropped: an odd state is ~0 there with a rounding sign
        values = trace_l[:-1] + [factor * y for y in reversed(trace_r[:-1])]
        # for N = -1 the stretch (-0.5, 0.5) is bridged by one sign comparison
        signs = [math.copysign(1.0, y) for y in values if y != 0.0]
        return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)


def _illinois(f, lo: float, hi: float, f_lo: float, f_hi: float, tol: float, max_iter: int = 200) -> tuple[float, float, bool]:
    side = 0
    x, fx = lo, f_lo
    for _ in range(max_iter):
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if fx == 0.0:
            return x, 0.0, True
        if (fx > 0) == (f_hi > 0):
            hi, f_hi = x, fx
            if side == 1:
                f_lo *= 0.5
            side = 1
        else:
            lo, f_lo = x, fx
            if side == -1:
                f_hi *= 0.5
            side = -1
        if hi - lo <= tol:
            return 0.5 * (lo + hi), fx, True
    return x, fx, False


def _refine(shooter: _Shooter, lo: float, hi: float, d_lo: float, d_hi: float) -> ShootResult:
    f = lambda E: float(shooter.defect(E))  # noqa: E731
    E, defect, converged = _illinois(f, lo, hi, d_lo, d_hi, shooter.cfg.tol_E)
    nodes = shooter.count_nodes(E)
    logger.info("[Shooting] N=%d E=%.12f defect %.2e nodes %d", shooter.N, E, defect, nodes)
    return ShootResult(E=E, matching_defect=abs(defect), n_nodes=nodes, converged=converged)


def shoot_eigenvalue(N: int, cfg: ShootingConfig) -> ShootResult:
    """The single eigenvalue inside cfg.bracket."""
    shooter = _Shooter(N, cfg)
    lo, hi = cfg.bracket
    d_lo, d_hi = float(shooter.defect(lo)), float(shooter.defect(hi))
    if d_lo == 0.0:
        return ShootResult(lo, 0.0, shooter.count_nodes(lo), True)
    if d_hi == 0.0:
        return ShootResult(hi, 0.0, shooter.count_nodes(hi), True)
    if (d_lo > 0) == (d_hi > 0):
        raise BracketError(f"matching defect does not change sign on [{lo}, {hi}] for N={N}")
    return _refine(shooter, lo, hi, d_lo, d_hi)


def spectrum_scan(N: int, E_range: tuple[float, float], cfg: ShootingConfig | None = None, scan_step: float | None = None) -> list[ShootResult]:
    """Every eigenvalue in E_range, sorted."""
    lo, hi = E_range
    cfg = ShootingConfig.from_settings(E_range) if cfg is None else cfg.with_bracket(E_range)
    if scan_step is None:
        scan_step = get_settings().numerics.get("shooting_scan_step", 0.1)
    shooter = _Shooter(N, cfg)

    count = max(2, int(math.ceil((hi - lo) / scan_step)) + 1)
    grid = np.linspace(lo, hi, count)
    defects = np.asarray(shooter.defect(grid), dtype=float)

    results = []
    for i in range(count - 1):
        a, b = defects[i], defects[i + 1]
        if a == 0.0:
            results.append(ShootResult(float(grid[i]), 0.0, shooter.count_nodes(float(grid[i])), True))
            continue
        if (a > 0) != (b > 0) and b != 0.0:
            results.append(_refine(shooter, float(grid[i]), float(grid[i + 1]), float(a), float(b)))
    if defects[-1] == 0.0:
        results.append(ShootResult(float(grid[-1]), 0.0, shooter.count_nodes(float(grid[-1])), True))

    for first, second in zip(results, results[1:]):
        if abs(second.E - first.E) <= 10 * cfg.tol_E:
            raise BracketError(f"two brackets refined to the same eigenvalue {first.E} (N={N})")
    return sorted(results, key=lambda r: r.E)
