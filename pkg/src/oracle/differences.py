"""Five-point central differences, with one Richardson step on top."""
from typing import Callable

from src.errors import ParameterError

ScalarFn = Callable[[float], float]


def _check_step(h: float) -> None:
    if not h > 0:
        raise ParameterError(f"finite-difference step must be positive, got {h}")


def first_derivative(f: ScalarFn, x: float, h: float) -> float:
    _check_step(h)
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def second_derivative_5pt(f: ScalarFn, x: float, h: float, fx: float | None = None) -> float:
    _check_step(h)
    if fx is None:
        fx = f(x)
    return (
        -f(x - 2 * h) + 16 * f(x - h) - 30 * fx + 16 * f(x + h) - f(x + 2 * h)
    ) / (12 * h * h)


def second_derivative(f: ScalarFn, x: float, h: float) -> float:
    """
    y'' at x from the 5-point stencil at h and h/2, Richardson-combined.

    The stencil error starts at h^4, so (16 D(h/2) - D(h)) / 15 is O(h^6).
    """
    fx = f(x)
    coarse = second_derivative_5pt(f, x, h, fx)
    fine = second_derivative_5pt(f, x, h / 2, fx)
    return (16 * fine - coarse) / 15
