"""
Finite-difference derivatives used to cross-check analytic vector fields
and eigen-relations against sampled functions.
"""
import math
from typing import Callable


ComplexFunction = Callable[[complex], complex]


def forward_difference(func: ComplexFunction, x: complex, h: float, direction: complex = 1.0) -> complex:
    step = h * direction
    return (func(x + step) - func(x)) / step


def central_difference(func: ComplexFunction, x: complex, h: float, direction: complex = 1.0) -> complex:
    """Directional derivative (f(x + h·u) - f(x - h·u)) / (2h·u), second order in h."""
    step = h * direction
    return (func(x + step) - func(x - step)) / (2.0 * step)


def second_difference(func: Callable[[float], float], x: float, h: float) -> float:
    return (func(x + h) - 2.0 * func(x) + func(x - h)) / (h * h)


def richardson(estimate: Callable[[float], complex], h: float, order: int) -> complex:
    """Cancel the leading h**order error term of ``estimate`` using steps h and h/2."""
    factor = 2.0 ** order
    return (factor * estimate(h / 2.0) - estimate(h)) / (factor - 1.0)


def wirtinger_conjugate(func: Callable[[complex], float], z: complex, h: float) -> complex:
    """∂f/∂z̄ = ½(∂f/∂x + i ∂f/∂y) for a real function of a complex variable."""
    d_x = (func(z + h) - func(z - h)) / (2.0 * h)
    d_y = (func(z + 1j * h) - func(z - 1j * h)) / (2.0 * h)
    return 0.5 * (d_x + 1j * d_y)


def empirical_order(error_coarse: float, error_fine: float, ratio: float = 2.0) -> float:
    """Observed convergence order from errors at step h and h / ratio."""
    if error_coarse <= 0 or error_fine <= 0:
        raise ValueError("convergence order needs strictly positive errors")
    return math.log(error_coarse / error_fine) / math.log(ratio)
