"""
Polar quadrature for the Gaussian measure e^{-|z|²} d²z / π.

With u = ρ² the measure factors into e^{-u} du times dθ/2π, so Gauss–Laguerre
in u and the uniform rule in θ integrate every product z̄^j z^k with
j, k ≤ N exactly once there are N + 1 radial and 2N + 2 angular nodes.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np
from scipy.special import roots_laguerre

from .schemas import TWO_PI, QuadratureSpec


MAX_NEWTON_STEPS = 50


@dataclass(frozen=True)
class PolarGrid:
    radii: np.ndarray           # ρ_r = √u_r
    angles: np.ndarray          # θ_j = offset + 2πj/M
    radial_weights: np.ndarray  # Gauss–Laguerre weights, Σ w_r = 1

    @property
    def radial_nodes(self) -> int:
        return len(self.radii)

    @property
    def angular_nodes(self) -> int:
        return len(self.angles)

    @property
    def points(self) -> np.ndarray:
        """Complex nodes with shape (radial_nodes, angular_nodes)."""
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]


@dataclass(frozen=True)
class GridFunction:
    """Values of a function on a polar grid, indexed [radial, angular]."""
    grid: PolarGrid
    values: np.ndarray

    def __post_init__(self):
        expected = (self.grid.radial_nodes, self.grid.angular_nodes)
        if self.values.shape != expected:
            raise ValueError(f"values have shape {self.values.shape}, grid needs {expected}")


@lru_cache(maxsize=64)
def polar_grid(spec: QuadratureSpec, angle_offset: float = 0.0) -> PolarGrid:
    u, weights = roots_laguerre(spec.radial_nodes)
    radii = np.sqrt(u)
    angles = angle_offset + TWO_PI * np.arange(spec.angular_nodes) / spec.angular_nodes
    for array in (radii, angles, weights):
        array.setflags(write=False)
    return PolarGrid(radii=radii, angles=angles, radial_weights=weights)


def sample(func: Callable[[np.ndarray], np.ndarray], grid: PolarGrid) -> GridFunction:
    values = np.asarray(func(grid.points), dtype=complex)
    return GridFunction(grid=grid, values=values)


def integrate(values: np.ndarray, grid: PolarGrid) -> complex:
    """∫ f e^{-|z|²} d²z/π ≈ Σ_r w_r (1/M) Σ_j f(ρ_r e^{iθ_j}).

    The angular sum is taken first, then the radial one, in node order, so
    repeated calls on identical input give bit-identical results.
    """
    angular = values.sum(axis=1) / grid.angular_nodes
    return complex(np.dot(grid.radial_weights, angular))


# === Extended precision ===

def _laguerre_pair(n: int, x: mpmath.mpf) -> tuple[mpmath.mpf, mpmath.mpf]:
    """L_n(x) and L_{n-1}(x) by the three-term recurrence."""
    previous, current = mpmath.mpf(1), 1 - x
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 - x) * current - k * previous) / (k + 1)
    return current, previous


@lru_cache(maxsize=16)
def laguerre_rule_extended(radial_nodes: int, dps: int) -> tuple[tuple[mpmath.mpf, ...], tuple[mpmath.mpf, ...]]:
    """Gauss–Laguerre nodes and weights polished by Newton's method to ``dps`` digits.

    Starts from the double-precision rule; weights are normalized so Σ w_r = 1.
    """
    n = radial_nodes
    start, _ = roots_laguerre(n)
    nodes, weights = [], []
    with mpmath.workdps(dps):
        tolerance = mpmath.mpf(10) ** (-dps + 3)
        for guess in start:
            x = mpmath.mpf(float(guess))
            for _ in range(MAX_NEWTON_STEPS):
                value, lower = _laguerre_pair(n, x)
                step = value * x / (n * (value - lower))
                x -= step
                if abs(step) <= tolerance * x:
                    break
            value, lower = _laguerre_pair(n, x)
            following = ((2 * n + 1 - x) * value - n * lower) / (n + 1)
            nodes.append(x)
            weights.append(x / ((n + 1) ** 2 * following ** 2))
    return tuple(nodes), tuple(weights)


def radial_moments_extended(spec: QuadratureSpec, max_power: int, dps: int) -> list[mpmath.mpf]:
    """Σ_r w_r ρ_r^s for s = 0..max_power, the radial half of a separable polar sum."""
    nodes, weights = laguerre_rule_extended(spec.radial_nodes, dps)
    moments = [mpmath.mpf(0)] * (max_power + 1)
    with mpmath.workdps(dps):
        for u, w in zip(nodes, weights):
            rho = mpmath.sqrt(u)
            term = w
            for s in range(max_power + 1):
                moments[s] += term
                term *= rho
    return moments


def angular_means_extended(spec: QuadratureSpec, max_order: int, dps: int) -> dict[int, mpmath.mpc]:
    """(1/M) Σ_j e^{i d θ_j} for |d| ≤ max_order on the uniform angles θ_j = 2πj/M."""
    m = spec.angular_nodes
    with mpmath.workdps(dps):
        roots = [mpmath.expj(2 * mpmath.pi * j / m) for j in range(m)]
        return {
            d: mpmath.fsum(roots[(d * j) % m] for j in range(m)) / m
            for d in range(-max_order, max_order + 1)
        }
