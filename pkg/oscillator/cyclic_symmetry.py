"""
ℤₙ action on the plane, invariance tests for states and sampled functions,
and the period of ℤₙ-invariant motion.
"""
import math
from typing import Union

import numpy as np

from .quadrature import GridFunction
from .schemas import (
    INTEGER_TOLERANCE,
    TWO_PI,
    CyclicGroup,
    FractionalIndex,
    GridCompatibilityError,
    HolomorphicState,
    IntegerIndex,
    PeriodInfo,
)


DEFAULT_INVARIANCE_TOL = 1e-10


def act(group: CyclicGroup, ell: int, z: complex) -> complex:
    return group.element(ell) * z


def make_cone_index(value: float) -> Union[IntegerIndex, FractionalIndex]:
    """Integer index when ``value`` is within 1e-12 of an integer, fractional otherwise."""
    nearest = round(value)
    if abs(value - nearest) <= INTEGER_TOLERANCE:
        return IntegerIndex(n=int(nearest))
    return FractionalIndex(gamma=value)


def sector_index(phi: float, n: int) -> int:
    """Which of the n sectors [2πk/n, 2π(k+1)/n) contains the angle phi."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    angle = phi % TWO_PI
    return min(int(angle * n / TWO_PI), n - 1)


def is_invariant(
    f: Union[HolomorphicState, GridFunction],
    n: int,
    tol: float = DEFAULT_INVARIANCE_TOL,
) -> bool:
    """True when f(ζz) = f(z) for ζ = e^{2πi/n}, up to ``tol``.

    States are invariant iff every coefficient with k mod n ≠ 0 vanishes.
    Sampled functions are compared with themselves rotated by 2π/n, which
    needs an angular grid whose node count is a multiple of n.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (tol >= 0):
        raise ValueError(f"tol must be non-negative, got {tol}")

    if isinstance(f, HolomorphicState):
        return all(abs(c) <= tol for k, c in enumerate(f.coeffs) if k % n)

    if isinstance(f, GridFunction):
        if f.grid.angular_nodes % n:
            raise GridCompatibilityError()
        shift = f.grid.angular_nodes // n
        rotated = np.roll(f.values, -shift, axis=1)
        return float(np.max(np.abs(rotated - f.values))) <= tol

    raise TypeError(f"cannot test invariance of {type(f).__name__}")


def isotypic_component(state: HolomorphicState, n: int, residue: int) -> HolomorphicState:
    """The part of ``state`` on which ζ acts as ζ^residue: keep k ≡ residue mod n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    residue %= n
    coeffs = tuple(c if k % n == residue else 0j for k, c in enumerate(state.coeffs))
    return HolomorphicState(coeffs=coeffs, truncation=state.truncation)


def project_invariant(state: HolomorphicState, n: int) -> HolomorphicState:
    """Orthogonal projection onto the ℤₙ-invariant subspace: keep k ≡ 0 mod n."""
    return isotypic_component(state, n, 0)


def is_maximal_invariant(state: HolomorphicState, n: int, tol: float = DEFAULT_INVARIANCE_TOL) -> bool:
    """Invariant under ℤₙ and under no ℤₘ with m > n."""
    if not is_invariant(state, n, tol):
        return False
    return not any(is_invariant(state, m, tol) for m in range(n + 1, state.truncation + 2))


def invariant_period(omega: float, n: int, hbar: float = 1.0) -> PeriodInfo:
    """τₙ = 2π/(ωn), ωₙ = ωn and Eₙ = ħωn for unit-modulus motion."""
    if not (math.isfinite(omega) and omega > 0):
        raise ValueError(f"omega must be positive, got {omega}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return PeriodInfo(
        n=n,
        tau_n=TWO_PI / (omega * n),
        omega_n=omega * n,
        energy=hbar * omega * n,
        hbar=hbar,
    )
