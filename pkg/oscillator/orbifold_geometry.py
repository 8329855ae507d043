"""
Cones as quotients of the plane by ℤₙ, and their fractional generalisation.

The covering map z ↦ ψ = z^ν sends the sector [0, 2π/ν) onto the cone with
coordinate ψ = ρ_ν e^{iφ_ν}. Restricting the flat metric of the plane to that
sector gives ds² = (1/ν²) ρ_ν^{2(1-ν)/ν} (dρ_ν² + ρ_ν² dφ_ν²), a flat cone with
a conical point at the apex. For non-integer ν the same formulas hold on one
branch of z^γ with an explicit cut.
"""
import cmath
import math
from typing import Union

import numpy as np
from scipy import integrate, optimize

from .cyclic_symmetry import make_cone_index
from .differentiation import richardson, second_difference, wirtinger_conjugate
from .phase_space import hamiltonian_vector_field
from .schemas import (
    INTEGER_TOLERANCE,
    TWO_PI,
    ConeSpace,
    FractionalIndex,
    IntegerIndex,
    MetricSample,
    OscillatorParams,
    PhasePoint,
)


# Points this close to the cut in angle are read from the cut⁺ side.
ANGLE_TOLERANCE = 1e-12

# Angular step for the one-sided limits at a branch cut.
CUT_APPROACH_STEP = 1e-6

IndexLike = Union[IntegerIndex, FractionalIndex, ConeSpace, int, float]


def _as_index(index: IndexLike) -> Union[IntegerIndex, FractionalIndex]:
    if isinstance(index, ConeSpace):
        return index.index
    if isinstance(index, (IntegerIndex, FractionalIndex)):
        return index
    return make_cone_index(index)


def _as_cone(cone: IndexLike) -> ConeSpace:
    if isinstance(cone, ConeSpace):
        return cone
    return ConeSpace(index=_as_index(cone))


def cone_order(index: IndexLike) -> float:
    """ν as a float, for either kind of index."""
    return _as_index(index).value


# === Branches ===

def branch_argument(z: complex, cut: float = 0.0, sheet: int = 0) -> float:
    """arg z taken in [cut, cut + 2π), shifted by 2π per sheet."""
    offset = (cmath.phase(z) - cut) % TWO_PI
    if offset >= TWO_PI - ANGLE_TOLERANCE:
        offset = 0.0
    return cut + offset + TWO_PI * sheet


def branch_power(z: complex, exponent: float, cut: float = 0.0, sheet: int = 0) -> complex:
    """z^exponent = exp(exponent · (log|z| + i·arg z)) on the chosen branch."""
    if z == 0:
        if exponent > 0:
            return 0j
        raise ValueError("non-positive power of zero is undefined")
    return cmath.exp(exponent * complex(math.log(abs(z)), branch_argument(z, cut, sheet)))


def covering_map(z: complex, cone: IndexLike, sheet: int = 0) -> complex:
    """ψ = z^n for integer cones, the chosen branch of z^γ otherwise."""
    cone = _as_cone(cone)
    index = cone.index
    if isinstance(index, IntegerIndex):
        return complex(z) ** index.n
    return branch_power(complex(z), index.gamma, cone.branch_cut_angle, sheet)


def covering_derivative(z: complex, cone: IndexLike) -> complex:
    """dψ/dz = ν z^{ν-1} on the same branch as :func:`covering_map`."""
    cone = _as_cone(cone)
    index = cone.index
    if isinstance(index, IntegerIndex):
        return index.n * complex(z) ** (index.n - 1)
    return index.gamma * branch_power(complex(z), index.gamma - 1.0, cone.branch_cut_angle)


def inverse_branch(psi: complex, cone: IndexLike, sheet: int = 0) -> complex:
    """The preimage of ψ in sector ``sheet`` of an integer cone."""
    cone = _as_cone(cone)
    if not isinstance(cone.index, IntegerIndex):
        raise ValueError("inverse_branch needs an integer cone index")
    n = cone.index.n
    if not 0 <= sheet < n:
        raise ValueError(f"sheet must lie in [0, {n}), got {sheet}")
    if psi == 0:
        return 0j
    cut = cone.branch_cut_angle
    offset = (cmath.phase(psi) - n * cut) % TWO_PI
    if offset >= TWO_PI - ANGLE_TOLERANCE:
        offset = 0.0
    theta = cut + offset / n + TWO_PI * sheet / n
    return abs(psi) ** (1.0 / n) * cmath.exp(1j * theta)


def preimages(psi: complex, cone: IndexLike) -> list[complex]:
    """All n preimages of ψ, one per sheet; a single ℤₙ orbit."""
    cone = _as_cone(cone)
    if not isinstance(cone.index, IntegerIndex):
        raise ValueError("preimages need an integer cone index")
    return [inverse_branch(psi, cone, sheet) for sheet in range(cone.index.n)]


def branch_discontinuity(gamma: float, rho: float, cone: Union[ConeSpace, None] = None) -> float:
    """
    Size of the jump of z^γ across the cut at radius ρ, zero for integer γ.

    Both one-sided limits are read from sheet 0 through branch_power at the
    angles cut + ε and cut - ε, then extrapolated to ε = 0.
    """
    if not (rho > 0 and math.isfinite(rho)):
        raise ValueError(f"rho must be positive, got {rho}")
    if abs(gamma - round(gamma)) <= INTEGER_TOLERANCE:
        return 0.0
    cut = cone.branch_cut_angle if cone is not None else 0.0

    def approach(sign: float):
        return lambda eps: branch_power(cmath.rect(rho, cut + sign * eps), gamma, cut)

    after = richardson(approach(1.0), CUT_APPROACH_STEP, order=1)
    before = richardson(approach(-1.0), CUT_APPROACH_STEP, order=1)
    return abs(before - after)


def winding_number(index: IndexLike, samples: int = 4096) -> int:
    """Times the image of the unit circle under z^n winds around the apex."""
    index = _as_index(index)
    if not isinstance(index, IntegerIndex):
        raise ValueError("the image of a circle under a fractional power is not closed")
    thetas = np.linspace(0.0, TWO_PI, samples + 1)
    image = np.exp(1j * thetas) ** index.n
    phases = np.unwrap(np.angle(image))
    return int(round((phases[-1] - phases[0]) / TWO_PI))


# === Metric ===

def conformal_factor(rho_cone: float, nu: float) -> float:
    return rho_cone ** (2.0 * (1.0 - nu) / nu) / nu ** 2


def restricted_metric(z: complex, index: IndexLike) -> MetricSample:
    """The plane's metric in cone coordinates at the image of z."""
    nu = cone_order(index)
    if z == 0:
        raise ValueError("the restricted metric is singular at the apex")
    point = PhasePoint(z=z)
    if nu > 1 and point.phi >= TWO_PI / nu:
        raise ValueError(f"z lies outside the sector [0, 2π/{nu:g})")

    rho = point.rho
    rho_cone = rho ** nu
    phi_cone = nu * point.phi
    factor = conformal_factor(rho_cone, nu)
    return MetricSample(
        at=cmath.rect(rho_cone, phi_cone),
        rho=rho,
        rho_cone=rho_cone,
        conformal_factor=factor,
        metric_components=((factor, 0.0), (0.0, factor * rho_cone ** 2)),
        direct_components=((1.0, 0.0), (0.0, rho ** 2 / nu ** 2)),
    )


def line_element_direct(rho: float, nu: float, d_rho: float, d_phi_cone: float) -> float:
    """ds² = dρ² + (ρ²/ν²) dφ_ν²."""
    return d_rho ** 2 + (rho / nu) ** 2 * d_phi_cone ** 2


def line_element_conformal(rho_cone: float, nu: float, d_rho_cone: float, d_phi_cone: float) -> float:
    """ds² = (1/ν²) ρ_ν^{2(1-ν)/ν} (dρ_ν² + ρ_ν² dφ_ν²)."""
    return conformal_factor(rho_cone, nu) * (d_rho_cone ** 2 + rho_cone ** 2 * d_phi_cone ** 2)


def circumference(rho: float, index: IndexLike, form: str = "conformal") -> float:
    """Length of the circle of plane radius ρ on the cone, by quadrature over φ_ν."""
    if not (rho > 0 and math.isfinite(rho)):
        raise ValueError(f"rho must be positive, got {rho}")
    nu = cone_order(index)
    if form not in ("conformal", "direct"):
        raise ValueError(f"unknown metric form: {form}")

    def speed(phi_cone: float) -> float:
        sample = restricted_metric(cmath.rect(rho, phi_cone / nu), index)
        components = sample.metric_components if form == "conformal" else sample.direct_components
        return math.sqrt(components[1][1])

    length, _ = integrate.quad(speed, 0.0, TWO_PI, epsabs=0.0, epsrel=1e-13)
    return length


def angle_deficit(index: IndexLike) -> float:
    """δ = 2π(1 - 1/ν)."""
    return TWO_PI * (1.0 - 1.0 / cone_order(index))


def numerical_angle_deficit(index: IndexLike, rho: float = 1.0) -> float:
    """2π minus the total cone angle measured from the circumference at radius ρ."""
    return TWO_PI - circumference(rho, index) / rho


def gaussian_curvature(rho: float, index: IndexLike, rel_step: float = 1e-2) -> float:
    """K = -Δ log c / (2c) for the conformal factor c, away from the apex.

    The radial Laplacian f'' + f'/r is taken by central differences and
    Richardson-extrapolated once.
    """
    nu = cone_order(index)
    if not (rho > 0 and math.isfinite(rho)):
        raise ValueError("curvature is only defined away from the apex")
    r = rho ** nu
    log_factor = lambda s: math.log(conformal_factor(s, nu))

    def laplacian(h: float) -> float:
        first = (log_factor(r + h) - log_factor(r - h)) / (2.0 * h)
        return second_difference(log_factor, r, h) + first / r

    step = rel_step * r
    return -richardson(laplacian, step, order=2).real / (2.0 * conformal_factor(r, nu))


def sector_contains(outer: IndexLike, inner: IndexLike) -> bool:
    """Whether the fundamental sector of ``inner`` lies inside that of ``outer``."""
    return cone_order(inner) >= cone_order(outer)


# === Dynamics on the cone ===

def cone_hamiltonian(psi: complex, omega: float, hbar: float, index: IndexLike) -> float:
    """Hₙ = ħων|ψ|²."""
    return hbar * omega * cone_order(index) * abs(psi) ** 2


def cone_vector_field(psi: complex, omega: float, index: IndexLike) -> complex:
    return 1j * omega * cone_order(index) * psi


def cone_flow(psi0: complex, tau: float, omega: float, index: IndexLike) -> complex:
    return cmath.exp(1j * omega * cone_order(index) * tau) * psi0


def pushforward_vector_field(z: complex, omega: float, cone: IndexLike) -> complex:
    """dψ/dτ at ψ = z^ν from the chain rule ψ'(z)·ż along the plane flow."""
    params = OscillatorParams(omega=omega)
    return covering_derivative(z, cone) * hamiltonian_vector_field(PhasePoint(z=z), params)


def vector_field_from_hamiltonian(
    psi: complex,
    omega: float,
    hbar: float,
    index: IndexLike,
    h: float = 1e-2,
) -> complex:
    """ψ̇ = (i/ħ) ∂Hₙ/∂ψ̄, the inverse of Ωₙ = -iħ dψ∧dψ̄ applied to dHₙ."""
    energy = lambda w: cone_hamiltonian(w, omega, hbar, index)
    step = h * max(1.0, abs(psi))
    return 1j / hbar * wirtinger_conjugate(energy, psi, step)


def fundamental_period(omega: float, index: IndexLike, psi0: complex = 1.0, samples: int = 4096) -> float:
    """
    Smallest τ > 0 with cone_flow(ψ0, τ) = ψ0, located by sign change and refined with brentq.

    The search spans two expected periods, 4π/(ων), so ``samples``
    points per window resolve the return for every order ν.
    """
    if psi0 == 0:
        raise ValueError("the apex is fixed by the flow and has no period")
    nu = cone_order(index)
    horizon = 2.0 * TWO_PI / (omega * nu)

    def relative(tau: float) -> complex:
        return cone_flow(psi0, tau, omega, index) / psi0

    taus = np.linspace(0.0, horizon, samples + 1)[1:]
    values = [relative(t) for t in taus]
    for k in range(1, len(taus)):
        before, after = values[k - 1], values[k]
        if before.imag < 0.0 <= after.imag and after.real > 0.0:
            return optimize.brentq(
                lambda t: relative(t).imag, taus[k - 1], taus[k], xtol=1e-15, rtol=1e-15
            )
    raise ValueError("no return found within the search horizon")
