"""
Classical harmonic oscillator on the complex phase plane.

The dimensionless coordinate z = (x - i p/(m ω)) / r0 turns the Hamiltonian into
ħω|z|² and the Hamiltonian vector field into iωz ∂_z, so the flow is a rigid
rotation z(τ) = e^{iωτ} z(0). A fixed-step RK4 integrator cross-checks the
closed form.
"""
import cmath
import math

from .differentiation import empirical_order, wirtinger_conjugate
from .schemas import OscillatorParams, PhasePoint, Trajectory


DEFAULT_PARAMS = OscillatorParams()


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


def to_dimensionless(x: float, p: float, params: OscillatorParams = DEFAULT_PARAMS) -> PhasePoint:
    _require_finite(x=x, p=p)
    z = (x - 1j * p / (params.mass * params.omega)) / params.r0
    return PhasePoint(z=z)


def from_dimensionless(point: PhasePoint, params: OscillatorParams = DEFAULT_PARAMS) -> tuple[float, float]:
    x = params.r0 * point.z.real
    p = -params.mass * params.omega * params.r0 * point.z.imag
    return x, p


def hamiltonian(point: PhasePoint, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    z = point.z
    return params.quantum * (z.real * z.real + z.imag * z.imag)


def hamiltonian_xp(x: float, p: float, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    """p²/(2m) + m ω² x² / 2 in the original variables."""
    _require_finite(x=x, p=p)
    return p * p / (2.0 * params.mass) + 0.5 * params.mass * params.omega ** 2 * x * x


def hamiltonian_vector_field(point: PhasePoint, params: OscillatorParams = DEFAULT_PARAMS) -> complex:
    return 1j * params.omega * point.z


def symplectic_gradient(point: PhasePoint, params: OscillatorParams = DEFAULT_PARAMS, h: float = 1e-3) -> complex:
    """ż = (i/ħ) ∂H/∂z̄, inverting Ω = -iħ dz∧dz̄ numerically from H alone."""
    energy = lambda w: hamiltonian(PhasePoint(z=w), params)
    step = h * max(1.0, abs(point.z))
    return 1j / params.hbar * wirtinger_conjugate(energy, point.z, step)


def exact_flow(point: PhasePoint, tau: float, params: OscillatorParams = DEFAULT_PARAMS) -> PhasePoint:
    _require_finite(tau=tau)
    return PhasePoint(z=cmath.exp(1j * params.omega * tau) * point.z)


def _rk4_step(z: complex, h: float, omega: float) -> complex:
    k1 = 1j * omega * z
    k2 = 1j * omega * (z + 0.5 * h * k1)
    k3 = 1j * omega * (z + 0.5 * h * k2)
    k4 = 1j * omega * (z + h * k3)
    return z + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def integrate_flow(
    point: PhasePoint,
    tau: float,
    steps: int,
    params: OscillatorParams = DEFAULT_PARAMS,
) -> Trajectory:
    """
    Classical RK4 on ż = iωz with ``steps`` equal steps of size τ/steps.

    Trajectory samples are strictly increasing in τ, so τ must be
    non-negative; raises ValueError for τ < 0, steps < 1 or non-finite τ.
    Use exact_flow with a negative τ to run the flow backwards.
    """
    if not isinstance(steps, int) or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    _require_finite(tau=tau)
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    if tau == 0:
        return Trajectory(params=params, samples=[(0.0, point)])

    h = tau / steps
    z = point.z
    samples = [(0.0, point)]
    for k in range(1, steps + 1):
        z = _rk4_step(z, h, params.omega)
        samples.append((tau * k / steps, PhasePoint(z=z)))
    return Trajectory(params=params, samples=samples)


def integrator_error(point: PhasePoint, tau: float, steps: int, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    numeric = integrate_flow(point, tau, steps, params).final.z
    return abs(numeric - exact_flow(point, tau, params).z)


def integrator_order(point: PhasePoint, tau: float, steps: int, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    """Empirical order of RK4 from runs with ``steps`` and ``2 * steps``."""
    coarse = integrator_error(point, tau, steps, params)
    fine = integrator_error(point, tau, 2 * steps, params)
    return empirical_order(coarse, fine)
