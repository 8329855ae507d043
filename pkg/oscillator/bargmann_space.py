"""
Bargmann–Fock space of holomorphic functions square-integrable against
e^{-|z|²} d²z / π, truncated to degree N.

In the normalized convention a state is ψ(z) = Σ c_k z^k / √k!, the monomials
z^k / √k! are orthonormal and the Hamiltonian ħω(z∂_z + ½) is diagonal with
eigenvalues ħω(k + ½).
"""
import cmath
import math
from typing import Callable, Iterable, Optional, Sequence

import mpmath
import numpy as np

from .differentiation import central_difference, empirical_order
from .orbifold_geometry import branch_discontinuity, branch_power, covering_map
from .cyclic_symmetry import make_cone_index
from .phase_space import DEFAULT_PARAMS
from .quadrature import GridFunction, angular_means_extended, integrate, polar_grid, radial_moments_extended
from .schemas import (
    DEFAULT_TRUNCATION,
    INTEGER_TOLERANCE,
    ConeSpace,
    Convention,
    FractionalIndex,
    HolomorphicState,
    IntegerIndex,
    MembershipResult,
    OscillatorParams,
    QuadratureSpec,
    QuadratureUnderresolvedError,
    SpectralLine,
)


# Working digits on top of those needed to hold degree!.
EXTENDED_DIGITS = 30


# === Construction ===

def state_from_coefficients(coeffs: Iterable[complex], truncation: int = DEFAULT_TRUNCATION) -> HolomorphicState:
    return HolomorphicState(coeffs=tuple(coeffs), truncation=truncation)


def basis_state(n: int, truncation: int = DEFAULT_TRUNCATION) -> HolomorphicState:
    """ψₙ, the n-th normalized monomial."""
    if not 0 <= n <= truncation:
        raise ValueError(f"basis index {n} outside [0, {truncation}]")
    coeffs = [0j] * (truncation + 1)
    coeffs[n] = 1.0 + 0j
    return HolomorphicState(coeffs=tuple(coeffs), truncation=truncation)


def vacuum_state(truncation: int = DEFAULT_TRUNCATION) -> HolomorphicState:
    return basis_state(0, truncation)


def _padded(state: HolomorphicState, truncation: int) -> np.ndarray:
    vector = np.zeros(truncation + 1, dtype=complex)
    vector[: len(state.coeffs)] = state.coeffs
    return vector


def coefficient_vector(state: HolomorphicState) -> np.ndarray:
    return np.asarray(state.coeffs, dtype=complex)


def _with_coefficients(state: HolomorphicState, vector: np.ndarray) -> HolomorphicState:
    return HolomorphicState(coeffs=tuple(complex(c) for c in vector), truncation=state.truncation)


# === Inner products ===

def inner_product_analytic(a: HolomorphicState, b: HolomorphicState) -> complex:
    """⟨a, b⟩ = Σ conj(a_k) b_k, antilinear in the first slot."""
    truncation = max(a.truncation, b.truncation)
    return complex(np.vdot(_padded(a, truncation), _padded(b, truncation)))


def norm(state: HolomorphicState) -> float:
    return math.sqrt(inner_product_analytic(state, state).real)


def normalize(state: HolomorphicState) -> HolomorphicState:
    size = norm(state)
    if size == 0:
        raise ValueError("cannot normalize the zero state")
    return _with_coefficients(state, coefficient_vector(state) / size)


def _basis_values(points: np.ndarray, degree: int, convention: Convention) -> np.ndarray:
    """Stack of z^k (monomial) or z^k/√k! (normalized) for k = 0..degree."""
    values = np.empty((degree + 1,) + points.shape, dtype=complex)
    values[0] = 1.0
    for k in range(1, degree + 1):
        scale = 1.0 if convention is Convention.MONOMIAL else 1.0 / math.sqrt(k)
        values[k] = values[k - 1] * points * scale
    return values


def evaluate_state(state: HolomorphicState, z, convention: Convention = Convention.NORMALIZED):
    """ψ(z) for a scalar or an array of points."""
    points = np.asarray(z, dtype=complex)
    degree = state.degree
    basis = _basis_values(points, degree, convention)
    values = np.tensordot(coefficient_vector(state)[: degree + 1], basis, axes=1)
    if np.ndim(values) == 0:
        return complex(values)
    return values


def sample_state(
    state: HolomorphicState,
    spec: QuadratureSpec,
    angle_offset: float = 0.0,
    convention: Convention = Convention.NORMALIZED,
) -> GridFunction:
    grid = polar_grid(spec, angle_offset)
    return GridFunction(grid=grid, values=evaluate_state(state, grid.points, convention))


def require_resolved(spec: QuadratureSpec, degree: int) -> None:
    if not spec.resolves(degree):
        raise QuadratureUnderresolvedError(
            f"quadrature underresolved: {spec.radial_nodes} radial / {spec.angular_nodes} "
            f"angular nodes for degree {degree}"
        )


def inner_product_quadrature(
    a: HolomorphicState,
    b: HolomorphicState,
    spec: Optional[QuadratureSpec] = None,
    convention: Convention = Convention.NORMALIZED,
) -> complex:
    """⟨a, b⟩ as a polar quadrature of conj(ψ_a) ψ_b against the Gaussian measure."""
    degree = max(a.degree, b.degree)
    spec = spec or QuadratureSpec.for_degree(degree)
    require_resolved(spec, degree)
    grid = polar_grid(spec)
    psi_a = evaluate_state(a, grid.points, convention)
    psi_b = evaluate_state(b, grid.points, convention)
    return integrate(np.conj(psi_a) * psi_b, grid)


def gram_matrix(
    degree: int,
    spec: Optional[QuadratureSpec] = None,
    convention: Convention = Convention.MONOMIAL,
    extended: bool = True,
) -> np.ndarray:
    """
    Quadrature Gram matrix of the monomials z^0 .. z^degree.

    The polar grid is a tensor product, so entry (j, k) is the radial moment
    Σ w_r ρ_r^{j+k} times the angular mean of e^{i(k-j)θ}. With ``extended``
    both factors are summed in mpmath with enough digits to cover degree!,
    which keeps raw monomial off-diagonal entries far below 1e-10. Without
    it the products are summed in double precision on the grid.
    """
    spec = spec or QuadratureSpec.for_degree(degree)
    require_resolved(spec, degree)
    if extended:
        return _gram_matrix_extended(degree, spec, convention)
    grid = polar_grid(spec)
    basis = _basis_values(grid.points, degree, convention)
    gram = np.empty((degree + 1, degree + 1), dtype=complex)
    for j in range(degree + 1):
        for k in range(degree + 1):
            gram[j, k] = integrate(np.conj(basis[j]) * basis[k], grid)
    return gram


def _gram_matrix_extended(degree: int, spec: QuadratureSpec, convention: Convention) -> np.ndarray:
    dps = EXTENDED_DIGITS + len(str(math.factorial(degree)))
    radial = radial_moments_extended(spec, 2 * degree, dps)
    angular = angular_means_extended(spec, degree, dps)
    gram = np.empty((degree + 1, degree + 1), dtype=complex)
    with mpmath.workdps(dps):
        for j in range(degree + 1):
            for k in range(degree + 1):
                entry = radial[j + k] * angular[k - j]
                if convention is Convention.NORMALIZED:
                    entry /= mpmath.sqrt(mpmath.factorial(j) * mpmath.factorial(k))
                gram[j, k] = complex(entry)
    return gram


# === Hamiltonian and evolution ===

def level_energy(index: float, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    """ħω(index + ½), for integer levels and fractional γ alike."""
    return params.quantum * (index + 0.5)


def _energies(state: HolomorphicState, params: OscillatorParams) -> np.ndarray:
    return params.quantum * (np.arange(len(state.coeffs)) + 0.5)


def apply_hamiltonian(state: HolomorphicState, params: OscillatorParams = DEFAULT_PARAMS) -> HolomorphicState:
    return _with_coefficients(state, coefficient_vector(state) * _energies(state, params))


def apply_hamiltonian_pointwise(
    func: Callable[[complex], complex],
    z: complex,
    params: OscillatorParams = DEFAULT_PARAMS,
    h: float = 1e-5,
) -> complex:
    """(Ĥf)(z) = ħω(z f'(z) + ½ f(z)) with f' from a radial central difference."""
    if z == 0:
        raise ValueError("pointwise Hamiltonian needs a probe away from the origin")
    derivative = central_difference(func, z, h, z / abs(z))
    return params.quantum * (z * derivative + 0.5 * func(z))


def evolve(state: HolomorphicState, tau: float, params: OscillatorParams = DEFAULT_PARAMS) -> HolomorphicState:
    """e^{iĤτ/ħ}ψ: coefficient k picks up the phase e^{iω(k+½)τ}."""
    if not math.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    k = np.arange(len(state.coeffs))
    phases = np.exp(1j * params.omega * (k + 0.5) * tau)
    return _with_coefficients(state, coefficient_vector(state) * phases)


def energy_probabilities(state: HolomorphicState, params: OscillatorParams = DEFAULT_PARAMS) -> list[SpectralLine]:
    """Occupation of each level, |c_k|² / Σ|c_j|²."""
    weights = np.abs(coefficient_vector(state)) ** 2
    total = float(weights.sum())
    if total == 0:
        raise ValueError("the zero state has no energy distribution")
    energies = _energies(state, params)
    return [
        SpectralLine(index=k, energy=float(energies[k]), probability=min(1.0, float(w / total)))
        for k, w in enumerate(weights)
    ]


def mean_energy(state: HolomorphicState, params: OscillatorParams = DEFAULT_PARAMS) -> float:
    return sum(line.probability * line.energy for line in energy_probabilities(state, params))


def spectrum(truncation: int = DEFAULT_TRUNCATION, params: OscillatorParams = DEFAULT_PARAMS) -> list[SpectralLine]:
    return [SpectralLine(index=k, energy=level_energy(k, params)) for k in range(truncation + 1)]


# === Fractional states ===

def _probe_distance_to_ray(z: complex, angle: float) -> float:
    delta = cmath.phase(z) - angle
    if math.cos(delta) <= 0:
        return abs(z)
    return abs(z) * abs(math.sin(delta))


def _check_probe(z: complex, cone: ConeSpace, h: float) -> None:
    if abs(z) <= h:
        raise ValueError(f"probe {z} is within h of the branch point")
    if isinstance(cone.index, FractionalIndex) and _probe_distance_to_ray(z, cone.branch_cut_angle) <= h:
        raise ValueError(f"probe {z} is within h of the branch cut")


def fractional_state(gamma: float, cone: Optional[ConeSpace] = None) -> Callable[[complex], complex]:
    """z ↦ z^γ on the branch fixed by the cone's cut."""
    branch = ConeSpace(
        index=make_cone_index(gamma),
        branch_cut_angle=cone.branch_cut_angle if cone is not None else 0.0,
    )
    return lambda w: covering_map(w, branch)


def verify_fractional_eigenstate(
    gamma: float,
    cone: Optional[ConeSpace],
    probe_points: Sequence[complex],
    h: float = 1e-5,
    params: OscillatorParams = DEFAULT_PARAMS,
    analytic: bool = False,
) -> float:
    """max |Ĥψ_γ - ħω(γ + ½)ψ_γ| over the probes.

    The exponent comes from ``gamma`` and the branch cut from ``cone``. With
    ``analytic`` the derivative is γ z^{γ-1} on the same branch instead of a
    finite difference.
    """
    if not probe_points:
        raise ValueError("at least one probe point is needed")
    index = make_cone_index(gamma)
    branch = ConeSpace(index=index, branch_cut_angle=cone.branch_cut_angle if cone is not None else 0.0)
    func = lambda w: covering_map(w, branch)
    eigenvalue = level_energy(index.value, params)

    residuals = []
    for z in probe_points:
        z = complex(z)
        _check_probe(z, branch, h)
        if analytic:
            derivative = index.value * branch_power(z, index.value - 1.0, branch.branch_cut_angle)
            applied = params.quantum * (z * derivative + 0.5 * func(z))
        else:
            applied = apply_hamiltonian_pointwise(func, z, params, h)
        residuals.append(abs(applied - eigenvalue * func(z)))
    return max(residuals)


def residual_order(
    gamma: float,
    cone: Optional[ConeSpace],
    probe_points: Sequence[complex],
    h: float = 1e-2,
    params: OscillatorParams = DEFAULT_PARAMS,
) -> float:
    """Empirical convergence order of the finite-difference residual in h."""
    coarse = verify_fractional_eigenstate(gamma, cone, probe_points, h, params)
    fine = verify_fractional_eigenstate(gamma, cone, probe_points, h / 2.0, params)
    return empirical_order(coarse, fine)


def hilbert_membership(gamma: float) -> MembershipResult:
    """z^γ is a single-valued entire function iff γ is a non-negative integer."""
    if not (math.isfinite(gamma) and gamma >= 0):
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if round(gamma) == 0 and abs(gamma) <= INTEGER_TOLERANCE:
        return MembershipResult(gamma=gamma, member=True, discontinuity=0.0)
    index = make_cone_index(gamma)
    return MembershipResult(
        gamma=gamma,
        member=isinstance(index, IntegerIndex),
        discontinuity=branch_discontinuity(gamma, 1.0, ConeSpace(index=index)),
    )
