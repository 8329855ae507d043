"""
Verification experiments.

Each suite checks a group of named relations and returns ReportRows;
run_experiment writes them as ``<name>.csv`` next to ``<name>.coverage.csv``.
Randomized cases draw from numpy's default_rng seeded by (seed, suite
position), so a fixed seed gives byte-identical reports.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.linalg import expm

from . import bargmann_space as bargmann
from . import cyclic_symmetry as symmetry
from . import orbifold_geometry as geometry
from . import phase_space
from .differentiation import forward_difference, richardson
from .logging_utils import get_logger
from .reporting import format_value, make_row, summarize
from .schemas import (
    TWO_PI,
    ConeSpace,
    Convention,
    CorrespondenceEntry,
    CyclicGroup,
    ExperimentConfig,
    FractionalIndex,
    HolomorphicState,
    IntegerIndex,
    PhasePoint,
    QuadratureSpec,
    ReportRow,
)
from .storage import write_coverage, write_report, write_table


logger = get_logger("oscillator.experiments")

ALL_RELATIONS = (
    "coordinate", "hamiltonian", "symplectic-form", "vector-field", "flow",
    "reference-energy", "cyclic-group", "group-action", "identification",
    "period", "frequency-energy", "cone-metric", "cone-coordinate",
    "cone-vector-field", "cone-flow", "cone-hamiltonian", "cone-symplectic",
    "curvature", "cone-energy", "covering-map", "inverse-branch",
    "inner-product", "basis", "hamiltonian-operator", "spectrum", "expansion",
    "nested-cones", "circle-orbits", "hilbert-sum", "representations",
    "coverings", "fractional-energy", "fractional-metric",
    "fractional-coordinate", "fractional-map", "fractional-flow",
    "fractional-eigenstate", "branch-choice", "segment-decomposition",
    "invariance-condition", "superposition", "evolution", "evolution-phases",
)

# Relations are listed in the order of the numbered equations they check,
# "coordinate" being (1) and "evolution-phases" (43).
RELATION_EQUATIONS = {relation: f"({number})" for number, relation in enumerate(ALL_RELATIONS, start=1)}

CORRESPONDENCE_FILE = "correspondence_table.csv"

# Probe points for fractional eigen-relations, away from the default cut.
FRACTIONAL_PROBES = (1.5j, cmath.rect(0.5, 1.0), cmath.rect(2.0, 4.0))

Suite = Callable[[ExperimentConfig, np.random.Generator], list[ReportRow]]


@dataclass(frozen=True)
class Experiment:
    name: str
    suite: Suite
    relations: tuple[str, ...]
    table: Optional[Callable[[ExperimentConfig], list[CorrespondenceEntry]]] = None


EXPERIMENTS: dict[str, Experiment] = {}


def experiment(name: str, relations: tuple[str, ...], table=None):
    """Register a suite under ``name``; registration order is run order."""
    def register(suite: Suite) -> Suite:
        EXPERIMENTS[name] = Experiment(name=name, suite=suite, relations=relations, table=table)
        return suite
    return register


# === Helpers ===

def _random_points(rng: np.random.Generator, count: int, low: float = 0.2, high: float = 1.5) -> list[complex]:
    radii = rng.uniform(low, high, count)
    angles = rng.uniform(0.0, TWO_PI, count)
    return [complex(z) for z in radii * np.exp(1j * angles)]


def _random_state(rng: np.random.Generator, truncation: int) -> HolomorphicState:
    coeffs = rng.normal(size=truncation + 1) + 1j * rng.normal(size=truncation + 1)
    return bargmann.normalize(bargmann.state_from_coefficients(coeffs, truncation))


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _vector_deviation(a: HolomorphicState, b: HolomorphicState) -> float:
    return float(np.max(np.abs(bargmann.coefficient_vector(a) - bargmann.coefficient_vector(b))))


def _flag(condition: bool) -> float:
    return 1.0 if condition else 0.0


# === Classical flow ===

@experiment(
    "classical-flow",
    relations=("coordinate", "hamiltonian", "symplectic-form", "vector-field", "flow", "reference-energy"),
)
def classical_flow(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "classical-flow"
    params = config.oscillator
    tol = config.tolerance
    r0, m_omega, quantum = params.r0, params.mass * params.omega, params.quantum
    rows = []

    rows.append(make_row(name, "coordinate/x=r0", phase_space.to_dimensionless(r0, 0.0, params).z, 1 + 0j, tol("flow")))
    rows.append(make_row(
        name, "coordinate/p=-m*omega*r0",
        phase_space.to_dimensionless(0.0, -m_omega * r0, params).z, 1j, tol("flow"),
    ))

    xs = rng.normal(scale=r0, size=64)
    ps = rng.normal(scale=m_omega * r0, size=64)
    round_trip = 0.0
    forms = 0.0
    for x, p in zip(xs, ps):
        point = phase_space.to_dimensionless(float(x), float(p), params)
        x2, p2 = phase_space.from_dimensionless(point, params)
        round_trip = max(round_trip, abs(x2 - x) / max(r0, abs(x)), abs(p2 - p) / max(m_omega * r0, abs(p)))
        energy = phase_space.hamiltonian(point, params)
        forms = max(forms, abs(energy - phase_space.hamiltonian_xp(float(x), float(p), params)) / max(quantum, energy))
    rows.append(make_row(name, "coordinate/round-trip-max", round_trip, 0.0, tol("flow")))
    rows.append(make_row(name, "hamiltonian/xp-vs-z-max", forms, 0.0, tol("flow")))

    unit = PhasePoint(z=1.0)
    rows.append(make_row(
        name, "reference-energy/z=1", phase_space.hamiltonian(unit, params), quantum, tol("flow") * max(1.0, quantum),
    ))
    rows.append(make_row(
        name, "reference-energy/x=r0", phase_space.hamiltonian_xp(r0, 0.0, params), quantum,
        tol("flow") * max(1.0, quantum),
    ))

    points = [PhasePoint(z=z) for z in _random_points(rng, 32)]
    gradient = max(
        _relative(phase_space.symplectic_gradient(p, params), phase_space.hamiltonian_vector_field(p, params))
        for p in points
    )
    rows.append(make_row(name, "symplectic-form/gradient-max", gradient, 0.0, tol("derivative")))

    start = PhasePoint(z=1 + 2j)
    along = lambda t: phase_space.exact_flow(start, t.real, params).z
    derivative = richardson(lambda h: forward_difference(along, 0.0, h), 1e-4, order=1)
    rows.append(make_row(
        name, "vector-field/finite-difference", derivative,
        phase_space.hamiltonian_vector_field(start, params), tol("derivative") * max(1.0, params.omega),
    ))

    conservation = 0.0
    group_law = 0.0
    for p in points:
        s, t = rng.uniform(0.0, 10.0 / params.omega, 2)
        moved = phase_space.exact_flow(p, s, params)
        conservation = max(
            conservation,
            abs(phase_space.hamiltonian(moved, params) - phase_space.hamiltonian(p, params)) / quantum,
        )
        twice = phase_space.exact_flow(moved, t, params).z
        group_law = max(group_law, _relative(twice, phase_space.exact_flow(p, s + t, params).z))
    rows.append(make_row(name, "flow/energy-conservation-max", conservation, 0.0, tol("flow")))
    rows.append(make_row(name, "flow/group-law-max", group_law, 0.0, tol("flow")))

    period = TWO_PI / params.omega
    rows.append(make_row(name, "flow/return-at-2pi/omega", phase_space.exact_flow(unit, period, params).z, 1 + 0j, tol("flow")))
    rows.append(make_row(
        name, "flow/rk4-steps=1000", phase_space.integrator_error(unit, period, 1000, params), 0.0, tol("integrator"),
    ))
    rows.append(make_row(name, "flow/rk4-order", phase_space.integrator_order(unit, period, 64, params), 4.0, tol("order")))
    return rows


# === ℤₙ periods ===

@experiment("zn-periods", relations=("identification", "period"))
def zn_periods(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    params = config.oscillator
    rows = []
    for n in config.integer_orders:
        expected = symmetry.invariant_period(params.omega, n, params.hbar).tau_n
        observed = geometry.fundamental_period(params.omega, IntegerIndex(n=n))
        rows.append(make_row("zn-periods", f"n={n}", observed, expected, config.tolerance("period") * max(1.0, expected)))
    return rows


# === Cone geometry ===

@experiment(
    "cone-geometry",
    relations=(
        "cone-metric", "cone-coordinate", "curvature", "covering-map", "inverse-branch",
        "coverings", "cyclic-group", "group-action", "segment-decomposition",
        "circle-orbits", "nested-cones", "cone-vector-field", "cone-symplectic",
        "cone-flow", "fractional-metric", "fractional-coordinate", "fractional-map",
    ),
)
def cone_geometry(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "cone-geometry"
    tol = config.tolerance
    omega, hbar = config.oscillator.omega, config.oscillator.hbar
    rows = []

    for index in config.cone_indices:
        label = index.label
        nu = index.value
        cone = ConeSpace(index=index)

        rows.append(make_row(
            name, f"{label}/deficit", geometry.numerical_angle_deficit(index), geometry.angle_deficit(index), tol("deficit"),
        ))
        rows.append(make_row(
            name, f"{label}/circumference-forms",
            geometry.circumference(1.3, index, "direct"), geometry.circumference(1.3, index, "conformal"),
            tol("metric_identity"),
        ))
        curvature = max(abs(geometry.gaussian_curvature(rho, index)) for rho in (0.5, 1.0, 2.0))
        rows.append(make_row(name, f"{label}/curvature-max", curvature, 0.0, tol("curvature")))

        identity = 0.0
        sector = min(TWO_PI, TWO_PI / nu)
        for _ in range(16):
            rho = rng.uniform(0.2, 2.0)
            phi = rng.uniform(0.0, 0.999 * sector)
            d_rho, d_phi = rng.normal(size=2)
            sample = geometry.restricted_metric(cmath.rect(rho, phi), index)
            d_rho_cone = nu * rho ** (nu - 1.0) * d_rho
            direct = geometry.line_element_direct(rho, nu, d_rho, d_phi)
            conformal = geometry.line_element_conformal(sample.rho_cone, nu, d_rho_cone, d_phi)
            identity = max(identity, abs(direct - conformal) / max(1.0, direct))
        rows.append(make_row(name, f"{label}/metric-identity-max", identity, 0.0, tol("metric_identity")))

        if isinstance(index, IntegerIndex):
            rows.extend(_integer_cone_rows(config, rng, index))
        else:
            rows.append(make_row(
                name, f"{label}/covering-at-i", geometry.covering_map(1j, cone),
                cmath.exp(1j * nu * math.pi / 2.0), tol("geometry"),
            ))
            z = cmath.rect(0.8, 0.4)
            rows.append(make_row(
                name, f"{label}/pushforward-field", geometry.pushforward_vector_field(z, omega, cone),
                geometry.cone_vector_field(geometry.covering_map(z, cone), omega, index),
                tol("geometry") * max(1.0, omega * nu),
            ))

        psi = geometry.covering_map(cmath.rect(0.9, 0.2), cone)
        rows.append(make_row(
            name, f"{label}/field-from-hamiltonian",
            geometry.vector_field_from_hamiltonian(psi, omega, hbar, index),
            geometry.cone_vector_field(psi, omega, index), tol("derivative") * max(1.0, omega * nu),
        ))

    orders = config.integer_orders
    if orders:
        conjugation = 0.0
        for _ in range(1000):
            n = int(rng.choice(orders))
            z = _random_points(rng, 1, 0.2, 1.2)[0]
            tau = rng.uniform(0.0, 10.0 / omega)
            flowed = phase_space.exact_flow(PhasePoint(z=z), tau, config.oscillator).z
            left = geometry.covering_map(flowed, n)
            right = geometry.cone_flow(geometry.covering_map(z, n), tau, omega, n)
            conformity = abs(left - right) / max(1.0, abs(right))
            conjugation = max(conjugation, conformity)
        rows.append(make_row(name, "conjugation/random-1000-max", conjugation, 0.0, tol("conjugation")))

        ordered = sorted(set(orders))
        nested = all(
            geometry.sector_contains(IntegerIndex(n=outer), IntegerIndex(n=inner))
            for outer, inner in zip(ordered, ordered[1:])
        )
        rows.append(make_row(name, "nested/consecutive-sectors", _flag(nested), 1.0, tol("count")))
    return rows


def _integer_cone_rows(config: ExperimentConfig, rng: np.random.Generator, index: IntegerIndex) -> list[ReportRow]:
    name = "cone-geometry"
    tol = config.tolerance
    n, label = index.n, index.label
    cone = ConeSpace(index=index)
    group = CyclicGroup(n=n)
    omega = config.oscillator.omega
    points = _random_points(rng, 16)
    rows = []

    invariance = max(
        _relative(geometry.covering_map(symmetry.act(group, ell, z), cone), geometry.covering_map(z, cone))
        for z in points for ell in range(n)
    )
    rows.append(make_row(name, f"{label}/covering-orbit-invariance-max", invariance, 0.0, tol("geometry")))

    preimage_error = 0.0
    orbit_error = 0.0
    sectors = set()
    for z in points:
        psi = geometry.covering_map(z, cone)
        found = geometry.preimages(psi, cone)
        preimage_error = max(preimage_error, max(_relative(geometry.covering_map(w, cone), psi) for w in found))
        orbit_error = max(orbit_error, max(abs(w - v) for w, v in zip(found, group.orbit(found[0]))))
        sectors.add(len({symmetry.sector_index(cmath.phase(w), n) for w in found}))
    rows.append(make_row(name, f"{label}/preimage-max", preimage_error, 0.0, tol("geometry")))
    rows.append(make_row(name, f"{label}/preimage-orbit-max", orbit_error, 0.0, tol("geometry")))
    rows.append(make_row(name, f"{label}/preimage-count", float(min(sectors)), float(n), tol("count")))

    round_trip = 0.0
    for _ in range(16):
        z = cmath.rect(rng.uniform(0.2, 1.5), rng.uniform(0.0, 0.999 * TWO_PI / n))
        round_trip = max(round_trip, abs(geometry.inverse_branch(geometry.covering_map(z, cone), cone) - z))
    rows.append(make_row(name, f"{label}/inverse-round-trip-max", round_trip, 0.0, tol("geometry")))

    axioms = 0.0
    for z in points[:4]:
        for a in range(n):
            for b in range(n):
                composed = symmetry.act(group, a, symmetry.act(group, b, z))
                axioms = max(axioms, abs(composed - symmetry.act(group, a + b, z)))
        axioms = max(axioms, abs(symmetry.act(group, n, z) - z))
    rows.append(make_row(name, f"{label}/group-axioms-max", axioms, 0.0, tol("geometry")))

    orbit_sectors = sorted(symmetry.sector_index(cmath.phase(w), n) for w in group.orbit(cmath.rect(1.0, 0.1)))
    rows.append(make_row(
        name, f"{label}/orbit-sectors", _flag(orbit_sectors == list(range(n))), 1.0, tol("count"),
    ))
    rows.append(make_row(name, f"{label}/winding-number", float(geometry.winding_number(index)), float(n), tol("count")))

    pushforward = max(
        _relative(
            geometry.pushforward_vector_field(z, omega, cone),
            geometry.cone_vector_field(geometry.covering_map(z, cone), omega, index),
        )
        for z in points
    )
    rows.append(make_row(name, f"{label}/pushforward-field-max", pushforward, 0.0, tol("geometry") * max(1.0, omega * n)))
    return rows


# === Bargmann norms ===

@experiment("bargmann-norms", relations=("inner-product", "basis"))
def bargmann_norms(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "bargmann-norms"
    tol = config.tolerance
    degree = config.truncation
    spec = config.effective_quadrature
    rows = []

    gram = bargmann.gram_matrix(degree, spec, Convention.MONOMIAL)
    factorials = [float(math.factorial(k)) for k in range(degree + 1)]
    for k in range(degree + 1):
        rows.append(make_row(
            name, f"gram/{k},{k}", gram[k, k], factorials[k], tol("norms_relative") * max(1.0, factorials[k]),
        ))
    for j in range(degree + 1):
        for k in range(j + 1, degree + 1):
            rows.append(make_row(name, f"gram/{j},{k}", gram[j, k], 0.0, tol("orthogonality")))

    orthonormal = bargmann.gram_matrix(degree, spec, Convention.NORMALIZED)
    deviation = float(np.max(np.abs(orthonormal - np.eye(degree + 1))))
    rows.append(make_row(name, "orthonormal-gram-max", deviation, 0.0, tol("orthogonality")))

    worst = 0.0
    sesquilinear = 0.0
    for _ in range(100):
        a = _random_state(rng, degree)
        b = _random_state(rng, degree)
        quadrature = bargmann.inner_product_quadrature(a, b, spec)
        analytic = bargmann.inner_product_analytic(a, b)
        worst = max(worst, abs(quadrature - analytic) / (1.0 + bargmann.norm(a) * bargmann.norm(b)))
        alpha = complex(*rng.normal(size=2))
        scaled = bargmann.state_from_coefficients(alpha * bargmann.coefficient_vector(b), degree)
        sesquilinear = max(sesquilinear, abs(bargmann.inner_product_analytic(a, scaled) - alpha * analytic))
        scaled_left = bargmann.state_from_coefficients(alpha * bargmann.coefficient_vector(a), degree)
        sesquilinear = max(
            sesquilinear, abs(bargmann.inner_product_analytic(scaled_left, b) - alpha.conjugate() * analytic)
        )
    rows.append(make_row(name, "random-pairs/quadrature-vs-analytic-max", worst, 0.0, tol("orthogonality")))
    rows.append(make_row(name, "random-pairs/sesquilinearity-max", sesquilinear, 0.0, tol("orthogonality")))
    return rows


# === Spectrum ===

@experiment("spectrum", relations=("hamiltonian-operator", "spectrum", "basis"))
def spectrum(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "spectrum"
    params = config.oscillator
    tol = config.tolerance
    degree = config.truncation
    probe = cmath.rect(1.0, 0.3)
    rows = []

    for n in range(degree + 1):
        expected = bargmann.level_energy(n, params)
        exact = bargmann.apply_hamiltonian(bargmann.basis_state(n, degree), params).coeffs[n]
        rows.append(make_row(
            name, f"exact/n={n}", exact.real, expected, tol("spectrum_exact") * max(1.0, expected),
        ))
        monomial = lambda w, n=n: w ** n
        numeric = bargmann.apply_hamiltonian_pointwise(monomial, probe, params, h=1e-6) / monomial(probe)
        rows.append(make_row(name, f"numeric/n={n}", numeric, expected, tol("spectrum") * max(1.0, expected)))

    a = _random_state(rng, degree)
    b = _random_state(rng, degree)
    left = bargmann.inner_product_analytic(a, bargmann.apply_hamiltonian(b, params))
    right = bargmann.inner_product_analytic(bargmann.apply_hamiltonian(a, params), b)
    rows.append(make_row(name, "hermitian/random-pair", left, right, tol("evolution") * max(1.0, abs(right))))
    return rows


# === Evolution and superpositions ===

@experiment(
    "evolution",
    relations=(
        "expansion", "superposition", "evolution", "evolution-phases",
        "invariance-condition", "representations", "hilbert-sum",
    ),
)
def evolution(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "evolution"
    params = config.oscillator
    tol = config.tolerance
    degree = config.truncation
    spec = config.effective_quadrature
    orders = [n for n in config.integer_orders if n <= degree]
    energies = bargmann.level_energy(np.arange(degree + 1), params)
    rows = []

    for s in range(8):
        state = _random_state(rng, degree)
        tau = float(rng.uniform(0.0, 2.0 * TWO_PI / params.omega))
        evolved = bargmann.evolve(state, tau, params)
        case = f"state-{s}"

        rows.append(make_row(
            name, f"{case}/parseval", bargmann.norm(evolved) ** 2, bargmann.norm(state) ** 2, tol("parseval"),
        ))
        before = [line.probability for line in bargmann.energy_probabilities(state, params)]
        after = [line.probability for line in bargmann.energy_probabilities(evolved, params)]
        rows.append(make_row(name, f"{case}/probabilities-sum", sum(before), 1.0, tol("probability")))
        rows.append(make_row(
            name, f"{case}/probabilities-invariant-max",
            max(abs(p - q) for p, q in zip(before, after)), 0.0, tol("probability"),
        ))

        propagator = expm(1j * tau / params.hbar * np.diag(energies))
        reference = propagator @ bargmann.coefficient_vector(state)
        rows.append(make_row(
            name, f"{case}/spectral-propagator-max",
            float(np.max(np.abs(bargmann.coefficient_vector(evolved) - reference))), 0.0, tol("propagator"),
        ))

        recovered = max(
            abs(bargmann.inner_product_quadrature(bargmann.basis_state(k, degree), state, spec) - c)
            for k, c in enumerate(state.coeffs)
        )
        rows.append(make_row(name, f"{case}/expansion-coefficients-max", recovered, 0.0, tol("orthogonality")))

        other = _random_state(rng, degree)
        alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        combined = bargmann.state_from_coefficients(
            alpha * bargmann.coefficient_vector(state) + beta * bargmann.coefficient_vector(other), degree
        )
        linear = bargmann.coefficient_vector(bargmann.evolve(combined, tau, params)) - (
            alpha * bargmann.coefficient_vector(evolved)
            + beta * bargmann.coefficient_vector(bargmann.evolve(other, tau, params))
        )
        rows.append(make_row(name, f"{case}/superposition-max", float(np.max(np.abs(linear))), 0.0, tol("evolution") * 10))

        if orders:
            n = orders[s % len(orders)]
            commuted = _vector_deviation(
                bargmann.evolve(symmetry.project_invariant(state, n), tau, params),
                symmetry.project_invariant(evolved, n),
            )
            rows.append(make_row(name, f"{case}/projection-commutes-n={n}", commuted, 0.0, tol("evolution")))

    state = _random_state(rng, degree)
    flipped = bargmann.evolve(state, TWO_PI / params.omega, params)
    rows.append(make_row(
        name, "return/tau=2pi/omega",
        float(np.max(np.abs(bargmann.coefficient_vector(flipped) + bargmann.coefficient_vector(state)))),
        0.0, tol("evolution"),
    ))

    for n in orders:
        phase = bargmann.evolve(bargmann.basis_state(n, degree), TWO_PI / (params.omega * n), params).coeffs[n]
        rows.append(make_row(
            name, f"phase/n={n}", phase, cmath.exp(1j * TWO_PI * (n + 0.5) / n), tol("evolution"),
        ))

    for n in orders:
        rows.extend(_isotypic_rows(config, rng, n))
    return rows


def _isotypic_rows(config: ExperimentConfig, rng: np.random.Generator, n: int) -> list[ReportRow]:
    name = "evolution"
    tol = config.tolerance
    degree = config.truncation
    params = config.oscillator
    state = _random_state(rng, degree)
    projected = symmetry.project_invariant(state, n)
    rows = []

    kept = {int(line.index) for line in bargmann.energy_probabilities(projected, params) if line.probability > 0}
    wanted = {k for k in range(degree + 1) if k % n == 0 and state.coeffs[k] != 0}
    rows.append(make_row(name, f"n={n}/projection-lines", _flag(kept == wanted), 1.0, tol("count")))
    rows.append(make_row(
        name, f"n={n}/projection-invariant", _flag(symmetry.is_invariant(projected, n, 0.0)), 1.0, tol("count"),
    ))

    # angular nodes: the smallest multiple of n that still resolves the truncation
    angular = n * math.ceil((2 * degree + 2) / n)
    grid_spec = QuadratureSpec(radial_nodes=degree + 1, angular_nodes=angular)
    sampled = bargmann.sample_state(projected, grid_spec)
    scale = float(np.max(np.abs(sampled.values)))
    rows.append(make_row(
        name, f"n={n}/grid-invariant",
        _flag(symmetry.is_invariant(sampled, n, tol("invariance") * scale)), 1.0, tol("count"),
    ))
    if n > 1:
        generic = bargmann.sample_state(state, grid_spec)
        generic_scale = float(np.max(np.abs(generic.values)))
        rows.append(make_row(
            name, f"n={n}/grid-generic-not-invariant",
            _flag(symmetry.is_invariant(generic, n, tol("invariance") * generic_scale)), 0.0, tol("count"),
        ))

    components = [symmetry.isotypic_component(state, n, r) for r in range(n)]
    total = sum(bargmann.coefficient_vector(c) for c in components)
    rows.append(make_row(
        name, f"n={n}/isotypic-sum",
        float(np.max(np.abs(total - bargmann.coefficient_vector(state)))), 0.0, tol("evolution"),
    ))
    overlap = max(
        (abs(bargmann.inner_product_analytic(components[r], components[q])) for r in range(n) for q in range(r + 1, n)),
        default=0.0,
    )
    rows.append(make_row(name, f"n={n}/isotypic-orthogonal-max", overlap, 0.0, tol("orthogonality")))

    if 2 * n <= degree:
        pair = bargmann.state_from_coefficients(
            bargmann.coefficient_vector(bargmann.basis_state(n, degree))
            + bargmann.coefficient_vector(bargmann.basis_state(2 * n, degree)),
            degree,
        )
        rows.append(make_row(
            name, f"n={n}/maximal-invariance", _flag(symmetry.is_maximal_invariant(pair, n)), 1.0, tol("count"),
        ))
    return rows


# === Fractional states ===

@experiment(
    "fractional",
    relations=(
        "fractional-energy", "fractional-eigenstate", "fractional-map",
        "fractional-flow", "branch-choice", "hilbert-sum",
    ),
)
def fractional(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "fractional"
    params = config.oscillator
    tol = config.tolerance
    omega = params.omega
    rows = []

    for gamma in config.fractional_gammas:
        index = FractionalIndex(gamma=gamma)
        label = index.label
        cone = ConeSpace(index=index)
        psi = bargmann.fractional_state(gamma, cone)
        magnitude = max(1.0, max(abs(psi(z)) for z in FRACTIONAL_PROBES)) * max(1.0, params.quantum)

        eigenvalue = bargmann.apply_hamiltonian_pointwise(psi, 1.5j, params, h=1e-5) / psi(1.5j)
        rows.append(make_row(
            name, f"{label}/eigenvalue", eigenvalue, bargmann.level_energy(gamma, params),
            tol("fractional_residual") * max(1.0, params.quantum),
        ))
        rows.append(make_row(
            name, f"{label}/residual-h=1e-5",
            bargmann.verify_fractional_eigenstate(gamma, cone, FRACTIONAL_PROBES, 1e-5, params), 0.0,
            tol("fractional_residual") * magnitude,
        ))
        rows.append(make_row(
            name, f"{label}/residual-analytic",
            bargmann.verify_fractional_eigenstate(gamma, cone, FRACTIONAL_PROBES, params=params, analytic=True), 0.0,
            tol("analytic_residual") * magnitude,
        ))
        rows.append(make_row(
            name, f"{label}/residual-order",
            bargmann.residual_order(gamma, cone, FRACTIONAL_PROBES, 1e-2, params), 2.0, tol("order"),
        ))

        for rho in (1.0, 2.0):
            expected = rho ** gamma * abs(cmath.exp(1j * TWO_PI * gamma) - 1.0)
            rows.append(make_row(
                name, f"{label}/discontinuity-rho={rho:g}", geometry.branch_discontinuity(gamma, rho, cone), expected,
                tol("discontinuity") * max(1.0, rho ** gamma),
            ))
        rows.append(make_row(
            name, f"{label}/membership", _flag(bargmann.hilbert_membership(gamma).member), 0.0, tol("count"),
        ))

        rows.append(make_row(
            name, f"{label}/covering-at-i", geometry.covering_map(1j, cone),
            cmath.exp(1j * gamma * math.pi / 2.0), tol("geometry"),
        ))
        turned = ConeSpace(index=index, branch_cut_angle=1.75 * math.pi)
        rows.append(make_row(
            name, f"{label}/branch-cut=7pi/4-at-minus-i", geometry.covering_map(-1j, turned),
            cmath.exp(1j * gamma * 3.5 * math.pi), tol("geometry"),
        ))

        start = cmath.rect(0.7, 0.3)
        tau = 1.0 / omega
        flowed = phase_space.exact_flow(PhasePoint(z=start), tau, params).z
        rows.append(make_row(
            name, f"{label}/flow-conjugation", geometry.covering_map(flowed, cone),
            geometry.cone_flow(geometry.covering_map(start, cone), tau, omega, index),
            tol("conjugation"),
        ))
        expected_period = TWO_PI / (omega * gamma)
        rows.append(make_row(
            name, f"{label}/period", geometry.fundamental_period(omega, index), expected_period,
            tol("period") * max(1.0, expected_period),
        ))

    for n in config.integer_orders[:3]:
        label = f"control-n={n}"
        cone = ConeSpace(index=IntegerIndex(n=n))
        rows.append(make_row(name, f"{label}/membership", _flag(bargmann.hilbert_membership(n).member), 1.0, tol("count")))
        rows.append(make_row(
            name, f"{label}/discontinuity", geometry.branch_discontinuity(float(n), 1.0, cone), 0.0, tol("discontinuity"),
        ))
        residual = bargmann.verify_fractional_eigenstate(float(n), cone, FRACTIONAL_PROBES, 1e-5, params)
        magnitude = max(1.0, max(abs(z) ** n for z in FRACTIONAL_PROBES)) * max(1.0, params.quantum)
        rows.append(make_row(name, f"{label}/residual-h=1e-5", residual, 0.0, tol("fractional_residual") * magnitude))
    return rows


# === Classical/quantum correspondence ===

def correspondence_entries(config: ExperimentConfig) -> list[CorrespondenceEntry]:
    """Eₙ = ħωn against Ẽₙ = ħω(n + ½), with fractional γ rows outside the Hilbert space."""
    params = config.oscillator
    top = min(max(config.integer_orders, default=0), config.truncation)
    entries = [
        CorrespondenceEntry(
            index=0,
            kind="vacuum",
            classical_energy=phase_space.hamiltonian(PhasePoint(z=0.0), params),
            quantum_energy=bargmann.mean_energy(bargmann.vacuum_state(config.truncation), params),
            in_hilbert=bargmann.hilbert_membership(0.0).member,
        )
    ]
    for n in range(1, top + 1):
        entries.append(CorrespondenceEntry(
            index=n,
            kind="integer",
            classical_energy=geometry.cone_hamiltonian(1.0, params.omega, params.hbar, IntegerIndex(n=n)),
            quantum_energy=bargmann.mean_energy(bargmann.basis_state(n, config.truncation), params),
            in_hilbert=bargmann.hilbert_membership(float(n)).member,
        ))
    for gamma in config.fractional_gammas:
        psi = bargmann.fractional_state(gamma)
        probe = FRACTIONAL_PROBES[0]
        entries.append(CorrespondenceEntry(
            index=gamma,
            kind="fractional",
            classical_energy=geometry.cone_hamiltonian(1.0, params.omega, params.hbar, FractionalIndex(gamma=gamma)),
            quantum_energy=(bargmann.apply_hamiltonian_pointwise(psi, probe, params) / psi(probe)).real,
            in_hilbert=bargmann.hilbert_membership(gamma).member,
        ))
    return entries


@experiment(
    "correspondence-table",
    relations=(
        "frequency-energy", "cone-energy", "cone-hamiltonian", "spectrum",
        "fractional-energy", "hilbert-sum", "reference-energy",
    ),
    table=correspondence_entries,
)
def correspondence_table(config: ExperimentConfig, rng: np.random.Generator) -> list[ReportRow]:
    name = "correspondence-table"
    params = config.oscillator
    tol = config.tolerance
    quantum = params.quantum
    rows = []

    for entry in correspondence_entries(config):
        label = f"{entry.kind}={entry.index:g}"
        if entry.kind == "fractional":
            energy_tol = tol("fractional_residual") * max(1.0, quantum)
        else:
            energy_tol = tol("spectrum_exact") * max(1.0, entry.quantum_energy)
        rows.append(make_row(
            name, f"{label}/classical", entry.classical_energy, quantum * entry.index,
            tol("flow") * max(1.0, quantum * entry.index),
        ))
        rows.append(make_row(name, f"{label}/quantum", entry.quantum_energy, quantum * (entry.index + 0.5), energy_tol))
        rows.append(make_row(
            name, f"{label}/in-hilbert", _flag(entry.in_hilbert), _flag(entry.kind != "fractional"), tol("count"),
        ))
        if entry.kind == "integer":
            n = int(entry.index)
            tau_n = geometry.fundamental_period(params.omega, IntegerIndex(n=n))
            rows.append(make_row(
                name, f"{label}/frequency-energy", params.hbar * TWO_PI / tau_n,
                symmetry.invariant_period(params.omega, n, params.hbar).energy,
                tol("period") * max(1.0, quantum * n),
            ))
    return rows


def _correspondence_records(entries: list[CorrespondenceEntry]) -> list[list[str]]:
    return [
        [
            format_value(float(entry.index)),
            entry.kind,
            format_value(entry.classical_energy),
            format_value(entry.quantum_energy),
            "true" if entry.in_hilbert else "false",
        ]
        for entry in entries
    ]


# === Running ===

def experiment_names() -> list[str]:
    return list(EXPERIMENTS)


def covered_relations() -> set[str]:
    return {relation for exp in EXPERIMENTS.values() for relation in exp.relations}


def covered_equations() -> set[str]:
    return {RELATION_EQUATIONS[relation] for relation in covered_relations()}


def equation_labels(relations: Iterable[str]) -> list[tuple[str, str]]:
    """Pair each relation with its equation label, e.g. ("period", "(10)")."""
    return [(relation, RELATION_EQUATIONS[relation]) for relation in relations]


def run_experiment(name: str, config: ExperimentConfig, write: bool = True) -> list[ReportRow]:
    """
    Run one named suite and, with ``write``, store its CSV and coverage files.

    Raises ValueError for an unknown name and OSError when the output
    directory cannot be written.
    """
    if name not in EXPERIMENTS:
        raise ValueError(f"unknown experiment: {name!r}; choose from {', '.join(EXPERIMENTS)}")
    exp = EXPERIMENTS[name]
    rng = np.random.default_rng([config.seed, experiment_names().index(name)])

    logger.info("Running experiment", extra={"experiment": name, "seed": config.seed})
    rows = exp.suite(config, rng)
    summary = summarize(name, rows)

    if write:
        report = write_report(config.output_dir, name, rows)
        write_coverage(config.output_dir, name, equation_labels(exp.relations))
        if exp.table is not None:
            write_table(
                config.output_dir,
                CORRESPONDENCE_FILE,
                ("index", "kind", "classical_energy", "quantum_energy", "in_hilbert"),
                _correspondence_records(exp.table(config)),
            )
        logger.info("Report written", extra={"experiment": name, "path": str(report)})

    if summary.ok:
        logger.info("Experiment passed", extra={"experiment": name, "rows": summary.total})
    else:
        logger.warning(
            "Experiment has failing rows",
            extra={"experiment": name, "failed": summary.failed, "cases": summary.failed_cases[:10]},
        )
    return rows


def run_all(config: ExperimentConfig, write: bool = True) -> list[ReportRow]:
    """Every suite in registration order, rows concatenated in that order."""
    rows: list[ReportRow] = []
    for name in EXPERIMENTS:
        rows.extend(run_experiment(name, config, write=write))
    return rows
