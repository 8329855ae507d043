"""
Pydantic schemas for all oscillator data contracts.
Physical parameters, phase-space points, cone indices, holomorphic states,
quadrature settings, report rows and experiment configuration.
"""
import cmath
import math
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)


TWO_PI = 2.0 * math.pi

# Distance below which a real cone index counts as an integer.
INTEGER_TOLERANCE = 1e-12

DEFAULT_TRUNCATION = 32

# n = 0 labels the vacuum (constant state), never a cone.
VACUUM_INDEX = 0

DEFAULT_TOLERANCES: dict[str, float] = {
    "flow": 1e-12,
    "period": 1e-12,
    "conjugation": 1e-11,
    "integrator": 1e-10,
    "derivative": 1e-6,
    "geometry": 1e-12,
    "metric_identity": 1e-10,
    "deficit": 1e-9,
    "curvature": 1e-6,
    "norms_relative": 1e-9,
    "orthogonality": 1e-10,
    "spectrum_exact": 1e-14,
    "spectrum": 1e-8,
    "probability": 1e-12,
    "evolution": 1e-13,
    "propagator": 1e-11,
    "parseval": 1e-14,
    "invariance": 1e-10,
    "fractional_residual": 1e-6,
    "analytic_residual": 1e-12,
    "discontinuity": 1e-10,
    "order": 0.1,
    "count": 0.5,
}


class GridCompatibilityError(ValueError):
    """Raised when a sampled function's angular grid is not closed under ℤₙ."""

    def __init__(self, message: str = "grid not ℤₙ-compatible"):
        super().__init__(message)


class QuadratureUnderresolvedError(ValueError):
    """Raised when a quadrature rule cannot integrate the requested degree exactly."""

    def __init__(self, message: str = "quadrature underresolved"):
        super().__init__(message)


def _finite_complex(value: Any) -> complex:
    try:
        number = complex(value)
    except TypeError as exc:
        raise ValueError(f"not a complex number: {value!r}") from exc
    if not (math.isfinite(number.real) and math.isfinite(number.imag)):
        raise ValueError("complex value must be finite")
    return number


# === Enums ===

class Convention(str, Enum):
    """How coefficients map onto monomials."""
    NORMALIZED = "normalized"  # ψ = Σ c_k z^k / √k!
    MONOMIAL = "monomial"      # ψ = Σ c_k z^k


# === Classical oscillator ===

class OscillatorParams(BaseModel):
    """Physical constants of the oscillator; r0 is derived, never stored."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    mass: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    omega: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    hbar: float = Field(default=1.0, gt=0, allow_inf_nan=False)

    @computed_field
    @property
    def r0(self) -> float:
        return math.sqrt(2.0 * self.hbar / (self.mass * self.omega))

    @property
    def quantum(self) -> float:
        """ħω, the level spacing."""
        return self.hbar * self.omega


class PhasePoint(BaseModel):
    """A point of the dimensionless phase plane. Equality is on z alone."""
    model_config = ConfigDict(frozen=True)

    z: complex

    @field_validator("z", mode="before")
    @classmethod
    def _coerce_z(cls, value: Any) -> complex:
        return _finite_complex(value)

    @property
    def rho(self) -> float:
        return abs(self.z)

    @property
    def phi(self) -> float:
        """Polar angle in [0, 2π)."""
        angle = cmath.phase(self.z) % TWO_PI
        return 0.0 if angle >= TWO_PI else angle


class Trajectory(BaseModel):
    """Time-ordered samples of a flow, starting at τ = 0."""
    params: OscillatorParams
    samples: list[tuple[float, PhasePoint]] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_time_order(self) -> "Trajectory":
        taus = [tau for tau, _ in self.samples]
        if taus[0] != 0.0:
            raise ValueError("trajectory must start at tau = 0")
        if any(later <= earlier for earlier, later in zip(taus, taus[1:])):
            raise ValueError("trajectory samples must be strictly increasing in tau")
        return self

    @property
    def final(self) -> PhasePoint:
        return self.samples[-1][1]


# === Cyclic symmetry ===

class CyclicGroup(BaseModel):
    """ℤₙ acting on the plane by multiplication with powers of ζ = e^{2πi/n}."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * TWO_PI / self.n)

    def element(self, ell: int) -> complex:
        """ζ^ℓ, computed from ℓ mod n so large exponents do not accumulate error."""
        k = ell % self.n
        return cmath.exp(1j * TWO_PI * k / self.n)

    def orbit(self, z: complex) -> list[complex]:
        return [self.element(ell) * z for ell in range(self.n)]


class PeriodInfo(BaseModel):
    """Period, frequency and classical energy of the ℤₙ-invariant motion."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    tau_n: float = Field(gt=0)
    omega_n: float = Field(gt=0)
    energy: float = Field(gt=0)
    hbar: float = Field(gt=0)


# === Cones ===

class _ConeIndexBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    @property
    def value(self) -> float:
        raise NotImplementedError

    @property
    def cone_angle(self) -> float:
        return TWO_PI / self.value

    @property
    def is_integer(self) -> bool:
        return False


class IntegerIndex(_ConeIndexBase):
    kind: Literal["integer"] = "integer"
    n: int = Field(ge=1)

    @property
    def value(self) -> float:
        return float(self.n)

    @property
    def is_integer(self) -> bool:
        return True

    @property
    def label(self) -> str:
        return f"n={self.n}"


class FractionalIndex(_ConeIndexBase):
    kind: Literal["fractional"] = "fractional"
    gamma: float = Field(gt=0, allow_inf_nan=False)

    @field_validator("gamma")
    @classmethod
    def _not_integer(cls, value: float) -> float:
        if abs(value - round(value)) <= INTEGER_TOLERANCE:
            raise ValueError(f"gamma={value} is an integer; use an integer index")
        return value

    @property
    def value(self) -> float:
        return self.gamma

    @property
    def label(self) -> str:
        return f"gamma={self.gamma:g}"


ConeIndex = Annotated[Union[IntegerIndex, FractionalIndex], Field(discriminator="kind")]


class ConeSpace(BaseModel):
    """A cone of opening 2π/ν with a chosen branch cut for the covering map."""
    model_config = ConfigDict(frozen=True)

    index: ConeIndex
    branch_cut_angle: float = Field(default=0.0, ge=0.0, lt=TWO_PI)

    @property
    def cone_angle(self) -> float:
        return self.index.cone_angle


class MetricSample(BaseModel):
    """The flat metric of the plane restricted to one sector, at one point."""
    model_config = ConfigDict(frozen=True)

    at: complex
    rho: float = Field(gt=0)
    rho_cone: float = Field(gt=0)
    conformal_factor: float = Field(gt=0)
    # (ρ_ν, φ_ν) coordinates
    metric_components: tuple[tuple[float, float], tuple[float, float]]
    # (ρ, φ_ν) coordinates
    direct_components: tuple[tuple[float, float], tuple[float, float]]

    @field_validator("at", mode="before")
    @classmethod
    def _coerce_at(cls, value: Any) -> complex:
        return _finite_complex(value)

    @field_validator("metric_components", "direct_components")
    @classmethod
    def _positive_definite(cls, value):
        (a, b), (c, d) = value
        if b != c:
            raise ValueError("metric components must be symmetric")
        if not (a > 0 and a * d - b * c > 0):
            raise ValueError("metric components must be positive definite")
        return value


# === Bargmann–Fock space ===

class HolomorphicState(BaseModel):
    """Truncated coefficient vector of a Bargmann–Fock state, padded to N + 1 entries."""
    model_config = ConfigDict(frozen=True)

    coeffs: tuple[complex, ...]
    truncation: int = Field(default=DEFAULT_TRUNCATION, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _pad_coefficients(cls, data: Any) -> Any:
        if isinstance(data, dict) and "coeffs" in data:
            truncation = int(data.get("truncation", DEFAULT_TRUNCATION))
            coeffs = [_finite_complex(c) for c in data["coeffs"]]
            if len(coeffs) > truncation + 1:
                raise ValueError(
                    f"state degree {len(coeffs) - 1} exceeds truncation {truncation}"
                )
            padding = max(truncation + 1 - len(coeffs), 0)
            data = {**data, "coeffs": tuple(coeffs) + (0j,) * padding}
        return data

    @property
    def degree(self) -> int:
        """Highest index carrying a non-zero coefficient (0 for the zero state)."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


class QuadratureSpec(BaseModel):
    """Gauss–Laguerre radial nodes times uniform angular nodes."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    radial_nodes: int = Field(ge=1)
    angular_nodes: int = Field(ge=1)

    @classmethod
    def for_degree(cls, degree: int) -> "QuadratureSpec":
        """Smallest rule that integrates products of degree ≤ ``degree`` states exactly."""
        return cls(radial_nodes=degree + 1, angular_nodes=2 * degree + 2)

    def resolves(self, degree: int) -> bool:
        return self.radial_nodes >= degree + 1 and self.angular_nodes >= 2 * degree + 2


class SpectralLine(BaseModel):
    """One eigenvalue of the oscillator with its occupation probability."""
    model_config = ConfigDict(frozen=True)

    index: float = Field(ge=0)
    energy: float
    probability: Optional[float] = Field(default=None, ge=0, le=1)


class MembershipResult(BaseModel):
    """Whether z^γ is single-valued on the plane, and the jump across its cut at ρ = 1."""
    model_config = ConfigDict(frozen=True)

    gamma: float
    member: bool
    discontinuity: float = Field(ge=0)


# === Reports ===

class ReportRow(BaseModel):
    """One checked case of an experiment. ``tolerance`` is used for the verdict only."""
    experiment: str
    case_id: str
    observed: Union[float, complex]
    expected: Union[float, complex]
    abs_error: float = Field(ge=0)
    tolerance: float = Field(gt=0, exclude=True)
    passed: bool

    @model_validator(mode="after")
    def _verdict_matches(self) -> "ReportRow":
        if self.passed != (self.abs_error <= self.tolerance):
            raise ValueError("pass flag disagrees with abs_error and tolerance")
        return self


class CorrespondenceEntry(BaseModel):
    """Classical energy against quantum level for one index."""
    index: float
    kind: Literal["vacuum", "integer", "fractional"]
    classical_energy: float
    quantum_energy: float
    in_hilbert: bool


class ReportSummary(BaseModel):
    experiment: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    failed_cases: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


# === Configuration ===

def _default_cone_indices() -> list:
    return [IntegerIndex(n=n) for n in range(1, 9)] + [
        FractionalIndex(gamma=g) for g in (0.5, 1.7, 2.5)
    ]


class FigureSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    sector_order: int = Field(default=4, ge=1)
    orbit_order: int = Field(default=3, ge=1)
    spectrum_coefficients: list[float] = Field(default_factory=lambda: [0.0, 0.0, 1.0])


class ExperimentConfig(BaseModel):
    """Fully validated run configuration. Immutable after load."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    oscillator: OscillatorParams = Field(default_factory=OscillatorParams)
    cone_indices: list[ConeIndex] = Field(default_factory=_default_cone_indices, min_length=1)
    truncation: int = Field(default=DEFAULT_TRUNCATION, ge=1)
    quadrature: Optional[QuadratureSpec] = None
    tolerances: dict[str, float] = Field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    figures: FigureSettings = Field(default_factory=FigureSettings)
    output_dir: Path = Path("reports")
    seed: int = Field(default=20240101, ge=0)

    @field_validator("tolerances", mode="before")
    @classmethod
    def _merge_tolerances(cls, value: Any) -> dict:
        value = dict(value or {})
        unknown = sorted(set(value) - set(DEFAULT_TOLERANCES))
        if unknown:
            raise ValueError(f"unknown tolerance names: {', '.join(unknown)}")
        return {**DEFAULT_TOLERANCES, **value}

    @field_validator("tolerances")
    @classmethod
    def _positive_tolerances(cls, value: dict[str, float]) -> dict[str, float]:
        for name, tol in value.items():
            if not (math.isfinite(tol) and tol > 0):
                raise ValueError(f"tolerance {name} must be a positive finite number")
        return value

    @model_validator(mode="after")
    def _quadrature_resolves_truncation(self) -> "ExperimentConfig":
        if self.quadrature is not None and not self.quadrature.resolves(self.truncation):
            raise ValueError(
                f"quadrature {self.quadrature.radial_nodes}x{self.quadrature.angular_nodes} "
                f"cannot resolve truncation {self.truncation}"
            )
        return self

    @property
    def effective_quadrature(self) -> QuadratureSpec:
        return self.quadrature or QuadratureSpec.for_degree(self.truncation)

    @property
    def integer_orders(self) -> list[int]:
        return [index.n for index in self.cone_indices if isinstance(index, IntegerIndex)]

    @property
    def fractional_gammas(self) -> list[float]:
        return [index.gamma for index in self.cone_indices if isinstance(index, FractionalIndex)]

    def tolerance(self, name: str) -> float:
        return self.tolerances[name]
