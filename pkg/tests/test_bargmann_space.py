"""
Tests for Bargmann–Fock states: inner products, spectrum, evolution and
fractional states.
"""
import cmath
import math

import numpy as np
import pytest
from pydantic import ValidationError

from oscillator import bargmann_space as bargmann
from oscillator.schemas import (
    ConeSpace,
    Convention,
    FractionalIndex,
    HolomorphicState,
    OscillatorParams,
    QuadratureSpec,
    QuadratureUnderresolvedError,
)


PROBES = (1.5j, cmath.rect(0.5, 1.0), cmath.rect(2.0, 4.0))


def random_state(seed: int, truncation: int) -> HolomorphicState:
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=truncation + 1) + 1j * rng.normal(size=truncation + 1)
    return bargmann.normalize(bargmann.state_from_coefficients(coeffs, truncation))


class TestHolomorphicState:
    """Tests for state construction."""

    def test_pads_to_truncation(self):
        """Test that short coefficient lists are zero-padded."""
        state = bargmann.state_from_coefficients([1, 2], truncation=5)
        assert len(state.coeffs) == 6
        assert state.degree == 1

    def test_rejects_overlong(self):
        """Test that a degree above N is rejected."""
        with pytest.raises(ValidationError, match="exceeds truncation"):
            bargmann.state_from_coefficients([1, 2, 3, 4], truncation=2)

    def test_rejects_nan(self):
        """Test that non-finite coefficients are rejected."""
        with pytest.raises(ValidationError):
            bargmann.state_from_coefficients([1, math.nan], truncation=3)

    def test_normalize_zero_state(self):
        """Test that the zero state cannot be normalized."""
        with pytest.raises(ValueError):
            bargmann.normalize(bargmann.state_from_coefficients([0, 0], truncation=3))

    def test_basis_state_bounds(self):
        """Test that ψₙ needs n ≤ N."""
        with pytest.raises(ValueError):
            bargmann.basis_state(5, truncation=4)


class TestInnerProducts:
    """Tests for the analytic and quadrature inner products."""

    def test_raw_norms_are_factorials(self):
        """Test ‖zⁿ‖² = n! for n ≤ 20 within 1e-9 relative."""
        gram = bargmann.gram_matrix(20, convention=Convention.MONOMIAL)
        for n in range(21):
            assert gram[n, n].real == pytest.approx(math.factorial(n), rel=1e-9)

    def test_raw_off_diagonal_absolute(self):
        """Test raw monomial off-diagonal entries below 1e-10 absolute for n, m ≤ 12."""
        gram = bargmann.gram_matrix(12, convention=Convention.MONOMIAL)
        off_diagonal = gram - np.diag(np.diag(gram))
        assert np.max(np.abs(off_diagonal)) < 1e-10
        for n in range(13):
            assert gram[n, n].real == pytest.approx(math.factorial(n), rel=1e-9)

    def test_raw_off_diagonal_with_extra_angular_nodes(self):
        """Test the absolute bound on a finer angular grid as well."""
        gram = bargmann.gram_matrix(12, QuadratureSpec(radial_nodes=13, angular_nodes=32), Convention.MONOMIAL)
        assert np.max(np.abs(gram - np.diag(np.diag(gram)))) < 1e-10

    def test_normalized_off_diagonal(self):
        """Test that the orthonormal Gram matrix is the identity to 1e-10 for n, m ≤ 12."""
        gram = bargmann.gram_matrix(12, convention=Convention.NORMALIZED)
        assert np.max(np.abs(gram - np.eye(13))) < 1e-10

    def test_double_precision_path_agrees(self):
        """Test that the grid summation matches the extended one up to its rounding."""
        extended = bargmann.gram_matrix(8, convention=Convention.NORMALIZED)
        plain = bargmann.gram_matrix(8, convention=Convention.NORMALIZED, extended=False)
        assert np.max(np.abs(extended - plain)) < 1e-10

    def test_vacuum_norm_is_one(self):
        """Test that the measure is normalized so ‖1‖ = 1."""
        vacuum = bargmann.vacuum_state(4)
        assert bargmann.inner_product_quadrature(vacuum, vacuum) == pytest.approx(1.0, abs=1e-14)

    def test_quadrature_matches_analytic(self):
        """Test quadrature against the coefficient formula for random states."""
        a, b = random_state(1, 10), random_state(2, 10)
        quadrature = bargmann.inner_product_quadrature(a, b)
        assert abs(quadrature - bargmann.inner_product_analytic(a, b)) < 1e-10

    def test_antilinear_in_first_slot(self):
        """Test ⟨αa, b⟩ = ᾱ⟨a, b⟩."""
        a, b = random_state(3, 6), random_state(4, 6)
        alpha = 0.3 - 1.2j
        scaled = bargmann.state_from_coefficients(alpha * bargmann.coefficient_vector(a), 6)
        expected = alpha.conjugate() * bargmann.inner_product_analytic(a, b)
        assert abs(bargmann.inner_product_analytic(scaled, b) - expected) < 1e-14

    def test_mixed_truncations(self):
        """Test that states of different truncation are compared after padding."""
        a = bargmann.basis_state(2, truncation=3)
        b = bargmann.basis_state(2, truncation=8)
        assert bargmann.inner_product_analytic(a, b) == 1.0

    def test_underresolved_quadrature(self):
        """Test that too few nodes raise instead of returning a wrong number."""
        state = bargmann.basis_state(6, truncation=6)
        with pytest.raises(QuadratureUnderresolvedError, match="quadrature underresolved"):
            bargmann.inner_product_quadrature(state, state, QuadratureSpec(radial_nodes=4, angular_nodes=14))

    def test_evaluate_matches_convention(self):
        """Test ψ(z) in the normalized and monomial conventions."""
        state = bargmann.state_from_coefficients([0, 0, 1], truncation=4)
        z = 0.3 + 0.4j
        assert bargmann.evaluate_state(state, z) == pytest.approx(z ** 2 / math.sqrt(2.0))
        assert bargmann.evaluate_state(state, z, Convention.MONOMIAL) == pytest.approx(z ** 2)


class TestSpectrum:
    """Tests for Ĥ and its eigenvalues."""

    @pytest.mark.parametrize("n", [0, 1, 5, 32])
    def test_exact_eigenvalues(self, n):
        """Test Ĥψₙ = ħω(n + ½)ψₙ on coefficients."""
        params = OscillatorParams(omega=2.0, hbar=0.5)
        applied = bargmann.apply_hamiltonian(bargmann.basis_state(n, 32), params)
        assert applied.coeffs[n] == (n + 0.5) * params.quantum

    @pytest.mark.parametrize("n", [0, 3, 12, 32])
    def test_numeric_eigenvalues(self, n):
        """Test ħω(z∂_z + ½)zⁿ by finite differences within 1e-8 relative."""
        probe = cmath.rect(1.0, 0.3)
        value = bargmann.apply_hamiltonian_pointwise(lambda w: w ** n, probe, h=1e-6) / probe ** n
        assert abs(value - (n + 0.5)) < 1e-8 * max(1.0, n + 0.5)

    def test_pointwise_rejects_origin(self):
        """Test that the radial direction needs z ≠ 0."""
        with pytest.raises(ValueError):
            bargmann.apply_hamiltonian_pointwise(lambda w: w, 0j)

    def test_spectrum_levels(self):
        """Test the listed levels."""
        lines = bargmann.spectrum(3)
        assert [line.energy for line in lines] == [0.5, 1.5, 2.5, 3.5]


class TestEvolution:
    """Tests for time evolution and energy probabilities."""

    def test_probabilities_sum_to_one(self):
        """Test the Born weights of a random state."""
        state = random_state(5, 16)
        total = sum(line.probability for line in bargmann.energy_probabilities(state))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_probabilities_invariant(self):
        """Test that evolution leaves the level occupations unchanged."""
        state = random_state(6, 16)
        before = [line.probability for line in bargmann.energy_probabilities(state)]
        after = [line.probability for line in bargmann.energy_probabilities(bargmann.evolve(state, 2.7))]
        assert max(abs(p - q) for p, q in zip(before, after)) < 1e-12

    def test_phases(self):
        """Test that ψₙ picks up e^{iω(n+½)τ}."""
        params = OscillatorParams(omega=1.5)
        evolved = bargmann.evolve(bargmann.basis_state(3, 5), 0.8, params)
        assert abs(evolved.coeffs[3] - cmath.exp(1j * 1.5 * 3.5 * 0.8)) < 1e-14

    def test_full_period_flips_sign(self):
        """Test that τ = 2π/ω multiplies every state by −1."""
        state = random_state(7, 8)
        evolved = bargmann.evolve(state, 2.0 * math.pi)
        assert np.max(np.abs(np.array(evolved.coeffs) + np.array(state.coeffs))) < 1e-13

    def test_mean_energy_of_basis_state(self):
        """Test ⟨Ĥ⟩ on ψ₂."""
        assert bargmann.mean_energy(bargmann.basis_state(2, 4)) == pytest.approx(2.5)

    def test_zero_state_has_no_distribution(self):
        """Test that the zero state is refused."""
        with pytest.raises(ValueError):
            bargmann.energy_probabilities(bargmann.state_from_coefficients([0], truncation=2))

    def test_evolve_rejects_infinite_time(self):
        """Test that τ must be finite."""
        with pytest.raises(ValueError):
            bargmann.evolve(bargmann.vacuum_state(2), math.inf)


class TestFractionalStates:
    """Tests for z^γ outside the Hilbert space."""

    @pytest.mark.parametrize("gamma", [0.5, 1.7, 2.5])
    def test_eigen_relation(self, gamma):
        """Test the residual of Ĥz^γ = ħω(γ + ½)z^γ with h = 1e-5."""
        assert bargmann.verify_fractional_eigenstate(gamma, None, PROBES, h=1e-5) < 1e-6

    @pytest.mark.parametrize("gamma", [0.5, 1.7, 2.5])
    def test_analytic_residual(self, gamma):
        """Test the residual with the exact derivative."""
        assert bargmann.verify_fractional_eigenstate(gamma, None, PROBES, analytic=True) < 1e-12

    @pytest.mark.parametrize("gamma", [0.5, 1.7, 2.5])
    def test_second_order_convergence(self, gamma):
        """Test that the finite-difference residual converges with order 2."""
        assert bargmann.residual_order(gamma, None, PROBES, h=1e-2) == pytest.approx(2.0, abs=0.1)

    def test_eigenvalue_at_two_and_a_half(self):
        """Test that γ = 2.5 has energy 3ħω."""
        psi = bargmann.fractional_state(2.5)
        value = bargmann.apply_hamiltonian_pointwise(psi, 1.5j) / psi(1.5j)
        assert abs(value - 3.0) < 1e-6

    def test_probe_on_cut_rejected(self):
        """Test that probes within h of the cut are refused."""
        with pytest.raises(ValueError, match="branch cut"):
            bargmann.verify_fractional_eigenstate(0.5, None, [1.0 + 1e-7j], h=1e-5)

    def test_probe_near_origin_rejected(self):
        """Test that probes within h of the branch point are refused."""
        with pytest.raises(ValueError, match="branch point"):
            bargmann.verify_fractional_eigenstate(0.5, None, [1e-6j], h=1e-5)

    def test_cut_follows_cone(self):
        """Test that the cone's cut moves the forbidden ray."""
        cone = ConeSpace(index=FractionalIndex(gamma=0.5), branch_cut_angle=math.pi / 2)
        with pytest.raises(ValueError):
            bargmann.verify_fractional_eigenstate(0.5, cone, [1.5j], h=1e-5)
        assert bargmann.verify_fractional_eigenstate(0.5, cone, [1.5], h=1e-5) < 1e-6

    @pytest.mark.parametrize("gamma", [0.5, 1.7, 2.5])
    def test_not_in_hilbert_space(self, gamma):
        """Test that fractional powers are excluded."""
        result = bargmann.hilbert_membership(gamma)
        assert not result.member
        assert result.discontinuity == pytest.approx(abs(cmath.exp(2j * math.pi * gamma) - 1.0), abs=1e-10)

    @pytest.mark.parametrize("n", [0, 1, 4])
    def test_integers_in_hilbert_space(self, n):
        """Test that non-negative integer powers are members."""
        result = bargmann.hilbert_membership(n)
        assert result.member
        assert result.discontinuity == 0.0

    def test_negative_gamma_rejected(self):
        """Test that γ < 0 is refused."""
        with pytest.raises(ValueError):
            bargmann.hilbert_membership(-0.5)
