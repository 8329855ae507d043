"""
Tests for SVG figure rendering.
"""
import matplotlib.pyplot as plt
import pytest

from oscillator.bargmann_space import basis_state
from oscillator.figures import render_figures, sector_figure, spectrum_stems
from oscillator.schemas import ExperimentConfig, OscillatorParams


class TestSectorFigure:
    """Tests for the sector-to-cone diagram."""

    def test_wedge_opening(self):
        """Test that n = 4 draws a wedge of opening π/2."""
        fig = sector_figure(4)
        wedges = [patch for ax in fig.axes for patch in ax.patches if patch.get_gid() == "cone-sector"]
        plt.close(fig)
        assert len(wedges) == 1
        assert wedges[0].theta2 - wedges[0].theta1 == pytest.approx(90.0)

    def test_rejects_zero(self):
        """Test that n must be positive."""
        with pytest.raises(ValueError):
            sector_figure(0)


class TestSpectrum:
    """Tests for the spectrum stems."""

    def test_basis_state_single_stem(self):
        """Test that ψ₂ has one stem at 2.5 with probability 1."""
        assert spectrum_stems(basis_state(2, 6), OscillatorParams()) == [(2.5, 1.0)]


class TestRenderFigures:
    """Tests for writing the SVG files."""

    def test_writes_all(self, tmp_path):
        """Test that the three default figures are written."""
        paths = render_figures(ExperimentConfig(output_dir=tmp_path))
        assert [path.name for path in paths] == ["trajectory.svg", "sector_n4.svg", "spectrum.svg"]
        assert 'id="cone-sector"' in (tmp_path / "sector_n4.svg").read_text(encoding="utf-8")

    def test_byte_identical(self, tmp_path):
        """Test that rendering twice gives identical files."""
        first = render_figures(ExperimentConfig(output_dir=tmp_path / "a"))
        second = render_figures(ExperimentConfig(output_dir=tmp_path / "b"))
        for a, b in zip(first, second):
            assert a.read_bytes() == b.read_bytes()

    def test_subset(self, tmp_path):
        """Test that --which selects figures."""
        paths = render_figures(ExperimentConfig(output_dir=tmp_path), which=["spectrum"])
        assert [path.name for path in paths] == ["spectrum.svg"]

    def test_unknown_figure(self, tmp_path):
        """Test that unknown names are refused."""
        with pytest.raises(ValueError, match="unknown figures"):
            render_figures(ExperimentConfig(output_dir=tmp_path), which=["heatmap"])
