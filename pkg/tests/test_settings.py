"""
Tests for INI configuration loading.
"""
import configparser
from pathlib import Path

import pytest
from pydantic import ValidationError

from oscillator.schemas import DEFAULT_TOLERANCES, FractionalIndex, IntegerIndex
from oscillator.settings import ENV_OUTPUT_DIR, load_config, parse_config_text


class TestDefaults:
    """Tests for the bundled and built-in defaults."""

    def test_bundled_file(self, monkeypatch):
        """Test that configs/default.ini loads into the documented defaults."""
        monkeypatch.delenv(ENV_OUTPUT_DIR, raising=False)
        config = load_config()
        assert config.integer_orders == list(range(1, 9))
        assert config.fractional_gammas == [0.5, 1.7, 2.5]
        assert config.truncation == 32
        assert config.seed == 20240101
        assert config.output_dir == Path("reports")

    def test_empty_text(self, monkeypatch):
        """Test that an empty file gives the built-in defaults."""
        monkeypatch.delenv(ENV_OUTPUT_DIR, raising=False)
        config = parse_config_text("")
        assert config.tolerances == DEFAULT_TOLERANCES
        assert config.effective_quadrature.radial_nodes == 33
        assert config.effective_quadrature.angular_nodes == 66


class TestParsing:
    """Tests for section and key handling."""

    def test_values(self):
        """Test that every section reaches the config."""
        config = parse_config_text(
            "[oscillator]\nomega = 2.0\n"
            "[cones]\nintegers = 2, 3\nfractional = 0.5\n"
            "[bargmann]\ntruncation = 12\n"
            "[tolerances]\nperiod = 1e-10\n"
            "[figures]\nsector_order = 6\n"
            "[run]\nseed = 5\n"
        )
        assert config.oscillator.omega == 2.0
        assert config.cone_indices == [IntegerIndex(n=2), IntegerIndex(n=3), FractionalIndex(gamma=0.5)]
        assert config.truncation == 12
        assert config.tolerance("period") == 1e-10
        assert config.tolerance("flow") == DEFAULT_TOLERANCES["flow"]
        assert config.figures.sector_order == 6
        assert config.seed == 5

    def test_partial_quadrature_filled(self):
        """Test that a missing node count comes from the truncation."""
        config = parse_config_text("[bargmann]\ntruncation = 4\n[quadrature]\nradial_nodes = 9\n")
        assert config.quadrature.radial_nodes == 9
        assert config.quadrature.angular_nodes == 10

    def test_unknown_key(self):
        """Test that typos are errors."""
        with pytest.raises(ValidationError):
            parse_config_text("[oscillator]\nomgea = 2.0\n")

    def test_unknown_section(self):
        """Test that unknown sections are errors."""
        with pytest.raises(ValidationError):
            parse_config_text("[plots]\nsize = 3\n")

    def test_default_section_is_not_inherited(self):
        """Test that [DEFAULT] is treated as an ordinary unknown section."""
        with pytest.raises(ValidationError):
            parse_config_text("[DEFAULT]\nomega = 2.0\n")

    def test_unknown_tolerance(self):
        """Test that only known tolerance names are accepted."""
        with pytest.raises(ValidationError, match="unknown tolerance"):
            parse_config_text("[tolerances]\nflw = 1e-3\n")

    def test_non_positive_tolerance(self):
        """Test that tolerances must be positive."""
        with pytest.raises(ValidationError):
            parse_config_text("[tolerances]\nflow = 0\n")

    def test_underresolving_quadrature(self):
        """Test that the quadrature must resolve the truncation."""
        with pytest.raises(ValidationError, match="cannot resolve"):
            parse_config_text("[bargmann]\ntruncation = 10\n[quadrature]\nradial_nodes = 5\nangular_nodes = 22\n")

    def test_negative_seed(self):
        """Test that seeds must be non-negative."""
        with pytest.raises(ValidationError):
            parse_config_text("", seed=-1)

    def test_malformed_ini(self):
        """Test that syntax errors surface as configparser errors."""
        with pytest.raises(configparser.Error):
            parse_config_text("omega = 1\n")

    def test_missing_file(self, tmp_path):
        """Test that a missing path is an OSError."""
        with pytest.raises(OSError):
            load_config(tmp_path / "nope.ini")


class TestOutputDirPrecedence:
    """Tests for --out, [run] output_dir, environment and default."""

    def test_cli_wins(self, monkeypatch):
        """Test that the command-line value beats everything."""
        monkeypatch.setenv(ENV_OUTPUT_DIR, "from-env")
        config = parse_config_text("[run]\noutput_dir = from-file\n", output_dir="from-cli")
        assert config.output_dir == Path("from-cli")

    def test_file_beats_env(self, monkeypatch):
        """Test that the file beats the environment."""
        monkeypatch.setenv(ENV_OUTPUT_DIR, "from-env")
        config = parse_config_text("[run]\noutput_dir = from-file\n")
        assert config.output_dir == Path("from-file")

    def test_env_beats_default(self, monkeypatch):
        """Test that the environment beats the default."""
        monkeypatch.setenv(ENV_OUTPUT_DIR, "from-env")
        assert parse_config_text("").output_dir == Path("from-env")

    def test_cli_seed_overrides_file(self):
        """Test that --seed replaces [run] seed."""
        assert parse_config_text("[run]\nseed = 3\n", seed=9).seed == 9
