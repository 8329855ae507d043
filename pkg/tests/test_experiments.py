"""
Tests for the verification suites and their report files.
"""
import math

import pytest

from oscillator.experiments import (
    ALL_RELATIONS,
    CORRESPONDENCE_FILE,
    EXPERIMENTS,
    RELATION_EQUATIONS,
    correspondence_entries,
    covered_equations,
    covered_relations,
    experiment_names,
    run_all,
    run_experiment,
)
from oscillator.reporting import summarize
from oscillator.schemas import ExperimentConfig, FractionalIndex, IntegerIndex
from oscillator.storage import read_report


@pytest.fixture
def small_config(tmp_path):
    return ExperimentConfig(truncation=12, output_dir=tmp_path)


class TestRegistry:
    """Tests for the experiment registry."""

    def test_names_in_run_order(self):
        """Test the eight suites and their order."""
        assert experiment_names() == [
            "classical-flow", "zn-periods", "cone-geometry", "bargmann-norms",
            "spectrum", "evolution", "fractional", "correspondence-table",
        ]

    def test_every_relation_covered(self):
        """Test that the suites together exercise every relation."""
        assert covered_relations() == set(ALL_RELATIONS)

    def test_every_equation_covered(self):
        """Test that equations (1) to (43) are each checked by some suite."""
        assert covered_equations() == {f"({number})" for number in range(1, 44)}
        assert "(44)" not in RELATION_EQUATIONS.values()

    def test_equation_labels(self):
        """Test a few fixed relation-to-equation pairs."""
        assert RELATION_EQUATIONS["coordinate"] == "(1)"
        assert RELATION_EQUATIONS["period"] == "(10)"
        assert RELATION_EQUATIONS["cone-hamiltonian"] == "(16)"
        assert RELATION_EQUATIONS["fractional-eigenstate"] == "(37)"
        assert RELATION_EQUATIONS["evolution-phases"] == "(43)"

    def test_unknown_experiment(self, small_config):
        """Test that an unknown name is refused."""
        with pytest.raises(ValueError, match="unknown experiment"):
            run_experiment("does-not-exist", small_config)


class TestSuites:
    """Tests for individual suites."""

    def test_zn_periods(self, tmp_path):
        """Test eight passing rows with τₙ = 2π/n."""
        rows = run_experiment("zn-periods", ExperimentConfig(output_dir=tmp_path))
        assert [row.case_id for row in rows] == [f"n={n}" for n in range(1, 9)]
        assert all(row.passed for row in rows)
        assert rows[3].expected == pytest.approx(math.pi / 2, rel=1e-15)

    def test_bargmann_norms_row_counts(self, small_config):
        """Test 13 diagonal and 78 off-diagonal Gram rows at N = 12."""
        rows = run_experiment("bargmann-norms", small_config, write=False)
        gram = [row for row in rows if row.case_id.startswith("gram/")]
        diagonal = [row for row in gram if len(set(row.case_id[5:].split(","))) == 1]
        assert len(diagonal) == 13
        assert len(gram) - len(diagonal) == 78
        assert all(row.passed for row in rows)

    def test_fractional_two_and_a_half(self, tmp_path):
        """Test the γ = 2.5 eigenvalue and membership rows."""
        config = ExperimentConfig(
            cone_indices=[IntegerIndex(n=2), FractionalIndex(gamma=2.5)], truncation=8, output_dir=tmp_path,
        )
        rows = {row.case_id: row for row in run_experiment("fractional", config)}
        eigen = rows["gamma=2.5/eigenvalue"]
        assert eigen.expected == 3.0
        assert eigen.passed
        membership = rows["gamma=2.5/membership"]
        assert membership.observed == 0.0
        assert membership.passed

    def test_failing_tolerance_is_reported(self, tmp_path):
        """Test that an impossible tolerance produces failing rows, not an exception."""
        config = ExperimentConfig(output_dir=tmp_path, tolerances={"integrator": 1e-30})
        rows = run_experiment("classical-flow", config)
        failed = summarize("classical-flow", rows).failed_cases
        assert failed == ["flow/rk4-steps=1000"]

    @pytest.mark.parametrize("name", list(EXPERIMENTS))
    def test_default_configuration_passes(self, name, tmp_path):
        """Test that every suite passes with the default configuration."""
        rows = run_experiment(name, ExperimentConfig(output_dir=tmp_path))
        summary = summarize(name, rows)
        assert summary.total > 0
        assert summary.ok, summary.failed_cases


class TestReports:
    """Tests for files written by a run."""

    def test_files_written(self, small_config):
        """Test the report and coverage files of one suite."""
        run_experiment("spectrum", small_config)
        report = read_report(small_config.output_dir / "spectrum.csv")
        assert report[0]["case_id"] == "exact/n=0"
        coverage = (small_config.output_dir / "spectrum.coverage.csv").read_text(encoding="utf-8")
        assert "spectrum,hamiltonian-operator,(24)" in coverage

    def test_correspondence_table(self, small_config):
        """Test the classical/quantum table and its fractional rows."""
        run_experiment("correspondence-table", small_config)
        records = read_report(small_config.output_dir / CORRESPONDENCE_FILE)
        assert records[0] == {
            "index": "0", "kind": "vacuum", "classical_energy": "0", "quantum_energy": "0.5", "in_hilbert": "true",
        }
        by_index = {record["index"]: record for record in records}
        assert by_index["3"]["classical_energy"] == "3"
        assert by_index["3"]["quantum_energy"] == "3.5"
        assert by_index["2.5"]["in_hilbert"] == "false"

    def test_entries(self, small_config):
        """Test vacuum, eight integer levels and three fractional rows."""
        entries = correspondence_entries(small_config)
        assert [entry.kind for entry in entries].count("integer") == 8
        assert [entry.kind for entry in entries].count("fractional") == 3
        assert entries[0].kind == "vacuum"

    def test_deterministic(self, tmp_path):
        """Test that two runs with the same seed give byte-identical CSVs."""
        first = ExperimentConfig(truncation=8, output_dir=tmp_path / "first", seed=42)
        second = ExperimentConfig(truncation=8, output_dir=tmp_path / "second", seed=42)
        run_all(first)
        run_all(second)

        names = sorted(path.name for path in first.output_dir.iterdir())
        assert names == sorted(path.name for path in second.output_dir.iterdir())
        for name in names:
            assert (first.output_dir / name).read_bytes() == (second.output_dir / name).read_bytes()

