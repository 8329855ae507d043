"""
Tests for report rows and their CSV formatting.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from oscillator.reporting import CSV_COLUMNS, format_value, make_row, row_to_record, summarize
from oscillator.schemas import ReportRow


class TestMakeRow:
    """Tests for make_row."""

    def test_passing_row(self):
        """Test that a small error passes."""
        row = make_row("spectrum", "exact/n=0", 0.5, 0.5, 1e-14)
        assert row.passed
        assert row.abs_error == 0.0

    def test_failing_row(self):
        """Test that an error above tolerance fails."""
        row = make_row("spectrum", "exact/n=1", 1.6, 1.5, 1e-3)
        assert not row.passed
        assert row.abs_error == pytest.approx(0.1)

    def test_explicit_error(self):
        """Test that an aggregate error overrides |observed − expected|."""
        row = make_row("evolution", "max", 0.0, 0.0, 1e-12, abs_error=5e-13)
        assert row.passed
        assert row.abs_error == 5e-13

    def test_nan_fails(self):
        """Test that a NaN observation always fails."""
        row = make_row("flow", "nan", math.nan, 1.0, 1.0)
        assert not row.passed
        assert row.abs_error == math.inf

    def test_numpy_scalars_become_plain(self):
        """Test that numpy values are stored as Python numbers."""
        row = make_row("norms", "gram", np.float64(2.0), np.complex128(2.0 + 1e-20j), 1e-9)
        assert type(row.observed) is float
        assert type(row.expected) is complex

    def test_verdict_must_match(self):
        """Test that a hand-built row cannot lie about its verdict."""
        with pytest.raises(ValidationError):
            ReportRow(
                experiment="x", case_id="y", observed=1.0, expected=0.0,
                abs_error=1.0, tolerance=1e-3, passed=True,
            )


class TestFormatting:
    """Tests for CSV value formatting."""

    def test_real(self):
        """Test 17 significant digits."""
        assert format_value(0.1) == "0.10000000000000001"

    def test_complex(self):
        """Test the a+bi form."""
        assert format_value(1.5 - 2j) == "1.5-2i"
        assert format_value(complex(0.0, 1.0)) == "0+1i"

    def test_record(self):
        """Test that records carry the fixed columns and lowercase verdicts."""
        record = row_to_record(make_row("zn-periods", "n=2", math.pi, math.pi, 1e-12))
        assert tuple(record) == CSV_COLUMNS
        assert record["pass"] == "true"
        assert record["abs_error"] == "0"

    def test_tolerance_not_serialized(self):
        """Test that the tolerance stays out of dumps."""
        row = make_row("a", "b", 1.0, 1.0, 1e-3)
        assert "tolerance" not in row.model_dump()


class TestSummarize:
    """Tests for run summaries."""

    def test_counts(self):
        """Test totals and failed case ids."""
        rows = [
            make_row("e", "ok", 1.0, 1.0, 1e-9),
            make_row("e", "bad", 2.0, 1.0, 1e-9),
        ]
        summary = summarize("e", rows)
        assert (summary.total, summary.passed, summary.failed) == (2, 1, 1)
        assert summary.failed_cases == ["bad"]
        assert not summary.ok

    def test_empty_run_is_ok(self):
        """Test that no rows means no failures."""
        assert summarize("e", []).ok
