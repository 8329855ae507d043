"""
Report rows: building them from observed/expected pairs, formatting them for
CSV, and summarising a run.
"""
import math
from typing import Iterable, Optional, Union

from .schemas import ReportRow, ReportSummary


Number = Union[float, complex]

CSV_COLUMNS = ("experiment", "case_id", "observed", "expected", "abs_error", "pass")


def make_row(
    experiment: str,
    case_id: str,
    observed: Number,
    expected: Number,
    tolerance: float,
    abs_error: Optional[float] = None,
) -> ReportRow:
    """
    Build a ReportRow and decide its verdict.

    ``abs_error`` defaults to |observed - expected|; pass it explicitly when
    the row reports an aggregate such as a maximum deviation. Non-finite
    errors always fail.
    """
    observed = _plain(observed)
    expected = _plain(expected)
    if abs_error is None:
        abs_error = abs(observed - expected)
    abs_error = float(abs_error)
    if not math.isfinite(abs_error):
        abs_error = math.inf

    return ReportRow(
        experiment=experiment,
        case_id=case_id,
        observed=observed,
        expected=expected,
        abs_error=abs_error,
        tolerance=tolerance,
        passed=abs_error <= tolerance,
    )


def _plain(value) -> Number:
    # numpy scalars and bools become plain floats/complex
    if isinstance(value, complex) or (hasattr(value, "imag") and value.imag != 0):
        return complex(value)
    return float(value.real if hasattr(value, "real") else value)


def format_value(value: Number) -> str:
    """17 significant digits; complex values as ``a+bi``."""
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}i"
    return f"{value:.17g}"


def row_to_record(row: ReportRow) -> dict[str, str]:
    return {
        "experiment": row.experiment,
        "case_id": row.case_id,
        "observed": format_value(row.observed),
        "expected": format_value(row.expected),
        "abs_error": format_value(row.abs_error),
        "pass": "true" if row.passed else "false",
    }


def summarize(experiment: str, rows: Iterable[ReportRow]) -> ReportSummary:
    summary = ReportSummary(experiment=experiment)
    for row in rows:
        summary.total += 1
        if row.passed:
            summary.passed += 1
        else:
            summary.failed += 1
            summary.failed_cases.append(row.case_id)
    return summary
