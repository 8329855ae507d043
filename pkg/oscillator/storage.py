"""
File storage for experiment reports, coverage manifests and tables.
"""
import csv
import os
from pathlib import Path
from typing import Iterable, Sequence

from .reporting import CSV_COLUMNS, row_to_record
from .schemas import ReportRow


def ensure_output_dir(path: Path) -> Path:
    """Create the output directory if needed and check that it is writable."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory is not writable: {path}")
    return path


def _write_csv(path: Path, header: Sequence[str], records: Iterable[Sequence[str]]) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(records)
    return path


def write_report(output_dir: Path, experiment: str, rows: Sequence[ReportRow]) -> Path:
    directory = ensure_output_dir(output_dir)
    records = ([row_to_record(row)[column] for column in CSV_COLUMNS] for row in rows)
    return _write_csv(directory / f"{experiment}.csv", CSV_COLUMNS, records)


def write_coverage(output_dir: Path, experiment: str, relations: Sequence[tuple[str, str]]) -> Path:
    """One line per (relation, equation label) pair the experiment checks."""
    directory = ensure_output_dir(output_dir)
    return _write_csv(
        directory / f"{experiment}.coverage.csv",
        ("experiment", "relation", "equation"),
        ([experiment, relation, equation] for relation, equation in relations),
    )


def write_table(output_dir: Path, filename: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    directory = ensure_output_dir(output_dir)
    return _write_csv(directory / filename, header, rows)


def read_report(path: Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
