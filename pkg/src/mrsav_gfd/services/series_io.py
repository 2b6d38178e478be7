"""
CSV tables with '#'-prefixed metadata lines.

Every table written by the harness has the same shape: zero or more
``# key: value`` lines, one comma-separated header line, then numeric rows
formatted with 17 significant digits so values survive a round trip.
"""
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, TextIO, Tuple

import numpy as np

from mrsav_gfd.errors import SchemaError
from mrsav_gfd.models.time_series import TimeSeries

SERIES_COLUMNS = [
    "step",
    "t",
    "enstrophy",
    "palinstrophy",
    "vorticity_l2",
    "vorticity_grad_l2",
    "q",
    "q_deviation",
    "max_abs_vorticity",
    "mode_0_1_real",
]


def format_value(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


class CsvTableWriter:
    """
    Streaming writer for one table.

    With ``append=True`` an existing file with the same header is extended
    instead of replaced.
    """

    def __init__(
        self, path: Path, columns: Sequence[str], metadata: Optional[Mapping[str, object]] = None,
        append: bool = False,
    ):
        self.path = Path(path)
        self.columns = list(columns)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if append and self.path.exists():
            _, existing, _ = read_table(self.path, allow_empty=True)
            if existing != self.columns:
                raise SchemaError(f"{self.path}: cannot append, header {existing} differs from {self.columns}")
            self._handle: TextIO = open(self.path, "a", newline="\n")
            return
        self._handle = open(self.path, "w", newline="\n")
        for key, value in (metadata or {}).items():
            self._handle.write(f"# {key}: {value}\n")
        self._handle.write(",".join(self.columns) + "\n")

    def write_row(self, values: Sequence) -> None:
        if len(values) != len(self.columns):
            raise SchemaError(f"{self.path}: row has {len(values)} values, header has {len(self.columns)}")
        self._handle.write(",".join(format_value(v) for v in values) + "\n")

    def flush(self) -> None:
        self._handle.flush()

    def close(self) -> None:
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self) -> "CsvTableWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def write_table(
    path: Path, columns: Sequence[str], rows: Sequence[Sequence], metadata: Optional[Mapping[str, object]] = None
) -> Path:
    with CsvTableWriter(path, columns, metadata) as writer:
        for row in rows:
            writer.write_row(row)
    return Path(path)


def read_table(path: Path, allow_empty: bool = False) -> Tuple[Dict[str, str], List[str], np.ndarray]:
    """
    Read a table written by CsvTableWriter.

    Args:
        path: CSV file
        allow_empty: Accept a header without rows

    Returns:
        Metadata, column names and a 2-D float array of rows

    Raises:
        SchemaError: No header, ragged or non-numeric rows, or no rows when rows are required
    """
    path = Path(path)
    metadata: Dict[str, str] = {}
    header: Optional[List[str]] = None
    body: List[str] = []
    with open(path) as f:
        for line in f:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                key, _, value = stripped[1:].partition(":")
                metadata[key.strip()] = value.strip()
            elif header is None:
                header = [name.strip() for name in stripped.split(",")]
            else:
                body.append(stripped)
    if header is None:
        raise SchemaError(f"{path}: missing header line")
    if not body:
        if allow_empty:
            return metadata, header, np.empty((0, len(header)))
        raise SchemaError(f"{path}: table has no rows")
    try:
        rows = np.loadtxt(body, delimiter=",", ndmin=2)
    except ValueError as error:
        raise SchemaError(f"{path}: malformed row ({error})") from error
    if rows.shape[1] != len(header):
        raise SchemaError(f"{path}: rows have {rows.shape[1]} values, header has {len(header)}")
    return metadata, header, rows

def truncate_rows(path: Path, column: str, last_value: float) -> int:
    """
    Drop rows whose ``column`` value exceeds ``last_value``, keeping metadata and header text.

    Args:
        path: CSV file written by CsvTableWriter
        column: Column compared against the limit
        last_value: Largest value kept

    Returns:
        Number of rows dropped
    """
    path = Path(path)
    _, header, _ = read_table(path, allow_empty=True)
    if column not in header:
        raise SchemaError(f"{path}: missing column {column!r} (have {', '.join(header)})")
    index = header.index(column)
    kept: List[str] = []
    dropped = 0
    seen_header = False
    with open(path) as f:
        for line in f:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                kept.append(line)
            elif not seen_header:
                seen_header = True
                kept.append(line)
            elif float(stripped.split(",")[index]) > last_value:
                dropped += 1
            else:
                kept.append(line)
    if dropped:
        path.write_text("".join(kept))
    return dropped


def read_series(path: Path, column: str, time_column: str = "t") -> TimeSeries:
    """
    Extract one column of a table as a TimeSeries.

    Args:
        path: CSV file
        column: Value column
        time_column: Column holding the sample times

    Returns:
        The series labelled with the column name
    """
    _, header, rows = read_table(path)
    for name in (time_column, column):
        if name not in header:
            raise SchemaError(f"{path}: missing column {name!r} (have {', '.join(header)})")
    try:
        return TimeSeries(times=rows[:, header.index(time_column)], values=rows[:, header.index(column)], label=column)
    except ValueError as error:
        raise SchemaError(f"{path}: {error}") from error
