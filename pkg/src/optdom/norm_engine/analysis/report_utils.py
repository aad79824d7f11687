import math
from typing import Any, List, Optional, Sequence, TextIO

from optdom.norm_engine.entities.norm_estimate import NormEstimate


def write_line(file: TextIO, text: str = "") -> None:
    """Write a line to the provided file-like object and append a newline."""
    file.write(text + "\n")


def write_header(file: TextIO, title: str, level: int = 2) -> None:
    write_line(file, f"{'#' * level} {title}")
    write_line(file)


def write_key_value(file: TextIO, key: str, value: Any) -> None:
    write_line(file, f"- **{key}**: {value}")


def format_float(value: Optional[float], digits: int = 10) -> str:
    """Compact float, 'N/A' when None, 'inf' when not finite."""
    if value is None:
        return "N/A"
    if not math.isfinite(value):
        return "inf"
    return f"{value:.{digits}g}"


def format_bracket(estimate: NormEstimate) -> str:
    if estimate.is_exact:
        return format_float(estimate.value)
    return f"[{format_float(estimate.lower)}, {format_float(estimate.upper)}]"


def write_table(file: TextIO, header: Sequence[str], rows: List[List[str]]) -> None:
    """Markdown table padded to the widest cell of each column."""
    col_widths: List[int] = []
    for col_idx in range(len(header)):
        max_len_rows = max(len(row[col_idx]) for row in rows) if rows else 0
        col_widths.append(max(len(header[col_idx]), max_len_rows, 3))

    def format_row(cols: Sequence[str]) -> str:
        return "| " + " | ".join(f"{col:<{col_widths[idx]}}" for idx, col in enumerate(cols)) + " |"

    write_line(file, format_row(header))
    write_line(file, "| " + " | ".join("-" * w for w in col_widths) + " |")
    for row in rows:
        write_line(file, format_row(row))
    write_line(file)
