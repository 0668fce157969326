"""Table serialization (CSV, JSON) and rendered figures for report paths.

All cell formatting is deterministic: floats use shortest round-trip
repr, rationals stay as integer pairs, booleans serialize lowercase.
Figures are rendered with the Agg backend straight to files next to the
delimited output.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def format_cell(value) -> str:
    """Deterministic text form of one table cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, columns: Sequence[str], rows: Sequence[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(cell) for cell in row])


def write_json(path: Path, columns: Sequence[str], rows: Sequence[Sequence],
               metadata: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {
        "metadata": metadata,
        "columns": list(columns),
        "rows": [[format_cell(cell) for cell in row] for row in rows],
    }
    with open(path, "w") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")


def csv_text(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(cell) for cell in row))
    return "\n".join(lines)


def render_deviation_figure(path: Path, ns: Sequence[int],
                            deviations: Sequence[float], title: str) -> bool:
    """Semilog plot of |ratio - 1| against n; skips nonpositive points.

    Returns False when nothing is plottable (all deviations zero or
    nonfinite), in which case no file is written.
    """
    points = [(n, d) for n, d in zip(ns, deviations)
              if d > 0.0 and d != float("inf")]
    if not points:
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    figure, axes = plt.subplots(figsize=(6.0, 4.0))
    axes.semilogy([p[0] for p in points], [p[1] for p in points],
                  marker="o", linewidth=1.2)
    axes.set_xlabel("n")
    axes.set_ylabel("|ratio - 1|")
    axes.set_title(title)
    axes.grid(True, which="both", alpha=0.4)
    figure.tight_layout()
    figure.savefig(path, dpi=150)
    plt.close(figure)
    return True
