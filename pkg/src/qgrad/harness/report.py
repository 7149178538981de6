"""CSV, JSON and text-table output for experiment summaries."""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from ..optimizer import RunResult
from .experiment import ExperimentSummary
from .reference import FULL_NAMES, METHODS, REFERENCE_TABLE, ReferenceRow

__all__ = [
    "CSV_COLUMNS",
    "FORMATS",
    "Comparison",
    "compare_to_reference",
    "emit",
    "render",
    "summary_from_json",
    "summary_to_json",
]

CSV_COLUMNS = ("seed", "evals_used", "best_f", "success", "iterations")
FORMATS = ("csv", "json", "table")
TABLE_HEADER = ("Function", "Method", "Best", "Median", "Worst", "F(x_best)", "Success")


def _fmt_count(value: Optional[int]) -> str:
    return "-" if value is None else f"{value:,}"


def _fmt_f(value: float) -> str:
    return f"{value:.3g}"


def _to_csv(summary: ExperimentSummary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in summary.per_run:
        writer.writerow([r.seed, r.evals_used, repr(r.best_f), int(r.success), r.iterations])
    # summary row: median evals over successes, best value, success ratio
    median = "" if summary.median is None else summary.median
    writer.writerow(
        ["summary", median, repr(summary.f_best_overall),
         f"{summary.success_count}/{summary.total_runs}", ""]
    )
    return buf.getvalue()


def summary_to_json(summary: ExperimentSummary) -> str:
    data = asdict(summary)
    data["median_convention"] = "lower-middle over successful runs"
    return json.dumps(data, indent=2)


def summary_from_json(text: str) -> ExperimentSummary:
    data = json.loads(text)
    data.pop("median_convention", None)
    runs = []
    for r in data.pop("per_run"):
        r["best_x"] = tuple(r["best_x"])
        runs.append(RunResult(**r))
    return ExperimentSummary(per_run=tuple(runs), **data)


def _table_rows(summary: ExperimentSummary, label: str = "this run"):
    name = FULL_NAMES.get(summary.function, summary.function or "?")
    return [(
        name,
        label,
        _fmt_count(summary.best),
        _fmt_count(summary.median),
        _fmt_count(summary.worst),
        _fmt_f(summary.f_best_overall),
        f"{summary.success_count}/{summary.total_runs}",
    )]


def _align(rows) -> str:
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for k, row in enumerate(rows):
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render(summary: ExperimentSummary, fmt: str) -> str:
    if fmt == "csv":
        return _to_csv(summary)
    if fmt == "json":
        return summary_to_json(summary) + "\n"
    if fmt == "table":
        algo = {"qgrad": "q-Gradient", "sd": "steepest descent"}.get(summary.algorithm, "this run")
        text = _align([TABLE_HEADER, *_table_rows(summary, algo)])
        return text + "Median over successful runs; lower middle for even counts.\n"
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def emit(summary: ExperimentSummary, fmt: str = "table", destination=None) -> None:
    """Write ``summary`` as ``fmt`` to a path, an open text file or stdout.

    CSV has one row per run with columns ``seed, evals_used, best_f,
    success, iterations`` and a final ``summary`` row holding the median
    evaluation count, the best value overall and the success ratio.
    """
    text = render(summary, fmt)
    if destination is None:
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        path = Path(destination)
        try:
            path.write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc


def _ratio(ours: Optional[int], theirs: Optional[int]) -> Optional[float]:
    if ours is None or theirs is None:
        return None
    return ours / theirs


@dataclass(frozen=True)
class Comparison:
    function: str
    ours: ExperimentSummary
    reference: dict

    def ratios(self, method: str = "q-Gradient") -> dict:
        row = self.reference[method]
        return {
            "best": _ratio(self.ours.best, row.best if row.median is not None else None),
            "median": _ratio(self.ours.median, row.median),
            "worst": _ratio(self.ours.worst, row.worst),
        }

    def render(self) -> str:
        name = FULL_NAMES[self.function]
        header = (*TABLE_HEADER, "Best/ref", "Median/ref", "Worst/ref")
        rows = [header]
        for method in METHODS:
            row: ReferenceRow = self.reference[method]
            rows.append((
                name, f"{method} (published)",
                _fmt_count(row.best), _fmt_count(row.median), _fmt_count(row.worst),
                _fmt_f(row.f_best), row.success, "", "", "",
            ))
        ratios = self.ratios()
        ours = _table_rows(self.ours, "q-Gradient (ours)" if self.ours.algorithm != "sd" else "steepest descent (ours)")[0]
        rows.append((*ours, *("-" if v is None else f"{v:.2f}" for v in ratios.values())))
        return _align(rows)


def compare_to_reference(summary: ExperimentSummary, reference=REFERENCE_TABLE, function: Optional[str] = None) -> Comparison:
    """Side-by-side view of ``summary`` against the published rows.

    Ratio columns divide our counts by the published q-gradient counts.
    Raises ``KeyError`` if the function has no published rows.
    """
    name = function or summary.function
    if name not in reference:
        raise KeyError(f"no reference rows for function {name!r}")
    return Comparison(name, summary, dict(reference[name]))
