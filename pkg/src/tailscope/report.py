"""End-to-end pipeline and machine-readable report emission.

`run_pipeline` chains ingest, windowing, quantity extraction, binning, the
power-law and censored fits, model comparison and the tail diagnostic into
a single `AnalysisReport`.  `emit_json` serializes a report with a fixed
field order and floats rounded to 12 significant digits, so identical
inputs and options produce byte-identical output regardless of thread
count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union

from .binning import EmpiricalCCDF, LogBinnedHistogram, bin_representatives, ccdf, log_bin
from .errors import InsufficientDataError
from .fitting import (CensoredBins, CensoredFitResult, ModelScore, PowerLawFit,
                      TailDiagnostic, compare_models, fit_all_families,
                      fit_power_law, get_family, heavy_tail_diagnostic)
from .ingest import CsvSchema, DEFAULT_SCHEMA, ParseResult, WindowSpec, parse_csv, window
from .matrix import TrafficMatrix
from .quantities import QuantityReport, ScalarSummary, quantity_report, scalars

SCHEMA_TAG = "tailscope/1"

QUANTITY_NAMES = ("source_fanout", "dest_fanin", "source_packets", "dest_packets")


@dataclass(frozen=True)
class AnalysisReport:
    input_path: str
    rows: int
    schema: dict
    skipped_rows: tuple[tuple[int, str], ...]
    window_size: int | None
    window_scalars: tuple[ScalarSummary, ...]
    quantities: QuantityReport
    quantity: str
    histograms: dict[str, LogBinnedHistogram]
    ccdf_points: EmpiricalCCDF | None
    power_law: PowerLawFit | None
    censored_fits: tuple[CensoredFitResult, ...]
    ranking: tuple[ModelScore, ...]
    diagnostic: TailDiagnostic | None
    options: dict
    warnings: tuple[str, ...]


def analyze_matrix(a: TrafficMatrix, *, quantity: str = "dest_fanin",
                   representative: str = "lower", density: bool = False,
                   exclude_top: int = 0, tail_fraction: float = 0.5,
                   threshold_m: float = 10.0, workers: int = 1):
    """Quantities, histograms, fits and diagnostic for one matrix.

    Returns (quantities, histograms, ccdf, power_law, fits, ranking,
    diagnostic, warnings).  Fitting steps that cannot run on degenerate
    data are skipped with a warning instead of failing the pipeline.
    """
    if quantity not in QUANTITY_NAMES:
        raise ValueError(f"unknown quantity {quantity!r}, expected one of {QUANTITY_NAMES}")
    q = quantity_report(a)
    vectors = {
        "source_fanout": q.source_fanout,
        "dest_fanin": q.dest_fanin,
        "source_packets": q.source_packets,
        "dest_packets": q.dest_packets,
    }
    histograms = {name: log_bin(vec.values) for name, vec in vectors.items()}
    warnings: list[str] = []
    values = vectors[quantity].values

    curve = power_law = None
    fits: tuple[CensoredFitResult, ...] = ()
    ranking: tuple[ModelScore, ...] = ()
    diagnostic = None
    if values:
        curve = ccdf(values)
        hist = histograms[quantity]
        points = bin_representatives(hist, representative=representative, density=density)
        try:
            power_law = fit_power_law(points, exclude_top=exclude_top)
        except InsufficientDataError as err:
            warnings.append(f"power-law fit skipped: {err}")
        bins = CensoredBins.from_histogram(hist)
        if bins.total() >= 2:
            fits = fit_all_families(bins, workers=workers)
            ranking = compare_models(fits, power_law, bins,
                                     representative=representative, density=density)
        else:
            warnings.append("censored fits skipped: total count below 2")
        diagnostic = heavy_tail_diagnostic(curve, tail_fraction=tail_fraction,
                                           threshold_m=threshold_m)
    else:
        warnings.append("matrix is empty: no quantities to fit")
    return q, histograms, curve, power_law, fits, ranking, diagnostic, tuple(warnings)


def run_pipeline(csv_path: Union[str, Path, IO[str]], *, schema: CsvSchema = DEFAULT_SCHEMA,
                 skip_bad_rows: bool = False, window_size: int | None = None,
                 quantity: str = "dest_fanin", representative: str = "lower",
                 density: bool = False, exclude_top: int = 0,
                 tail_fraction: float = 0.5, threshold_m: float = 10.0,
                 workers: int = 1) -> AnalysisReport:
    """Parse a traffic CSV and run the full analysis.

    With `window_size` the record stream is additionally cut into fixed-size
    blocks whose scalar summaries are reported per window; the deep analysis
    (binning, fits, diagnostic) always runs on the whole-file aggregate
    matrix.
    """
    parsed: ParseResult = parse_csv(csv_path, schema=schema, skip_bad_rows=skip_bad_rows)
    records = parsed.records
    window_scalars: tuple[ScalarSummary, ...] = ()
    if window_size is not None:
        per_window = window(records, WindowSpec.every(window_size))
        window_scalars = tuple(scalars(m) for m in per_window)
    aggregate = window(records, WindowSpec.whole_file())[0]
    (q, histograms, curve, power_law, fits, ranking, diagnostic,
     warnings) = analyze_matrix(
        aggregate, quantity=quantity, representative=representative, density=density,
        exclude_top=exclude_top, tail_fraction=tail_fraction, threshold_m=threshold_m,
        workers=workers)
    options = {
        "window": window_size,
        "quantity": quantity,
        "representative": representative,
        "density": density,
        "exclude_top": exclude_top,
        "tail_fraction": tail_fraction,
        "threshold_M": threshold_m,
    }
    path = csv_path if isinstance(csv_path, (str, Path)) else getattr(csv_path, "name", "<stream>")
    return AnalysisReport(
        input_path=str(path),
        rows=len(records),
        schema=schema.describe(),
        skipped_rows=parsed.skipped,
        window_size=window_size,
        window_scalars=window_scalars,
        quantities=q,
        quantity=quantity,
        histograms=histograms,
        ccdf_points=curve,
        power_law=power_law,
        censored_fits=fits,
        ranking=ranking,
        diagnostic=diagnostic,
        options=options,
        warnings=warnings,
    )


# --- JSON serialization ------------------------------------------------------

def _round12(x: float) -> float:
    """Round to 12 significant digits; the JSON value round-trips exactly."""
    if x == 0.0 or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def histogram_jsonable(hist: LogBinnedHistogram) -> dict:
    return {"total": hist.total,
            "bins": [[b.lower, b.upper, b.count] for b in hist.bins]}


def ccdf_jsonable(c: EmpiricalCCDF) -> dict:
    return {"n": c.n, "points": [[_num(x), _round12(p)] for x, p in c.points]}


def power_law_jsonable(pl: PowerLawFit) -> dict:
    return {
        "slope_n": _round12(pl.slope_n),
        "intercept_log10k": _round12(pl.intercept_log10k),
        "r_squared": _round12(pl.r_squared),
        "points_used": pl.points_used,
        "excluded_top_bins": pl.excluded_top_bins,
    }


def censored_fit_jsonable(r: CensoredFitResult) -> dict:
    names = get_family(r.family).param_names
    return {
        "family": r.family,
        "params": {name: _round12(v) for name, v in zip(names, r.params)},
        "log_likelihood": _round12(r.log_likelihood),
        "aic": _round12(r.aic),
        "converged": r.converged,
        "iterations": r.iterations,
    }


def diagnostic_jsonable(d: TailDiagnostic) -> dict:
    return {
        "verdict": d.verdict,
        "mu_hat": _round12(d.mu_hat),
        "threshold_M": _round12(d.threshold_M),
        "tail_fraction": _round12(d.tail_fraction),
        "ratio_curve": [[_num(x), _round12(r)] for x, r in d.ratio_curve],
    }


def _num(x):
    if isinstance(x, float) and x.is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return _round12(x) if isinstance(x, float) else x


def report_jsonable(report: AnalysisReport) -> dict:
    """The report as plain JSON-ready data with a fixed key order."""
    return {
        "schema": SCHEMA_TAG,
        "kind": "analysis",
        "input": {
            "path": report.input_path,
            "rows": report.rows,
            "schema": report.schema,
            "skipped_rows": len(report.skipped_rows),
            "skipped_detail": [[line, msg] for line, msg in report.skipped_rows],
        },
        "options": report.options,
        "scalars": report.quantities.scalars.as_dict(),
        "window_scalars": [s.as_dict() for s in report.window_scalars],
        "quantity": report.quantity,
        "histograms": {name: histogram_jsonable(report.histograms[name])
                       for name in QUANTITY_NAMES},
        "ccdf": ccdf_jsonable(report.ccdf_points) if report.ccdf_points else None,
        "power_law": power_law_jsonable(report.power_law) if report.power_law else None,
        "censored_fits": [censored_fit_jsonable(r) for r in report.censored_fits],
        "ranking": [{"model": s.model, "aic": _round12(s.aic),
                     "log_likelihood": _round12(s.log_likelihood), "n_params": s.n_params}
                    for s in report.ranking],
        "tail_diagnostic": diagnostic_jsonable(report.diagnostic) if report.diagnostic else None,
        "warnings": list(report.warnings),
    }


def emit_json(report: AnalysisReport) -> bytes:
    """Serialize a report deterministically (UTF-8, trailing newline)."""
    doc = report_jsonable(report)
    return (json.dumps(doc, indent=2, allow_nan=False) + "\n").encode("utf-8")
