"""Traffic-matrix analytics with heavy-tailed statistics.

Build sparse traffic matrices from raw records, extract network quantities
(fan-in, fan-out, packet volumes), expose their tail structure through
power-of-2 binning and empirical CCDFs, and contrast power-law fits with
interval-censored maximum-likelihood fits of light-tailed families.
"""

from .binning import (BinCount, EmpiricalCCDF, LogBinnedHistogram,
                      bin_representatives, ccdf, log_bin)
from .errors import (AnalysisError, DomainError, InputError,
                     InsufficientDataError, InvariantError,
                     MalformedRecordError, PlotError, RowError, SchemaError,
                     TailscopeError)
from .fitting import (CensoredBins, CensoredFitResult, FAMILY_NAMES, ModelScore,
                      PowerLawFit, TailDiagnostic, censored_log_likelihood,
                      compare_models, fit_all_families, fit_censored,
                      fit_power_law, heavy_tail_diagnostic, power_law_bin_loglik)
from .ingest import (CsvSchema, DEFAULT_SCHEMA, ParseResult, TrafficRecord,
                     WindowSpec, parse_csv, records_to_csv, window)
from .matrix import (CountVector, TrafficMatrix, build_matrix, col_sum,
                     row_sum, transpose, zero_norm)
from .quantities import (QuantityReport, ScalarSummary, brightness_rank,
                         dest_fanin, dest_packets, quantity_report, scalars,
                         source_fanout, source_packets)
from .report import AnalysisReport, analyze_matrix, emit_json, run_pipeline
from .svgplot import PLOT_KINDS, emit_plot
from .synth import SplitMix64, SynthSpec, ZipfSampler, generate, mix64, sample_zipf_values

__version__ = "0.1.0"

__all__ = [
    "AnalysisError", "AnalysisReport", "BinCount", "CensoredBins",
    "CensoredFitResult", "CountVector", "CsvSchema", "DEFAULT_SCHEMA",
    "DomainError", "EmpiricalCCDF", "FAMILY_NAMES", "InputError",
    "InsufficientDataError", "InvariantError", "LogBinnedHistogram",
    "MalformedRecordError", "ModelScore", "ParseResult", "PLOT_KINDS",
    "PlotError", "PowerLawFit", "QuantityReport", "RowError", "ScalarSummary",
    "SchemaError", "SplitMix64", "SynthSpec", "TailDiagnostic",
    "TailscopeError", "TrafficMatrix", "TrafficRecord", "WindowSpec",
    "ZipfSampler", "analyze_matrix", "bin_representatives", "brightness_rank",
    "build_matrix", "ccdf", "censored_log_likelihood", "col_sum",
    "compare_models", "dest_fanin", "dest_packets", "emit_json", "emit_plot",
    "fit_all_families", "fit_censored", "fit_power_law", "generate",
    "heavy_tail_diagnostic", "log_bin", "mix64", "parse_csv",
    "power_law_bin_loglik", "quantity_report", "records_to_csv", "row_sum",
    "run_pipeline", "sample_zipf_values", "scalars", "source_fanout",
    "source_packets", "transpose", "window", "zero_norm",
]
