"""Command-line interface.

Subcommands cover the pipeline stages individually (`ingest`, `quantities`,
`bin`, `fit`, `diagnose`, `plot`, `synth`) plus `run` for the whole thing.
All JSON output carries the versioned schema tag.  Exit codes: 0 success,
1 input error, 2 fit/diagnostic/plot failure, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .binning import bin_representatives
from .errors import AnalysisError, InputError, InvariantError, TailscopeError
from .ingest import CsvSchema, parse_csv, records_to_csv
from .quantities import brightness_rank
from .report import (SCHEMA_TAG, analyze_matrix, emit_json, run_pipeline,
                     censored_fit_jsonable, ccdf_jsonable, diagnostic_jsonable,
                     histogram_jsonable, power_law_jsonable, report_jsonable, _round12)
from .svgplot import PLOT_KINDS, emit_plot
from .synth import SynthSpec, generate

QUANTITY_CHOICES = {
    "fanout": "source_fanout",
    "fanin": "dest_fanin",
    "source-packets": "source_packets",
    "dest-packets": "dest_packets",
}


def _schema_from_args(args) -> CsvSchema:
    # headerless files fall back to positional columns when the name
    # defaults were not overridden
    def col(value, name_default, index_default):
        if isinstance(value, str) and value.isdigit():
            return int(value)
        if args.no_header and value == name_default:
            return index_default
        return value

    return CsvSchema(
        col_time=col(args.col_time, "time", 0),
        col_source=col(args.col_src, "source", 1),
        col_dest=col(args.col_dst, "destination", 2),
        col_packets=None if args.implicit_one else col(args.col_pkts, "packets", 3),
        has_header=not args.no_header,
    )


def _add_schema_flags(p: argparse.ArgumentParser):
    p.add_argument("--col-time", default="time", help="time column (name or index)")
    p.add_argument("--col-src", default="source", help="source column (name or index)")
    p.add_argument("--col-dst", default="destination", help="destination column (name or index)")
    p.add_argument("--col-pkts", default="packets", help="packets column (name or index)")
    p.add_argument("--no-header", action="store_true", help="file has no header row")
    p.add_argument("--implicit-one", action="store_true",
                   help="per-packet rows: no packets column, count 1 each")
    p.add_argument("--skip-bad-rows", action="store_true",
                   help="report bad rows as warnings instead of failing")


def _add_analysis_flags(p: argparse.ArgumentParser):
    p.add_argument("--quantity", choices=sorted(QUANTITY_CHOICES), default="fanin",
                   help="which per-entity quantity to analyze")
    p.add_argument("--window", type=int, default=None, metavar="N",
                   help="also summarize per N-record windows")
    p.add_argument("--exclude-top", type=int, default=0, metavar="B",
                   help="drop the B highest bins before the power-law fit")
    p.add_argument("--tail-fraction", type=float, default=0.5)
    p.add_argument("--threshold-M", type=float, default=10.0, dest="threshold_m")
    p.add_argument("--density", action="store_true",
                   help="fit and plot density (count / bin width) instead of raw counts")
    p.add_argument("--representative", choices=["lower", "geometric"], default="lower")
    p.add_argument("--workers", type=int, default=1,
                   help="thread count for the per-family fits")


def _pipeline_kwargs(args) -> dict:
    return dict(
        schema=_schema_from_args(args),
        skip_bad_rows=args.skip_bad_rows,
        window_size=args.window,
        quantity=QUANTITY_CHOICES[args.quantity],
        representative=args.representative,
        density=args.density,
        exclude_top=args.exclude_top,
        tail_fraction=args.tail_fraction,
        threshold_m=args.threshold_m,
        workers=args.workers,
    )


def _write(data: bytes, out: str | None):
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _emit_doc(kind: str, body: dict, out: str | None):
    doc = {"schema": SCHEMA_TAG, "kind": kind}
    doc.update(body)
    _write((json.dumps(doc, indent=2, allow_nan=False) + "\n").encode("utf-8"), out)


def _cmd_ingest(args) -> int:
    parsed = parse_csv(args.csv, schema=_schema_from_args(args),
                       skip_bad_rows=args.skip_bad_rows)
    total = sum(r.packets for r in parsed.records)
    _emit_doc("ingest", {
        "path": args.csv,
        "rows": len(parsed.records),
        "skipped_rows": len(parsed.skipped),
        "total_packets": total,
    }, args.out)
    return 0


def _cmd_quantities(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    q = report.quantities
    body = {
        "path": args.csv,
        "scalars": q.scalars.as_dict(),
        "window_scalars": [s.as_dict() for s in report.window_scalars],
    }
    if args.top:
        vec = {"fanout": q.source_fanout, "fanin": q.dest_fanin,
               "source-packets": q.source_packets,
               "dest-packets": q.dest_packets}[args.quantity]
        body["brightness"] = [[label, value]
                              for label, value in brightness_rank(vec, args.top)]
    _emit_doc("quantities", body, args.out)
    return 0


def _cmd_bin(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    hist = report.histograms[report.quantity]
    body = {
        "quantity": report.quantity,
        "histogram": histogram_jsonable(hist),
        "points": [[_round12(float(x)), _round12(float(y))]
                   for x, y in bin_representatives(hist, representative=args.representative,
                                                   density=args.density)],
        "ccdf": ccdf_jsonable(report.ccdf_points) if report.ccdf_points else None,
    }
    _emit_doc("binning", body, args.out)
    return 0


def _cmd_fit(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    if report.power_law is None and not report.censored_fits:
        raise AnalysisError("fit: " + "; ".join(report.warnings))
    body = {
        "quantity": report.quantity,
        "power_law": power_law_jsonable(report.power_law) if report.power_law else None,
        "censored_fits": [censored_fit_jsonable(r) for r in report.censored_fits],
        "ranking": [{"model": s.model, "aic": _round12(s.aic),
                     "log_likelihood": _round12(s.log_likelihood), "n_params": s.n_params}
                    for s in report.ranking],
        "warnings": list(report.warnings),
    }
    _emit_doc("fit", body, args.out)
    return 0


def _cmd_diagnose(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    if report.diagnostic is None:
        raise AnalysisError("diagnose: no data to diagnose")
    _emit_doc("diagnostic", {
        "quantity": report.quantity,
        "tail_diagnostic": diagnostic_jsonable(report.diagnostic),
    }, args.out)
    return 0


def _cmd_plot(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    _write(emit_plot(report, args.which), args.out)
    return 0


def _cmd_run(args) -> int:
    report = run_pipeline(args.csv, **_pipeline_kwargs(args))
    _write(emit_json(report), args.out)
    return 0


def _cmd_synth(args) -> int:
    spec = SynthSpec(seed=args.seed, n_records=args.records, n_sources=args.sources,
                     n_destinations=args.dests, model=args.model, alpha=args.alpha,
                     degree=args.degree)
    records = generate(spec)
    _write(records_to_csv(records).encode("utf-8"), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailscope",
        description="Traffic-matrix analytics: heavy-tailed structure of "
                    "network quantities, power-law and censored fits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def csv_cmd(name, fn, help_, analysis=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("csv", help="input traffic CSV")
        _add_schema_flags(p)
        if analysis:
            _add_analysis_flags(p)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.set_defaults(fn=fn)
        return p

    csv_cmd("ingest", _cmd_ingest, "parse a CSV and summarize it", analysis=False)
    pq = csv_cmd("quantities", _cmd_quantities, "network quantities and scalars")
    pq.add_argument("--top", type=int, default=0, metavar="K",
                    help="also list the K brightest entities for --quantity")
    csv_cmd("bin", _cmd_bin, "log-bin a quantity and compute its CCDF")
    csv_cmd("fit", _cmd_fit, "power-law and censored fits plus model ranking")
    csv_cmd("diagnose", _cmd_diagnose, "empirical heavy-tail diagnostic")
    pp = csv_cmd("plot", _cmd_plot, "emit an SVG plot")
    pp.add_argument("--which", choices=PLOT_KINDS, default="fanin-hist")
    csv_cmd("run", _cmd_run, "full pipeline, JSON report")

    ps = sub.add_parser("synth", help="generate deterministic synthetic traffic CSV")
    ps.add_argument("--seed", type=int, default=1)
    ps.add_argument("--records", type=int, default=10000)
    ps.add_argument("--sources", type=int, default=1000)
    ps.add_argument("--dests", type=int, default=1000)
    ps.add_argument("--model", choices=["zipf", "uniform", "fixed-degree"], default="zipf")
    ps.add_argument("--alpha", type=float, default=2.0)
    ps.add_argument("--degree", type=int, default=1)
    ps.add_argument("--out", default=None)
    ps.set_defaults(fn=_cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; our code 2 means fit
        # failure, so usage problems are reported as input errors instead
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except InputError as err:
        print(f"tailscope: {err}", file=sys.stderr)
        return 1
    except AnalysisError as err:
        print(f"tailscope: {err}", file=sys.stderr)
        return 2
    except InvariantError as err:
        print(f"tailscope: internal invariant violated: {err}", file=sys.stderr)
        return 3
    except FileNotFoundError as err:
        print(f"tailscope: {err}", file=sys.stderr)
        return 1
    except TailscopeError as err:
        print(f"tailscope: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
