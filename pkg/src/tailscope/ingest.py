"""CSV ingestion and record windowing.

Traffic captures arrive as CSV with one row per observation.  The column
layout is configurable: by header name, by position for headerless files,
and with an implicit packet count of 1 for per-packet captures.  Parsing
is strict by default; `skip_bad_rows` downgrades row-level problems to
warnings that are surfaced alongside the parsed records.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, NamedTuple, Sequence, Union

from .errors import RowError, SchemaError
from .matrix import TrafficMatrix, build_matrix


class TrafficRecord(NamedTuple):
    """One observed traffic event."""

    time: int
    source: str
    destination: str
    packets: int


@dataclass(frozen=True)
class CsvSchema:
    """Column layout of a traffic CSV.

    Columns are header names when `has_header` is true, zero-based indices
    otherwise.  `col_packets=None` means per-packet rows (packets = 1).
    """

    col_time: Union[str, int] = "time"
    col_source: Union[str, int] = "source"
    col_dest: Union[str, int] = "destination"
    col_packets: Union[str, int, None] = "packets"
    has_header: bool = True
    delimiter: str = ","

    def describe(self) -> dict:
        return {
            "col_time": self.col_time,
            "col_source": self.col_source,
            "col_dest": self.col_dest,
            "col_packets": self.col_packets,
            "has_header": self.has_header,
            "delimiter": self.delimiter,
        }


DEFAULT_SCHEMA = CsvSchema()


@dataclass(frozen=True)
class ParseResult:
    records: tuple[TrafficRecord, ...]
    skipped: tuple[tuple[int, str], ...]  # (line, reason), only with skip_bad_rows


@dataclass(frozen=True)
class WindowSpec:
    """Record windowing rule: the whole file, or blocks of n records."""

    mode: str = "whole-file"  # "whole-file" | "fixed-record-count"
    n: int | None = None

    def __post_init__(self):
        if self.mode not in ("whole-file", "fixed-record-count"):
            raise ValueError(f"unknown window mode {self.mode!r}")
        if self.mode == "fixed-record-count" and (self.n is None or self.n < 1):
            raise ValueError("fixed-record-count windows need n >= 1")

    @classmethod
    def whole_file(cls) -> "WindowSpec":
        return cls()

    @classmethod
    def every(cls, n: int) -> "WindowSpec":
        return cls(mode="fixed-record-count", n=n)


def _resolve_columns(schema: CsvSchema, header: Sequence[str] | None) -> tuple[int, int, int, int | None]:
    """Map schema columns to row indices, validating against the header."""
    wanted = [("time", schema.col_time), ("source", schema.col_source),
              ("destination", schema.col_dest)]
    if schema.col_packets is not None:
        wanted.append(("packets", schema.col_packets))
    out = []
    for role, col in wanted:
        if isinstance(col, int):
            out.append(col)
        else:
            if header is None:
                raise SchemaError(
                    f"ingest: column for {role} given by name {col!r} but the file has no header")
            try:
                out.append(header.index(col))
            except ValueError:
                raise SchemaError(f"ingest: missing column {col!r} (needed for {role})") from None
    if schema.col_packets is None:
        out.append(None)
    return tuple(out)  # type: ignore[return-value]


def _parse_row(row: Sequence[str], line: int,
               idx: tuple[int, int, int, int | None]) -> TrafficRecord:
    it, isrc, idst, ipkt = idx
    needed = max(v for v in idx if v is not None)
    if len(row) <= needed:
        raise RowError(line, f"expected at least {needed + 1} fields, got {len(row)}")
    try:
        t = int(row[it])
    except ValueError:
        raise RowError(line, f"non-integer time field {row[it]!r}") from None
    if t < 0:
        raise RowError(line, f"negative time {t}")
    src = row[isrc]
    dst = row[idst]
    if not src:
        raise RowError(line, "empty source id")
    if not dst:
        raise RowError(line, "empty destination id")
    if ipkt is None:
        pkts = 1
    else:
        try:
            pkts = int(row[ipkt])
        except ValueError:
            raise RowError(line, f"non-integer packets field {row[ipkt]!r}") from None
        if pkts < 1:
            raise RowError(line, f"packet count {pkts} is below 1")
    return TrafficRecord(t, src, dst, pkts)


def parse_csv(source: Union[str, Path, IO[str]], schema: CsvSchema = DEFAULT_SCHEMA,
              skip_bad_rows: bool = False) -> ParseResult:
    """Parse a traffic CSV into records, in file order.

    `source` may be a path or an open text stream (UTF-8).  Schema errors
    always raise; row errors raise unless `skip_bad_rows` is set, in which
    case the offending lines are reported in `ParseResult.skipped`.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return parse_csv(fh, schema, skip_bad_rows)
    reader = csv.reader(source, delimiter=schema.delimiter)
    header = None
    if schema.has_header:
        header = next(reader, None)
        if header is None:
            raise SchemaError("ingest: file is empty, expected a header row")
    idx = _resolve_columns(schema, header)
    records: list[TrafficRecord] = []
    skipped: list[tuple[int, str]] = []
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        try:
            records.append(_parse_row(row, line, idx))
        except RowError as err:
            if not skip_bad_rows:
                raise
            skipped.append((err.line, str(err)))
    return ParseResult(tuple(records), tuple(skipped))


def window(records: Sequence[TrafficRecord], spec: WindowSpec) -> list[TrafficMatrix]:
    """Partition records into consecutive windows and build one matrix each.

    Whole-file mode gives exactly one matrix.  Fixed-record-count mode gives
    ceil(len/n) matrices; the last block may be short.  Every record lands in
    exactly one window.
    """
    if spec.mode == "whole-file":
        blocks: Iterable[Sequence[TrafficRecord]] = [records]
    else:
        n = spec.n
        blocks = (records[i:i + n] for i in range(0, len(records), n))
    return [build_matrix((r.source, r.destination, r.packets) for r in block)
            for block in blocks]


def records_to_csv(records: Iterable[TrafficRecord], include_header: bool = True) -> str:
    """Render records in the default schema (time,source,destination,packets)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if include_header:
        writer.writerow(["time", "source", "destination", "packets"])
    for r in records:
        writer.writerow([r.time, r.source, r.destination, r.packets])
    return buf.getvalue()
