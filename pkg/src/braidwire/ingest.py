"""Loading, validating and aligning close-price time series."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from decimal import Decimal
from os import PathLike
from pathlib import Path
from typing import Mapping, Sequence

from .errors import AdmissibilityError, DuplicateDateError, MissingDataError, ParseError

__all__ = [
    "PriceFrame",
    "PortfolioSeries",
    "ValidationReport",
    "DEFAULT_SPREAD_LIMIT",
    "load_csv",
    "parse_csv_text",
    "write_csv",
    "dump_csv",
    "validate_portfolio",
]

DEFAULT_SPREAD_LIMIT = 1.5
MIN_TICKERS = 4

_PRICE_RE = re.compile(r"^[+-]?\d+(\.\d{1,4})?$")
# ISO-8601 day, optionally followed by a time part.
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}([T ][0-9:.+\-Z]+)?$")


@dataclass(frozen=True)
class PriceFrame:
    timestamp: str
    prices: Mapping[str, Decimal]

    def __post_init__(self):
        object.__setattr__(self, "prices", dict(self.prices))

    def __getitem__(self, ticker: str) -> Decimal:
        return self.prices[ticker]


@dataclass(frozen=True)
class PortfolioSeries:
    """Time-ordered frames over a fixed, ordered ticker list.

    Structural invariants (strictly increasing timestamps, every frame covering
    exactly the ticker set) are enforced here. Admissibility rules such as the
    even ticker count are reported by :func:`validate_portfolio`.
    """

    tickers: tuple[str, ...]
    frames: tuple[PriceFrame, ...]

    def __post_init__(self):
        object.__setattr__(self, "tickers", tuple(self.tickers))
        object.__setattr__(self, "frames", tuple(self.frames))
        if len(set(self.tickers)) != len(self.tickers):
            raise ValueError("duplicate tickers")
        wanted = set(self.tickers)
        for prev, cur in zip(self.frames, self.frames[1:]):
            if not prev.timestamp < cur.timestamp:
                raise ValueError(
                    f"timestamps not strictly increasing: {prev.timestamp!r} then {cur.timestamp!r}"
                )
        for frame in self.frames:
            if set(frame.prices) != wanted:
                raise ValueError(f"frame {frame.timestamp} does not cover exactly {self.tickers}")

    def __len__(self):
        return len(self.frames)

    def select(self, tickers: Sequence[str]) -> PortfolioSeries:
        missing = [t for t in tickers if t not in self.tickers]
        if missing:
            raise AdmissibilityError(f"unknown tickers: {', '.join(missing)}")
        return PortfolioSeries(
            tuple(tickers),
            tuple(PriceFrame(f.timestamp, {t: f.prices[t] for t in tickers}) for f in self.frames),
        )

    def strand_prefix(self, count: int) -> PortfolioSeries:
        """Keep the ``count`` lowest-priced tickers of the first frame.

        Ties are broken by ticker name, as in the initial rank order.
        """
        if not 1 <= count <= len(self.tickers):
            raise AdmissibilityError(f"strand prefix {count} out of range 1..{len(self.tickers)}")
        if not self.frames:
            return self.select(self.tickers[:count])
        first = self.frames[0]
        ranked = sorted(self.tickers, key=lambda t: (first.prices[t], t))
        return self.select(ranked[:count])


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = field(default_factory=tuple)
    warnings: tuple[str, ...] = field(default_factory=tuple)
    price_spread_ratio: float | None = None

    @property
    def ok(self) -> bool:
        return not self.errors


def _parse_price(text: str, line: int, ticker: str) -> Decimal:
    if not _PRICE_RE.match(text):
        raise ParseError(f"invalid price {text!r} for {ticker}", line)
    return Decimal(text)


def parse_csv_text(
    text: str,
    tickers: Sequence[str] | None = None,
    *,
    check_even: bool = True,
    source: str = "<string>",
) -> PortfolioSeries:
    """Parse CSV text; see :func:`load_csv`."""
    if text.startswith("﻿"):
        text = text[1:]
    rows = list(csv.reader(io.StringIO(text, newline="")))
    # csv.reader yields [] for blank lines; keep line numbers aligned with the file
    numbered = [(n, row) for n, row in enumerate(rows, start=1) if row and any(c.strip() for c in row)]
    if not numbered:
        raise ParseError(f"{source}: empty file", 1)
    header_line, header = numbered[0]
    header = [h.strip() for h in header]
    if header[0].lower() != "date":
        raise ParseError("header must start with 'date'", header_line)
    columns = header[1:]
    if not columns or any(not c for c in columns):
        raise ParseError("header has empty ticker names", header_line)
    if len(set(columns)) != len(columns):
        raise ParseError("duplicate ticker in header", header_line)

    if tickers is None:
        selected = list(columns)
    else:
        selected = list(tickers)
        unknown = [t for t in selected if t not in columns]
        if unknown:
            raise AdmissibilityError(f"tickers not in file: {', '.join(unknown)}")
        if len(set(selected)) != len(selected):
            raise AdmissibilityError("duplicate ticker in selection")
    index = {t: columns.index(t) + 1 for t in selected}

    by_date: dict[str, tuple[int, PriceFrame]] = {}
    for line, row in numbered[1:]:
        if len(row) != len(header):
            if len(row) < len(header):
                raise MissingDataError(f"expected {len(header)} cells, found {len(row)}", line)
            raise ParseError(f"expected {len(header)} cells, found {len(row)}", line)
        date = row[0].strip()
        if not _DATE_RE.match(date):
            raise ParseError(f"invalid date {date!r}", line)
        prices = {}
        for t in selected:
            cell = row[index[t]].strip()
            if cell == "":
                raise MissingDataError(f"missing price for {t} on {date}", line)
            prices[t] = _parse_price(cell, line, t)
        if date in by_date:
            raise DuplicateDateError(
                f"duplicate date {date} (first seen on line {by_date[date][0]})", line
            )
        by_date[date] = (line, PriceFrame(date, prices))

    frames = [by_date[d][1] for d in sorted(by_date)]
    if check_even and len(selected) % 2:
        raise AdmissibilityError(f"ticker count {len(selected)} is odd; anyons come in pairs")
    return PortfolioSeries(tuple(selected), tuple(frames))


def load_csv(
    path: str | PathLike,
    tickers: Sequence[str] | None = None,
    *,
    check_even: bool = True,
) -> PortfolioSeries:
    """Load a ``date,TICKER1,...`` CSV of close prices.

    Rows may come in any order; frames are returned sorted by date. Prices are
    parsed as exact decimals with a decimal point (no locale handling). Missing
    cells are rejected, never imputed. With ``check_even`` an odd ticker count
    after subsetting raises :class:`AdmissibilityError`.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8") from exc
    return parse_csv_text(text, tickers, check_even=check_even, source=str(path))


def dump_csv(series: PortfolioSeries) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["date", *series.tickers])
    for frame in series.frames:
        writer.writerow([frame.timestamp, *(str(frame.prices[t]) for t in series.tickers)])
    return out.getvalue()


def write_csv(series: PortfolioSeries, path: str | PathLike) -> None:
    Path(path).write_text(dump_csv(series), encoding="utf-8", newline="\n")


def validate_portfolio(
    series: PortfolioSeries, spread_limit: float = DEFAULT_SPREAD_LIMIT
) -> ValidationReport:
    errors = []
    warnings = []
    n = len(series.tickers)
    if n % 2:
        errors.append(f"ticker count {n} is odd; anyons come in pairs")
    if n < MIN_TICKERS:
        errors.append(f"ticker count {n} is below the minimum of {MIN_TICKERS}")
    if not series.frames:
        errors.append("series has no frames")
    for frame in series.frames:
        for t in series.tickers:
            if frame.prices[t] <= 0:
                errors.append(f"nonpositive price {frame.prices[t]} for {t} on {frame.timestamp}")

    ratio = None
    if series.frames and series.tickers:
        first = [series.frames[0].prices[t] for t in series.tickers]
        lo, hi = min(first), max(first)
        if lo > 0:
            ratio = float(hi / lo)
            if ratio > spread_limit:
                warnings.append(
                    f"price spread {ratio:.3f} exceeds {spread_limit}; crossings will be rare"
                )
    return ValidationReport(tuple(errors), tuple(warnings), ratio)
