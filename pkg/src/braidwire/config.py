"""Run configuration: TOML file values, overridden by command-line flags."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import AdmissibilityError, ParseError
from .gates import DEFAULT_MAX_WINDOW
from .ingest import DEFAULT_SPREAD_LIMIT

CONFIG_ENV = "BRAIDWIRE_CONFIG"
ALL_FORMATS = frozenset({"json", "qasm", "svg", "ascii"})


@dataclass(frozen=True)
class RunConfig:
    tickers: tuple[str, ...] | None = None
    max_window: int = DEFAULT_MAX_WINDOW
    spread_limit: float = DEFAULT_SPREAD_LIMIT
    output_dir: Path = Path("out")
    formats: frozenset[str] = field(default_factory=lambda: ALL_FORMATS)
    strands: int | None = None  # keep only the N lowest-priced strands

    def __post_init__(self):
        if self.max_window < 1:
            raise AdmissibilityError(f"max_window must be >= 1, got {self.max_window}")
        if self.spread_limit <= 0:
            raise AdmissibilityError("spread_limit must be positive")
        if self.tickers is not None and len(self.tickers) % 2:
            raise AdmissibilityError(f"ticker count {len(self.tickers)} is odd; anyons come in pairs")
        if self.strands is not None and (self.strands < 4 or self.strands % 2):
            raise AdmissibilityError(f"strand count must be even and >= 4, got {self.strands}")
        unknown = set(self.formats) - ALL_FORMATS
        if unknown:
            raise AdmissibilityError(f"unknown formats: {', '.join(sorted(unknown))}")

    def merged(self, **overrides: Any) -> RunConfig:
        """Copy with every non-None override applied."""
        values = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **values)


def parse_formats(text: str | None) -> frozenset[str] | None:
    if text is None:
        return None
    return frozenset(p.strip() for p in text.split(",") if p.strip())


def parse_tickers(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    return tuple(p.strip() for p in text.split(",") if p.strip())


def config_from_mapping(data: Mapping[str, Any]) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise AdmissibilityError(f"unknown config keys: {', '.join(sorted(unknown))}")
    values = dict(data)
    if "tickers" in values:
        t = values["tickers"]
        values["tickers"] = parse_tickers(t) if isinstance(t, str) else tuple(t)
    if "formats" in values:
        f = values["formats"]
        values["formats"] = parse_formats(f) if isinstance(f, str) else frozenset(f)
    if "output_dir" in values:
        values["output_dir"] = Path(values["output_dir"])
    return RunConfig(**values)


def load_config(path: str | os.PathLike | None = None) -> RunConfig:
    """Read a TOML config; without a path, fall back to $BRAIDWIRE_CONFIG."""
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is None:
        return RunConfig()
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return config_from_mapping(data)
