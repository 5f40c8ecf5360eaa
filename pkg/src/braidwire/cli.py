"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 validation or usage error,
3 I/O or parse error.
"""

from __future__ import annotations

import functools
import os
import sys
import tempfile
from pathlib import Path

import click

from .braid import BraidWord, braid_word, free_reduce
from .config import RunConfig, load_config, parse_formats, parse_tickers
from .emit import (
    circuit_document,
    emit_qasm,
    render_braid_ascii,
    render_braid_svg,
    render_circuit_ascii,
    render_circuit_svg,
)
from .errors import AdmissibilityError, BraidwireError, EmitError, ParseError, UnknownGateError
from .gates import enumerate_realizations, find_gate, recognize
from .ingest import PortfolioSeries, load_csv, validate_portfolio
from .rep import SUPPORTED_STRANDS, ising_rep
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_PARSE = 3

# swapped out by tests to inject a corrupted representation
rep_factory = ising_rep


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError as exc:
            _fail(str(exc), EXIT_PARSE)
        except (AdmissibilityError, UnknownGateError, EmitError) as exc:
            _fail(str(exc), EXIT_USAGE)
        except BraidwireError as exc:
            _fail(str(exc), EXIT_USAGE)

    return wrapper


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_options(fn):
    fn = click.option("--tickers", help="Comma-separated tickers to select, e.g. A,B,C,D.")(fn)
    fn = click.option("--strands", type=int, help="Keep only the N lowest-priced strands of the first day.")(fn)
    fn = click.option("--spread-limit", type=float, help="Warn when max/min first-day price exceeds this.")(fn)
    fn = click.option("--out", "output_dir", type=click.Path(file_okay=False, path_type=Path),
                      help="Output directory.")(fn)
    fn = click.option("--format", "formats", help="Comma-separated subset of json,qasm,svg,ascii.")(fn)
    return fn


def _config(ctx, **flags) -> RunConfig:
    base: RunConfig = ctx.obj["config"]
    return base.merged(
        tickers=parse_tickers(flags.get("tickers")),
        strands=flags.get("strands"),
        spread_limit=flags.get("spread_limit"),
        output_dir=flags.get("output_dir"),
        formats=parse_formats(flags.get("formats")),
        max_window=flags.get("max_window"),
    )


def _load_series(csv_path: Path, cfg: RunConfig) -> PortfolioSeries:
    series = load_csv(csv_path, cfg.tickers, check_even=cfg.strands is None)
    if cfg.strands is not None:
        series = series.strand_prefix(cfg.strands)
    report = validate_portfolio(series, cfg.spread_limit)
    for w in report.warnings:
        click.echo(f"warning: {w}", err=True)
    if report.errors:
        raise AdmissibilityError(report.errors)
    return series


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False),
              help="TOML config file (default: $BRAIDWIRE_CONFIG).")
@click.pass_context
@handle_errors
def main(ctx, config_path):
    """Braid words, Ising-anyon gates and circuits from stock price series."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_path)


@main.command()
@click.argument("csv_path", type=click.Path(path_type=Path))
@run_options
@click.pass_context
@handle_errors
def validate(ctx, csv_path, **flags):
    """Check a price CSV against the portfolio rules."""
    cfg = _config(ctx, **flags)
    series = load_csv(csv_path, cfg.tickers, check_even=False)
    if cfg.strands is not None:
        series = series.strand_prefix(cfg.strands)
    report = validate_portfolio(series, cfg.spread_limit)
    click.echo(f"tickers: {','.join(series.tickers)}")
    click.echo(f"frames: {len(series.frames)}")
    if report.price_spread_ratio is not None:
        click.echo(f"price spread ratio: {report.price_spread_ratio:.4f}")
    for w in report.warnings:
        click.echo(f"warning: {w}")
    for e in report.errors:
        click.echo(f"error: {e}")
    sys.exit(EXIT_USAGE if report.errors else EXIT_OK)


@main.command()
@click.argument("csv_path", type=click.Path(path_type=Path))
@run_options
@click.pass_context
@handle_errors
def braid(ctx, csv_path, **flags):
    """Extract the braid word of a price CSV."""
    cfg = _config(ctx, **flags)
    series = _load_series(csv_path, cfg)
    word = braid_word(series)
    stem = csv_path.stem
    out = cfg.output_dir
    if "json" in cfg.formats:
        write_atomic(out / f"{stem}.braid.json", word.to_json())
    if "svg" in cfg.formats:
        write_atomic(out / f"{stem}.braid.svg", render_braid_svg(word))
    if "ascii" in cfg.formats:
        write_atomic(out / f"{stem}.braid.txt", render_braid_ascii(word))
    click.echo(f"strands: {word.strands}")
    click.echo(f"letters: {len(word)}")
    click.echo(f"word: {word.text() or '(empty)'}")


def _load_word(path: Path, cfg: RunConfig) -> BraidWord:
    if path.suffix.lower() == ".json":
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"{path}: {exc.strerror or exc}") from exc
        return BraidWord.from_json(text)
    return braid_word(_load_series(path, cfg))


@main.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@run_options
@click.option("--max-window", type=int, help="Longest braid window tried per gate (default 6).")
@click.pass_context
@handle_errors
def circuit(ctx, input_path, **flags):
    """Recognize gates in a price CSV or braid-word JSON and emit the circuit."""
    cfg = _config(ctx, **flags)
    word = _load_word(input_path, cfg)
    if word.strands not in SUPPORTED_STRANDS:
        raise AdmissibilityError(
            f"{word.strands} strands unsupported; gate recognition needs one of {SUPPORTED_STRANDS}"
        )
    rep = ising_rep(word.strands)
    reduced = free_reduce(word)
    rc = recognize(reduced, rep, max_window=cfg.max_window)
    doc = circuit_document(rc)
    qasm = emit_qasm(doc)
    stem = input_path.name.split(".")[0]
    out = cfg.output_dir
    if "json" in cfg.formats:
        write_atomic(out / f"{stem}.braid.json", word.to_json())
        write_atomic(out / f"{stem}.recognition.json", rc.to_json())
    if "qasm" in cfg.formats:
        write_atomic(out / f"{stem}.qasm", qasm)
    if "svg" in cfg.formats:
        write_atomic(out / f"{stem}.braid.svg", render_braid_svg(reduced, circuit=rc))
        write_atomic(out / f"{stem}.circuit.svg", render_circuit_svg(doc))
    if "ascii" in cfg.formats:
        write_atomic(out / f"{stem}.braid.txt", render_braid_ascii(reduced))
        write_atomic(out / f"{stem}.circuit.txt", render_circuit_ascii(doc))
    click.echo(f"strands: {word.strands}  qubits: {rc.qubits}")
    click.echo(f"letters: {len(word)}  reduced: {len(reduced)}")
    click.echo(f"gates: {' '.join(rc.labels) or '(none)'}")
    click.echo(f"residue letters: {sum(len(r.letters) for r in doc.residues)}")


@main.command()
@handle_errors
def verify():
    """Check generator tables, braid relations and the gate identities."""
    report = run_verification(rep_factory)
    for line in report.lines():
        click.echo(line)
    failures = report.hard_failures
    hard = [r for r in report.results if r.kind == "hard"]
    info = [r for r in report.results if r.kind != "hard"]
    click.echo(f"hard checks: {len(hard) - len(failures)}/{len(hard)} passed; "
               f"informational: {sum(r.passed for r in info)}/{len(info)} passed")
    sys.exit(EXIT_VERIFY if failures else EXIT_OK)


@main.command()
@click.argument("gate_name")
@click.option("--strands", type=click.Choice([str(n) for n in SUPPORTED_STRANDS]), default="4",
              show_default=True)
@click.option("--max-len", type=click.IntRange(1, 8), default=3, show_default=True)
@handle_errors
def search(gate_name, strands, max_len):
    """List every braid word up to --max-len that realizes GATE_NAME."""
    rep = ising_rep(int(strands))
    gate = find_gate(gate_name, rep.qubits)
    words = enumerate_realizations(gate, rep, max_len)
    click.echo(f"count: {len(words)}")
    for w in words:
        click.echo(w.text())


if __name__ == "__main__":
    main()
