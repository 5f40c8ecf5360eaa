from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidwire.errors import AdmissibilityError, DuplicateDateError, MissingDataError, ParseError
from braidwire.ingest import (
    PortfolioSeries,
    PriceFrame,
    dump_csv,
    load_csv,
    parse_csv_text,
    validate_portfolio,
    write_csv,
)

TABLE1_TICKERS = ["PG", "NKE", "HD", "UNH", "DIS", "AXP"]


def test_table1_loads_four_frames_but_seven_is_odd(table1_path):
    with pytest.raises(AdmissibilityError, match="odd"):
        load_csv(table1_path)
    series = load_csv(table1_path, check_even=False)
    assert len(series.frames) == 4
    assert len(series.tickers) == 7
    assert series.tickers[0] == "PG" and series.tickers[-1] == "MCD"


def test_table1_six_ticker_subset(table1_path):
    series = load_csv(table1_path, TABLE1_TICKERS)
    assert series.tickers == tuple(TABLE1_TICKERS)
    assert series.frames[0].timestamp == "2014-03-19"
    assert series.frames[0]["UNH"] == Decimal("79.96")


def test_strand_prefix_drops_highest(table1_path):
    series = load_csv(table1_path, check_even=False).strand_prefix(6)
    assert "MCD" not in series.tickers
    assert len(series.tickers) == 6


def test_unknown_ticker(table1_path):
    with pytest.raises(AdmissibilityError, match="ZZZ"):
        load_csv(table1_path, ["PG", "ZZZ", "HD", "UNH"])


def test_empty_file_is_a_parse_error(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    with pytest.raises(ParseError, match="line 1"):
        load_csv(p)


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_csv(tmp_path / "nope.csv")


def test_table3_spread_warning(fixtures_dir):
    series = load_csv(fixtures_dir / "table3_csco_v_mar19_24.csv")
    report = validate_portfolio(series, 1.5)
    assert report.warnings
    assert report.price_spread_ratio == pytest.approx(223.82 / 21.63)
    assert report.price_spread_ratio == pytest.approx(10.35, abs=0.005)


def test_close_prices_no_warning(table1_path):
    series = load_csv(table1_path, ["PG", "UNH", "DIS", "AXP"]).select(["PG", "UNH", "DIS", "AXP"])
    first = PortfolioSeries(series.tickers, series.frames[:1])
    report = validate_portfolio(first, 1.5)
    assert report.ok and not report.warnings
    assert report.price_spread_ratio == pytest.approx(90.73 / 78.78)
    assert report.price_spread_ratio == pytest.approx(1.152, abs=0.0005)


def test_identical_prices_single_frame():
    frame = PriceFrame("2014-01-02", {t: Decimal("50") for t in "ABCD"})
    report = validate_portfolio(PortfolioSeries(tuple("ABCD"), (frame,)))
    assert report.ok
    assert report.price_spread_ratio == 1.0


def test_validation_rules():
    frame = PriceFrame("2014-01-02", {"A": Decimal("1"), "B": Decimal("-2"), "C": Decimal("3")})
    report = validate_portfolio(PortfolioSeries(("A", "B", "C"), (frame,)))
    text = " ".join(report.errors)
    assert "odd" in text and "minimum" in text and "nonpositive" in text
    assert not validate_portfolio(PortfolioSeries(tuple("ABCD"), ())).ok


HEADER = "date,A,B,C,D\n"


@pytest.mark.parametrize(
    "body, exc, line",
    [
        ("2014-01-02,1,2,3\n", MissingDataError, 2),
        ("2014-01-02,1,2,,4\n", MissingDataError, 2),
        ("2014-01-02,1,2,3,4,5\n", ParseError, 2),
        ("2014-01-02,1,2,3,4\n2014-01-02,1,2,3,4\n", DuplicateDateError, 3),
        ("01/02/2014,1,2,3,4\n", ParseError, 2),
        ("2014-01-02,1,2,abc,4\n", ParseError, 2),
        ("2014-01-02,1,2,3.12345,4\n", ParseError, 2),
    ],
)
def test_malformed_rows(body, exc, line):
    with pytest.raises(exc) as info:
        parse_csv_text(HEADER + body)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_bad_header():
    with pytest.raises(ParseError):
        parse_csv_text("when,A,B\n2014-01-02,1,2\n")


def test_rows_sorted_by_date():
    s = parse_csv_text(HEADER + "2014-01-03,1,2,3,4\n2014-01-02,5,6,7,8\n")
    assert [f.timestamp for f in s.frames] == ["2014-01-02", "2014-01-03"]


def test_series_invariants():
    f = PriceFrame("2014-01-02", {"A": Decimal(1)})
    with pytest.raises(ValueError):
        PortfolioSeries(("A", "A"), ())
    with pytest.raises(ValueError):
        PortfolioSeries(("A",), (f, f))
    with pytest.raises(ValueError):
        PortfolioSeries(("A", "B"), (f,))


prices = st.decimals(min_value=1, max_value=999, places=2, allow_nan=False, allow_infinity=False)


@given(rows=st.lists(st.lists(prices, min_size=4, max_size=4), min_size=1, max_size=8))
def test_csv_round_trip(rows, tmp_path_factory):
    frames = tuple(
        PriceFrame(f"2014-01-{i + 1:02d}", dict(zip("ABCD", row))) for i, row in enumerate(rows)
    )
    series = PortfolioSeries(tuple("ABCD"), frames)
    again = parse_csv_text(dump_csv(series))
    assert again == series
    path = tmp_path_factory.mktemp("csv") / "s.csv"
    write_csv(series, path)
    assert load_csv(path) == series
    assert b"\r" not in path.read_bytes()
