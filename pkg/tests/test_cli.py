import json
import math

import pytest

from riskseries.cli import (
    EXIT_DATA,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    AnalysisConfig,
    main,
    parse_csv,
    pipeline_to_dict,
    run_pipeline,
)
from riskseries.errors import DataError, UsageError
from riskseries.peaks import ThresholdSpec


# ----------------------------------------------------------------- parsing

def test_parse_csv_fixture(fixture_path):
    series = parse_csv(fixture_path)
    assert len(series) == 31
    last = series.observations[-1]
    assert (last.index, last.value) == (142, 1355.0)
    assert series.observations[10].value == 195.2


def test_parse_csv_errors(tmp_path):
    missing = tmp_path / "nope.csv"
    with pytest.raises(DataError):
        parse_csv(str(missing))

    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DataError):
        parse_csv(str(empty))

    header_only = tmp_path / "header.csv"
    header_only.write_text("month,value\n")
    with pytest.raises(DataError):
        parse_csv(str(header_only))

    malformed = tmp_path / "bad.csv"
    malformed.write_text("month,value\nabc,10\n")
    with pytest.raises(DataError, match="line 2"):
        parse_csv(str(malformed))

    unsorted = tmp_path / "unsorted.csv"
    unsorted.write_text("month,value\n5,1\n3,2\n")
    with pytest.raises(DataError):
        parse_csv(str(unsorted))


def test_parse_csv_decimal_comma(tmp_path):
    semicolon = tmp_path / "comma.csv"
    semicolon.write_text("month;value\n1;195,2\n2;225\n")
    series = parse_csv(str(semicolon), decimal="comma")
    assert series.values == (195.2, 225.0)

    comma_separated = tmp_path / "comma2.csv"
    comma_separated.write_text("month,value\n1,195,2\n2,225\n")
    series = parse_csv(str(comma_separated), decimal="comma")
    assert series.values == (195.2, 225.0)


def test_parse_csv_crlf(tmp_path):
    crlf = tmp_path / "crlf.csv"
    crlf.write_bytes(b"month,value\r\n1,10\r\n2,20\r\n")
    assert parse_csv(str(crlf)).values == (10.0, 20.0)


# ------------------------------------------------------------- exit codes

def test_exit_codes(tmp_path, fixture_path, capsys):
    assert main(["summarize", fixture_path]) == EXIT_OK
    capsys.readouterr()

    assert main(["summarize", str(tmp_path / "missing.csv")]) == EXIT_DATA
    assert "data error" in capsys.readouterr().err

    assert main(["peaks", fixture_path]) == EXIT_USAGE  # neither threshold nor block
    assert "usage error" in capsys.readouterr().err

    assert main(["nonsense-command"]) == EXIT_USAGE
    capsys.readouterr()

    constant = tmp_path / "constant.csv"
    constant.write_text("month,value\n" + "".join(f"{m},10\n" for m in range(1, 11)))
    assert main(["ar", str(constant)]) == EXIT_NUMERICAL
    assert "numerical error" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    capsys.readouterr()


# ------------------------------------------------------------ subcommands

def test_summarize_json(fixture_path, capsys):
    assert main(["summarize", fixture_path, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 31
    assert payload["std_dev"] == pytest.approx(271.69228546, rel=1e-9)


def test_peaks_subcommand(tmp_path, capsys):
    csv = tmp_path / "simple.csv"
    values = [200, 30, 40, 120, 80, 110, 180, 55, 190, 110, 20, 110]
    csv.write_text("month,value\n" + "".join(f"{m},{v}\n" for m, v in enumerate(values, 1)))

    assert main(["peaks", str(csv), "--threshold", "100", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["observations"] == [
        [1, 200.0], [4, 120.0], [6, 110.0], [7, 180.0], [9, 190.0], [10, 110.0], [12, 110.0],
    ]

    assert main(["peaks", str(csv), "--threshold", "100", "--zero-fill",
                 "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [v for _, v in payload["observations"]] == [
        200, 0, 0, 120, 0, 110, 180, 0, 190, 110, 0, 110,
    ]

    assert main(["peaks", str(csv), "--block-size", "3", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["observations"] == [[1, 200.0], [4, 120.0], [9, 190.0], [10, 110.0]]


def test_trend_subcommand(fixture_path, capsys):
    assert main(["trend", fixture_path, "--mann-kendall", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["trend"]["slope"] == pytest.approx(14.78, rel=0.02)
    assert payload["mann_kendall"]["decision"] in ("increasing", "no-trend")


def test_ar_subcommand_golden(fixture_path, capsys):
    assert main(["ar", fixture_path, "--max-lag", "1", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    coefficients = payload["ar"]["p1"]["coefficients"]
    assert coefficients[0]["estimate"] == pytest.approx(267.592408, rel=1e-7)
    assert coefficients[1]["estimate"] == pytest.approx(0.41949996, rel=1e-7)
    assert payload["order_selection"]["selected_order"] in (0, 1)


def test_residuals_subcommand_with_plot_data(fixture_path, capsys, tmp_path):
    plot_dir = tmp_path / "plots"
    assert main(["residuals", fixture_path, "--plot-data", str(plot_dir),
                 "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["outliers"] == [30]

    for name in ("residual_plot.csv", "probability_plot.csv"):
        lines = (plot_dir / name).read_text().strip().splitlines()
        assert lines[0] == "x,y"
        assert len(lines) == 1 + payload["n"]
        assert all(len(line.split(",")) == 2 for line in lines[1:])


def test_gev_pdf_subcommand(capsys):
    assert main(["gev-pdf", "--mu", "0", "--sigma", "1", "--xi", "0",
                 "--x", "0,1,-1", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["points"][0][1] == pytest.approx(math.exp(-1.0), rel=1e-12)

    assert main(["gev-pdf", "--mu", "0", "--sigma", "-1", "--xi", "0", "--x", "0"]) == EXIT_USAGE
    capsys.readouterr()


def test_text_mode_smoke(tmp_path, fixture_path, capsys):
    csv = tmp_path / "simple.csv"
    values = [200, 30, 40, 120, 80, 110, 180, 55, 190, 110, 20, 110]
    csv.write_text("month,value\n" + "".join(f"{m},{v}\n" for m, v in enumerate(values, 1)))

    assert main(["peaks", str(csv), "--threshold", "100"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "7 events" in out and "strictly-above" in out

    assert main(["trend", fixture_path, "--mann-kendall"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "slope" in out and "mann-kendall" in out

    assert main(["gev-pdf", "--mu", "0", "--sigma", "1", "--xi", "0.3", "--x", "1,2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "density" in out

    assert main(["residuals", fixture_path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "residuals (raw AR(1))" in out and "outliers" in out

    assert main(["ar", fixture_path, "--max-lag", "2", "--detrend"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ar (detrended) order 2" in out


def test_block_maxima_on_gapped_series_is_positional(tmp_path, capsys):
    gapped = tmp_path / "gapped.csv"
    gapped.write_text("month,value\n1,5\n8,9\n9,2\n24,7\n")
    assert main(["peaks", str(gapped), "--block-size", "2", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    # positions after renumbering, not raw months
    assert payload["observations"] == [[2, 9.0], [4, 7.0]]


def test_loss_csv_and_header_validation(tmp_path, capsys):
    hazard = tmp_path / "hazard.csv"
    hazard.write_text("s,G\n1.0,2.0\n2.0,1.0\n")
    vulnerability = tmp_path / "vulnerability.csv"
    vulnerability.write_text("s,mean_loss,cov\n1.0,0.2,0.5\n2.0,0.5,0.5\n")
    losses = tmp_path / "losses.csv"
    losses.write_text("x\n0\n0.5\n2.0\n")
    assert main(["risk-curve", "--hazard", str(hazard), "--vulnerability",
                 str(vulnerability), "--loss-csv", str(losses),
                 "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["frequencies"]) == 3

    bad_header = tmp_path / "bad.csv"
    bad_header.write_text("sigma,G\n1.0,2.0\n")
    assert main(["risk-curve", "--hazard", str(bad_header), "--vulnerability",
                 str(vulnerability), "--losses", "1"]) == EXIT_DATA
    capsys.readouterr()


def test_risk_curve_subcommand(tmp_path, capsys):
    hazard = tmp_path / "hazard.csv"
    hazard.write_text("s,G\n1.0,2.0\n2.0,1.0\n3.0,0.5\n")
    vulnerability = tmp_path / "vulnerability.csv"
    vulnerability.write_text("s,mean_loss,cov\n1.0,0.2,0.5\n2.0,0.5,0.5\n3.0,0.9,0.5\n")

    assert main(["risk-curve", "--hazard", str(hazard), "--vulnerability",
                 str(vulnerability), "--losses", "0,0.5,100", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["frequencies"][0] == pytest.approx(1.5, rel=1e-12)  # G_1 - G_n
    assert payload["frequencies"][-1] == pytest.approx(0.0, abs=1e-12)

    assert main(["risk-curve", "--hazard", str(hazard), "--vulnerability",
                 str(vulnerability)]) == EXIT_USAGE  # no loss grid
    capsys.readouterr()

    bad = tmp_path / "bad_hazard.csv"
    bad.write_text("s,G\n1.0,0.0\n2.0,0.0\n")
    assert main(["risk-curve", "--hazard", str(bad), "--vulnerability",
                 str(vulnerability), "--losses", "1"]) == EXIT_DATA
    capsys.readouterr()


# --------------------------------------------------------------- pipeline

def test_analyze_json_golden_and_determinism(fixture_path, capsys):
    argv = ["analyze", fixture_path, "--format", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second  # byte-identical

    payload = json.loads(first)
    assert payload["schema_version"] == 1
    ar1 = payload["ar"]["raw"]["p1"]
    assert ar1["coefficients"][0]["estimate"] == pytest.approx(267.592408, rel=1e-7)
    assert ar1["coefficients"][1]["estimate"] == pytest.approx(0.41949996, rel=1e-7)
    assert ar1["r_squared"] == pytest.approx(0.10760973, rel=1e-7)
    assert payload["residuals"]["outliers"] == [30]
    assert payload["order_selection"]["raw"]["selected_order"] == 0
    assert payload["lag_correlation"]["raw"] == pytest.approx(0.32803921, rel=1e-7)

    # round trip: parse -> dump -> parse is numerically identical
    assert json.loads(json.dumps(payload)) == payload


def test_analyze_text_renders_published_precision(fixture_path, capsys):
    assert main(["analyze", fixture_path, "--format", "json"]) == EXIT_OK
    slope = json.loads(capsys.readouterr().out)["ar"]["raw"]["p1"]["coefficients"][1]["estimate"]
    assert main(["analyze", fixture_path]) == EXIT_OK
    text = capsys.readouterr().out
    assert "267.592408" in text
    # the published slope 0.41949996 is an 8-digit display rounding of
    # 0.41949995519879; at >= 9 significant digits we render the latter
    assert "0.419499955" in text
    assert f"{slope:.8g}" == "0.41949996"
    assert "selected order: 0" in text


def test_text_values_come_from_the_json_dict(fixture_path, capsys):
    # every float printed in text mode must round from the JSON payload
    assert main(["analyze", fixture_path, "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert main(["analyze", fixture_path]) == EXIT_OK
    text = capsys.readouterr().out
    coefficients = payload["ar"]["raw"]["p3"]["coefficients"]
    for stat in coefficients:
        assert f"{stat['estimate']:.9g}" in text
        assert f"{stat['t_stat']:.9g}" in text


def test_analyze_constant_series_reports_skips(tmp_path, capsys):
    constant = tmp_path / "constant.csv"
    constant.write_text("month,value\n" + "".join(f"{m},10\n" for m in range(1, 11)))
    assert main(["analyze", str(constant), "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["trend"]["slope"] == pytest.approx(0.0, abs=1e-12)
    assert payload["mann_kendall"]["decision"] == "no-trend"
    assert "skipped" in payload["ar"]["raw"]["p1"]
    assert "rank-deficient" in payload["ar"]["raw"]["p1"]["skipped"]
    assert "skipped" in payload["residuals"]


def test_analyze_with_threshold_and_no_detrend(tmp_path, capsys):
    csv = tmp_path / "mixed.csv"
    values = [200, 30, 40, 120, 80, 110, 180, 55, 190, 110, 20, 110, 250, 90, 130]
    csv.write_text("month,value\n" + "".join(f"{m},{v}\n" for m, v in enumerate(values, 1)))
    assert main(["analyze", str(csv), "--threshold", "100", "--max-lag", "1",
                 "--no-detrend", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["pot"]["n"] == 9
    assert "skipped" in payload["summary"]["detrended"]
    assert "skipped" in payload["ar"]["detrended"]


def test_analyze_plot_data(fixture_path, tmp_path, capsys):
    plot_dir = tmp_path / "plots"
    assert main(["analyze", fixture_path, "--plot-data", str(plot_dir)]) == EXIT_OK
    capsys.readouterr()
    residual_lines = (plot_dir / "residual_plot.csv").read_text().strip().splitlines()
    assert residual_lines[0] == "x,y"
    assert len(residual_lines) == 31  # header + 30 points


def test_run_pipeline_direct(event_series):
    config = AnalysisConfig(input_path="fixture", max_lag=3, alpha=0.05)
    report = run_pipeline(event_series, config)
    payload = pipeline_to_dict(report)
    assert payload["summary"]["raw"]["n"] == 31
    assert payload["ar"]["raw"]["p2"]["n"] == 29
    with pytest.raises(UsageError):
        AnalysisConfig(input_path="x", alpha=2.0)
    with pytest.raises(UsageError):
        AnalysisConfig(input_path="x", max_lag=0)


def test_run_pipeline_threshold_removing_everything(event_series):
    config = AnalysisConfig(
        input_path="fixture", threshold=ThresholdSpec(1e9), max_lag=1
    )
    with pytest.raises(DataError):
        run_pipeline(event_series, config)
