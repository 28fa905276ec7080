"""End-to-end CLI behavior: outputs, determinism, config handling, exit codes."""

import json
import math

import pytest

from tcphonon import cli
from tcphonon.output import format_table


def _read_csv(path):
    meta, header, rows = {}, None, []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(" = ")
            meta[key] = value
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return meta, header, rows


def test_spectrum_row_count(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert cli.main(["spectrum", "--output", str(out)]) == 0
    meta, header, rows = _read_csv(out)
    assert len(rows) == 200  # default grid
    assert header[0] == "k"
    assert meta["cs"] == "0.5"


def test_spectrum_rejects_k_zero_grid(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert cli.main(["spectrum", "--kmin", "0", "--output", str(out)]) == 2


def test_spectrum_single_cs_only(tmp_path):
    assert cli.main(["spectrum", "--cs", "0.5,0.6", "--output", str(tmp_path / "x.csv")]) == 2


def test_csv_json_value_equality(tmp_path):
    args = ["rate-g", "--points", "4", "--kmin", "0.3", "--kmax", "1.2"]
    csv_path = tmp_path / "r.csv"
    json_path = tmp_path / "r.json"
    assert cli.main(args + ["--output", str(csv_path)]) == 0
    assert cli.main(args + ["--format", "json", "--output", str(json_path)]) == 0
    _, header, rows = _read_csv(csv_path)
    doc = json.loads(json_path.read_text(encoding="utf-8"))
    for i, name in enumerate(header):
        for j, row in enumerate(rows):
            jval = doc["columns"][name][j]
            if isinstance(jval, bool):
                assert row[i] == ("true" if jval else "false")
            else:
                # 17-significant-digit CSV cells round-trip the exact double
                assert float(row[i]) == jval


def test_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["rate-g", "--points", "4", "--kmin", "0.3", "--kmax", "1.2"]
    assert cli.main(args + ["--output", str(a)]) == 0
    assert cli.main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_fig1_zero_location_and_units(tmp_path):
    out = tmp_path / "fig1.csv"
    assert cli.main(["fig1", "--output", str(out)]) == 0
    meta, header, rows = _read_csv(out)
    assert len(rows) == 200
    assert header == ["cs", "rate_dimensionless", "rate_fig1_units"]
    cs = [float(r[0]) for r in rows]
    rate = [float(r[1]) for r in rows]
    i0 = min(range(len(rate)), key=rate.__getitem__)
    assert abs(cs[i0] - math.sqrt(3.0 / 8.0)) < 0.005
    assert all(r >= 0.0 for r in rate)
    # figure-units column is the dimensionless rate over the quoted unit
    unit = float(meta["fig1_unit"])
    assert math.isclose(float(rows[5][2]), rate[5] / unit, rel_tol=1e-15)


def test_fig2_default_curves(tmp_path):
    out = tmp_path / "fig2.csv"
    assert cli.main(["fig2", "--output", str(out)]) == 0
    _, header, rows = _read_csv(out)
    assert header[:3] == ["k", "cs", "rate_dimensionless"]
    assert len(rows) == 50 * 5  # points x default cs list
    by_cs = {}
    for row in rows:
        by_cs.setdefault(row[1], []).append(float(row[2]))
    assert len(by_cs) == 5
    for rates in by_cs.values():
        assert rates[0] < 1e-8  # long-wavelength suppression at the first grid point
        assert all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))


def test_rate_lambda_rows_and_threshold_column(tmp_path):
    out = tmp_path / "rl.csv"
    assert cli.main(["rate-lambda", "--cs", "0.3,0.5,1.0", "--output", str(out)]) == 0
    _, header, rows = _read_csv(out)
    assert header[:3] == ["cs", "kstar", "rate_dimensionless"]
    assert len(rows) == 3
    assert math.isclose(float(rows[1][1]), 0.7587449567759899, rel_tol=1e-9)
    assert float(rows[2][2]) == 0.0  # Lorentz point


def test_rate_g_open_flag_column(tmp_path):
    out = tmp_path / "rg.csv"
    assert cli.main(["rate-g", "--points", "3", "--kmin", "0.5", "--kmax", "1.5",
                     "--output", str(out)]) == 0
    _, header, rows = _read_csv(out)
    i = header.index("kinematically_open")
    assert all(row[i] == "true" for row in rows)


def test_config_precedence(tmp_path):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text("# comment line\npoints = 5\nkmax = 1.0\n", encoding="utf-8")
    out = tmp_path / "rg.csv"
    assert cli.main(["rate-g", "--config", str(cfg), "--points", "3",
                     "--output", str(out)]) == 0
    meta, _, rows = _read_csv(out)
    assert len(rows) == 3  # flag beats config
    assert float(meta["kmax"]) == 1.0  # config beats default
    assert float(meta["kmin"]) == 0.1  # default survives


def test_config_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("velocity = 3\n", encoding="utf-8")
    assert cli.main(["spectrum", "--config", str(cfg)]) == 2


def test_config_rejects_bad_value(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("points = many\n", encoding="utf-8")
    assert cli.main(["spectrum", "--config", str(cfg)]) == 2


def test_missing_config_file(tmp_path):
    assert cli.main(["spectrum", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_figure_units_toggle(tmp_path):
    plain = tmp_path / "plain.csv"
    assert cli.main(["fig1", "--points", "5", "--no-figure-units", "--output", str(plain)]) == 0
    _, header, _ = _read_csv(plain)
    assert header == ["cs", "rate_dimensionless"]
    cfg = tmp_path / "units.cfg"
    cfg.write_text("figure-units = false\n", encoding="utf-8")
    forced = tmp_path / "forced.csv"
    assert cli.main(["fig1", "--points", "5", "--config", str(cfg), "--figure-units",
                     "--output", str(forced)]) == 0
    _, header, _ = _read_csv(forced)
    assert header[-1] == "rate_fig1_units"  # explicit flag overrides config


def test_check_passes_and_reports(tmp_path):
    out = tmp_path / "check.json"
    assert cli.main(["check", "--format", "json", "--output", str(out)]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["passed"] is True
    assert len(doc["checks"]) >= 20
    for entry in doc["checks"]:
        assert set(entry) == {"name", "passed", "measured", "tolerance"}
        assert entry["passed"] is True


def test_check_fails_with_zero_tolerance(tmp_path, capsys):
    assert cli.main(["check", "--tol", "0"]) == 1
    text = capsys.readouterr().out
    assert "FAIL" in text and "overall" in text


def test_stdout_output(capsys):
    assert cli.main(["rate-lambda", "--cs", "0.5"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("#")
    assert "cs,kstar,rate_dimensionless" in text


def test_dash_output_is_stdout(capsys):
    assert cli.main(["spectrum", "--points", "3", "--output", "-"]) == 0
    assert "omega_G" in capsys.readouterr().out


def test_version_flag(capsys):
    assert cli.main(["--version"]) == 0
    assert "tcphonon" in capsys.readouterr().out


def test_usage_errors_exit_2(capsys):
    assert cli.main([]) == 2
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()  # swallow argparse noise


def test_format_table_rejects_unknown_format():
    with pytest.raises(ValueError):
        format_table(["a"], [[1.0]], {}, "xml")
