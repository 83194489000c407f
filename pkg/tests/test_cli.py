"""Command-line front end: spec parsing, report files, exit codes."""

import json
import math

import pytest

from bernaudit import cli
from bernaudit.functions import corpus_factorable, corpus_standard, modulus_eval
from bernaudit.subgaussian import DEFAULT_ATOL


def read_report(path):
    """Split a CSV report into comment lines, column names, and row dicts."""
    comments, rows, columns = [], [], None
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line)
            elif columns is None:
                columns = line.split(",")
            else:
                rows.append(dict(zip(columns, line.split(","))))
    return comments, columns, rows


def header_int(comments, key):
    (line,) = [c for c in comments if c.startswith(f"# {key}:")]
    return int(line.split(":")[1])


def test_parse_n_spec_ladder():
    assert cli.parse_n_spec("2..64") == [2, 4, 8, 16, 32, 64]
    assert cli.parse_n_spec("3..20") == [3, 6, 12]
    assert cli.parse_n_spec("16..16") == [16]


def test_parse_n_spec_list():
    assert cli.parse_n_spec("2,3,5") == [2, 3, 5]
    assert cli.parse_n_spec(" 7 ") == [7]


@pytest.mark.parametrize("spec", ["0..8", "8..4", "5,3", "2,2", "0,1", ""])
def test_parse_n_spec_rejects(spec):
    with pytest.raises(ValueError):
        cli.parse_n_spec(spec)


def test_parse_x_grid_resolution():
    assert cli.parse_x_grid("9") == [k / 10.0 for k in range(11)]
    assert len(cli.parse_x_grid("99")) == 101


def test_parse_x_grid_list():
    assert cli.parse_x_grid("0.25,0.75") == [0.25, 0.75]
    assert cli.parse_x_grid("0.5") == [0.5]


@pytest.mark.parametrize("spec", ["0", "-3", ","])
def test_parse_x_grid_rejects(spec):
    with pytest.raises(ValueError):
        cli.parse_x_grid(spec)


def test_parse_linspace():
    assert cli.parse_linspace("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert cli.parse_linspace("-10:10:3") == [-10.0, 0.0, 10.0]


@pytest.mark.parametrize("spec", ["0:1", "1:0:5", "0:1:0"])
def test_parse_linspace_rejects(spec):
    with pytest.raises(ValueError):
        cli.parse_linspace(spec)


def test_resolve_functions_selectors():
    labels = [f.label for f in cli.resolve_functions("standard")]
    assert labels == [f.label for f in corpus_standard()]
    (only,) = cli.resolve_functions("square")
    assert only.label == "square"
    (g,) = cli.resolve_functions("g_0.25")
    assert g.label == "g_0.25"
    (big,) = cli.resolve_functions("G_0.5")
    assert big.label == "G_0.5"


def test_resolve_functions_csv(tmp_path):
    fcsv = tmp_path / "ramp.csv"
    fcsv.write_text("x,value\n0.0,0.0\n1.0,1.0\n")
    (f,) = cli.resolve_functions(str(fcsv))
    assert f.eval(0.5) == pytest.approx(0.5)
    assert f.exact_modulus is None
    mcsv = tmp_path / "mod.csv"
    mcsv.write_text("delta,omega\n0.5,0.5\n1.0,1.0\n")
    (g,) = cli.resolve_functions(str(fcsv), str(mcsv))
    assert g.exact_modulus is not None
    assert modulus_eval(g.exact_modulus, 0.25) == pytest.approx(0.25)


def test_resolve_functions_unknown():
    with pytest.raises(ValueError, match="unknown function selector"):
        cli.resolve_functions("nope")
    with pytest.raises(ValueError):
        cli.resolve_functions("g_not_a_number")


def test_bound_csv_report(tmp_path):
    out = tmp_path / "bound.csv"
    rc = cli.main(["bound", "--function", "square", "--n", "4,9",
                   "--x-grid", "0.25,0.5", "--out", str(out)])
    assert rc == 0
    comments, columns, rows = read_report(out)
    assert columns == cli.BOUND_COLUMNS
    assert any("schema: bernaudit-report/1" in c for c in comments)
    assert len(rows) == 4
    for row in rows:
        assert row["pass"] == "true"
        assert float(row["delta"]) <= float(row["bound"])
    spot = next(r for r in rows if r["n1"] == "4" and r["x"] == "0.25")
    # B_n[x^2] - x^2 = x(1-x)/n
    assert float(spot["delta"]) == pytest.approx(0.25 * 0.75 / 4, rel=1e-12)


def test_bound_json_report(tmp_path):
    out = tmp_path / "bound.json"
    rc = cli.main(["bound", "--function", "square", "--n", "4", "--x-grid",
                   "0.5", "--format", "json", "--out", str(out)])
    assert rc == 0
    raw = out.read_text()
    payload = json.loads(raw)
    assert payload["schema"] == "bernaudit-report/1"
    assert payload["violations"] == 0
    (record,) = payload["records"]
    assert record["pass"] is True
    assert record["delta"] <= record["bound"]
    # keys are emitted sorted so reruns diff cleanly
    assert raw == json.dumps(payload, indent=2, sort_keys=True) + "\n"


def test_uniform_rows_have_no_x(tmp_path):
    out = tmp_path / "uniform.csv"
    # degrees large enough that the modulus clamp sits past the truncation
    rc = cli.main(["uniform", "--function", "square", "--n", "64,256",
                   "--x-grid", "19", "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    assert len(rows) == 2
    for row in rows:
        assert row["x"] == ""
        assert row["pass"] == "true"
        assert float(row["delta"]) <= float(row["bound"])
        # Lipschitz modulus: the companion form sits exactly 2 sqrt(2)
        # above the printed constant
        assert float(row["ratio"]) == pytest.approx(0.5 / math.sqrt(2), rel=1e-9)


def test_uniform_needs_exact_modulus(tmp_path, capsys):
    fcsv = tmp_path / "ramp.csv"
    fcsv.write_text("x,value\n0.0,0.0\n1.0,1.0\n")
    rc = cli.main(["uniform", "--function", str(fcsv), "--n", "4",
                   "--x-grid", "3", "--out", str(tmp_path / "u.csv")])
    assert rc == 2
    assert "exact modulus" in capsys.readouterr().err


def test_derivative_report(tmp_path):
    out = tmp_path / "deriv.csv"
    rc = cli.main(["derivative", "--function", "square", "--n", "2,8",
                   "--x-grid", "0.25,0.5", "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    assert len(rows) == 4
    assert all(row["pass"] == "true" for row in rows)
    assert {row["n1"] for row in rows} == {"2", "8"}


def test_derivative_needs_metadata(tmp_path, capsys):
    rc = cli.main(["derivative", "--function", "x^0.5", "--n", "4",
                   "--x-grid", "0.5", "--out", str(tmp_path / "d.csv")])
    assert rc == 2
    assert "derivative" in capsys.readouterr().err


def test_bivariate_report(tmp_path):
    out = tmp_path / "biv.csv"
    rc = cli.main(["bivariate", "--n", "2,4", "--x-grid", "0.5",
                   "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    # n2 and the y grid default to the first-axis settings
    assert len(rows) == len(corpus_factorable()) * 4
    assert all(row["pass"] == "true" for row in rows)
    assert {row["n2"] for row in rows} == {"2", "4"}
    assert {row["y"] for row in rows} == {"0.5"}


def test_bivariate_separate_axes(tmp_path):
    out = tmp_path / "biv2.csv"
    rc = cli.main(["bivariate", "--n", "2", "--n2", "3", "--x-grid", "0.5",
                   "--y-grid", "0.25,0.75", "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    assert len(rows) == len(corpus_factorable()) * 2
    assert {row["n2"] for row in rows} == {"3"}
    assert {row["y"] for row in rows} == {"0.25", "0.75"}


def test_sharpness_ratio_trace(tmp_path):
    out = tmp_path / "trace.csv"
    rc = cli.main(["sharpness", "--experiment", "ratio", "--t", "0.5",
                   "--x", "0.5", "--n", "16..256", "--out", str(out)])
    assert rc == 0
    comments, columns, rows = read_report(out)
    assert columns == cli.TRACE_COLUMNS
    assert [row["n"] for row in rows] == ["16", "32", "64", "128", "256"]
    for row in rows:
        assert 0.0 < float(row["ratio"]) <= 2.0
    assert any(c.startswith("# extrapolated_limit:") for c in comments)


def test_sharpness_bojanic_residuals(tmp_path):
    out = tmp_path / "boj.csv"
    rc = cli.main(["sharpness", "--experiment", "bojanic", "--x", "0.5",
                   "--n", "16..1024", "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    for row in rows:
        assert row["j"] == ""
        assert abs(float(row["residual_times_n"])) < 1.0


def test_sharpness_json_trace(tmp_path):
    out = tmp_path / "trace.json"
    rc = cli.main(["sharpness", "--experiment", "ratio", "--n", "16..64",
                   "--format", "json", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    trace = payload["trace"]
    assert trace["n_values"] == [16, 32, 64]
    assert len(trace["ratios"]) == 3


def test_subgaussian_cosh_report(tmp_path):
    out = tmp_path / "cosh.csv"
    rc = cli.main(["subgaussian", "--audit", "cosh", "--p", "0.5",
                   "--n", "1..16", "--lambda-grid=-2:2:9",
                   "--out", str(out)])
    assert rc == 0
    comments, _, rows = read_report(out)
    assert header_int(comments, "cells_violating") == 0
    assert any("# inequality: cosh-mgf" == c for c in comments)
    # nothing fails, so the map holds only the worst passing cell
    (row,) = rows
    assert row["pass"] == "true"
    assert float(row["ratio"]) <= DEFAULT_ATOL


def test_subgaussian_violation_map_and_exit(tmp_path):
    out = tmp_path / "mom.csv"
    argv = ["subgaussian", "--audit", "moments", "--p", "0.01",
            "--n", "4,10", "--m-max", "3", "--out", str(out)]
    assert cli.main(argv) == 0
    comments, _, rows = read_report(out)
    failing = header_int(comments, "cells_violating")
    assert failing > 0
    assert len(rows) == failing
    for row in rows:
        assert row["pass"] == "false"
        assert float(row["ratio"]) > DEFAULT_ATOL
    assert cli.main(argv + ["--fail-on-violation"]) == 1


def test_subgaussian_keep_margins_dumps_grid(tmp_path):
    out = tmp_path / "mom_all.csv"
    rc = cli.main(["subgaussian", "--audit", "moments", "--p", "0.01",
                   "--n", "4,10", "--m-max", "3", "--keep-margins",
                   "--out", str(out)])
    assert rc == 0
    comments, _, rows = read_report(out)
    assert header_int(comments, "cells_total") == 6
    assert len(rows) == 6
    assert {row["y"] for row in rows} == {"1", "2", "3"}


def test_subgaussian_json_report(tmp_path):
    out = tmp_path / "cosh.json"
    rc = cli.main(["subgaussian", "--audit", "cosh", "--p", "0.5",
                   "--n", "1..4", "--lambda-grid", "0:2:5",
                   "--format", "json", "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())["report"]
    assert report["inequality_id"] == "cosh-mgf"
    assert report["cells_total"] == 3 * 5
    assert report["cells_violating"] == 0
    assert report["violations"] == []


def test_default_output_name_uses_outdir(tmp_path, monkeypatch):
    monkeypatch.setenv("BERNAUDIT_OUTDIR", str(tmp_path))
    rc = cli.main(["subgaussian", "--audit", "ssub", "--alpha", "0.5",
                   "--lambda-grid", "0.25:2:4"])
    assert rc == 0
    assert (tmp_path / "bernaudit_subgaussian_ssub.csv").exists()


def test_default_output_name_in_cwd(tmp_path, monkeypatch):
    monkeypatch.delenv("BERNAUDIT_OUTDIR", raising=False)
    monkeypatch.chdir(tmp_path)
    rc = cli.main(["sharpness", "--experiment", "ratio", "--n", "16..32"])
    assert rc == 0
    assert (tmp_path / "bernaudit_sharpness_ratio.csv").exists()


def test_reports_byte_identical_across_runs(tmp_path):
    argv = ["bound", "--function", "g_0.5", "--n", "2..8", "--x-grid", "3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(argv + ["--out", str(a)]) == 0
    assert cli.main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    ja, jb = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(argv + ["--format", "json", "--out", str(ja)]) == 0
    assert cli.main(argv + ["--format", "json", "--out", str(jb)]) == 0
    assert ja.read_bytes() == jb.read_bytes()


def test_quadrature_failure_writes_sentinel(tmp_path):
    out = tmp_path / "nc.csv"
    rc = cli.main(["bound", "--function", "g_0.5", "--n", "4", "--x-grid",
                   "0.5", "--max-subdivisions", "1", "--rel-tol", "1e-12",
                   "--out", str(out)])
    assert rc == 0
    _, _, rows = read_report(out)
    (row,) = rows
    assert row["pass"] == "nc"
    assert row["j"] == "" and row["bound"] == "" and row["ratio"] == ""
    # the exact operator error is still recorded
    assert float(row["delta"]) == pytest.approx(0.1875, rel=1e-12)


def test_bad_arguments_exit_2(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert cli.main(["bound", "--function", "nope"]) == 2
    assert "unknown function selector" in capsys.readouterr().err
    assert cli.main(["bound", "--n", "5,3"]) == 2
    assert cli.main(["bound", "--function", str(tmp_path / "missing.csv")]) == 2
    assert cli.main(["bound", "--function", "square", "--rel-tol", "0.5"]) == 2
    assert list(tmp_path.iterdir()) == []


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["sharpness", "--experiment", "nope"])
