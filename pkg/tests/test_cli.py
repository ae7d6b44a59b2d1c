import csv
import json

import pytest

from bfspec import cli


def run(argv):
    return cli.main(argv)


def test_coeffs_csv_roundtrip(tmp_path):
    out = tmp_path / "table.csv"
    assert run(["coeffs", "--kappa-grid", "0:0.4:5", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 5
    assert float(rows[0]["e_wb"]) == 1.0
    assert rows[0]["region"] == "Unstable"
    assert rows[2]["region"] == "Stable"
    # 17 significant digits round-trip 64-bit floats exactly
    assert float(rows[1]["kappa"]) == 0.1


def test_coeffs_reports_singular_rows(tmp_path):
    out = tmp_path / "table.csv"
    assert run(["coeffs", "--kappa-grid", "0.5,0.8", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["error"] == "SingularKappa"
    assert rows[1]["error"] == ""


def test_figure8_not_unstable_exit_code():
    assert run(["figure8", "--kappa", "0.3", "--eps", "0.01"]) == 2


def test_figure8_trace(tmp_path):
    out = tmp_path / "trace.csv"
    assert run(["figure8", "--kappa", "0", "--eps", "0.01", "--K", "16",
                "--n-samples", "16", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 16
    max_re = max(abs(float(r["re_lambda1p"])) for r in rows)
    assert max_re == pytest.approx(5e-5, rel=0.25)
    mus = [float(r["mu"]) for r in rows]
    assert mus == sorted(mus)


def test_spectrum_json_schema_and_pairing(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    out = tmp_path / "spec.json"
    assert run(["spectrum", "--kappa", "0.05", "--eps", "0.01",
                "--mu", "0.01", "--K", "16", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    with open(cli.schema_path()) as fh:
        schema = json.load(fh)
    jsonschema.validate(payload, schema)
    assert payload["schema"] == "bf-output/1"
    assert payload["data"]["pairing_check"] == "pass"
    assert payload["data"]["max_residual"] <= 1e-9


def test_spectrum_flat_limit_equals_closed_form(tmp_path):
    from bfspec import closed_form as cf
    out = tmp_path / "flat.json"
    assert run(["spectrum", "--kappa", "0.3", "--eps", "0", "--mu", "0.05",
                "--K", "16", "--out", str(out)]) == 0
    quad = json.loads(out.read_text())["data"]["quadruple"]
    want = cf.flat_eigenvalue(0.3, 0, 1, 0.05)
    got = complex(quad["lambda0_plus"]["re"], quad["lambda0_plus"]["im"])
    assert got == pytest.approx(want, abs=1e-10)


def test_io_error_exit_code():
    rc = run(["coeffs", "--kappa-grid", "0:0.1:2",
              "--out", "/nonexistent-dir/x.csv"])
    assert rc == 3


def test_domain_error_on_bad_bounds():
    assert run(["spectrum", "--kappa", "0.05", "--eps", "0.2",
                "--mu", "0.01"]) == 2
    assert run(["spectrum", "--kappa", "0.05", "--eps", "0.01",
                "--mu", "0.01", "--K", "4"]) == 2


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"K": 4}))
    # config file K=4 is out of bounds -> domain error
    assert run(["--config", str(cfg), "spectrum", "--kappa", "0.05",
                "--eps", "0.01", "--mu", "0.01"]) == 2
    # CLI flag overrides the config file
    out = tmp_path / "ok.json"
    assert run(["--config", str(cfg), "spectrum", "--kappa", "0.05",
                "--eps", "0.01", "--mu", "0.01", "--K", "16",
                "--out", str(out)]) == 0


def test_validate_subset_and_mutation(tmp_path):
    out = tmp_path / "report.txt"
    assert run(["validate", "--only", "1,2,3,9,11", "--out", str(out)]) == 0
    report = out.read_text()
    assert "PASS" in report and "FAIL" not in report
    assert run(["validate", "--only", "1,2", "--mutate-e22",
                "--out", str(tmp_path / "bad.txt")]) == 1


def test_validate_missing_output_dir_exit_code():
    assert run(["validate", "--only", "1",
                "--out", "/nonexistent-dir/report.txt"]) == 3
