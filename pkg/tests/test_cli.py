import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from gammaprimes.cli import REPORT_SCHEMA, Grid, main
from gammaprimes.errors import DomainError
from gammaprimes.verify import run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_grid():
    g = Grid(10, 100, 10)
    assert list(g.values()) == [10.5 + 10 * k for k in range(10)]
    assert list(Grid(10, 100, 10, offset=0).values())[0] == 10.0
    assert Grid(10, 1e4, 4, geometric=True).values()[1] == pytest.approx(100.5)
    with pytest.raises(DomainError):
        Grid(2, 10, 5)
    with pytest.raises(DomainError):
        Grid(10, 20, 1)


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--fn", "pi", "--from", "10", "--to", "100", "--points", "10")
    assert code == 0
    data = rows(out)
    assert len(data) == 10
    assert list(data[0]) == ["x", "value"]
    assert float(data[-1]["value"]) == 25


def test_exact_psi_value(capsys):
    _, out, _ = run(capsys, "exact", "--fn", "psi", "--from", "10", "--to", "20", "--points", "2")
    assert float(rows(out)[0]["value"]) == pytest.approx(7.8320, abs=1e-4)


def test_out_of_range_writes_nothing(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, _, err = run(capsys, "exact", "--fn", "pi", "--from", "10", "--to", "5000",
                       "--sieve-limit", "1000", "--out", str(out))
    assert code == 2 and "exceeds" in err
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_domain_and_capacity_codes(capsys):
    assert run(capsys, "exact", "--fn", "pi", "--from", "1", "--to", "5")[0] == 2
    assert run(capsys, "exact", "--fn", "pi", "--from", "10", "--to", "20",
               "--sieve-limit", "1e9")[0] == 3
    assert run(capsys, "explicit", "--fn", "omega", "--from", "10", "--to", "20")[0] == 2


def test_missing_zeros(capsys, tmp_path, monkeypatch):
    args = ["compare", "--fn", "psi", "--from", "10", "--to", "20", "--points", "3"]
    assert run(capsys, *args, "--zeros-file", str(tmp_path / "none.txt"))[0] == 4
    assert run(capsys, *args, "--num-zeros", "0")[0] == 4
    monkeypatch.setenv("PGL_ZEROS_FILE", str(tmp_path / "none.txt"))
    assert run(capsys, *args)[0] == 4
    # functions without an explicit formula do not need zeros
    assert run(capsys, "compare", "--fn", "omega", "--from", "10", "--to", "20")[0] == 0


def test_zeros_file_and_env(capsys, tmp_path, monkeypatch, zeros):
    from gammaprimes.zeros import dump_zeros
    path = tmp_path / "z.txt"
    dump_zeros(zeros.head(20), path)
    args = ["explicit", "--fn", "psi", "--from", "10", "--to", "20", "--points", "2",
            "--format", "json"]
    _, out, _ = run(capsys, *args, "--zeros-file", str(path))
    assert json.loads(out)["metadata"]["num_zeros"] == 20
    monkeypatch.setenv("PGL_ZEROS_FILE", str(path))
    _, out2, _ = run(capsys, *args)
    assert out == out2
    monkeypatch.setenv("PGL_SIEVE_LIMIT", "5000")
    _, out3, _ = run(capsys, *args)
    assert json.loads(out3)["metadata"]["sieve_limit"] == 5000
    # flags beat the environment
    _, out4, _ = run(capsys, *args, "--sieve-limit", "6000")
    assert json.loads(out4)["metadata"]["sieve_limit"] == 6000


def test_compare_psi(capsys):
    code, out, err = run(capsys, "compare", "--fn", "psi", "--from", "10", "--to", "1000",
                         "--points", "50")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["x", "exact", "average", "explicit", "abs_err_avg", "abs_err_exp",
                             "rel_err_avg", "rel_err_exp"]
    xs = [float(r["x"]) for r in data]
    assert xs == sorted(xs)
    rms_avg = sum(float(r["abs_err_avg"]) ** 2 for r in data) ** 0.5
    rms_exp = sum(float(r["abs_err_exp"]) ** 2 for r in data) ** 0.5
    assert rms_exp < rms_avg
    assert "rms_avg=" in err and "max_abs_exp=" in err


def test_compare_pi_average(capsys):
    _, out, _ = run(capsys, "compare", "--fn", "pi", "--from", "1000", "--to", "1e6",
                    "--points", "12", "--geometric", "--sieve-limit", "1000001")
    for r in rows(out):
        assert abs(float(r["rel_err_avg"])) < 0.005


def test_json_schema(capsys):
    _, out, _ = run(capsys, "compare", "--fn", "d_Lambda", "--from", "10", "--to", "100",
                    "--points", "5", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["rows"][0]["explicit"] is None
    assert doc["metadata"]["timestamp"] is None
    _, out, _ = run(capsys, "compare", "--fn", "K", "--from", "100", "--to", "1000",
                    "--points", "5", "--format", "json", "--timestamp")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["metadata"]["timestamp"]


def test_average_uses_series(capsys):
    _, out, _ = run(capsys, "average", "--fn", "Ch", "--from", "10", "--to", "20", "--points", "2")
    import math
    x = 10.5
    assert float(rows(out)[0]["value"]) == pytest.approx(x - math.log(x), rel=1e-12)


def test_plotdata_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "gammaprimes", "plotdata", "--fn", "sigma_p", "--from", "10",
           "--to", "1e4", "--points", "8", "--geometric"]
    a = subprocess.run(cmd + ["--out", str(tmp_path / "a.csv")], check=True)
    b = subprocess.run(cmd + ["--out", str(tmp_path / "b.csv")], check=True)
    assert a.returncode == b.returncode == 0
    ta = (tmp_path / "a.csv").read_bytes()
    assert ta == (tmp_path / "b.csv").read_bytes()
    assert ta.splitlines()[0] == b"x,exact,average,explicit"
    assert len(ta.splitlines()) == 9


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "series")
    assert code == 0
    assert "audit J02" in out and "FAIL" not in out


def test_verify_reports_failure(capsys, monkeypatch):
    from gammaprimes import cli, verify

    def broken(suite, table=None, zeros=None):
        return [verify.Check("series", "always fails", False, "forced")]

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(capsys, "verify", "--suite", "series")
    assert code == 1 and "FAIL" in out


def test_suite_names():
    assert {r.suite for r in run_suite("identities")} == {"identities"}
