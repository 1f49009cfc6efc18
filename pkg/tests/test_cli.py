import csv
import io
import json

import numpy as np
import pytest

from wyskew.cli import main, parse_params
from wyskew.errors import ValidationError
from wyskew.io import digest, dumps_density, loads_density, read_density, write_density
from wyskew.states import WernerGhzParams, bell_state, random_density, werner_ghz


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_parse_params():
    assert parse_params("n=3,lambda=0.5") == {"n": "3", "lambda": "0.5"}
    with pytest.raises(ValidationError):
        parse_params("n3")


def test_skew_ghz(capsys):
    rep = run_json(capsys, "skew", "--ghz", "3", "--axes", "zzz")
    assert set(rep) == {"command", "inputs", "results", "diagnostics", "version", "seed"}
    assert rep["results"]["value"] == pytest.approx(9, abs=1e-9)
    assert rep["diagnostics"]["form_difference"] <= 1e-10


def test_skew_werner_zero(capsys):
    rep = run_json(capsys, "skew", "--werner", "n=3,lambda=0", "--axes", "zzz")
    assert rep["results"]["value"] == pytest.approx(0, abs=1e-12)


def test_skew_custom_bell_file(capsys, tmp_path):
    path = tmp_path / "bell.json"
    write_density(bell_state().density(), path)
    rep = run_json(capsys, "skew", "--custom", str(path), "--axes", "xx")
    assert rep["results"]["value"] == pytest.approx(4, abs=1e-9)


def test_nonlocal_ghz4(capsys):
    rep = run_json(capsys, "nonlocal", "--ghz", "4")
    assert rep["results"]["value"] == pytest.approx(16, abs=1e-5)
    assert rep["diagnostics"]["converged"] is True


def test_nonlocal_gen_ghz(capsys):
    rep = run_json(capsys, "nonlocal", "--gen-ghz", "alpha=0.8")
    assert rep["results"]["value"] == pytest.approx(8.2944, abs=1e-4)
    assert rep["results"]["closed_form"] == pytest.approx(8.2944)


def test_nonlocal_product(capsys):
    rep = run_json(capsys, "nonlocal", "--product", "n=3")
    assert rep["results"]["value"] == pytest.approx(3, abs=1e-5)


@pytest.mark.parametrize(
    "flags, cls, full",
    [(["--ghz", "3"], 3, True), (["--bell"], 2, True), (["--product", "n=4"], 1, False)],
)
def test_classify(capsys, flags, cls, full):
    rep = run_json(capsys, "classify", *flags)
    assert rep["results"]["certified_min_class"] == cls
    assert rep["results"]["fully_entangled_certified"] is full


def test_bounds_five(capsys):
    rep = run_json(capsys, "bounds", "5")
    assert rep["results"]["E"] == [5, 9, 13, 17, 25]
    assert rep["results"]["lambda_n"] == pytest.approx((15 + np.sqrt(129)) / 80, abs=1e-12)
    assert "table_I" not in rep["results"]


def test_bounds_three_table(capsys):
    t = run_json(capsys, "bounds", "3")["results"]["table_I"]
    assert t["WY"] == [3, 5, 9]
    assert t["MK"] == [1.0, np.sqrt(2), 2.0]
    assert t["BI2"] == [8.0, 8.0, 16.0]


def test_bounds_bracket(capsys):
    b = run_json(capsys, "bounds", "9")["results"]["lambda_n_bracket"]
    assert b["holds"] is True


def test_sweep_csv(capsys):
    code, out = run(capsys, "sweep", "werner", "n=3", "--points", "11")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    assert list(rows[0]) == ["lambda", "closed_form", "direct_sigma_z", "lambda_n", "lambda_0", "exceeds_separable"]
    for r in rows:
        assert float(r["closed_form"]) == pytest.approx(float(r["direct_sigma_z"]), abs=1e-8)
        assert (r["exceeds_separable"] == "True") == (float(r["lambda"]) > float(r["lambda_n"]))


def test_sweep_json(capsys):
    rep = run_json(capsys, "sweep", "werner", "n=2", "--points", "3", "--json")
    assert len(rep["results"]["rows"]) == 3


def test_csv_for_scalar_report(capsys):
    code, out = run(capsys, "skew", "--bell", "--axes", "zz", "--csv")
    assert code == 0
    rows = dict(csv.reader(io.StringIO(out)))
    assert float(rows["value"]) == pytest.approx(4)


def test_out_flag(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out = run(capsys, "bounds", "4", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["results"]["E"] == [4, 8, 10, 16]


@pytest.mark.parametrize(
    "argv",
    [
        ["skew", "--ghz", "3"],
        ["skew", "--ghz", "3", "--axes", "zz"],
        ["skew", "--ghz", "3", "--axes", "zzq"],
        ["skew", "--werner", "n=3,lambda=2", "--axes", "zzz"],
        ["skew", "--gen-ghz", "beta=0.3", "--axes", "zzz"],
        ["nonlocal"],
        ["bounds", "1"],
        ["sweep", "ghz", "n=3"],
        ["frobnicate"],
        ["skew", "--custom", "/nonexistent.json", "--axes", "z"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert "type" in json.loads(out)["error"]


def test_numerical_failure_exit_3(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dims": [2], "matrix_re": [1.5, 0, 0, -0.5], "matrix_im": [0, 0, 0, 0]}))
    code, out = run(capsys, "skew", "--custom", str(path), "--axes", "z")
    assert code == 3
    assert json.loads(out)["error"]["type"] == "NotPositiveSemidefinite"


def test_density_round_trip_bitwise(tmp_path):
    for seed in range(20):
        rho = random_density([2, 2, 2], rank=3, seed=seed)
        path = tmp_path / f"{seed}.json"
        write_density(rho, path)
        back = read_density(path)
        assert back.dims == rho.dims
        assert back.matrix.tobytes() == rho.matrix.tobytes()
        assert digest(back) == digest(rho)
        assert dumps_density(back) == dumps_density(rho)


def test_state_command_round_trip(capsys, tmp_path):
    path = tmp_path / "w.json"
    rep = run_json(capsys, "state", "--werner", "n=2,lambda=0.5", "--out", str(path))
    rho = werner_ghz(WernerGhzParams(2, 0.5))
    assert rep["inputs"]["digest"] == digest(rho)
    assert read_density(path).matrix.tobytes() == rho.matrix.tobytes()


def test_malformed_file():
    with pytest.raises(ValidationError):
        loads_density('{"dims": [2]}')
    with pytest.raises(ValidationError):
        loads_density('{"dims": [2], "matrix_re": [1, 0, 0], "matrix_im": [0, 0, 0]}')


def test_reports_reproducible(capsys):
    argv = ["classify", "--product", "n=3", "--seed", "7", "--restarts", "6"]
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    other = run_json(capsys, "classify", "--product", "n=3", "--seed", "8", "--restarts", "6")
    assert other["inputs"]["digest"] != json.loads(out1)["inputs"]["digest"]
