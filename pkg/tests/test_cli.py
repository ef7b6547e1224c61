import json
import math

import pytest

from cohompsc.catalog import catalog_algebra, catalog_lookup, catalog_names
from cohompsc.classify import classify
from cohompsc.cli import EXIT_CERTIFICATE, EXIT_INVALID, EXIT_OK, EXIT_PARSE, main
from cohompsc.diagrams import from_json, to_json

SPACES = [n for n in catalog_names() if ":" in n]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_catalog_flat(capsys):
    code, out, _ = run(capsys, "classify", "--catalog", "klein-bottle-x-s1")
    assert code == EXIT_OK
    v = json.loads(out)
    assert v["psc"] is False and v["flat_type"] == "KleinTimesTorus(3)" and v["n"] == 3


def test_classify_catalog_psc(capsys):
    code, out, _ = run(capsys, "classify", "--catalog", "su2-ray")
    assert code == EXIT_OK and json.loads(out)["psc"] is True


def test_classify_from_file(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps(to_json(catalog_lookup("diagram:A-3mfd"))))
    out_path = tmp_path / "v.json"
    code, _, _ = run(capsys, "classify", "--in", str(path), "--out", str(out_path))
    assert code == EXIT_OK
    assert json.loads(out_path.read_text())["flat_type"] == "ATimesTorus(3)"


def test_classify_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "line",')
    code, _, err = run(capsys, "classify", "--in", str(path))
    assert code == EXIT_PARSE and "parse error" in err


def test_classify_schema_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "sphere", "G": {"catalog": "t1"}, "H": {"basis": []}}))
    assert run(capsys, "classify", "--in", str(path))[0] == EXIT_INVALID


def test_classify_invalid_diagram(capsys, tmp_path):
    obj = {"kind": "interval", "G": {"catalog": "t2"}, "H": {"basis": []},
           "K_minus": {"basis": [], "components": 2, "generators": [[0.5, 0]]}}
    path = tmp_path / "d.json"
    path.write_text(json.dumps(obj))
    assert run(capsys, "classify", "--in", str(path))[0] == EXIT_INVALID


def test_classify_unknown_catalog(capsys):
    assert run(capsys, "classify", "--catalog", "nope")[0] == EXIT_INVALID
    assert run(capsys, "classify", "--catalog", "su2")[0] == EXIT_INVALID


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["metric", "verify", "--bogus"])
    assert exc.value.code == EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_INVALID


def test_verify_defaults(capsys):
    code, out, _ = run(capsys, "metric", "verify")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["certified"] and report["uniformly_positive"]


def test_verify_gz_uniform_fails(capsys):
    code, out, err = run(capsys, "metric", "verify", "--variant", "gz", "--require-uniform")
    assert code == EXIT_CERTIFICATE
    assert json.loads(out)["certified"] is False and "certificate failed" in err
    assert run(capsys, "metric", "verify", "--variant", "gz")[0] == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["--epsilon", "0.6"],          # beyond the first crossing time
    ["--a", "1.5"],
    ["--delta", "0.2"],
    ["--grid", "1"],
])
def test_verify_parameter_errors(capsys, argv):
    assert run(capsys, "metric", "verify", *argv)[0] == EXIT_INVALID


def test_verify_with_oracle(capsys):
    code, out, _ = run(capsys, "metric", "verify", "--oracle", "--grid", "1024")
    assert code == EXIT_OK and json.loads(out)["oracle"]["derivative_ok"]


def test_params_file_and_flag_precedence(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"variant": "gz", "a": 0.25, "grid": 256}))
    code, out, _ = run(capsys, "metric", "verify", "--in", str(path), "--a", "0.5")
    assert code == EXIT_OK
    prof = json.loads(out)["profile"]
    assert prof["variant"] == "gz" and prof["a"] == 0.5
    path.write_text(json.dumps({"alpha": 1}))
    assert run(capsys, "metric", "verify", "--in", str(path))[0] == EXIT_INVALID
    path.write_text("[1, 2")
    assert run(capsys, "metric", "verify", "--in", str(path))[0] == EXIT_PARSE


def test_psc_tol_override(capsys, monkeypatch):
    monkeypatch.setenv("PSC_TOL", "1e-3")
    code, out, _ = run(capsys, "metric", "verify", "--grid", "256")
    assert code == EXIT_OK and json.loads(out)["tol"] == 1e-3
    code, out, _ = run(capsys, "metric", "verify", "--grid", "256", "--tol", "1e-8")
    assert json.loads(out)["tol"] == 1e-8
    monkeypatch.setenv("PSC_TOL", "abc")
    assert run(capsys, "metric", "verify")[0] == EXIT_INVALID


def test_build_row_at_extension_point(capsys):
    # t* = pi/2 - 0.1 unsmoothed; F2(t*) = sin(t*) = cos(0.1)
    t_star = math.pi / 2 - 0.1
    code, out, _ = run(capsys, "metric", "build", "--delta", "0", "--epsilon", "0.1")
    assert code == EXIT_OK
    rows = [line.split(",") for line in out.splitlines()[1:]]
    row = min(rows, key=lambda r: abs(float(r[0]) - t_star))
    assert float(row[0]) == pytest.approx(t_star, abs=1e-15)
    assert float(row[3]) == pytest.approx(math.cos(0.1), abs=1e-7)


def test_build_csv_is_bit_stable(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert run(capsys, "metric", "build", "--out", str(path))[0] == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    header = paths[0].read_text().splitlines()[0]
    assert header == "t,F0,F1,F2,dF0,dF1,dF2,ric_t,ric_0,ric_1,ric_2"


def test_verify_writes_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    assert run(capsys, "metric", "verify", "--grid", "64", "--csv", str(path))[0] == EXIT_OK
    assert len(path.read_text().splitlines()) == 65


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == EXIT_OK and "diagram:klein-bottle-x-s1" in out
    code, out, _ = run(capsys, "catalog", "--json")
    names = [e["name"] for e in json.loads(out)]
    assert names == catalog_names()


@pytest.mark.parametrize("name", SPACES)
def test_json_round_trip_preserves_verdict(name):
    obj = catalog_lookup(name)
    again = from_json(json.loads(json.dumps(to_json(obj))), catalog_algebra)
    assert classify(again).to_json() == classify(obj).to_json()


def test_build_gz_first_row(capsys):
    code, out, _ = run(capsys, "metric", "build", "--variant", "gz", "--a", "0.5", "--b", "0.5", "--c", "1")
    assert code == EXIT_OK
    row = [float(x) for x in out.splitlines()[1].split(",")]
    assert 0 < row[0] < 1e-3
    assert row[1:4] == [pytest.approx(math.sin(row[0]), abs=1e-15)] * 3
    assert row[4:7] == [pytest.approx(1.0, abs=1e-6)] * 3
    assert run(capsys, "metric", "build", "--variant", "gz", "--a", "1.5")[0] == EXIT_INVALID
