import csv
import json
import subprocess
import sys

import pytest

from lojparam import MultiPoly, ParamFamily
from lojparam.cli import emit_csv, main, parse_point, parse_scalar, run
from lojparam.errors import SchemaError
from lojparam.io import (
    dumps,
    family_from_json,
    family_to_json,
    poly_from_json,
    poly_to_json,
    region_from_json,
    validate,
)

TX2 = {"vars": ["t", "x"], "param": "t",
       "terms": [{"exp": [1, 1], "re_rat": "1"}, {"exp": [0, 2], "re_rat": "1"}]}
XSQ = {"vars": ["x"], "terms": [{"exp": [2], "re": 1.0, "im": 0.0}]}
XY = {"vars": ["x", "y"], "terms": [{"exp": [1, 1], "re": 1.0}]}
CUSP = {"vars": ["x", "y"], "expr": "y**2 - x**3"}
SLICE = {"vars": ["x", "t"], "expr": "t**2 - x"}
X2_MINUS_T = {"vars": ["t", "x"], "param": "t", "expr": "x**2 - t"}
Y_TX = {"vars": ["t", "x", "y"], "param": "t", "expr": "y - t*x"}
Y_ONLY = {"vars": ["t", "x", "y"], "param": "t", "expr": "y"}
Y_X2 = {"vars": ["t", "x", "y"], "param": "t", "expr": "y - x**2"}
G_FIB = {"vars": ["x", "y"], "expr": "x**3 + x*y"}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, doc in dict(tx2=TX2, xsq=XSQ, xy=XY, cusp=CUSP, slice=SLICE, x2t=X2_MINUS_T,
                          ytx=Y_TX, yonly=Y_ONLY, yx2=Y_X2, gfib=G_FIB).items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        out[name] = str(p)
    return out


# --- schemas and round trips ---------------------------------------------------------

def test_schema_accepts_examples():
    for doc in (XSQ, XY, CUSP, SLICE):
        validate(doc, "polynomial")
    for doc in (TX2, X2_MINUS_T, Y_TX):
        validate(doc, "family")
    validate({"center": [[0, 0]], "radii": [0.5]}, "region")


@pytest.mark.parametrize("doc, where", [
    ({"terms": []}, "<root>"),
    ({"vars": ["x"], "terms": [{"exp": [-1], "re": 1.0}]}, "terms/0/exp/0"),
    ({"vars": ["x"], "terms": [{"exp": [1], "re": "one"}]}, "terms/0"),
])
def test_schema_violations_report_location(doc, where):
    with pytest.raises(SchemaError) as err:
        poly_from_json(doc)
    assert where in str(err.value)


def test_family_param_must_be_a_variable():
    with pytest.raises(SchemaError):
        family_from_json({**TX2, "param": "s"})


def test_exact_and_float_modes():
    f = poly_from_json(TX2, "family")
    assert f.exact
    g = poly_from_json(XSQ)
    assert not g.exact
    h = poly_from_json({"vars": ["x"], "mode": "exact", "terms": [{"exp": [1], "re": 0.5}]})
    assert h.exact and h.terms[(1,)] == 0.5


def test_roundtrip_lossless():
    f = MultiPoly.parse("x**2/3 - I*x*y + 0.1", ["x", "y"])
    assert poly_from_json(json.loads(dumps(poly_to_json(f)))) == f
    g = (f.to_float() * 1.7).to_float()
    assert poly_from_json(json.loads(dumps(poly_to_json(g)))) == g
    fam = ParamFamily(MultiPoly.parse("t*x + x**2", ["t", "x"]), base_point=(0,))
    back = family_from_json(json.loads(dumps(family_to_json(fam))))
    assert back.poly == fam.poly and back.base_point == (0j,)


def test_region_from_json():
    r = region_from_json({"center": [[0.5, 0], [0, 1]], "radii": [0.1, 0.2]})
    assert r.center == (0.5, 1j) and r.radii == (0.1, 0.2)
    with pytest.raises(SchemaError):
        region_from_json({"center": [[0, 0]], "radii": [-1]})


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        dumps({"a": float("nan")})


# --- option parsing ----------------------------------------------------------------------

def test_option_parsing():
    assert parse_scalar("1-0.5i") == 1 - 0.5j
    assert parse_point(None, 2) == (0j, 0j)
    assert parse_point("1, 2j", 2) == (1, 2j)
    with pytest.raises(SchemaError):
        parse_point("1", 2)


# --- commands and exit codes -----------------------------------------------------------------

def _run(*argv):
    env, status = run(list(argv))
    json.loads(dumps(env))  # serializable
    assert env["exit_status"] == status
    assert "seed" in env["request"]
    return env, status


def test_order_command(files):
    env, st = _run("order", "--input", files["tx2"])
    assert st == 0 and env["result"]["order"] == 2
    assert env["request"]["drop_tol"] == 1e-12


def test_loj_verify_failing_exponent(files):
    env, st = _run("loj-verify", "--input", files["xsq"], "--alpha", "1.5", "--radius", "0.5", "--seed", "7")
    assert st == 1
    assert env["result"]["verdict"] is False
    assert any("decay" in w for w in env["warnings"])


def test_family_uniform_command(files):
    env, st = _run("family-uniform-loj", "--input", files["tx2"], "--t0", "0", "--tgrid", "geometric:0.5,8", "--seed", "7")
    assert st == 0
    res = env["result"]
    assert res["alpha"] == 2 and res["verdict"] is True
    assert len(res["per_t"]) == 8


@pytest.mark.parametrize("argv, status", [
    (["degree", "--input", "{cusp}"], 0),
    (["dist", "--input", "{xy}", "--point", "0.3,0.1"], 0),
    (["slice-degree", "--input", "{slice}", "--radii", "0.1,1"], 0),
    (["slice-degree", "--input", "{cusp}", "--frame"], 0),
    (["loj-verify", "--input", "{cusp}", "--radius", "0.1"], 0),
    (["loj-estimate", "--input", "{cusp}", "--radius", "0.1"], 0),
    (["family-orders", "--input", "{tx2}"], 0),
    (["family-kuratowski", "--input", "{x2t}", "--tgrid", "geometric:0.25,10"], 0),
    (["family-tworzewski", "--input", "{x2t}", "--anchor", "0", "--direction", "1", "--disc-radius", "0.75",
      "--tgrid", "geometric:0.25,10"], 0),
    (["family-fibres", "--input", "{gfib}", "--anchor", "1,-1", "--direction", "0,1",
      "--tgrid", "geometric:0.5,8,0.9"], 0),
    (["family-distance", "--input", "{ytx}", "--probes", "0,0.2", "--tgrid", "0.5,0.25,0.1,0.05,0.01"], 0),
    (["family-properness", "--input", "{ytx}", "--input-y", "{yx2}", "--radius", "1"], 0),
    (["family-properness", "--input", "{yonly}", "--input-y", "{yonly}"], 2),
    (["family-tworzewski", "--input", "{x2t}", "--anchor", "0", "--direction", "1",
      "--tgrid", "geometric:0.25,10"], 2),
    (["family-tworzewski", "--input", "{x2t}"], 2),
    (["degree", "--input", "{xy}", "--point", "1,1"], 2),
])
def test_command_exit_codes(files, argv, status):
    argv = [a.format(**files) for a in argv]
    env, st = _run(*argv)
    assert st == status
    if status == 2:
        assert env["result"] is None and env["error"]["message"]


def test_schema_violation_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vars": ["x"], "terms": [{"exp": [1, 2], "re": 1.0}]}))
    assert main(["order", "--input", str(bad)]) == 2
    assert "SchemaError" in capsys.readouterr().err
    bad.write_text("{not json")
    assert main(["order", "--input", str(bad)]) == 2


def test_every_default_is_echoed(files):
    env, _ = _run("loj-verify", "--input", files["cusp"])
    req = env["request"]
    for key in ("alpha", "n_samples", "point", "radius", "radii", "seed"):
        assert key in req
    assert req["n_samples"] == 512 and req["radius"] == 0.5


# --- output: CSV, determinism, wall time -----------------------------------------------------------

def _read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_csv_shell_profile(files, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["loj-verify", "--input", files["cusp"], "--radius", "0.1", "--csv", str(out),
                 "--output", str(tmp_path / "r.json")]) == 0
    rows = _read_csv(out)
    assert rows[0] == ["shell_radius", "min_ratio"] and len(rows) == 9
    env = json.loads((tmp_path / "r.json").read_text())
    assert float(rows[1][1]) == env["result"]["shell_profile"][0][1]


def test_csv_order_and_uniform(files, tmp_path):
    out = tmp_path / "o.csv"
    main(["family-orders", "--input", files["tx2"], "--csv", str(out), "--output", str(tmp_path / "o.json")])
    rows = _read_csv(out)
    assert rows[0] == ["t", "order"] and rows[1] == ["0", "2"] and rows[2] == ["0.5", "1"]
    out = tmp_path / "u.csv"
    main(["family-uniform-loj", "--input", files["tx2"], "--tgrid", "0.1,0.05", "--csv", str(out),
          "--output", str(tmp_path / "u.json")])
    rows = _read_csv(out)
    assert rows[0] == ["t", "c_of_t"] and len(rows) == 4
    assert all(float(r[1]) > 0 for r in rows[1:])


def test_csv_non_tabular(files, tmp_path):
    env, _ = run(["order", "--input", files["tx2"]])
    with pytest.raises(ValueError):
        emit_csv(env, tmp_path / "x.csv")
    assert main(["order", "--input", files["tx2"], "--csv", str(tmp_path / "x.csv"),
                 "--output", str(tmp_path / "x.json")]) == 2


def test_byte_identical_reports(files, tmp_path):
    argv = ["family-uniform-loj", "--input", files["tx2"], "--tgrid", "0.1,0.05", "--seed", "3"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(argv + ["--output", str(a)])
    main(argv + ["--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["wall_time"] is None


def test_record_time(files):
    env, _ = run(["order", "--input", files["tx2"], "--record-time"])
    assert env["wall_time"] >= 0


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "lojparam", "order", "--input", files["tx2"]],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["order"] == 2
    proc = subprocess.run([sys.executable, "-m", "lojparam", "loj-verify", "--input", files["xsq"],
                           "--alpha", "1.5", "--seed", "7"], capture_output=True, text=True, check=False)
    assert proc.returncode == 1
