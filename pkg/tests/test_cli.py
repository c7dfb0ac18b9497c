import csv
import json
import math

import numpy as np
import pytest

from syklab import errors, limits
from syklab.cli import main
from syklab.ensemble import derive_seeds
from syklab.q2 import random_antisymmetric


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def read_rows(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.reader(lines))


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SYKLAB_CACHE_DIR", raising=False)
    yield tmp_path
    limits.set_cache_dir(None)


def test_sample_counts_and_schema(capsys, in_tmp):
    rep = report(capsys, "sample", "--n", 16, "--q", 4, "--dist", "gaussian", "--samples", 10, "--seed", 7)
    assert rep["schema_version"] == 1 and rep["eigenvalues"] == 2560
    text = (in_tmp / "eigs.csv").read_text().splitlines()
    assert text[0] == "# schema_version: 1"
    assert text[1] == "seed,n,q,index,eigenvalue"
    rows = read_rows(in_tmp / "eigs.csv")[1:]
    assert len(rows) == 10 * 256
    assert [int(s) for s in dict.fromkeys(r[0] for r in rows)] == derive_seeds(7, 10)
    hist = read_rows(in_tmp / "hist.csv")
    assert hist[0] == ["bin_left", "bin_right", "density"] and len(hist) == 102


def test_sample_byte_identical_across_reruns_and_workers(capsys, in_tmp):
    base = ["sample", "--n", 12, "--q", 4, "--samples", 4, "--seed", 3]
    report(capsys, *base, "--eigs-out", "a.csv", "--hist-out", "ha.csv")
    report(capsys, *base, "--eigs-out", "b.csv", "--hist-out", "hb.csv")
    report(capsys, *base, "--eigs-out", "c.csv", "--hist-out", "hc.csv", "--workers", 2)
    a = (in_tmp / "a.csv").read_bytes()
    assert a == (in_tmp / "b.csv").read_bytes() == (in_tmp / "c.csv").read_bytes()
    assert (in_tmp / "ha.csv").read_bytes() == (in_tmp / "hc.csv").read_bytes()


def test_sample_q1_two_values(capsys, in_tmp):
    report(capsys, "sample", "--n", 12, "--q", 1, "--samples", 5, "--seed", 2)
    values = {}
    for seed, n, q, idx, val in read_rows(in_tmp / "eigs.csv")[1:]:
        values.setdefault(seed, set()).add(round(float(val), 10))
    assert len(values) == 5 and all(len(v) == 2 for v in values.values())


def test_config_file_and_override(capsys, in_tmp):
    (in_tmp / "cfg.json").write_text(json.dumps({"n": 8, "q": 2, "samples": 3, "seed": 1, "eigs-out": "cfg.csv"}))
    rep = report(capsys, "sample", "--config", "cfg.json", "--samples", 2)
    assert rep["config"]["samples"] == 2 and rep["config"]["n"] == 8
    assert len(read_rows(in_tmp / "cfg.csv")) == 1 + 2 * 16


def test_exit_codes(capsys, in_tmp):
    codes = {cls.exit_code for cls in (errors.InvalidArgument, errors.ResourceLimit, errors.NumericError,
                                       errors.ParseError, errors.InvariantViolation, errors.BoundViolation)}
    assert len(codes) == 6 and 0 not in codes
    code, _, err = run(capsys, "sample", "--n", 8, "--q", 2)
    assert code == errors.InvalidArgument.exit_code and "--seed" in err
    code, _, err = run(capsys, "sample", "--n", 26, "--q", 2, "--seed", 1)
    assert code == errors.ResourceLimit.exit_code and "dense cap" in err
    code, _, err = run(capsys, "sample", "--n", 8, "--q", 2, "--seed", 1, "--coupling-budget", 10)
    assert code == errors.ResourceLimit.exit_code and "budget" in err
    (in_tmp / "bad.json").write_text('{"n": 8,\n "q": }')
    code, _, err = run(capsys, "sample", "--config", "bad.json")
    assert code == errors.ParseError.exit_code and "line 2" in err
    (in_tmp / "extra.json").write_text('{"colour": "red"}')
    code, _, err = run(capsys, "sample", "--config", "extra.json")
    assert code == errors.InvalidArgument.exit_code and "colour" in err
    (in_tmp / "typed.json").write_text('{"n": "eight", "q": 2, "seed": 1}')
    code, _, _ = run(capsys, "sample", "--config", "typed.json")
    assert code == errors.InvalidArgument.exit_code


def test_compare_report(capsys, in_tmp):
    report(capsys, "sample", "--n", 20, "--q", 2, "--samples", 8, "--seed", 11)
    rep = report(capsys, "compare", "eigs.csv", "--hist", "hist.csv")
    assert rep["n"] == 20 and rep["q"] == 2 and rep["samples"] == 8
    assert math.isclose(rep["selected_a"], 0.2)
    ks = {r["family"]: r["ks"] for r in rep["ks"]}
    assert ks[rep["selected_family"]] < ks["semicircle"]
    assert ks["histogram"] < 0.02
    assert rep["minimal_ks_family"] == min(ks, key=ks.get)
    assert [r["k"] for r in rep["moments"]] == list(range(1, 9))
    assert all(r["stderr"] > 0 for r in rep["moments"])
    row4 = rep["moments"][3]
    assert row4["theory"]["gaussian"] == 3.0 and row4["theory"]["semicircle"] == 2.0
    assert math.isclose(row4["theory"][rep["selected_family"]], 2 + math.exp(-0.4))


def test_compare_explicit_family(capsys, in_tmp):
    report(capsys, "sample", "--n", 10, "--q", 3, "--samples", 2, "--seed", 1)
    rep = report(capsys, "compare", "eigs.csv", "--families", "qhermite:0.5,semicircle")
    assert rep["ks"][0]["family"] == f"qhermite(y={-math.exp(-1.0):.6g})"


@pytest.mark.parametrize("body,line", [
    ("seed,n,q,index,eigenvalue\n1,4,2,0,0.5\n1,4,2,1,abc\n", 3),
    ("seed,n,q,index,value\n1,4,2,0,0.5\n", 1),
    ("seed,n,q,index,eigenvalue\n1,4,2,0,0.5\n1,4,2,1\n", 3),
    ("seed,n,q,index,eigenvalue\n1,4,2,0,0.5\n1,6,2,1,0.1\n", 3),
    ("seed,n,q,index,eigenvalue\n1,4,2,0,0.5\n1,4,2,2,0.1\n", 3),
    ("seed,n,q,index,eigenvalue\n", 2),
])
def test_compare_parse_errors(capsys, in_tmp, body, line):
    (in_tmp / "bad.csv").write_text("# schema_version: 1\n" + body)
    code, _, err = run(capsys, "compare", "bad.csv")
    assert code == errors.ParseError.exit_code
    assert f"line {line + 1}:" in err


def test_theory_tables(capsys, in_tmp):
    rep = report(capsys, "theory", "--k-max", 12, "--a-list", "0,0.3,1,inf", "--density-dir", "grids",
                 "--moments-out", "moments.json")
    recs = json.loads((in_tmp / "moments.json").read_text())
    assert recs["schema_version"] == 1
    table = {(r["a"], r["k"]): r["value"] for r in recs["records"]}
    for k, df, cat in [(2, 1, 1), (4, 3, 2), (6, 15, 5), (8, 105, 14), (10, 945, 42), (12, 10395, 132)]:
        assert table[(0.0, k)] == df
        assert table[("inf", k)] == cat
    for a in (0.0, 0.3, 1.0):
        assert math.isclose(table[(a, 4)], 2 + math.exp(-2 * a))
    assert all(table[(a, k)] == 0.0 for a in (0.0, "inf") for k in (1, 3, 5))
    grid = read_rows(in_tmp / "grids" / "density_even_a0.3.csv")
    assert grid[0] == ["x", "density"] and len(grid) == 402
    assert all(abs(d["mass"] - 1) < 1e-6 for d in rep["densities"])


def test_theory_odd_and_limits(capsys, in_tmp):
    rep = report(capsys, "theory", "--k-max", 4, "--a-list", "0,1", "--parity", "odd")
    assert rep["densities"][0]["family"] == "atoms"
    assert {(r["a"], r["k"]): r["value"] for r in rep["records"]}[(1.0, 4)] == 2 - math.exp(-2)
    code, _, _ = run(capsys, "theory", "--k-max", 15)
    assert code == errors.InvalidArgument.exit_code
    code, _, _ = run(capsys, "theory", "--a-list", "0,-1")
    assert code == errors.InvalidArgument.exit_code


def test_q2_command(capsys, in_tmp):
    rep = report(capsys, "q2", "--n", 2, "--samples", 4, "--seed", 9)
    for s, v in zip(derive_seeds(9, 4), rep["values"]):
        assert v * math.sqrt(2) == pytest.approx(abs(random_antisymmetric(2, s)[0, 1]), rel=1e-15)
    _, out1, _ = run(capsys, "q2", "--n", 50, "--samples", 3, "--seed", 1)
    _, out2, _ = run(capsys, "q2", "--n", 50, "--samples", 3, "--seed", 1, "--workers", 2)
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["deviation"] == rep["mean"] - rep["reference"]
    assert math.isclose(rep["reference"], 4 * math.sqrt(2) / (3 * math.pi))


def test_lmax_command(capsys, in_tmp):
    _, out1, _ = run(capsys, "lmax", "--n", 12, "--q", 4, "--samples", 3, "--seed", 5)
    _, out2, _ = run(capsys, "lmax", "--n", 12, "--q", 4, "--samples", 3, "--seed", 5, "--workers", 2)
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["bound"] == math.sqrt(12 * math.log(2)) and rep["bound_holds"]
    assert rep["failed_samples"] == 0
    rep = report(capsys, "lmax", "--n", 12, "--q", 2, "--samples", 2, "--seed", 5)
    assert rep["bound"] is None and "suppressed" in rep["bound_check"]


def test_lmax_nonconvergence_surfaced(capsys, in_tmp):
    code, out, _ = run(capsys, "lmax", "--n", 12, "--q", 4, "--samples", 2, "--seed", 5, "--max-iter", 3)
    assert code == errors.NumericError.exit_code
    rep = json.loads(out)
    assert rep["failed_samples"] == 2 and all("error" in r for r in rep["per_sample"])
    code, _, err = run(capsys, "lmax", "--n", 34, "--q", 4, "--samples", 1, "--seed", 5)
    assert code == errors.ResourceLimit.exit_code and "matrix-free cap" in err


def test_fbound_command(capsys, in_tmp):
    rep = report(capsys, "fbound", "--m-max", 2)
    assert rep["passed"] and rep["max_ratio"] <= 1
    rep = report(capsys, "fbound", "--m-max", 12)
    assert rep["passed"] and rep["symmetry_violations"] == []


def test_intersect_command(capsys, in_tmp):
    rep = report(capsys, "intersect", "--n", 100, "--q", 10, "--trials", 5000, "--seed", 4)
    assert sum(rep["counts"]) == 5000 and rep["poisson_mean"] == 1.0
    assert abs(rep["mean"] - 1.0) < 4 * rep["mean_stderr"]
    assert np.isclose(sum(rep["exact_pmf"]), 1.0)


def test_cache_dir_does_not_change_results(capsys, in_tmp, monkeypatch):
    report(capsys, "sample", "--n", 10, "--q", 4, "--samples", 2, "--seed", 1)
    _, plain, _ = run(capsys, "compare", "eigs.csv")
    monkeypatch.setenv("SYKLAB_CACHE_DIR", str(in_tmp / "cache"))
    _, first, _ = run(capsys, "compare", "eigs.csv")
    assert list((in_tmp / "cache").glob("qhermite_cdf_*.npy"))
    _, second, _ = run(capsys, "compare", "eigs.csv")
    assert plain == first == second
