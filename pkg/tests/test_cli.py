"""End-to-end CLI tests driven through subprocesses."""

import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from sphinterp import NodeSet, random_spherical


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "sphinterp.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def test_gen_nodes_writes_valid_nodeset(tmp_path: Path):
    out = tmp_path / "nodes.json"
    res = run_cli("gen-nodes", "--n", "3", "--plan", "2", "--out", str(out))
    assert res.returncode == 0, res.stderr
    assert "16 points: 4 latitudes with 4 points" in res.stdout
    nodes = NodeSet.from_json_dict(json.loads(out.read_text()))
    assert nodes.count() == 16


def test_gen_nodes_summary_for_two_groups(tmp_path: Path):
    res = run_cli(
        "gen-nodes", "--n", "3", "--plan", "1,1", "--out", str(tmp_path / "n.json")
    )
    assert res.returncode == 0
    assert "2 latitudes with 6 points and 2 latitudes with 2 points" in res.stdout


def test_gen_nodes_rejects_even_degree(tmp_path: Path):
    res = run_cli("gen-nodes", "--n", "4", "--plan", "2", "--out", str(tmp_path / "x.json"))
    assert res.returncode == 2
    assert "odd" in res.stderr


def test_gen_nodes_rejects_bad_plan(tmp_path: Path):
    res = run_cli("gen-nodes", "--n", "5", "--plan", "2,2", "--out", str(tmp_path / "x.json"))
    assert res.returncode == 2
    assert "(n + 1) / 2" in res.stderr


def test_gen_nodes_is_byte_deterministic(tmp_path: Path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("gen-nodes", "--n", "5", "--plan", "2,1", "--out", str(a))
    run_cli("gen-nodes", "--n", "5", "--plan", "2,1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_gen_nodes_latitude_file(tmp_path: Path):
    lat_file = tmp_path / "lats.json"
    lat_file.write_text(json.dumps([[math.pi / 6, math.pi / 3]]))
    res = run_cli(
        "gen-nodes",
        "--n",
        "3",
        "--plan",
        "2",
        "--latitudes",
        "file",
        "--lat-file",
        str(lat_file),
        "--out",
        str(tmp_path / "n.json"),
    )
    assert res.returncode == 0


def test_interpolate_constant_function(tmp_path: Path):
    nodes_path = tmp_path / "nodes.json"
    run_cli("gen-nodes", "--n", "3", "--plan", "2", "--out", str(nodes_path))
    coeffs = tmp_path / "coeffs.json"
    report = tmp_path / "report.json"
    res = run_cli(
        "interpolate",
        "--nodes",
        str(nodes_path),
        "--function",
        "one",
        "--out-coeffs",
        str(coeffs),
        "--out-report",
        str(report),
    )
    assert res.returncode == 0, res.stderr
    sol = json.loads(coeffs.read_text())
    assert sol["n"] == 3
    assert sol["a"][0][0] == pytest.approx(1.0, abs=1e-12)
    flat = [c for band in sol["a"] + sol["b"] for c in band]
    assert sum(abs(c) for c in flat) == pytest.approx(1.0, abs=1e-9)
    rep = json.loads(report.read_text())
    assert rep["residual_inf"] < 1e-10
    assert rep["condition_estimate"] >= 1.0


def test_interpolate_csv_roundtrip(tmp_path: Path):
    nodes_path = tmp_path / "nodes.json"
    run_cli("gen-nodes", "--n", "3", "--plan", "1,1", "--out", str(nodes_path))
    nodes = NodeSet.from_json_dict(json.loads(nodes_path.read_text()))
    planted = random_spherical(3, np.random.default_rng(5))
    data_path = tmp_path / "data.csv"
    with data_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "value"])
        for i, (th, ph) in enumerate(nodes.points()):
            writer.writerow([i, repr(float(planted.eval(th, ph)))])
    report = tmp_path / "report.json"
    res = run_cli(
        "interpolate",
        "--nodes",
        str(nodes_path),
        "--data",
        str(data_path),
        "--out-coeffs",
        str(tmp_path / "c.json"),
        "--out-report",
        str(report),
    )
    assert res.returncode == 0, res.stderr
    assert json.loads(report.read_text())["residual_inf"] < 1e-8


def test_interpolate_malformed_csv_names_line(tmp_path: Path):
    nodes_path = tmp_path / "nodes.json"
    run_cli("gen-nodes", "--n", "3", "--plan", "2", "--out", str(nodes_path))
    bad = tmp_path / "bad.csv"
    bad.write_text("index,value\n0,1.0\n1,not-a-number\n")
    res = run_cli(
        "interpolate",
        "--nodes",
        str(nodes_path),
        "--data",
        str(bad),
        "--out-coeffs",
        str(tmp_path / "c.json"),
        "--out-report",
        str(tmp_path / "r.json"),
    )
    assert res.returncode == 2
    assert ":3:" in res.stderr  # failing line number


def test_interpolate_eval_grid(tmp_path: Path):
    nodes_path = tmp_path / "nodes.json"
    run_cli("gen-nodes", "--n", "3", "--plan", "2", "--out", str(nodes_path))
    grid = tmp_path / "grid.csv"
    res = run_cli(
        "interpolate",
        "--nodes",
        str(nodes_path),
        "--function",
        "z",
        "--out-coeffs",
        str(tmp_path / "c.json"),
        "--out-report",
        str(tmp_path / "r.json"),
        "--eval-grid",
        str(grid),
        "--grid-size",
        "6",
    )
    assert res.returncode == 0
    rows = list(csv.reader(grid.open()))
    assert rows[0] == ["theta", "phi", "value"]
    assert len(rows) == 1 + 6 * 12
    th, ph, val = (float(x) for x in rows[1])
    assert val == pytest.approx(math.cos(th), abs=1e-9)


def test_cubature_legendre_apply_one(tmp_path: Path):
    rule_path = tmp_path / "rule.json"
    cert_path = tmp_path / "cert.json"
    res = run_cli(
        "cubature",
        "--m",
        "2",
        "--latitudes",
        "legendre",
        "--out-rule",
        str(rule_path),
        "--out-cert",
        str(cert_path),
        "--apply",
        "one",
    )
    assert res.returncode == 0, res.stderr
    printed = float(res.stdout.rsplit("=", 1)[1])
    assert printed == pytest.approx(4 * math.pi, abs=1e-10)
    cert = json.loads(cert_path.read_text())
    assert cert["weights_nonnegative"] is True
    assert cert["max_abs_error"] < 1e-11
    rule = json.loads(rule_path.read_text())
    assert len(rule["nodes"]) == 16


def test_cubature_apply_z2(tmp_path: Path):
    res = run_cli(
        "cubature",
        "--m",
        "2",
        "--out-rule",
        str(tmp_path / "rule.json"),
        "--out-cert",
        str(tmp_path / "cert.json"),
        "--apply",
        "z2",
    )
    assert res.returncode == 0
    printed = float(res.stdout.rsplit("=", 1)[1])
    assert printed == pytest.approx(4 * math.pi / 3, abs=1e-10)


def test_cubature_rejects_asymmetric_file(tmp_path: Path):
    lat_file = tmp_path / "lats.json"
    lat_file.write_text(json.dumps([0.4, 0.9, math.pi - 0.8, math.pi - 0.4]))
    res = run_cli(
        "cubature",
        "--m",
        "2",
        "--latitudes",
        "file",
        "--lat-file",
        str(lat_file),
        "--out-rule",
        str(tmp_path / "rule.json"),
        "--out-cert",
        str(tmp_path / "cert.json"),
    )
    assert res.returncode == 2
    assert "mirror" in res.stderr


def test_cubature_byte_deterministic(tmp_path: Path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run_cli(
            "cubature",
            "--m",
            "3",
            "--out-rule",
            str(path),
            "--out-cert",
            str(tmp_path / "cert.json"),
        )
    assert a.read_bytes() == b.read_bytes()


def test_verify_poisedness_suite(tmp_path: Path):
    out = tmp_path / "results.csv"
    res = run_cli("verify", "--suite", "poisedness", "--n", "3", "--out", str(out))
    assert res.returncode == 0, res.stdout + res.stderr
    rows = list(csv.DictReader(out.open()))
    assert rows
    assert all(r["status"] in ("pass", "info") for r in rows)
    cases = [r["case"] for r in rows]
    assert cases == sorted(cases)


def test_verify_dimension_suite():
    res = run_cli("verify", "--suite", "dimension", "--smax", "12")
    assert res.returncode == 0


def test_verify_unknown_suite():
    res = run_cli("verify", "--suite", "nope")
    assert res.returncode == 2
    assert "unknown suite" in res.stderr


def test_verify_rejects_bad_degree():
    res = run_cli("verify", "--suite", "poisedness", "--n", "4")
    assert res.returncode == 2
    assert "odd" in res.stderr


def test_verify_lemmas_cli_example():
    res = run_cli("verify", "--suite", "lemmas", "--m", "4", "--trials", "50")
    assert res.returncode == 0
    assert "checks passed" in res.stdout
