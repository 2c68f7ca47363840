import json
import subprocess
import sys

import pytest

from koenigslab.battery import battery_entry
from koenigslab.specio import save_psi


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "koenigslab.cli", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )


@pytest.fixture(scope="module")
def specs(tmp_path_factory):
    d = tmp_path_factory.mktemp("specs")
    paths = {}
    for name in ("strip", "comb", "gap"):
        p = d / f"{name}.json"
        save_psi(battery_entry(name).psi, p)
        paths[name] = str(p)
    return paths


def test_classify_json(specs):
    r = run_cli("classify", specs["strip"])
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["schema"] == "koenigs-lab/v1"
    assert out["class"] == "hyperbolic"


def test_decide_strip_yes(specs):
    r = run_cli("decide", specs["strip"])
    out = json.loads(r.stdout)
    assert out["weak_star_complete"] == "yes"
    assert "route" in out and out["route"]


def test_decide_comb_cross_check(specs):
    r = run_cli(
        "decide", specs["comb"], "--cross-check", "--window=-2,3,-1,2",
        "--resolution", "512",
    )
    out = json.loads(r.stdout)
    assert out["weak_star_complete"] == "no"
    assert out["topological"]["verdict"] == "no"
    assert out["routes_agree"] == "yes"


def test_oracle_outputs_pgm_and_counts(specs, tmp_path):
    pgm = tmp_path / "gap.pgm"
    r = run_cli(
        "oracle", specs["gap"], "--window=-4,4,-1.5,2.5", "--resolution", "256",
        "--pgm", str(pgm),
    )
    out = json.loads(r.stdout)
    assert out["components"] == 2
    assert out["int_closure_ok"] == "yes"
    assert pgm.read_bytes().startswith(b"P5")


def test_oracle_window_too_small(specs):
    r = run_cli("oracle", specs["gap"], "--window=-4,4,-0.2,1.2", "--resolution", "128")
    assert r.returncode == 2
    out = json.loads(r.stdout)
    assert out["error"] == "window_too_small"
    assert "y-range" in out["guidance"]


def test_freq_csv(tmp_path):
    csvp = tmp_path / "f.csv"
    r = run_cli(
        "freq", "--domain", "halfplane", "--p", "2", "--grid=-1,0,0,0",
        "--grid-n", "3", "--csv", str(csvp),
    )
    out = json.loads(r.stdout)
    assert out["counts"]["member"] >= 2
    lines = csvp.read_text().strip().splitlines()
    assert lines[0] == "re_lambda,im_lambda,status"
    assert len(lines) == 10


def test_freq_region_for_spec(specs):
    r = run_cli("freq", "--domain", specs["strip"])
    out = json.loads(r.stdout)
    assert out["exact_infty"]["exact"] is True


def test_approx_strip_csv_and_svg(tmp_path):
    csvp, svgp = tmp_path / "c.csv", tmp_path / "c.svg"
    r = run_cli(
        "approx", "--demo", "strip", "--n", "32", "--csv", str(csvp),
        "--svg", str(svgp),
    )
    out = json.loads(r.stdout)
    assert out["final_error"] < 0.15
    assert svgp.read_text().startswith("<svg")
    rows = csvp.read_text().strip().splitlines()[1:]
    errs = [float(line.split(",")[1]) for line in rows]
    assert errs == sorted(errs, reverse=True)


def test_approx_logdomain_univalence(tmp_path):
    csvp = tmp_path / "pipeline.csv"
    r = run_cli("approx", "--demo", "logdomain", "--n", "4096", "--csv", str(csvp))
    out = json.loads(r.stdout)
    assert out["univalent"] is True
    assert out["final_error"] < 5e-3
    rows = csvp.read_text().strip().splitlines()[1:]
    assert len(rows) == 3  # one line per polynomial degree


def test_byte_identical_reruns(specs):
    a = run_cli("decide", specs["comb"], "--p", "1.0").stdout
    b = run_cli("decide", specs["comb"], "--p", "1.0").stdout
    assert a == b


def test_strict_flag_on_unknown(tmp_path):
    # a domain with an undeclared oscillatory-looking piece stays unknown;
    # simplest trigger: comb p-completeness is unknown by design
    p = tmp_path / "comb.json"
    save_psi(battery_entry("comb").psi, p)
    r = run_cli("decide", str(p), "--p", "1.0", "--strict")
    assert r.returncode == 3
    r2 = run_cli("decide", str(p), "--p", "1.0")
    assert r2.returncode == 0


def test_schema_violation_pointer(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"interval": [0, 1], "pieces": [{"kind": "nope"}]}))
    r = run_cli("decide", str(bad))
    assert r.returncode == 2
    assert "/pieces/0" in r.stderr
