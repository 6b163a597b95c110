import csv
import io
import json
import math

import numpy as np
import pytest

from ricker_lab import ModelParams, certify_constant, thresholds
from ricker_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_equilibrium_human_and_json(capsys):
    code, out, _ = run(capsys, "equilibrium", "--r", "2", "--h", "1.7182818")
    assert code == 0
    assert "y_bar=2.898496" in out and "verdict=Unstable" in out
    code, out, _ = run(capsys, "equilibrium", "--r", "2", "--h", "1.7182818", "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"r", "h", "y_bar", "trace", "det", "eig_re", "eig_im", "verdict", "residual"}
    assert payload["y_bar"] == pytest.approx(2.898, abs=1e-3)
    assert payload["verdict"] == "Unstable"


def test_equilibrium_zero_stocking(capsys):
    code, out, _ = run(capsys, "equilibrium", "--r", "1", "--h", "0", "--json")
    assert code == 0
    assert json.loads(out)["y_bar"] == pytest.approx(1.0, abs=0.0)


def test_two_cycle_json(capsys):
    code, out, _ = run(capsys, "two-cycle", "--r", "1", "--h0", "2", "--h1", "1.5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"r", "h0", "h1", "z0", "z1", "trace", "det", "eig_re", "eig_im", "verdict", "residual"}
    assert payload["z0"] == pytest.approx(2.230, abs=1e-3)
    assert payload["z1"] == pytest.approx(2.498, abs=1e-3)
    assert payload["verdict"] == "LAS"


def test_certify_constant_json(capsys):
    code, out, _ = run(capsys, "certify", "--r", "1.8", "--h", "2.6", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "GloballyStable"
    assert payload["provenance"].startswith("r <= r2")
    code, out, _ = run(capsys, "certify", "--r", "2", "--h", "2.6", "--json")
    payload = json.loads(out)
    assert payload["verdict"] == "AbsorbingBox"
    assert payload["box"] == pytest.approx([2.741, 4.969], abs=5e-3)


def test_certify_periodic_json(capsys):
    code, out, _ = run(capsys, "certify", "--r", "1", "--h0", "2", "--h1", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "AbsorbingBox"
    assert payload["even_range"] == pytest.approx([1.109, 3.966], abs=2e-3)
    assert payload["odd_range"] == pytest.approx([2.110, 3.306], abs=2e-3)


def test_exit_codes(capsys):
    code, _, err = run(capsys, "equilibrium", "--r", "-3", "--h", "1")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "scan-ns", "--h", "1", "--s-lo", "0.1", "--s-hi", "1.0")
    assert code == 3 and "numeric failure" in err
    with pytest.raises(SystemExit) as exc:
        main(["equilibrium", "--r", "not-a-number", "--h", "1"])
    assert exc.value.code == 2


def test_orbit_csv_single_row(capsys):
    code, out, _ = run(capsys, "orbit", "--r", "1", "--h", "1", "--x0", "1", "--xprev", "1", "--n", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,x_n,x_prev,parity"
    assert len(lines) == 2
    n, xn, xprev, parity = lines[1].split(",")
    assert n == "1" and parity == "1"
    assert float(xn) == pytest.approx(1.0 * math.exp(0.0) + 1.0)
    assert float(xprev) == 1.0


def test_orbit_csv_transient_and_parity(capsys):
    code, out, _ = run(capsys, "orbit", "--r", "1.5", "--h0", "0.82", "--h1", "1.8",
                       "--x0", "1", "--xprev", "1", "--n", "6", "--transient", "100")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 6
    first_n = int(rows[0].split(",")[0])
    assert first_n == 101
    for row in rows:
        n, _, _, parity = row.split(",")
        assert int(parity) == int(n) % 2


def test_sweep_single_cell_matches_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--mode", "constant",
                       "--h-lo", "3", "--h-hi", "3", "--nh", "1",
                       "--r-lo", "2", "--r-hi", "2", "--nr", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h,r,verdict,y_bar,r1,r2,notes"
    cell = lines[1].split(",")
    verdict = certify_constant(ModelParams.constant(2.0, 3.0))
    assert cell[2] == verdict.tag.value
    ts = thresholds(3.0)
    assert float(cell[4]) == pytest.approx(ts.r1, abs=1e-15)
    assert float(cell[5]) == pytest.approx(ts.r2, abs=1e-15)


def test_sweep_tags_match_certify_on_random_cells(capsys, tmp_path):
    out_path = tmp_path / "cells.csv"
    code, _, _ = run(capsys, "sweep", "--mode", "constant",
                     "--h-lo", "0.4", "--h-hi", "6", "--nh", "12",
                     "--r-lo", "0.3", "--r-hi", "4", "--nr", "10",
                     "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().strip().splitlines()[1:]
    rng = np.random.default_rng(73)
    for idx in rng.choice(len(rows), size=25, replace=False):
        h, r, tag = rows[idx].split(",")[:3]
        verdict = certify_constant(ModelParams.constant(float(r), float(h)))
        assert verdict.tag.value == tag


def test_sweep_round_trip_and_curves(capsys, tmp_path):
    out_path = tmp_path / "cells.csv"
    code, _, _ = run(capsys, "sweep", "--mode", "constant",
                     "--h-lo", "0.5", "--h-hi", "5", "--nh", "8",
                     "--r-lo", "0.5", "--r-hi", "3", "--nr", "8",
                     "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    parsed = list(csv.reader(io.StringIO(text)))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(parsed)
    assert buf.getvalue() == text
    curves = (tmp_path / "cells.csv.curves.csv").read_text().strip().splitlines()
    assert curves[0] == "h,r1,r2,r_diag"
    h, r1, r2, rdiag = map(float, curves[1].split(","))
    ts = thresholds(h)
    assert r1 == ts.r1 and r2 == ts.r2 and rdiag == h


def test_sweep_deterministic_across_thread_counts(capsys, tmp_path, monkeypatch):
    outputs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("RICKER_LAB_THREADS", threads)
        path = tmp_path / f"cells_{threads}.csv"
        code, _, _ = run(capsys, "sweep", "--mode", "constant",
                         "--h-lo", "0.5", "--h-hi", "8", "--nh", "16",
                         "--r-lo", "0.3", "--r-hi", "5", "--nr", "16",
                         "--out", str(path))
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_sweep_boundary_coherence(capsys, tmp_path):
    out_path = tmp_path / "cells.csv"
    code, _, _ = run(capsys, "sweep", "--mode", "constant",
                     "--h-lo", "0.5", "--h-hi", "8", "--nh", "20",
                     "--r-lo", "0.2", "--r-hi", "6", "--nr", "30",
                     "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().strip().splitlines()[1:]
    cell_height = (6.0 - 0.2) / 29
    for row in rows:
        parts = row.split(",")
        h, r, tag, _, r1, r2 = parts[0], parts[1], parts[2], parts[3], parts[4], parts[5]
        h, r, r1, r2 = map(float, (h, r, r1, r2))
        if r < r2 - cell_height:
            assert tag == "GloballyStable"
        if tag == "Unstable":
            assert r > r1


def test_sweep_periodic_not_applicable_region(capsys, tmp_path):
    out_path = tmp_path / "p.csv"
    code, _, _ = run(capsys, "sweep", "--mode", "periodic", "--r", "1",
                     "--h0-lo", "0.3", "--h0-hi", "2.7", "--nh0", "7",
                     "--h1-lo", "0.3", "--h1-hi", "2.7", "--nh1", "7",
                     "--art-grid", "64", "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().strip().splitlines()
    assert rows[0] == "h0,h1,r,verdict,z0,z1,notes"
    for row in rows[1:]:
        parts = row.split(",")
        h0, h1, tag = float(parts[0]), float(parts[1]), parts[3]
        if min(h0, h1) < 1.0 or h0 == h1:
            assert tag == "NotApplicable"
        else:
            assert tag in ("GloballyStable", "AbsorbingBox")


def test_sweep_rejects_bad_grid(capsys):
    code, _, err = run(capsys, "sweep", "--mode", "constant",
                       "--h-lo", "5", "--h-hi", "1", "--nh", "4",
                       "--r-lo", "1", "--r-hi", "2", "--nr", "4")
    assert code == 2 and "grid" in err


def test_scan_ns_json(capsys):
    code, out, _ = run(capsys, "scan-ns", "--h", "1", "--s-lo", "1.0", "--s-hi", "1.6", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["s_star"] == pytest.approx(2.0 - math.log(2.0), abs=1e-6)
    assert payload["complex_pair"] is True


def test_artificial_cycles_cli(capsys):
    code, out, _ = run(capsys, "artificial-cycles", "--r", "1", "--h0", "2", "--h1", "1",
                       "--grid", "512", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 2
    quads = sorted(tuple(q) for q in payload["cycles"])
    assert quads[0] == pytest.approx((1.109, 3.306, 3.966, 2.110), abs=2e-3)


def test_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("r=2\nh=1.7182818\njson=true\n")
    code, out, _ = run(capsys, "equilibrium", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["y_bar"] == pytest.approx(2.898, abs=1e-3)
    # explicit flag beats the file
    code, out, _ = run(capsys, "equilibrium", "--config", str(cfg), "--r", "1.5")
    assert json.loads(out)["y_bar"] == pytest.approx(2.589, abs=1e-3)
