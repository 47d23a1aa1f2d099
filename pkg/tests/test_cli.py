import json
import subprocess
import sys

import pytest

from magnonics.cli import main, read_csv
from magnonics.sweep import RECORD_FIELDS

CSV_HEADER = "axis1,axis2,stable,E_N,S_ab,S_ba,GIP,mancini,var_X,var_P,var_x1,var_y1,var_x2,var_y2,sq_db_x1,R_d,R_o1,R_o2,R_min"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_point_vacuum(capsys):
    code, out, _ = run(capsys, "point", "--lambda", "0", "--r", "0", "--g1", "0", "--g2", "0",
                       "--delta-d", "0", "--delta-o", "0")
    assert code == 0
    rep = json.loads(out)
    assert rep["stable"] is True
    for v in rep["variances"].values():
        assert v == pytest.approx(0.5, abs=1e-9)
    for pair in rep["bipartite"].values():
        assert pair["entanglement"] == 0 and pair["steering_ab"] == 0 and pair["steering_ba"] == 0
    assert rep["tripartite"]["r_min"] == 0


def test_point_baseline_entangled(capsys):
    code, out, _ = run(capsys, "point", "--lambda", "0.2", "--r", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["bipartite"]["o1|o2"]["entanglement"] > 0
    assert rep["meta"]["params"]["lambda"] == 0.2


def test_point_unstable(capsys):
    code, out, _ = run(capsys, "point", "--lambda", "0.6", "--g1", "0", "--g2", "0")
    assert code == 2
    rep = json.loads(out)
    assert rep["stable"] is False
    assert rep["bipartite"]["o1|o2"]["entanglement"] is None


def test_bad_flag_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["point", "--nonsense", "1"])
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_negative_gain_exit_1(capsys):
    code, out, err = run(capsys, "point", "--lambda", "-1")
    assert code == 1 and out == "" and "lam" in err


def test_sweep_csv(capsys):
    code, out, err = run(capsys, "sweep", "--axis", "lambda:0:0.5:51")
    assert code == 0 and err == ""
    lines = data_lines(out)
    assert lines[0] == CSV_HEADER
    assert len(lines) == 52
    meta, rows = read_csv(out)
    e = [row["E_N"] for row in rows]
    assert all(b >= a for a, b in zip(e, e[1:]))
    assert meta["params.lambda"] == "0.2"
    assert meta["axes.axis1.name"] == "lambda"


def test_sweep_grid_cardinality(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "sweep", "--axis", "delta_d:-5:5:101", "--axis", "delta_o:-5:5:101",
                     "--out", str(out), "--threads", "4")
    assert code == 0
    assert len(data_lines(out.read_text())) == 1 + 10201


def test_sweep_csv_round_trip(capsys):
    from magnonics.cli import make_env, make_params, CLI_DEFAULTS
    from magnonics.sweep import SweepAxis, run_sweep
    _, out, _ = run(capsys, "sweep", "--axis", "r:0:2:7")
    _, rows = read_csv(out)
    env = make_env({k: CLI_DEFAULTS[k] for k in ("temp_mk", "omega_d_ghz", "kappa_d_mhz")})
    params = make_params({k: CLI_DEFAULTS[k] for k in ("delta_d", "delta_o", "g1", "g2", "lam", "r")},
                         {"kappa_o_ratio": 0.2}, env)
    recs = run_sweep(params, env, [SweepAxis("r", 0, 2, 7)])
    for row, rec in zip(rows, recs):
        for key in RECORD_FIELDS:
            assert row[key] == getattr(rec, key)


def test_gip_empty_where_guard_trips(capsys):
    _, out, _ = run(capsys, "sweep", "--axis", "r:0:1:3", "--g1", "0", "--g2", "0", "--lambda", "0")
    lines = data_lines(out)
    gip_col = CSV_HEADER.split(",").index("GIP")
    assert all(line.split(",")[gip_col] == "" for line in lines[1:])


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--axis", "r:0:1:3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"meta", "records"}
    assert len(doc["records"]) == 3
    assert list(doc["records"][0]) == list(RECORD_FIELDS)


@pytest.mark.parametrize("axis", ["lambda:0:0.5", "bogus:0:1:3", "r:1:0:3", "r:0:1:one"])
def test_malformed_axis(capsys, axis):
    code, out, err = run(capsys, "sweep", "--axis", axis)
    assert code == 1 and out == "" and err


def test_unknown_figure(capsys):
    code, _, err = run(capsys, "figure", "fig99")
    assert code == 1
    assert "fig2a" in err and "fig7b" in err


def test_figure_fig5a(capsys):
    code, out, _ = run(capsys, "figure", "fig5a", "--count", "21")
    assert code == 0
    meta, rows = read_csv(out)
    assert meta["figure"] == "fig5a"
    assert "r" in meta["stated"] and "delta_o range" in meta["default_filled"]
    best = min(rows, key=lambda r: r["mancini"])
    assert best["mancini"] < 0.25
    assert best["axis1"] == 0 and best["axis2"] == 0


def test_figure_fig6b_squeezes(capsys):
    code, out, _ = run(capsys, "figure", "fig6b", "--count", "21")
    assert code == 0
    meta, rows = read_csv(out)
    assert meta["axes.axis1.name"] == "delta_o" and meta["axes.axis2.name"] == "r"
    assert min(r["var_x1"] for r in rows) < 0.5


def test_figure_fig7a_onset_grows_with_temperature(capsys):
    code, out, _ = run(capsys, "figure", "fig7a", "--count", "301")
    assert code == 0
    _, rows = read_csv(out)
    onset = {}
    for row in rows:
        if row["R_min"] > 0 and row["axis1"] not in onset:
            onset[row["axis1"]] = row["axis2"]
    assert onset[10.0] <= onset[50.0] < onset[100.0]


def test_figure_override_recorded(capsys):
    code, out, _ = run(capsys, "figure", "fig2a", "--r", "1.0", "--count", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["params"]["r"] == 1.0
    assert doc["meta"]["overridden"] == ["r"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "magnonics", "point", "--lambda", "0.6", "--g1", "0",
                           "--g2", "0"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["stable"] is False
    assert proc.stderr == ""
