"""Command-line surface: exit codes, outputs, round-trips, figures."""

import json
import os

from zerofree.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_thm1_passes(capsys):
    code, out, _ = invoke(capsys, "verify-thm1")
    assert code == 0
    assert "status: PASS" in out
    assert "display.m_bound: 0.04897601" in out
    assert "display.r1: 55.241" in out


def test_verify_thm1_json_matches_text(capsys):
    code, out, _ = invoke(capsys, "verify-thm1", "--json")
    assert code == 0
    data = json.loads(out)
    code2, out2, _ = invoke(capsys, "verify-thm1")
    for key, val in data["display"].items():
        assert "display.%s: %s" % (key, val) in out2
    for key, val in data["constants"].items():
        assert "const.%s: %s" % (key, val) in out2


def test_verify_thm4_reports_failure_exit(capsys):
    # one quoted constant is overstated, so strict verification exits 1
    code, out, _ = invoke(capsys, "verify-thm4")
    assert code == 1
    assert "status: FAIL" in out
    assert "w(0) above quoted bound" in out
    assert out.count("[FAIL]") == 1


def test_asymptotic_bundled_p46(capsys, tmp_path):
    import importlib.resources as resources

    p46 = tmp_path / "p46.txt"
    p46.write_text(resources.files("zerofree").joinpath("data", "p46.txt")
                   .read_text(encoding="utf-8"))
    code, out, _ = invoke(capsys, "asymptotic", "--poly", str(p46))
    assert code == 0
    assert "R2_quoted_style: 48.1587921551117" in out
    assert "q: 0.0561777603675831" in out


def test_pnt_exponent_output(capsys):
    code, out, _ = invoke(capsys, "pnt-exponent", "--c", "48.1588")
    assert code == 0
    assert out.startswith("d = 0.212348701215597")
    code, out, _ = invoke(capsys, "pnt-exponent", "--c", "48.1588", "--json")
    data = json.loads(out)
    assert data["d"].startswith("0.2123487")


def test_pnt_exponent_domain_error(capsys):
    code, _, err = invoke(capsys, "pnt-exponent", "--c", "-3")
    assert code == 2
    assert "positive" in err


def test_unknown_flag_exits_2(capsys):
    assert run(["verify-thm1", "--frobnicate"]) == 2
    assert run(["no-such-command"]) == 2


def test_unreadable_poly_file(capsys):
    code, _, err = invoke(capsys, "asymptotic", "--poly", "/nonexistent/p.txt")
    assert code == 2
    assert "no coefficient records" in err or "No such file" in err


def test_malformed_poly_file_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 oops\n")
    code, _, err = invoke(capsys, "asymptotic", "--poly", str(bad))
    assert code == 2
    assert "line 2" in err


def test_envelope_csv_and_plot(capsys, tmp_path):
    csv_path = tmp_path / "env.csv"
    png_path = tmp_path / "env.png"
    code, _, _ = invoke(capsys, "envelope", "--from-log", "2",
                        "--to-log", "60000", "--steps", "40",
                        "--out", str(csv_path), "--plot", str(png_path))
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "log_t,width,source"
    assert len(lines) == 41
    assert lines[1].endswith("rh_verified")
    assert lines[-1].endswith("kv_all_t")
    assert png_path.stat().st_size > 5000


def test_envelope_json(capsys):
    code, out, _ = invoke(capsys, "envelope", "--from-log", "3",
                          "--to-log", "40", "--steps", "5", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 5
    assert rows[0]["source"] == "rh_verified"


def test_crossover_command(capsys):
    code, out, _ = invoke(capsys, "crossover", "--first", "classical",
                          "--second", "ford_medium", "--lo", "40", "--hi", "200")
    assert code == 0
    assert "64.107" in out
    code, _, err = invoke(capsys, "crossover", "--first", "classical",
                          "--second", "kv_all_t", "--lo", "100", "--hi", "200")
    assert code == 2
    assert "do not change order" in err


def test_expand_round_trip_matches_in_process(capsys, tmp_path):
    out_file = tmp_path / "ford.txt"
    code, _, _ = invoke(capsys, "expand", "--factor", "0.225:2",
                        "--factor", "0.9:2", "--out", str(out_file))
    assert code == 0
    code, out, _ = invoke(capsys, "asymptotic", "--poly", str(out_file))
    assert code == 0
    from mpmath import mp, mpf
    from zerofree import regions, trigpoly
    with mp.workdps(50):
        direct = regions.asymptotic_quantity(trigpoly.ford_p4())
    q_line = [ln for ln in out.splitlines() if ln.startswith("q:")][0]
    assert abs(mpf(q_line.split()[1]) - direct) < mpf("1e-14")


def test_expand_rejects_malformed_factor(capsys):
    code, _, err = invoke(capsys, "expand", "--factor", "a:b:c")
    assert code == 2
    code, _, err = invoke(capsys, "expand", "--factor", "xyz")
    assert code == 2
    assert "factor" in err


def test_anneal_cli_smoke(capsys, tmp_path):
    out_file = tmp_path / "best.txt"
    log_file = tmp_path / "runs.jsonl"
    code, out, _ = invoke(capsys, "anneal", "--degree", "4", "--seed", "3",
                          "--iters", "60", "--out", str(out_file),
                          "--run-log", str(log_file), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["objective"] == "R2"
    assert data["hp_verified"] is True
    assert os.path.exists(out_file)
    rec = json.loads(log_file.read_text().splitlines()[0])
    assert rec["seed"] == 3
    from zerofree import trigpoly
    loaded = trigpoly.load_polynomial(str(out_file))
    assert loaded.degree == 4 and loaded.admissible


def test_anneal_config_file(capsys, tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({
        "degree": 4, "seed": 1, "chains": 1, "init_range": 120.0,
        "step_schedule": [20.0, 5.0], "temp_schedule": [0.2, 0.0],
        "iters_per_level": 50, "objective": "R2", "richert_b": 4.45,
        "include_top": False, "initial_c": None,
    }))
    code, out, _ = invoke(capsys, "anneal", "--degree", "4",
                          "--config", str(cfg_file), "--json")
    assert code == 0
    assert json.loads(out)["config_hash"]


def test_verify_thm1_params_override(capsys, tmp_path):
    params = tmp_path / "params.json"
    params.write_text(json.dumps({"M1": "0.049"}))
    code, out, _ = invoke(capsys, "verify-thm1", "--params", str(params))
    assert code == 1
    assert "final bound exceeds M1" in out
    bad = tmp_path / "bad_params.json"
    bad.write_text(json.dumps({"Q": 1}))
    code, _, err = invoke(capsys, "verify-thm1", "--params", str(bad))
    assert code == 2
    assert "unknown parameter" in err


def test_polynomial_plot_written(capsys, tmp_path):
    png = tmp_path / "poly.png"
    code, _, _ = invoke(capsys, "asymptotic", "--plot", str(png))
    assert code == 0
    assert png.stat().st_size > 5000
