"""CLI contract tests: output format, exit codes, determinism.

Most tests drive cli.main(argv) in-process and capture stdout/stderr; one
subprocess smoke test confirms the module entry point wires up end to end.
"""

import json
import math
import subprocess
import sys

import pytest

from solidcyl import cli
from solidcyl import verify as verify_mod
from solidcyl.geometry import CanonicalConfig, CylinderSpec, SourcePoint
from solidcyl.solid_angle import omega_total


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("SOLIDCYL_SEED", raising=False)


def _run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _omega_line(out: str) -> float:
    for line in out.splitlines():
        if line.startswith("omega = "):
            return float(line.split("=", 1)[1])
    raise AssertionError(f"no omega line in {out!r}")


# --------------------------------------------------------------------- compute


def test_compute_round_trips_library_value(capsys):
    code, out, err = _run(capsys, ["compute", "--L", "3", "--r", "1", "--d", "2", "--z", "1.5"])
    assert code == 0 and err == ""
    ref = omega_total(CylinderSpec(3.0, 1.0), SourcePoint(2.0, 1.5)).value
    # 17 significant digits: the printed text parses back to the exact double
    assert _omega_line(out) == ref == 0.13301674013959272
    assert "method = elliptic" in out
    assert "terms = +cyl0(L_eff=1.5) +cyl0(L_eff=1.5)" in out


def test_compute_enclosed_source(capsys):
    code, out, _ = _run(capsys, ["compute", "--L", "3", "--r", "2", "--d", "1", "--z", "1"])
    assert code == 0
    assert _omega_line(out) == 1.0
    assert "method = special" in out


def test_compute_steradians(capsys):
    code, out, _ = _run(
        capsys, ["compute", "--L", "1", "--r", "1", "--d", "0", "--z", "-1", "--steradians"]
    )
    assert code == 0
    assert _omega_line(out) == pytest.approx(1.8403023690212206, rel=1e-15)
    assert "units = steradians" in out


def test_compute_quadrature_route_agrees(capsys):
    argv = ["compute", "--L", "3", "--r", "1", "--d", "2", "--z", "-1"]
    _, out_auto, _ = _run(capsys, argv)
    code, out_quad, _ = _run(capsys, argv + ["--method", "quadrature"])
    assert code == 0
    assert "method = quadrature" in out_quad
    assert _omega_line(out_quad) == pytest.approx(_omega_line(out_auto), abs=1e-9)


def test_compute_montecarlo_seed_determinism(capsys):
    argv = [
        "compute", "--L", "3", "--r", "1", "--d", "2", "--z", "1.5",
        "--method", "montecarlo", "--samples", "20000", "--seed", "4",
    ]
    code, first, _ = _run(capsys, argv)
    assert code == 0 and "method = montecarlo" in first
    _, second, _ = _run(capsys, argv)
    assert first == second
    ref = omega_total(CylinderSpec(3.0, 1.0), SourcePoint(2.0, 1.5)).value
    assert _omega_line(first) == pytest.approx(ref, abs=0.02)


def test_env_seed_matches_flag(capsys, monkeypatch):
    argv = [
        "compute", "--L", "3", "--r", "1", "--d", "2", "--z", "1.5",
        "--method", "montecarlo", "--samples", "20000",
    ]
    monkeypatch.setenv("SOLIDCYL_SEED", "4")
    _, via_env, _ = _run(capsys, argv)
    monkeypatch.delenv("SOLIDCYL_SEED")
    _, via_flag, _ = _run(capsys, argv + ["--seed", "4"])
    assert via_env == via_flag


def test_flag_beats_env_seed(capsys, monkeypatch):
    argv = [
        "compute", "--L", "3", "--r", "1", "--d", "2", "--z", "1.5",
        "--method", "montecarlo", "--samples", "20000",
    ]
    monkeypatch.setenv("SOLIDCYL_SEED", "999")
    _, with_env, _ = _run(capsys, argv + ["--seed", "4"])
    monkeypatch.delenv("SOLIDCYL_SEED")
    _, with_flag, _ = _run(capsys, argv + ["--seed", "4"])
    assert with_env == with_flag


def test_bad_env_seed_is_an_error(capsys, monkeypatch):
    monkeypatch.setenv("SOLIDCYL_SEED", "not-a-number")
    code, _, err = _run(
        capsys,
        ["compute", "--L", "1", "--r", "1", "--d", "2", "--method", "montecarlo", "--samples", "10"],
    )
    assert code == 1
    assert err.startswith("error:")


def test_domain_error_exits_one(capsys):
    code, _, err = _run(capsys, ["compute", "--L", "3", "--r", "1", "--d", "-2"])
    assert code == 1
    assert err.startswith("error:")


def test_missing_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--L", "3"])
    assert exc.value.code == 2


# ----------------------------------------------------------------------- table


def test_table_csv_header_and_determinism(capsys):
    argv = ["table", "--L", "1,2", "--d", "2,3", "--z", "0,1"]
    code, first, _ = _run(capsys, argv)
    assert code == 0
    lines = first.splitlines()
    assert lines[0] == "L,r,d,z,omega,method,err_estimate"
    assert len(lines) == 1 + 8
    _, second, _ = _run(capsys, argv)
    assert first == second


def test_table_single_cell_matches_compute(capsys):
    _, table_out, _ = _run(capsys, ["table", "--L", "3", "--d", "2", "--z", "1.5"])
    row = table_out.splitlines()[1].split(",")
    assert float(row[4]) == omega_total(CylinderSpec(3.0, 1.0), SourcePoint(2.0, 1.5)).value


def test_table_rows_sorted_lexicographically(capsys):
    # axes given shuffled; rows must come back sorted by (L, d, z)
    _, out, _ = _run(capsys, ["table", "--L", "2,1", "--d", "3,2", "--z", "1,0"])
    keys = [tuple(map(float, line.split(",")[:4])) for line in out.splitlines()[1:]]
    assert keys == sorted(keys)


def test_table_json_round_trips(capsys):
    code, out, _ = _run(
        capsys, ["table", "--L", "1", "--d", "2,4", "--format", "json"]
    )
    assert code == 0
    records = json.loads(out)
    assert [set(rec) for rec in records] == [
        {"L", "r", "d", "z", "omega", "method", "err_estimate"}
    ] * 2
    assert records[0]["omega"] > records[1]["omega"]


def test_table_log_grid_monotone(capsys):
    code, out, _ = _run(capsys, ["table", "--L", "1", "--d", "1.1:10:5:log", "--z", "0"])
    assert code == 0
    omegas = [float(line.split(",")[4]) for line in out.splitlines()[1:]]
    assert len(omegas) == 5
    assert omegas == sorted(omegas, reverse=True)
    assert all(0.0 < w < 1.0 for w in omegas)


def test_table_bad_axis_spec_exits_two(capsys):
    for bad in ("1:2:5", "1:2:5:cubic", "0:2:5:log", "", "1,,2"):
        with pytest.raises(SystemExit) as exc:
            cli.main(["table", "--L", bad, "--d", "2"])
        assert exc.value.code == 2


def test_table_out_file(tmp_path, capsys):
    path = tmp_path / "grid.csv"
    code, out, _ = _run(capsys, ["table", "--L", "1", "--d", "2", "--out", str(path)])
    assert code == 0 and out == ""
    text = path.read_text(encoding="utf-8")
    assert text.startswith("L,r,d,z,omega,method,err_estimate\n")
    assert len(text.splitlines()) == 2


def test_table_quantity_cyl0_inside_source_fails_cleanly(capsys):
    code, _, err = _run(capsys, ["table", "--L", "1", "--d", "0.5", "--quantity", "cyl0"])
    assert code == 1
    assert err.startswith("error:")


def test_table_steradians_scales_rows(capsys):
    _, plain, _ = _run(capsys, ["table", "--L", "1", "--d", "2"])
    _, scaled, _ = _run(capsys, ["table", "--L", "1", "--d", "2", "--steradians"])
    a = float(plain.splitlines()[1].split(",")[4])
    b = float(scaled.splitlines()[1].split(",")[4])
    assert b == pytest.approx(a * 4.0 * math.pi, rel=1e-15)


# ---------------------------------------------------------------------- verify


def test_verify_small_run_passes(capsys):
    code, out, _ = _run(capsys, ["verify", "--points", "5", "--seed", "1"])
    assert code == 0
    lines = out.splitlines()
    assert sum(1 for ln in lines if ln.startswith("PASS ")) == len(verify_mod.SUITES)
    assert lines[-1] == f"all {len(verify_mod.SUITES)} suites passed"


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--points", "3", "--seed", "7"]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second


def test_verify_detects_injected_fault(capsys, monkeypatch):
    from solidcyl import solid_angle as sa

    true_fn = sa.omega_circ_third_kind

    def skewed(cfg):
        res = true_fn(cfg)
        return type(res)(res.value + 1e-6, res.method, res.err_estimate)

    monkeypatch.setattr(sa, "omega_circ_third_kind", skewed)
    code, out, _ = _run(capsys, ["verify", "--points", "5", "--seed", "1"])
    assert code == 1
    assert any(line.startswith("FAIL disc_cross") for line in out.splitlines())
    assert "FAILED" in out


def test_verify_tolerance_override_can_fail_a_suite(capsys):
    code, out, _ = _run(
        capsys, ["verify", "--points", "5", "--seed", "1", "--tolerance", "disc_cross=1e-20"]
    )
    assert code == 1
    assert any(line.startswith("FAIL disc_cross") for line in out.splitlines())


def test_verify_bad_tolerance_spec_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--tolerance", "disc_cross"])
    assert exc.value.code == 2


# ------------------------------------------------------------------ subprocess


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "solidcyl.cli", "compute", "--L", "3", "--r", "1", "--d", "2", "--z", "1.5"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert "omega = 0.13301674013959272" in proc.stdout
