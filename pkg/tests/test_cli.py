"""End-to-end tests of the command-line front end."""

import json
import math
import subprocess
import sys

import pytest

from bwmberry.cli import main

PI_THIRD = repr(math.pi / 3.0)
PI_HALF = repr(math.pi / 2.0)
SQRT2 = repr(math.sqrt(2.0))

SMALL_VERIFY = [
    "--grid-spec",
    "q=0.9,2.0",
    "--grid-spec",
    "tla_d=2.0",
    "--phase-pairs",
    "2",
    "--ybe-samples",
    "5",
]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_report(out_dir, command):
    path = out_dir / f"{command}_report.json"
    assert path.is_file(), f"missing report {path}"
    return json.loads(path.read_text(encoding="utf-8"))


def strip_meta(report: dict) -> dict:
    trimmed = dict(report)
    trimmed.pop("meta")
    return trimmed


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_passes_and_writes_report(tmp_path, capsys):
    code, out, err = run(["verify", "--out", str(tmp_path), *SMALL_VERIFY], capsys)
    assert code == 0
    report = load_report(tmp_path, "verify")
    assert report["schema"] == 1
    summary = report["summary"]
    assert summary["overall_pass"] is True
    assert summary["failed"] == 0
    assert summary["checks"] == len(report["checks"])
    assert summary["worst_residual"] < 1e-10
    assert "[bwmberry verify]" in out
    assert f"{summary['passed']}/{summary['checks']} checks passed" in out
    names = {c["name"] for c in report["checks"]}
    assert {"bwm.braid", "bwm.transport_b", "bwm.transport_eb", "bwm.unitary_u"} <= names
    assert {"tla.square_a", "ybe.exchange", "ybe.unimodularity"} <= names


def test_verify_tight_tolerance_reports_failures(tmp_path, capsys):
    code, out, _ = run(
        ["verify", "--out", str(tmp_path), "--tolerance", "1e-16", *SMALL_VERIFY], capsys
    )
    assert code == 1
    report = load_report(tmp_path, "verify")
    assert report["summary"]["failed"] > 0
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    # Failures are raw double-precision residuals, far below any honest bound.
    assert all(c["residual"] < 1e-10 for c in failed)


def test_verify_empty_grids_warn_but_pass(tmp_path, capsys):
    code, out, err = run(
        [
            "verify",
            "--out",
            str(tmp_path),
            "--grid-spec",
            "q=",
            "--grid-spec",
            "tla_d=",
            "--ybe-samples",
            "0",
        ],
        capsys,
    )
    assert code == 0
    assert "no checks were executed" in err
    report = load_report(tmp_path, "verify")
    assert report["summary"]["checks"] == 0
    assert report["summary"]["overall_pass"] is True
    assert report["warnings"]


def test_verify_deterministic_across_runs_and_jobs(tmp_path, capsys):
    args = [*SMALL_VERIFY, "--seed", "7"]
    run(["verify", "--out", str(tmp_path / "a"), *args], capsys)
    run(["verify", "--out", str(tmp_path / "b"), *args], capsys)
    run(["verify", "--out", str(tmp_path / "c"), *args, "--jobs", "2"], capsys)
    rep_a = strip_meta(load_report(tmp_path / "a", "verify"))
    rep_b = strip_meta(load_report(tmp_path / "b", "verify"))
    rep_c = strip_meta(load_report(tmp_path / "c", "verify"))
    assert rep_a == rep_b == rep_c


def test_verify_seed_changes_sampled_points(tmp_path, capsys):
    run(["verify", "--out", str(tmp_path / "a"), *SMALL_VERIFY, "--seed", "1"], capsys)
    run(["verify", "--out", str(tmp_path / "b"), *SMALL_VERIFY, "--seed", "2"], capsys)
    rep_a = load_report(tmp_path / "a", "verify")
    rep_b = load_report(tmp_path / "b", "verify")
    params_a = [c["params"] for c in rep_a["checks"] if c["name"] == "ybe.exchange"]
    params_b = [c["params"] for c in rep_b["checks"] if c["name"] == "ybe.exchange"]
    assert params_a != params_b


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def test_spectrum_reports_predicted_levels(tmp_path, capsys):
    code, _, _ = run(
        [
            "spectrum",
            "--out",
            str(tmp_path),
            "--grid-spec",
            f"theta=0,{math.pi / 6.0!r}",
            "--grid-spec",
            "d=2",
            "--grid-spec",
            "omega=1",
            "--grid-spec",
            "phi=0",
        ],
        capsys,
    )
    assert code == 0
    report = load_report(tmp_path, "spectrum")
    levels = {
        round(c["params"]["theta"], 12): c["data"]
        for c in report["checks"]
        if c["name"] == "spectrum.h_eigenvalues"
    }
    flat = levels[0.0]
    assert flat["predicted"] == [0.0, 0.0, 0.0]
    split = levels[round(math.pi / 6.0, 12)]
    assert split["predicted"][2] == pytest.approx(math.sqrt(3.0) / 4.0, abs=1e-14)
    assert max(abs(a - b) for a, b in zip(split["observed"], split["predicted"])) < 1e-10
    casimirs = [c for c in report["checks"] if c["name"] == "spectrum.casimir"]
    assert casimirs and all(c["status"] == "pass" for c in casimirs)
    assert all(c["data"]["predicted"] == [0.0, 0.75, 0.75] for c in casimirs)


def test_spectrum_domain_violations_become_skips(tmp_path, capsys):
    code, _, _ = run(
        [
            "spectrum",
            "--out",
            str(tmp_path),
            "--grid-spec",
            f"theta=0.3,{PI_HALF}",
            "--grid-spec",
            f"d={SQRT2}",
            "--grid-spec",
            "omega=1",
            "--grid-spec",
            "phi=0",
        ],
        capsys,
    )
    # Skips are reported per-point, never fatal.
    assert code == 0
    report = load_report(tmp_path, "spectrum")
    by_reason = {}
    for c in report["checks"]:
        assert c["status"] == "skip"
        assert c["reason"]
        by_reason.setdefault(c["reason"], []).append(c["name"])
    # The ladder normalisation has a genuine pole at (pi/2, sqrt(2)); every
    # other refusal on this grid is the projector-domain guard.
    assert "degenerate_zeta" in by_reason
    assert "invalid_param" in by_reason


# ---------------------------------------------------------------------------
# berry
# ---------------------------------------------------------------------------


def test_berry_matches_closed_form_and_skips_below_domain(tmp_path, capsys):
    code, _, _ = run(
        [
            "berry",
            "--out",
            str(tmp_path),
            "--grid-spec",
            f"berry_theta={PI_THIRD}",
            "--grid-spec",
            "berry_d=1,2",
            "--steps",
            "1024",
        ],
        capsys,
    )
    assert code == 0
    report = load_report(tmp_path, "berry")
    checks = {(c["name"], c["params"]["d"]): c for c in report["checks"]}
    match = checks[("berry.match_plus", 2.0)]
    assert match["status"] == "pass"
    assert match["data"]["closed"] == pytest.approx(math.pi / 4.0, abs=1e-13)
    assert abs(match["data"]["wilson"] - math.pi / 4.0) < 1e-4
    assert match["data"]["pairing"] is not None
    closed_only = checks[("berry.match_plus", 1.0)]
    assert closed_only["status"] == "skip"
    assert closed_only["reason"] == "closed_form_only"
    assert ("berry.form_consistency", 1.0) in checks
    assert checks[("berry.convergence", 2.0)]["status"] == "pass"
    assert checks[("berry.zero_branch", 2.0)]["residual"] < 1e-6


def test_berry_degenerate_loop_is_skipped(tmp_path, capsys):
    code, _, _ = run(
        [
            "berry",
            "--out",
            str(tmp_path),
            "--grid-spec",
            "berry_theta=0",
            "--grid-spec",
            "berry_d=2",
            "--steps",
            "64",
        ],
        capsys,
    )
    assert code == 0
    report = load_report(tmp_path, "berry")
    skip = next(c for c in report["checks"] if c["name"] == "berry.match_plus")
    assert skip["status"] == "skip"
    assert skip["reason"] == "degenerate_spectrum"


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------


def test_figure_writes_sorted_tables(tmp_path, capsys):
    code, _, _ = run(
        [
            "figure",
            "--out",
            str(tmp_path),
            "--theta-points",
            "101",
            "--d-mesh",
            "1:6:6",
            "--grid-spec",
            f"figure_d=1,{SQRT2},5",
        ],
        capsys,
    )
    assert code == 0
    sections = (tmp_path / "figure_sections.csv").read_bytes()
    assert b"\r" not in sections
    lines = sections.decode("utf-8").splitlines()
    assert lines[0] == "theta,d,gamma_plus"
    assert lines[1] == "0,1,3.1415926535897931"
    body = [line.split(",") for line in lines[1:]]
    assert len(body) == 3 * 101
    keys = [(float(d), float(t)) for t, d, _ in body]
    assert keys == sorted(keys)
    # d = 1 rows are identically pi; the sqrt(2) row at theta = 0 vanishes.
    for t, d, g in body:
        if d == "1":
            assert g == "3.1415926535897931"
    sqrt2_origin = next(row for row in body if row[0] == "0" and row[1] != "1" and float(row[1]) < 2)
    assert float(sqrt2_origin[2]) == 0.0
    surface = (tmp_path / "figure_surface.csv").read_text(encoding="utf-8").splitlines()
    assert len(surface) == 1 + 6 * 101
    report = load_report(tmp_path, "figure")
    assert {c["name"] for c in report["checks"]} == {"figure.sections_csv", "figure.surface_csv"}


def test_figure_byte_deterministic(tmp_path, capsys):
    args = ["figure", "--theta-points", "51", "--d-mesh", "1:6:7"]
    run([*args, "--out", str(tmp_path / "a")], capsys)
    run([*args, "--out", str(tmp_path / "b")], capsys)
    for name in ("figure_sections.csv", "figure_surface.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    rep_a = strip_meta(load_report(tmp_path / "a", "figure"))
    rep_b = strip_meta(load_report(tmp_path / "b", "figure"))
    assert rep_a == rep_b


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def test_config_file_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"tolerance": 1e-2, "seed": 3, "grids": {"q": [0.9], "tla_d": []}}))
    run(
        [
            "verify",
            "--out",
            str(tmp_path),
            "--config",
            str(cfg),
            "--tolerance",
            "1e-9",
            "--ybe-samples",
            "0",
            "--phase-pairs",
            "1",
        ],
        capsys,
    )
    report = load_report(tmp_path, "verify")
    assert report["config"]["tolerance"] == 1e-9  # flag wins
    assert report["config"]["seed"] == 3  # file value survives
    assert report["config"]["grids"]["q"] == [0.9]


def test_config_file_grid_range_syntax(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"grids": {"q": "0.5:2.0:4", "tla_d": []}}))
    run(
        [
            "verify",
            "--out",
            str(tmp_path),
            "--config",
            str(cfg),
            "--ybe-samples",
            "0",
            "--phase-pairs",
            "1",
        ],
        capsys,
    )
    report = load_report(tmp_path, "verify")
    assert report["config"]["grids"]["q"] == [0.5, 1.0, 1.5, 2.0]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--grid-spec", "nope=1,2"],
        ["verify", "--grid-spec", "q=0.5:2.0"],  # malformed range
        ["verify", "--grid-spec", "q=abc"],
        ["verify", "--steps", "8"],
        ["verify", "--jobs", "0"],
        ["figure", "--d-mesh", "6:1:10"],
        ["figure", "--d-mesh", "0.5:6:10"],
        ["figure", "--theta-points", "1"],
        ["verify", "--tolerance", "-1"],
    ],
)
def test_config_errors_exit_two(argv, tmp_path, capsys):
    code, _, err = run([*argv, "--out", str(tmp_path)], capsys)
    assert code == 2
    assert "error:" in err


def test_unknown_config_key_exits_two(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"tollerance": 1e-9}))
    code, _, err = run(["verify", "--out", str(tmp_path), "--config", str(cfg)], capsys)
    assert code == 2
    assert "unknown config keys" in err


def test_unreadable_config_exits_two(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text("{not json")
    code, _, err = run(["verify", "--out", str(tmp_path), "--config", str(cfg)], capsys)
    assert code == 2


def test_unwritable_out_dir_exits_two(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("a file, not a directory")
    code, _, err = run(["figure", "--out", str(blocker / "sub"), "--theta-points", "5"], capsys)
    assert code == 2
    assert "error:" in err


def test_out_dir_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("BWMBERRY_OUT", str(tmp_path / "env_dir"))
    code, _, _ = run(["figure", "--theta-points", "5", "--d-mesh", "1:2:2"], capsys)
    assert code == 0
    assert (tmp_path / "env_dir" / "figure_sections.csv").is_file()


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "bwmberry.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "verify" in proc.stdout and "figure" in proc.stdout
