"""Command-line interface: verification suites, spectra, loop phases, figure data.

Four subcommands, all batch-style (run, write artifacts, exit):

* ``verify``   - algebra relation suites and exchange-identity sweeps;
* ``spectrum`` - driven-Hamiltonian eigenvalues against the closed form,
  plus the Casimir spectrum of the ladder triple;
* ``berry``    - Wilson-loop phases against the closed forms;
* ``figure``   - CSV tables of the closed-form phase surface and sections.

Every command writes a schema-versioned JSON report whose check records
carry (name, params, residual, tolerance, status, reason).  Exit codes:
0 all executed checks passed, 1 at least one check failed, 2 the
configuration or an output path was unusable.  Grid points that violate
a domain guard become per-point ``skip`` records with a machine-readable
reason token instead of aborting the run.  With a fixed seed the reports
and CSVs are byte-identical across runs (timestamps live in a separate
``meta`` object).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .algebra import (
    GOLDEN_RATIO,
    AlgebraParams,
    check_bwm_suite,
    check_tla,
    make_a,
    make_b,
    make_ea,
    make_eb,
    make_u,
)
from .berry import MIN_STEPS, SECTION_D_VALUES, berry_closed, berry_wilson_loop, figure_data
from .errors import BwmBerryError, ConfigError, DegenerateSpectrum, InvalidParam
from .matrices import dagger, hermitian_eigs, inverse, rel_residual
from .spin import DriveParams, cos_alpha, hamiltonian, ladder_ops
from .yangbaxter import SpectralParams, velocity_add, ybe_residual, z_of_u

#: Tolerance pinned for conjugation-transport and unitarity checks.
TRANSPORT_TOL = 1e-12

#: Tolerance pinned for the closed-form section/form-consistency identities.
FORM_TOL = 1e-12

#: Grid names accepted by --grid-spec and the config file.
GRID_NAMES = (
    "q",
    "tla_d",
    "theta",
    "d",
    "omega",
    "phi",
    "ybe_beta",
    "ybe_d",
    "berry_theta",
    "berry_d",
    "figure_d",
)

DEFAULT_GRIDS: dict[str, tuple[float, ...]] = {
    "q": (0.5, 0.9, 1.3, 2.0),
    "tla_d": (GOLDEN_RATIO, 1.8, 2.0, 3.0, 5.0),
    "theta": (0.0, 0.4, math.pi / 6.0, 1.0, 2.2),
    "d": (1.7, 2.0, 3.0, 5.0),
    "omega": (0.5, 1.0),
    "phi": (0.0, 1.3),
    "ybe_beta": (0.3, 1.0),
    "ybe_d": (1.7, 1.9),
    "berry_theta": (0.3, 0.7, 1.2, 2.0),
    "berry_d": (1.0, math.sqrt(2.0), 1.7, 2.0, 3.0, 5.0),
    "figure_d": SECTION_D_VALUES,
}

_CONFIG_KEYS = {
    "tolerance",
    "tla_tolerance",
    "phase_tolerance",
    "zero_branch_tolerance",
    "unimodularity_tolerance",
    "steps",
    "seed",
    "jobs",
    "out",
    "phase_pairs",
    "ybe_samples",
    "figure_theta_points",
    "figure_d_mesh",
    "grids",
}


@dataclass
class RunConfig:
    """Fully resolved run parameters (defaults < config file < flags)."""

    command: str
    out_dir: Path
    tolerance: float = 1e-10
    tla_tolerance: float = 1e-12
    phase_tolerance: float = 1e-4
    zero_branch_tolerance: float = 1e-6
    unimodularity_tolerance: float = 1e-13
    steps: int = 4096
    seed: int = 20260815
    jobs: int = 1
    phase_pairs: int = 5
    ybe_samples: int = 200
    figure_theta_points: int = 401
    figure_d_mesh: tuple[float, float, int] = (1.0, 6.0, 51)
    grids: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def grid(self, name: str) -> tuple[float, ...]:
        return self.grids.get(name, DEFAULT_GRIDS[name])

    def echo(self) -> dict:
        """Deterministic echo of the mathematically relevant configuration."""
        used = {name: [float(x) for x in self.grid(name)] for name in GRID_NAMES}
        return {
            "tolerance": self.tolerance,
            "tla_tolerance": self.tla_tolerance,
            "phase_tolerance": self.phase_tolerance,
            "zero_branch_tolerance": self.zero_branch_tolerance,
            "unimodularity_tolerance": self.unimodularity_tolerance,
            "steps": self.steps,
            "seed": self.seed,
            "phase_pairs": self.phase_pairs,
            "ybe_samples": self.ybe_samples,
            "figure_theta_points": self.figure_theta_points,
            "figure_d_mesh": list(self.figure_d_mesh),
            "grids": used,
        }


@dataclass
class CheckRecord:
    """One executed (or skipped) check inside a report."""

    name: str
    params: dict
    residual: float | None
    tolerance: float | None
    status: str
    reason: str | None = None
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "status": self.status,
            "reason": self.reason,
            "data": self.data,
        }


@dataclass
class SuiteReport:
    """Everything one command run produced, ready for serialisation."""

    command: str
    config: dict
    checks: list[CheckRecord]
    warnings: list[str]
    wall_time_s: float
    timestamp: str
    out_dir: str
    jobs: int

    @property
    def overall_pass(self) -> bool:
        return not any(c.status == "fail" for c in self.checks)

    def summary(self) -> dict:
        residuals = [c.residual for c in self.checks if c.residual is not None]
        return {
            "checks": len(self.checks),
            "passed": sum(c.status == "pass" for c in self.checks),
            "failed": sum(c.status == "fail" for c in self.checks),
            "skipped": sum(c.status == "skip" for c in self.checks),
            "worst_residual": max(residuals) if residuals else None,
            "overall_pass": self.overall_pass,
        }

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "command": self.command,
            "config": self.config,
            "summary": self.summary(),
            "warnings": list(self.warnings),
            "checks": [c.to_dict() for c in self.checks],
            "meta": {
                "timestamp": self.timestamp,
                "wall_time_s": self.wall_time_s,
                "out_dir": self.out_dir,
                "jobs": self.jobs,
            },
        }


def _reason_token(exc: BaseException) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


def _record(name: str, params: dict, residual: float, tolerance: float, **data) -> CheckRecord:
    return CheckRecord(
        name=name,
        params=params,
        residual=float(residual),
        tolerance=float(tolerance),
        status="pass" if residual < tolerance else "fail",
        data=data,
    )


def _skip(name: str, params: dict, tolerance: float | None, exc: BaseException, reason: str | None = None) -> CheckRecord:
    return CheckRecord(
        name=name,
        params=params,
        residual=None,
        tolerance=tolerance,
        status="skip",
        reason=reason or _reason_token(exc),
        data={"detail": str(exc)},
    )


def _map_points(fn, points, jobs: int) -> list:
    """Apply fn to each point, preserving order; threads when jobs > 1."""
    if jobs <= 1:
        return [fn(pt) for pt in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, points))


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def _phase_pairs(cfg: RunConfig) -> list[tuple[float, float]]:
    rng = np.random.default_rng([cfg.seed, 0])
    return [tuple(float(x) for x in row) for row in rng.uniform(-math.pi, math.pi, size=(cfg.phase_pairs, 2))]


def _bwm_point(cfg: RunConfig, q: float, p1: float, p2: float) -> list[CheckRecord]:
    base = {"q": float(q), "phi1": float(p1), "phi2": float(p2)}
    try:
        p = AlgebraParams.coupled(q, p1, p2)
        rep = check_bwm_suite(p, tolerance=cfg.tolerance)
    except BwmBerryError as exc:
        return [_skip("bwm.suite", base, cfg.tolerance, exc)]
    out = [
        CheckRecord(
            name=f"bwm.{c.name}",
            params=base,
            residual=float(c.residual),
            tolerance=cfg.tolerance,
            status="pass" if c.passed else "fail",
        )
        for c in rep.checks
    ]
    u = make_u(p)
    ui = inverse(u)
    transports = (
        ("bwm.transport_b", rel_residual(make_b(p), u @ make_a(p) @ ui)),
        ("bwm.transport_eb", rel_residual(make_eb(p), u @ make_ea(p) @ ui)),
        ("bwm.unitary_u", rel_residual(dagger(u) @ u, np.eye(3, dtype=complex))),
    )
    for name, resid in transports:
        out.append(_record(name, base, resid, TRANSPORT_TOL))
    return out


def _tla_point(cfg: RunConfig, d: float, p1: float, p2: float) -> list[CheckRecord]:
    base = {"d": float(d), "phi1": float(p1), "phi2": float(p2)}
    try:
        p = AlgebraParams.tla(d, p1, p2)
        rep = check_tla(make_ea(p), make_eb(p), d, tolerance=cfg.tla_tolerance)
    except BwmBerryError as exc:
        return [_skip("tla.suite", base, cfg.tla_tolerance, exc)]
    return [
        CheckRecord(
            name=f"tla.{c.name}",
            params=base,
            residual=float(c.residual),
            tolerance=cfg.tla_tolerance,
            status="pass" if c.passed else "fail",
        )
        for c in rep.checks
    ]


def _ybe_corner_samples() -> list[SpectralParams]:
    return [
        SpectralParams(u=0.0, v=0.37, beta=0.3, epsilon=1, d=1.7, phi1=0.4, phi2=-1.1),
        SpectralParams(u=0.41, v=-0.41, beta=1.0, epsilon=-1, d=1.9, phi1=-2.0, phi2=0.7),
        SpectralParams(u=0.25, v=0.6, beta=0.0, epsilon=1, d=1.7, phi1=1.2, phi2=2.5),
    ]


def _ybe_seeded_samples(cfg: RunConfig) -> list[SpectralParams]:
    rng = np.random.default_rng([cfg.seed, 1])
    betas = cfg.grid("ybe_beta")
    ds = cfg.grid("ybe_d")
    samples = []
    if not betas or not ds:
        return samples
    for _ in range(cfg.ybe_samples):
        u, v = rng.uniform(-0.9, 0.9, size=2)
        beta = float(betas[rng.integers(len(betas))])
        eps = int(rng.integers(2)) * 2 - 1
        d = float(ds[rng.integers(len(ds))])
        p1, p2 = rng.uniform(-math.pi, math.pi, size=2)
        samples.append(
            SpectralParams(u=float(u), v=float(v), beta=beta, epsilon=eps, d=d, phi1=float(p1), phi2=float(p2))
        )
    return samples


def _ybe_point(cfg: RunConfig, s: SpectralParams) -> list[CheckRecord]:
    base = {
        "u": s.u,
        "v": s.v,
        "beta": s.beta,
        "epsilon": s.epsilon,
        "d": s.d,
        "phi1": s.phi1,
        "phi2": s.phi2,
    }
    out = []
    try:
        resid = ybe_residual(s)
        out.append(_record("ybe.exchange", base, resid, cfg.tolerance))
        w = velocity_add(s.u, s.v, s.beta)
        zdev = max(abs(abs(z_of_u(x, s)) - 1.0) for x in (s.u, s.v, w))
        out.append(_record("ybe.unimodularity", base, zdev, cfg.unimodularity_tolerance))
    except BwmBerryError as exc:
        out.append(_skip("ybe.exchange", base, cfg.tolerance, exc))
    return out


def cmd_verify(cfg: RunConfig) -> tuple[list[CheckRecord], list[str]]:
    pairs = _phase_pairs(cfg)
    bwm_points = [(q, p1, p2) for q in cfg.grid("q") for (p1, p2) in pairs]
    tla_points = [(d, p1, p2) for d in cfg.grid("tla_d") for (p1, p2) in pairs]
    ybe_points = _ybe_corner_samples() + _ybe_seeded_samples(cfg) if cfg.ybe_samples > 0 else []

    records: list[CheckRecord] = []
    for chunk in _map_points(lambda pt: _bwm_point(cfg, *pt), bwm_points, cfg.jobs):
        records.extend(chunk)
    for chunk in _map_points(lambda pt: _tla_point(cfg, *pt), tla_points, cfg.jobs):
        records.extend(chunk)
    for chunk in _map_points(lambda s: _ybe_point(cfg, s), ybe_points, cfg.jobs):
        records.extend(chunk)
    return records, []


# --------------------------------------------------------------------------
# spectrum
# --------------------------------------------------------------------------

def _casimir_point(cfg: RunConfig, theta: float, d: float) -> list[CheckRecord]:
    base = {"theta": float(theta), "d": float(d)}
    try:
        trip = ladder_ops(theta, d)
    except BwmBerryError as exc:
        return [_skip("spectrum.casimir", base, cfg.tolerance, exc)]
    casimir = 0.5 * (trip.s_plus @ trip.s_minus + trip.s_minus @ trip.s_plus) + trip.s3 @ trip.s3
    observed = hermitian_eigs(casimir).values
    predicted = np.array([0.0, 0.75, 0.75])
    dev = float(np.max(np.abs(observed - predicted)))
    return [
        _record(
            "spectrum.casimir",
            base,
            dev,
            cfg.tolerance,
            observed=[float(x) for x in observed],
            predicted=[float(x) for x in predicted],
        )
    ]


def _spectrum_point(cfg: RunConfig, theta: float, d: float, omega: float, phi: float) -> list[CheckRecord]:
    base = {"theta": float(theta), "d": float(d), "omega_drive": float(omega), "phi": float(phi)}
    try:
        dp = DriveParams(theta=theta, d=d, omega_drive=omega)
        h = hamiltonian(phi, dp)
        observed = hermitian_eigs(h).values
        level = dp.hbar * dp.omega_drive * cos_alpha(theta, d)
        predicted = np.sort([0.0, level, -level])
    except BwmBerryError as exc:
        return [_skip("spectrum.h_eigenvalues", base, cfg.tolerance, exc)]
    dev = float(np.max(np.abs(observed - predicted)))
    return [
        _record(
            "spectrum.h_eigenvalues",
            base,
            dev,
            cfg.tolerance,
            observed=[float(x) for x in observed],
            predicted=[float(x) for x in predicted],
        )
    ]


def cmd_spectrum(cfg: RunConfig) -> tuple[list[CheckRecord], list[str]]:
    cas_points = [(t, d) for d in cfg.grid("d") for t in cfg.grid("theta")]
    h_points = [
        (t, d, w, f)
        for d in cfg.grid("d")
        for t in cfg.grid("theta")
        for w in cfg.grid("omega")
        for f in cfg.grid("phi")
    ]
    records: list[CheckRecord] = []
    for chunk in _map_points(lambda pt: _casimir_point(cfg, *pt), cas_points, cfg.jobs):
        records.extend(chunk)
    for chunk in _map_points(lambda pt: _spectrum_point(cfg, *pt), h_points, cfg.jobs):
        records.extend(chunk)
    return records, []


# --------------------------------------------------------------------------
# berry
# --------------------------------------------------------------------------

def _wrap(x: float) -> float:
    y = math.remainder(x, 2.0 * math.pi)
    if y <= -math.pi:
        y += 2.0 * math.pi
    return y


def _berry_point(cfg: RunConfig, theta: float, d: float) -> list[CheckRecord]:
    base = {"theta": float(theta), "d": float(d)}
    out: list[CheckRecord] = []
    try:
        closed_sin = berry_closed(theta, d, "sin_form")
        closed_cos = berry_closed(theta, d, "cos_form")
    except BwmBerryError as exc:
        return [_skip("berry.closed", base, None, exc)]
    swapped = berry_closed(math.pi / 2.0 - theta, d, "sin_form")
    out.append(
        _record(
            "berry.form_consistency",
            base,
            abs(closed_cos.gamma_plus - swapped.gamma_plus),
            FORM_TOL,
            gamma_plus_sin=closed_sin.gamma_plus,
            gamma_plus_cos=closed_cos.gamma_plus,
        )
    )
    if d < GOLDEN_RATIO - 1e-12:
        reason_exc = InvalidParam("the Hamiltonian route needs d at or above the golden ratio")
        out.append(_skip("berry.match_plus", base, cfg.phase_tolerance, reason_exc, reason="closed_form_only"))
        return out
    try:
        loop = berry_wilson_loop(theta, d, omega_drive=1.0, steps=cfg.steps)
    except DegenerateSpectrum as exc:
        out.append(_skip("berry.match_plus", base, cfg.phase_tolerance, exc))
        return out
    except BwmBerryError as exc:
        out.append(_skip("berry.match_plus", base, cfg.phase_tolerance, exc))
        return out
    out.append(
        _record(
            "berry.match_plus",
            base,
            abs(_wrap(loop.gamma_plus - closed_sin.gamma_plus)),
            cfg.phase_tolerance,
            wilson=loop.gamma_plus,
            wilson_lifted=loop.gamma_plus_lifted,
            closed=closed_sin.gamma_plus,
            pairing=loop.pairing,
        )
    )
    out.append(
        _record(
            "berry.match_minus",
            base,
            abs(_wrap(loop.gamma_minus - closed_sin.gamma_minus)),
            cfg.phase_tolerance,
            wilson=loop.gamma_minus,
            wilson_lifted=loop.gamma_minus_lifted,
            closed=closed_sin.gamma_minus,
            pairing=loop.pairing,
        )
    )
    out.append(
        _record(
            "berry.zero_branch",
            base,
            abs(loop.gamma_zero),
            cfg.zero_branch_tolerance,
            wilson=loop.gamma_zero,
        )
    )
    coarse = cfg.steps // 2
    if coarse >= MIN_STEPS:
        loop2 = berry_wilson_loop(theta, d, omega_drive=1.0, steps=coarse)
        out.append(
            _record(
                "berry.convergence",
                base,
                abs(_wrap(loop.gamma_plus - loop2.gamma_plus)),
                cfg.phase_tolerance,
                steps=cfg.steps,
                coarse_steps=coarse,
            )
        )
    return out


def cmd_berry(cfg: RunConfig) -> tuple[list[CheckRecord], list[str]]:
    points = [(t, d) for d in cfg.grid("berry_d") for t in cfg.grid("berry_theta")]
    records: list[CheckRecord] = []
    for chunk in _map_points(lambda pt: _berry_point(cfg, *pt), points, cfg.jobs):
        records.extend(chunk)
    return records, []


# --------------------------------------------------------------------------
# figure
# --------------------------------------------------------------------------

def _write_csv(path: Path, header: tuple[str, ...], rows) -> int:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        count = 0
        for row in rows:
            fh.write(",".join(format(float(x), ".17g") for x in row) + "\n")
            count += 1
    return count


def cmd_figure(cfg: RunConfig) -> tuple[list[CheckRecord], list[str]]:
    thetas = np.linspace(0.0, 2.0 * math.pi, cfg.figure_theta_points)
    lo, hi, count = cfg.figure_d_mesh
    mesh = np.linspace(lo, hi, int(count))

    sections = figure_data(thetas, cfg.grid("figure_d"))
    surface = figure_data(thetas, mesh)

    records = []
    for fname, rows in (("figure_sections.csv", sections), ("figure_surface.csv", surface)):
        n = _write_csv(cfg.out_dir / fname, ("theta", "d", "gamma_plus"), rows)
        records.append(
            CheckRecord(
                name=f"figure.{fname.removesuffix('.csv').removeprefix('figure_')}_csv",
                params={},
                residual=None,
                tolerance=None,
                status="pass",
                data={"file": fname, "rows": n},
            )
        )
    return records, []


# --------------------------------------------------------------------------
# configuration and entry point
# --------------------------------------------------------------------------

def _parse_grid_values(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range grid must be start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"could not parse range grid {text!r}: {exc}") from exc
        if count < 1:
            raise ConfigError(f"range grid count must be >= 1, got {count}")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"could not parse grid values {text!r}: {exc}") from exc


def _load_config_file(path: Path) -> dict:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}; allowed: {sorted(_CONFIG_KEYS)}")
    return raw


def _validate_grids(grids: dict) -> dict[str, tuple[float, ...]]:
    out = {}
    if not isinstance(grids, dict):
        raise ConfigError("'grids' must be an object mapping grid names to value lists")
    for name, values in grids.items():
        if name not in GRID_NAMES:
            raise ConfigError(f"unknown grid {name!r}; allowed: {list(GRID_NAMES)}")
        if isinstance(values, str):
            out[name] = _parse_grid_values(values)
            continue
        try:
            out[name] = tuple(float(x) for x in values)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"grid {name!r} must be a list of numbers: {exc}") from exc
    return out


def _positive(value: float, key: str) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(float(value)) and value > 0):
        raise ConfigError(f"{key} must be a positive number, got {value!r}")
    return float(value)


def _nonneg_int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"{key} must be a non-negative integer, got {value!r}")
    return value


def build_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key, default)

    grids = _validate_grids(file_cfg.get("grids", {}))
    for spec in args.grid_spec:
        if "=" not in spec:
            raise ConfigError(f"--grid-spec needs NAME=VALUES, got {spec!r}")
        name, _, values = spec.partition("=")
        name = name.strip()
        if name not in GRID_NAMES:
            raise ConfigError(f"unknown grid {name!r}; allowed: {list(GRID_NAMES)}")
        grids[name] = _parse_grid_values(values)

    out_flag = args.out if args.out is not None else file_cfg.get("out")
    if out_flag is None:
        out_flag = os.environ.get("BWMBERRY_OUT", ".")
    out_dir = Path(out_flag)

    mesh = file_cfg.get("figure_d_mesh", (1.0, 6.0, 51))
    mesh_flag = getattr(args, "d_mesh", None)
    if mesh_flag is not None:
        parts = mesh_flag.split(":")
        if len(parts) != 3:
            raise ConfigError(f"--d-mesh needs MIN:MAX:COUNT, got {mesh_flag!r}")
        mesh = (parts[0], parts[1], parts[2])
    try:
        mesh = (float(mesh[0]), float(mesh[1]), int(mesh[2]))
    except (TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"figure_d_mesh must be [min, max, count], got {mesh!r}") from exc
    if mesh[0] < 1.0 or mesh[1] < mesh[0] or mesh[2] < 2:
        raise ConfigError("figure_d_mesh needs 1 <= min <= max and count >= 2")

    cfg = RunConfig(
        command=args.command,
        out_dir=out_dir,
        tolerance=_positive(pick(args.tolerance, "tolerance", 1e-10), "tolerance"),
        tla_tolerance=_positive(file_cfg.get("tla_tolerance", 1e-12), "tla_tolerance"),
        phase_tolerance=_positive(pick(args.phase_tolerance, "phase_tolerance", 1e-4), "phase_tolerance"),
        zero_branch_tolerance=_positive(file_cfg.get("zero_branch_tolerance", 1e-6), "zero_branch_tolerance"),
        unimodularity_tolerance=_positive(
            file_cfg.get("unimodularity_tolerance", 1e-13), "unimodularity_tolerance"
        ),
        steps=_nonneg_int(pick(args.steps, "steps", 4096), "steps"),
        seed=int(pick(args.seed, "seed", 20260815)),
        jobs=_nonneg_int(pick(args.jobs, "jobs", 1), "jobs"),
        phase_pairs=_nonneg_int(pick(args.phase_pairs, "phase_pairs", 5), "phase_pairs"),
        ybe_samples=_nonneg_int(pick(args.ybe_samples, "ybe_samples", 200), "ybe_samples"),
        figure_theta_points=_nonneg_int(
            pick(getattr(args, "theta_points", None), "figure_theta_points", 401), "figure_theta_points"
        ),
        figure_d_mesh=mesh,
        grids=grids,
    )
    if cfg.steps < MIN_STEPS:
        raise ConfigError(f"steps must be >= {MIN_STEPS}, got {cfg.steps}")
    if cfg.jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {cfg.jobs}")
    if cfg.figure_theta_points < 2:
        raise ConfigError(f"figure_theta_points must be >= 2, got {cfg.figure_theta_points}")
    return cfg


_COMMANDS = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "berry": cmd_berry,
    "figure": cmd_figure,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bwmberry",
        description="Verification suites and loop-phase computations for the rank-3 braid representation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file; flags take precedence over it")
    common.add_argument("--tolerance", type=float, help="base relation tolerance (default 1e-10)")
    common.add_argument("--phase-tolerance", type=float, help="loop-phase match tolerance (default 1e-4)")
    common.add_argument("--steps", type=int, help="loop discretisation points (default 4096)")
    common.add_argument("--seed", type=int, help="seed for sampled phases and velocities")
    common.add_argument("--jobs", type=int, help="worker threads for grid evaluation (default 1)")
    common.add_argument("--out", type=Path, help="output directory (default $BWMBERRY_OUT or '.')")
    common.add_argument(
        "--grid-spec",
        action="append",
        default=[],
        metavar="NAME=VALUES",
        help="override a grid: comma list '0.5,0.9' or range 'start:stop:count'; "
        f"names: {', '.join(GRID_NAMES)}",
    )
    common.add_argument("--phase-pairs", type=int, help="number of sampled (phi1, phi2) pairs (default 5)")
    common.add_argument("--ybe-samples", type=int, help="number of sampled exchange tuples (default 200)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="algebra relation suites and exchange sweeps")
    sub.add_parser("spectrum", parents=[common], help="driven-Hamiltonian and Casimir spectra")
    sub.add_parser("berry", parents=[common], help="Wilson-loop phases against closed forms")
    fig = sub.add_parser("figure", parents=[common], help="CSV tables of the closed-form phase")
    fig.add_argument("--theta-points", type=int, help="theta samples over [0, 2pi] (default 401)")
    fig.add_argument("--d-mesh", metavar="MIN:MAX:COUNT", help="surface d mesh (default 1:6:51)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    try:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        records, warnings = _COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 2

    if not records:
        warnings = list(warnings) + ["no checks were executed (empty grids?)"]

    report = SuiteReport(
        command=cfg.command,
        config=cfg.echo(),
        checks=records,
        warnings=warnings,
        wall_time_s=time.perf_counter() - started,
        timestamp=datetime.now(timezone.utc).isoformat(),
        out_dir=str(cfg.out_dir),
        jobs=cfg.jobs,
    )
    report_path = cfg.out_dir / f"{cfg.command}_report.json"
    try:
        with open(report_path, "w", encoding="utf-8", newline="") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return 2

    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    s = report.summary()
    worst = "n/a" if s["worst_residual"] is None else f"{s['worst_residual']:.3e}"
    print(
        f"[bwmberry {cfg.command}] {s['passed']}/{s['checks']} checks passed, "
        f"{s['failed']} failed, {s['skipped']} skipped; worst residual {worst}; wrote {report_path}"
    )
    return 0 if report.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
