"""Experiment runner: simulate, modes, trace, and sweep subcommands.

File contracts
--------------
- Run configuration: a flat TOML file with exactly the RunConfig keys;
  unknown keys are rejected so sweep scripts fail loudly on typos.
- diagnostics.csv: columns time,dev_plus,dev_minus,elec,e_good,f_bad,gap,mass
  in that order, one row per record cadence.
- Snapshots: binary, magic "PFLD", then format version, n1, n2 as 4-byte
  little-endian unsigned ints, box size and time as 8-byte little-endian
  IEEE-754, then rho_plus and rho_minus row-major as 8-byte little-endian
  IEEE-754.  Write-then-read reproduces samples bit-exactly.
- Exit statuses: 0 success, 1 runtime failure, 2 configuration problem.

The environment variable PLASMA_LAB_THREADS caps sweep concurrency.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import struct
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import diagnostics, drifts, modes, transport
from .fields import (
    Field,
    Grid,
    Params,
    PlasmaState,
    SteadyKind,
    l2_norm,
    make_grid,
    steady_state,
)
from .poisson import mode_shape

SNAPSHOT_MAGIC = b"PFLD"
SNAPSHOT_VERSION = 1
CSV_COLUMNS = ("time", "dev_plus", "dev_minus", "elec", "e_good", "f_bad",
               "gap", "mass")
SCENARIOS = ("steady-good", "steady-bad", "eigenmode-seed", "file-init")
DOMINANT_SCAN_KMAX = 8


class ConfigError(ValueError):
    """Bad run configuration (missing, unknown, or ill-typed keys)."""


class FormatError(RuntimeError):
    """A file does not follow one of the documented formats."""


# ---------------------------------------------------------------------------
# snapshot format


def write_snapshot(path: Path | str, state: PlasmaState) -> Path:
    grid = state.grid
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(struct.pack("<III", SNAPSHOT_VERSION, grid.n1, grid.n2))
        fh.write(struct.pack("<dd", grid.box, state.time))
        fh.write(np.ascontiguousarray(state.rho_plus.data, "<f8").tobytes())
        fh.write(np.ascontiguousarray(state.rho_minus.data, "<f8").tobytes())
    return path


def read_snapshot(path: Path | str) -> PlasmaState:
    raw = Path(path).read_bytes()
    if len(raw) < 32 or raw[:4] != SNAPSHOT_MAGIC:
        raise FormatError(f"{path}: not a PFLD snapshot")
    version, n1, n2 = struct.unpack_from("<III", raw, 4)
    if version != SNAPSHOT_VERSION:
        raise FormatError(f"{path}: unsupported snapshot version {version}")
    box, time = struct.unpack_from("<dd", raw, 16)
    body = 2 * n1 * n2 * 8
    if len(raw) != 32 + body:
        raise FormatError(
            f"{path}: expected {32 + body} bytes for a {n1}x{n2} snapshot, "
            f"found {len(raw)}"
        )
    grid = make_grid(n1, n2, box)
    flat = np.frombuffer(raw, dtype="<f8", count=2 * n1 * n2, offset=32)
    rho_plus = flat[: n1 * n2].reshape(n1, n2).copy()
    rho_minus = flat[n1 * n2 :].reshape(n1, n2).copy()
    return PlasmaState(Field(grid, rho_plus), Field(grid, rho_minus), time=time)


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    t_plus: float
    t_minus: float
    box: float
    n1: int
    n2: int
    scenario: str
    t_end: float
    output_dir: str
    seed_amplitude: float = 0.0
    seed_mode: tuple[int, int] | None = None
    cfl_safety: float = 0.5
    record_every: int = 1
    snapshot_every: int | None = None
    init_file: str | None = None
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"scenario must be one of {SCENARIOS}, got {self.scenario!r}"
            )
        if self.seed_amplitude < 0.0:
            raise ConfigError("seed_amplitude must be >= 0")
        if self.t_end < 0.0:
            raise ConfigError("t_end must be >= 0")
        if self.record_every < 1:
            raise ConfigError("record_every must be >= 1")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ConfigError("snapshot_every must be >= 1 when given")
        if self.scenario == "file-init" and not self.init_file:
            raise ConfigError("scenario file-init requires init_file")

    def params(self) -> Params:
        try:
            return Params(self.t_plus, self.t_minus, self.box)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def grid(self) -> Grid:
        try:
            return make_grid(self.n1, self.n2, self.box)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


_CONFIG_TYPES = {
    "t_plus": (int, float),
    "t_minus": (int, float),
    "box": (int, float),
    "n1": (int,),
    "n2": (int,),
    "scenario": (str,),
    "t_end": (int, float),
    "output_dir": (str,),
    "seed_amplitude": (int, float),
    "seed_mode": (list,),
    "cfl_safety": (int, float),
    "record_every": (int,),
    "snapshot_every": (int,),
    "init_file": (str,),
    "rng_seed": (int,),
}
_REQUIRED_KEYS = ("t_plus", "t_minus", "box", "n1", "n2", "scenario", "t_end",
                  "output_dir")


def parse_config(table: dict) -> RunConfig:
    unknown = sorted(set(table) - set(_CONFIG_TYPES))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    missing = [k for k in _REQUIRED_KEYS if k not in table]
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(missing)}")
    for key, value in table.items():
        if type(value) not in _CONFIG_TYPES[key] or isinstance(value, bool):
            raise ConfigError(f"config key {key} has wrong type {type(value).__name__}")
    values = dict(table)
    for key in ("t_plus", "t_minus", "box", "t_end", "seed_amplitude",
                "cfl_safety"):
        if key in values:
            values[key] = float(values[key])
    if "seed_mode" in values:
        sm = values["seed_mode"]
        if len(sm) != 2 or not all(isinstance(v, int) for v in sm):
            raise ConfigError("seed_mode must be a pair of integers [k1, k2]")
        values["seed_mode"] = (sm[0], sm[1])
    return RunConfig(**values)


def load_config(path: Path | str) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            table = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    return parse_config(table)


# ---------------------------------------------------------------------------
# scenarios


def random_perturbation(
    grid: Grid, amplitude: float, rng_seed: int, k_max: int = 3
) -> tuple[Field, Field]:
    """Smooth band-limited random density perturbation, jointly normalized.

    Draws complex coefficients for every wave with 1 <= k1 <= k_max and
    1 <= |k2| <= k_max, damped by the Laplacian symbol so the seed is
    dominated by the largest scales; k2 = 0 is excluded so the perturbation
    carries no mass and the unit-mean convention survives seeding.
    """
    rng = np.random.default_rng(rng_seed)
    d_plus = np.zeros((grid.n1, grid.n2))
    d_minus = np.zeros((grid.n1, grid.n2))
    for k1 in range(1, k_max + 1):
        for k2 in range(-k_max, k_max + 1):
            if k2 == 0:
                continue
            shape = mode_shape(grid, k1, k2) * (5.0 / (k1**2 + 4.0 * k2**2)) ** 2
            cp = rng.normal() + 1j * rng.normal()
            cm = rng.normal() + 1j * rng.normal()
            d_plus += np.real(cp * shape)
            d_minus += np.real(cm * shape)
    raw = math.sqrt(
        l2_norm(Field(grid, d_plus)) ** 2 + l2_norm(Field(grid, d_minus)) ** 2
    )
    scale = 0.0 if amplitude == 0.0 else amplitude / raw
    return Field(grid, scale * d_plus), Field(grid, scale * d_minus)


def _perturbed(base: PlasmaState, delta: tuple[Field, Field]) -> PlasmaState:
    grid = base.grid
    return PlasmaState(
        Field(grid, base.rho_plus.data + delta[0].data),
        Field(grid, base.rho_minus.data + delta[1].data),
        time=base.time,
    )


def build_initial_state(
    config: RunConfig,
) -> tuple[PlasmaState, SteadyKind, modes.ModeAnalysis | None]:
    """Initial state, the reference equilibrium, and the seeded wave if any."""
    params = config.params()
    grid = config.grid()
    if config.scenario == "file-init":
        state = read_snapshot(config.init_file)
        if state.grid != grid:
            raise ConfigError(
                f"init_file grid {state.grid.n1}x{state.grid.n2} "
                f"(box {state.grid.box}) does not match the config"
            )
        return state, SteadyKind.BAD_CURVATURE, None

    if config.scenario == "steady-good":
        reference = SteadyKind.GOOD_CURVATURE
    else:
        reference = SteadyKind.BAD_CURVATURE
    base = steady_state(reference, grid)

    if config.scenario == "eigenmode-seed":
        if config.seed_mode is not None:
            try:
                index = modes.ModeIndex(*config.seed_mode)
            except modes.ModeError as exc:
                raise ConfigError(str(exc)) from exc
            analysis = modes.analyze_mode(index, params, reference)
            if analysis.growth_rate <= 0.0:
                raise ConfigError(
                    f"seed_mode {config.seed_mode} does not grow at gradient "
                    f"{params.gradient():g}"
                )
        else:
            analysis = modes.dominant_mode(params, reference, DOMINANT_SCAN_KMAX)
            if analysis is None:
                raise ConfigError(
                    f"no growing wave at gradient {params.gradient():g}; "
                    "eigenmode-seed needs one (threshold 4/(5 pi^2))"
                )
        delta = modes.eigenmode_fields(analysis, config.seed_amplitude, grid)
        return _perturbed(base, delta), reference, analysis

    delta = random_perturbation(grid, config.seed_amplitude, config.rng_seed)
    return _perturbed(base, delta), reference, None


# ---------------------------------------------------------------------------
# simulate


@dataclass
class SimResult:
    config: RunConfig
    reference: SteadyKind
    records: list[diagnostics.EnergyRecord]
    final_state: PlasmaState
    seeded: modes.ModeAnalysis | None
    fitted_rate: float | None
    fit_quality: float | None
    fit_window: tuple[float, float] | None
    max_amplification: float | None
    steps: int


def _format_float(x: float) -> str:
    return format(x, ".17g")


def growth_fit_window(
    records: list[diagnostics.EnergyRecord], delta: float, mu_norm: float
) -> tuple[float, float] | None:
    """Fit window from dev = 10*delta up to min(1000*delta, mu_norm/100)."""
    if delta <= 0.0:
        return None
    lo_level = 10.0 * delta
    hi_level = min(1.0e3 * delta, 0.01 * mu_norm)
    t_lo = t_hi = None
    for rec in records:
        dev = math.hypot(rec.dev_plus, rec.dev_minus)
        if t_lo is None and dev >= lo_level:
            t_lo = rec.time
        if t_hi is None and dev >= hi_level:
            t_hi = rec.time
            break
    if t_lo is None or t_hi is None or t_hi <= t_lo:
        return None
    return t_lo, t_hi


def run_simulation(config: RunConfig) -> SimResult:
    """Drive one configured run and return its records and fit."""
    params = config.params()
    state, reference, seeded = build_initial_state(config)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    records: list[diagnostics.EnergyRecord] = []
    steps_seen = [0]

    csv_path = out / "diagnostics.csv"
    csv_file = open(csv_path, "w", encoding="utf-8")
    csv_file.write(",".join(CSV_COLUMNS) + "\n")

    def write_record(st: PlasmaState) -> None:
        rec = diagnostics.record(st, params, reference)
        records.append(rec)
        csv_file.write(
            ",".join(_format_float(getattr(rec, col)) for col in CSV_COLUMNS) + "\n"
        )
        csv_file.flush()

    def record_observer(st: PlasmaState, step: int) -> None:
        steps_seen[0] = step
        if step % config.record_every == 0:
            write_record(st)

    def snapshot_observer(st: PlasmaState, step: int) -> None:
        due = step == 0 or (
            config.snapshot_every is not None
            and step % config.snapshot_every == 0
        )
        if due:
            write_snapshot(out / f"snap_{step:08d}.pfld", st)

    cfg = transport.StepperConfig(cfl_safety=config.cfl_safety)
    try:
        final = transport.run(
            state, params, cfg, config.t_end,
            observers=[record_observer, snapshot_observer],
        )
        if steps_seen[0] % config.record_every != 0:
            write_record(final)
    finally:
        csv_file.close()
    write_snapshot(out / "final.pfld", final)

    mu = steady_state(reference, final.grid)
    mu_norm = math.sqrt(
        l2_norm(mu.rho_plus) ** 2 + l2_norm(mu.rho_minus) ** 2
    )
    window = growth_fit_window(records, config.seed_amplitude, mu_norm)
    fitted = quality = None
    if window is not None:
        series = [
            (rec.time, math.hypot(rec.dev_plus, rec.dev_minus)) for rec in records
        ]
        try:
            fitted, quality = diagnostics.fit_growth_rate(series, window)
        except diagnostics.DiagnosticsError:
            window = None

    amplification = None
    dev2_first = records[0].dev_plus**2 + records[0].dev_minus**2
    if dev2_first > 0.0:
        amplification = max(
            (r.dev_plus**2 + r.dev_minus**2) / dev2_first for r in records
        )

    result = SimResult(
        config=config,
        reference=reference,
        records=records,
        final_state=final,
        seeded=seeded,
        fitted_rate=fitted,
        fit_quality=quality,
        fit_window=window,
        max_amplification=amplification,
        steps=steps_seen[0],
    )
    _write_summary(out / "summary.txt", result, params)
    return result


def _write_summary(path: Path, result: SimResult, params: Params) -> None:
    lines = [
        f"scenario = {result.config.scenario}",
        f"t_plus = {_format_float(params.t_plus)}",
        f"t_minus = {_format_float(params.t_minus)}",
        f"box = {_format_float(params.box)}",
        f"gradient = {_format_float(params.gradient())}",
        f"grid = {result.config.n1}x{result.config.n2}",
        f"t_end = {_format_float(result.config.t_end)}",
        f"steps = {result.steps}",
        f"records = {len(result.records)}",
        f"seed_amplitude = {_format_float(result.config.seed_amplitude)}",
        f"reference = {result.reference.value}",
    ]
    if result.seeded is not None:
        lines.append(
            f"seed_mode = {result.seeded.mode.k1},{result.seeded.mode.k2}"
        )
        lines.append(
            f"predicted_rate = {_format_float(result.seeded.growth_rate)}"
        )
    if result.fitted_rate is not None:
        lines.append(f"fitted_rate = {_format_float(result.fitted_rate)}")
        lines.append(f"fit_quality = {_format_float(result.fit_quality)}")
        lines.append(
            "fit_window = "
            f"{_format_float(result.fit_window[0])}.."
            f"{_format_float(result.fit_window[1])}"
        )
    if result.max_amplification is not None:
        lines.append(
            f"max_amplification = {_format_float(result.max_amplification)}"
        )
    bound = diagnostics.certified_amplification(params)
    if bound is not None:
        lines.append(f"stability_bound = {_format_float(bound)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_simulate(config: RunConfig) -> SimResult:
    return run_simulation(config)


# ---------------------------------------------------------------------------
# modes table


def cmd_modes(params: Params, side: SteadyKind, k_max: int, out: Path) -> Path:
    if k_max < 1:
        raise ConfigError(f"kmax must be >= 1, got {k_max}")
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    for k1 in range(1, k_max + 1):
        for k2 in [k for k in range(-k_max, k_max + 1) if k != 0]:
            a = modes.analyze_mode(modes.ModeIndex(k1, k2), params, side)
            rows.append(
                f"{k1},{k2},{_format_float(a.discriminant)},"
                f"{_format_float(a.growth_rate)},{_format_float(a.threshold)}"
            )
    dominant = modes.dominant_mode(params, side, k_max)
    if dominant is None:
        footer = "# dominant: stable"
    else:
        footer = (
            f"# dominant: k1={dominant.mode.k1} k2={dominant.mode.k2} "
            f"growth_rate={_format_float(dominant.growth_rate)}"
        )
    out.write_text(
        "k1,k2,discriminant,growth_rate,threshold\n"
        + "\n".join(rows) + "\n" + footer + "\n",
        encoding="utf-8",
    )
    print(footer.lstrip("# "))
    return out


# ---------------------------------------------------------------------------
# orbit trace


def cmd_trace(
    p0: drifts.ParticleState, dt: float, steps: int, decimate: int, out: Path
) -> Path:
    if decimate < 1:
        raise ConfigError(f"decimate must be >= 1, got {decimate}")
    traj = drifts.integrate_orbit(p0, dt, steps)
    keep = sorted(set(range(0, steps + 1, decimate)) | {steps})
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("t,x1,x2,v1,v2\n")
        for i in keep:
            row = traj.states[i]
            fh.write(
                f"{_format_float(traj.times[i])},"
                + ",".join(_format_float(v) for v in row) + "\n"
            )
        d1, d2, fall = drifts.orbit_invariants(traj)
        fh.write(
            f"# invariants: dC1={d1:.3e} dC2={d2:.3e} fall_residual={fall:.3e}\n"
        )
    return out


# ---------------------------------------------------------------------------
# gradient sweep


def _sweep_one(base: RunConfig, gradient: float, run_dir: Path) -> dict:
    t_plus = base.t_minus + gradient * base.box
    params = Params(t_plus, base.t_minus, base.box)
    analysis = modes.dominant_mode(
        params, SteadyKind.BAD_CURVATURE, DOMINANT_SCAN_KMAX
    )
    scenario = "eigenmode-seed" if analysis is not None else "steady-bad"
    config = dataclasses.replace(
        base,
        t_plus=t_plus,
        scenario=scenario,
        seed_mode=None,
        output_dir=str(run_dir),
    )
    result = run_simulation(config)
    return {
        "gradient": gradient,
        "predicted_rate": analysis.growth_rate if analysis else 0.0,
        "measured_rate": result.fitted_rate if result.fitted_rate else 0.0,
        "max_amplification": result.max_amplification or 0.0,
        "status": "ok",
    }


def cmd_sweep(base: RunConfig, gradients: list[float]) -> Path:
    if not gradients:
        raise ConfigError("gradient list is empty")
    out = Path(base.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    threads = int(os.environ.get("PLASMA_LAB_THREADS", "1") or "1")
    threads = max(1, threads)

    def job(item: tuple[int, float]) -> dict:
        index, gradient = item
        run_dir = out / f"run_{index:03d}"
        try:
            return _sweep_one(base, gradient, run_dir)
        except Exception as exc:  # keep sweeping; record the failure per row
            return {
                "gradient": gradient,
                "predicted_rate": float("nan"),
                "measured_rate": float("nan"),
                "max_amplification": float("nan"),
                "status": f"error: {exc}",
            }

    items = list(enumerate(gradients))
    if threads == 1:
        rows = [job(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(job, items))

    path = out / "sweep.csv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("gradient,predicted_rate,measured_rate,max_amplification,status\n")
        for row in rows:
            fh.write(
                f"{_format_float(row['gradient'])},"
                f"{_format_float(row['predicted_rate'])},"
                f"{_format_float(row['measured_rate'])},"
                f"{_format_float(row['max_amplification'])},"
                f"{row['status']}\n"
            )
    return path


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasma-lab",
        description="Bi-temperature drift-fluid slab experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a configured simulation")
    p_sim.add_argument("--config", required=True, type=Path)

    p_modes = sub.add_parser("modes", help="scan linear waves and thresholds")
    p_modes.add_argument("--tplus", required=True, type=float)
    p_modes.add_argument("--tminus", required=True, type=float)
    p_modes.add_argument("--box", required=True, type=float)
    p_modes.add_argument("--side", required=True, choices=["good", "bad"])
    p_modes.add_argument("--kmax", required=True, type=int)
    p_modes.add_argument("--out", type=Path, default=Path("modes.csv"))

    p_trace = sub.add_parser("trace", help="integrate one drift orbit")
    p_trace.add_argument("--x1", required=True, type=float)
    p_trace.add_argument("--x2", required=True, type=float)
    p_trace.add_argument("--v1", required=True, type=float)
    p_trace.add_argument("--v2", required=True, type=float)
    p_trace.add_argument("--dt", required=True, type=float)
    p_trace.add_argument("--steps", required=True, type=int)
    p_trace.add_argument("--decimate", type=int, default=1)
    p_trace.add_argument("--out", type=Path, default=Path("trace.csv"))

    p_sweep = sub.add_parser("sweep", help="sweep the temperature gradient")
    p_sweep.add_argument("--config", required=True, type=Path)
    p_sweep.add_argument("--gradients", required=True,
                         help="comma-separated gradient values")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            result = cmd_simulate(load_config(args.config))
            print(f"wrote {Path(result.config.output_dir) / 'summary.txt'}")
        elif args.command == "modes":
            try:
                params = Params(args.tplus, args.tminus, args.box)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            side = (SteadyKind.GOOD_CURVATURE if args.side == "good"
                    else SteadyKind.BAD_CURVATURE)
            cmd_modes(params, side, args.kmax, args.out)
        elif args.command == "trace":
            out = cmd_trace(
                drifts.ParticleState(args.x1, args.x2, args.v1, args.v2),
                args.dt, args.steps, args.decimate, args.out,
            )
            print(f"wrote {out}")
        elif args.command == "sweep":
            try:
                gradients = [float(v) for v in args.gradients.split(",") if v]
            except ValueError as exc:
                raise ConfigError(f"bad gradient list: {exc}") from exc
            path = cmd_sweep(load_config(args.config), gradients)
            print(f"wrote {path}")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
