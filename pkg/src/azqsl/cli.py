"""Command-line surface: single evaluations, (alpha, z, t) sweeps, figure
presets, CSV emission, and plot-script generation.

Sweeps write one CSV row per grid point, ordered by (alpha, z, t), with 17
significant digits and '\\n' line endings so identical configs produce
byte-identical files. Grid points that fail numerically degrade to rows
with empty numeric cells and an error flag in the warnings column; they
never abort the sweep.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import dynamics as dyn
from . import entropy as ent
from . import qsl
from .errors import AzqslError, ConfigError, MissingColumnError
from .states import (
    BlochVector,
    DensityMatrix,
    GHZMixedParams,
    bloch_state,
    ghz_mixed,
    load_state,
)

MODELS = ("unitary_qubit", "depolarizing", "amplitude_damping", "custom_kraus_file")
OUTPUT_GROUPS = ("entropy", "bounds", "qsl", "errors")
MAX_GRID_COUNT = 10_000

BASE_COLUMNS = [
    "model", "r", "theta", "phi", "nx", "ny", "nz", "gamma", "lambda", "s", "p",
    "alpha", "z", "t",
    "D_fwd", "D_bwd", "D_sym",
    "rhs_fwd", "rhs_bwd", "rhs_sym",
    "tau_fwd", "tau_bwd", "tau_sym", "tau_qsl",
    "delta_bound", "delta_qsl",
]
NORM_COLUMNS = ["delta_bound_norm", "delta_qsl_norm"]


@dataclass(frozen=True)
class SweepConfig:
    """One sweep panel: a dynamics model plus (alpha, z, t) grids."""

    model: str = "depolarizing"
    r: float = 0.75
    theta: float = math.pi / 2
    phi: float = 0.0
    n: tuple[float, float, float] = (0.0, 0.0, 1.0)
    gamma: float = 1.0
    lam: float = 1.0
    s: float = 0.5
    p: float = 0.25
    alpha_grid: tuple[float, float, int] = (0.5, 0.5, 1)
    z_grid: tuple[float, float, int] = (1.0, 1.0, 1)
    time_grid: tuple[float, float, int] = (1.0, 1.0, 1)
    n_steps: int = 1001
    outputs: tuple[str, ...] = ("entropy", "bounds", "qsl")
    state_file: str | None = None
    kraus_file: str | None = None

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}; choose from {MODELS}")
        for name, grid in (
            ("alpha_grid", self.alpha_grid),
            ("z_grid", self.z_grid),
            ("time_grid", self.time_grid),
        ):
            lo, hi, count = grid
            if count < 1 or count > MAX_GRID_COUNT:
                raise ConfigError(f"{name} count {count} outside [1, {MAX_GRID_COUNT}]")
            if hi < lo:
                raise ConfigError(f"{name} has max {hi} < min {lo}")
        alo, ahi, _ = self.alpha_grid
        if alo <= 0.0 or ahi >= 1.0:
            raise ConfigError(f"alpha grid [{alo}, {ahi}] must lie inside (0, 1)")
        zlo, zhi, _ = self.z_grid
        if zlo <= 0.0 or zhi > 1.0:
            raise ConfigError(f"z grid [{zlo}, {zhi}] must lie inside (0, 1]")
        if self.time_grid[0] < 0.0:
            raise ConfigError("time grid must be nonnegative")
        if self.n_steps < 2:
            raise ConfigError(f"n_steps must be >= 2, got {self.n_steps}")
        unknown = set(self.outputs) - set(OUTPUT_GROUPS)
        if unknown:
            raise ConfigError(f"unknown outputs {sorted(unknown)}; choose from {OUTPUT_GROUPS}")
        if self.model == "custom_kraus_file" and not self.kraus_file:
            raise ConfigError("custom_kraus_file model requires kraus_file")


def _grid_values(grid: tuple[float, float, int]) -> np.ndarray:
    lo, hi, count = grid
    return np.linspace(lo, hi, count)


def parse_grid(text: str) -> tuple[float, float, int]:
    """Parse "min,max,count" (or colon-separated) into a grid triple."""
    parts = text.replace(":", ",").split(",")
    if len(parts) == 1:
        value = float(parts[0])
        return (value, value, 1)
    if len(parts) != 3:
        raise ConfigError(f"grid {text!r} must be value or min,max,count")
    return (float(parts[0]), float(parts[1]), int(parts[2]))


_CONFIG_KEYS = {
    "model": str,
    "r": float, "theta": float, "phi": float,
    "nx": float, "ny": float, "nz": float,
    "gamma": float, "lambda": float, "s": float, "p": float,
    "alpha_grid": parse_grid, "z_grid": parse_grid, "time_grid": parse_grid,
    "n_steps": int,
    "outputs": lambda v: tuple(x.strip() for x in v.split(",") if x.strip()),
    "state_file": str, "kraus_file": str,
}


def _apply_config_item(cfg: SweepConfig, key: str, value: str) -> SweepConfig:
    if key not in _CONFIG_KEYS:
        raise ConfigError(f"unknown config key {key!r}")
    parsed = _CONFIG_KEYS[key](value)
    if key in ("nx", "ny", "nz"):
        idx = "xyz".index(key[1])
        n = list(cfg.n)
        n[idx] = parsed
        return replace(cfg, n=tuple(n))
    if key == "lambda":
        return replace(cfg, lam=parsed)
    return replace(cfg, **{key: parsed})


def load_config(path: str, overrides: list[str] | None = None) -> SweepConfig:
    """Flat key=value file plus command-line overrides."""
    cfg = SweepConfig()
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"bad config line {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg = _apply_config_item(cfg, key, value)
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        key, value = (part.strip() for part in item.split("=", 1))
        cfg = _apply_config_item(cfg, key, value)
    cfg.validate()
    return cfg


def load_kraus_file(path: str) -> dyn.KrausFamily:
    """Constant Kraus family: header "n_ops dim", then n_ops blocks of dim^2
    lines "re im" in row-major order. Derivatives are identically zero."""
    try:
        with open(path) as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise ConfigError(f"cannot read kraus file {path}: {exc}") from exc
    if len(tokens) < 2:
        raise ConfigError("kraus file too short")
    n_ops, dim = int(tokens[0]), int(tokens[1])
    need = 2 + 2 * n_ops * dim * dim
    if len(tokens) != need:
        raise ConfigError(f"kraus file: expected {need} fields, found {len(tokens)}")
    vals = np.array([float(t) for t in tokens[2:]])
    ops = (vals[0::2] + 1j * vals[1::2]).reshape(n_ops, dim, dim)
    zeros = [np.zeros((dim, dim), dtype=complex) for _ in range(n_ops)]
    return dyn.KrausFamily(
        dim=dim,
        n_ops=n_ops,
        ops_fn=lambda t: list(ops),
        dops_fn=lambda t: zeros,
    )


def _probe_state(cfg: SweepConfig) -> DensityMatrix:
    if cfg.state_file:
        return load_state(cfg.state_file)
    if cfg.model == "amplitude_damping":
        return ghz_mixed(GHZMixedParams(cfg.p))
    return bloch_state(BlochVector(cfg.r, cfg.theta, cfg.phi))


def _build_family(cfg: SweepConfig) -> dyn.KrausFamily | None:
    if cfg.model == "depolarizing":
        return dyn.depolarizing_family(dyn.DepolarizingParams(cfg.gamma))
    if cfg.model == "amplitude_damping":
        return dyn.amplitude_damping_family(dyn.AmplitudeDampingParams(cfg.lam, cfg.s))
    if cfg.model == "custom_kraus_file":
        return load_kraus_file(cfg.kraus_file)
    return None


def _fmt(x: float) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _model_param_cells(cfg: SweepConfig) -> list[str]:
    qubit = cfg.model in ("unitary_qubit", "depolarizing")
    cells = [cfg.model]
    cells += [_fmt(cfg.r), _fmt(cfg.theta), _fmt(cfg.phi)] if qubit else ["", "", ""]
    cells += [_fmt(v) for v in cfg.n] if cfg.model == "unitary_qubit" else ["", "", ""]
    cells.append(_fmt(cfg.gamma) if cfg.model == "depolarizing" else "")
    if cfg.model == "amplitude_damping":
        cells += [_fmt(cfg.lam), _fmt(cfg.s), _fmt(cfg.p)]
    else:
        cells += ["", "", ""]
    return cells


@dataclass
class _Row:
    alpha: float
    z: float
    t: float
    values: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def _stationary_row(alpha: float, z: float, t: float, outputs) -> _Row:
    """Limit values for a zero-length horizon: all entropies and rates are
    zero, the bound saturates, and the speed limit is the trivial tau >= 0."""
    values = {}
    if "entropy" in outputs:
        values.update({"D_fwd": 0.0, "D_bwd": 0.0, "D_sym": 0.0})
    if "bounds" in outputs:
        values.update({"rhs_fwd": 0.0, "rhs_bwd": 0.0, "rhs_sym": 0.0, "delta_bound": 0.0})
    if "qsl" in outputs:
        values.update({"tau_fwd": 0.0, "tau_bwd": 0.0, "tau_sym": 0.0,
                       "tau_qsl": 0.0, "delta_qsl": 1.0})
    return _Row(alpha=alpha, z=z, t=t, values=values)


def _point_row(cfg, rho0, family, alpha, z, t, cache) -> _Row:
    if t == 0.0:
        return _stationary_row(alpha, z, t, cfg.outputs)
    p = ent.EntropyParams(alpha, z)
    if t not in cache:
        if family is None:
            hmod = dyn.HamiltonianModel.qubit(cfg.n)
            traj = dyn.evolve_unitary(hmod, rho0, t, cfg.n_steps)
            terms = None
        else:
            traj = dyn.evolve_kraus(family, rho0, t, cfg.n_steps)
            terms = dyn.kraus_speed_term_stacks(
                family, rho0, traj.times, fd_step=1e-5 * t
            ).sum(axis=1)
        cache[t] = (traj, terms)
    traj, terms = cache[t]
    values = {}
    warnings: tuple[str, ...] = ()

    def note(flags) -> None:
        nonlocal warnings
        warnings += tuple(w for w in flags if w not in warnings)

    # each output group degrades independently: near-singular late-time
    # states can blow up the speed-limit ratios while the entropies and
    # integrated bounds are still reportable
    if "entropy" in cfg.outputs or "bounds" in cfg.outputs:
        try:
            bound = qsl.integrate_bounds(traj, p)
            note(bound.warnings)
            if "entropy" in cfg.outputs:
                values.update({"D_fwd": bound.d_fwd, "D_bwd": bound.d_bwd, "D_sym": bound.d_sym})
            if "bounds" in cfg.outputs:
                values.update({
                    "rhs_fwd": bound.rhs_fwd, "rhs_bwd": bound.rhs_bwd,
                    "rhs_sym": bound.rhs_sym, "delta_bound": bound.delta_bound,
                })
        except AzqslError as exc:
            note((f"error:{type(exc).__name__}",))
    if "qsl" in cfg.outputs:
        try:
            if terms is None:
                report = qsl.qsl_general(traj, p)
            else:
                report = qsl.nonunitary_qsl_from_terms(traj, terms, p)
            note(report.warnings)
            values.update({
                "tau_fwd": report.tau_fwd, "tau_bwd": report.tau_bwd,
                "tau_sym": report.tau_sym, "tau_qsl": report.tau_qsl,
                "delta_qsl": report.delta_qsl,
            })
        except AzqslError as exc:
            note((f"error:{type(exc).__name__}",))
    return _Row(alpha=alpha, z=z, t=t, values=values, warnings=warnings)


def sweep_rows(cfg: SweepConfig) -> list[_Row]:
    """Evaluate the panel on its (alpha, z, t) grid, ordered lexicographically.

    Trajectories depend only on t, so they are computed once per time value
    and shared across the (alpha, z) grid."""
    cfg.validate()
    rho0 = _probe_state(cfg)
    family = _build_family(cfg)
    if family is not None and family.dim != rho0.dim:
        raise ConfigError(f"probe dim {rho0.dim} does not match channel dim {family.dim}")
    alphas = _grid_values(cfg.alpha_grid)
    zs = _grid_values(cfg.z_grid)
    times = _grid_values(cfg.time_grid)
    cache: dict = {}
    rows = []
    for alpha in alphas:
        for z in zs:
            for t in times:
                try:
                    row = _point_row(cfg, rho0, family, float(alpha), float(z), float(t), cache)
                except AzqslError as exc:
                    row = _Row(alpha=float(alpha), z=float(z), t=float(t),
                               warnings=(f"error:{type(exc).__name__}",))
                rows.append(row)
    if "errors" in cfg.outputs:
        _attach_normalized(rows)
    return rows


def _attach_normalized(rows: list[_Row]) -> None:
    for src, dst in (("delta_bound", "delta_bound_norm"), ("delta_qsl", "delta_qsl_norm")):
        vals = [row.values.get(src, math.nan) for row in rows]
        finite = [v for v in vals if isinstance(v, float) and math.isfinite(v)]
        if len(finite) < 2 or max(finite) - min(finite) < 1e-15:
            continue
        lo, hi = min(finite), max(finite)
        for row, v in zip(rows, vals):
            if isinstance(v, float) and math.isfinite(v):
                row.values[dst] = (v - lo) / (hi - lo)


def rows_to_csv(panels: list[tuple[SweepConfig, list[_Row]]]) -> str:
    """Render one or more panels as a single deterministic CSV string."""
    with_norm = any("errors" in cfg.outputs for cfg, _ in panels)
    columns = BASE_COLUMNS + (NORM_COLUMNS if with_norm else []) + ["warnings"]
    lines = [",".join(columns)]
    for cfg, rows in panels:
        param_cells = _model_param_cells(cfg)
        for row in rows:
            cells = list(param_cells)
            cells += [_fmt(row.alpha), _fmt(row.z), _fmt(row.t)]
            for col in columns[14:-1]:
                cells.append(_fmt(row.values.get(col, math.nan)))
            cells.append(";".join(row.warnings))
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def run_sweep(cfg: SweepConfig) -> str:
    """CSV for a single-panel sweep."""
    return rows_to_csv([(cfg, sweep_rows(cfg))])


# --- figure presets ---------------------------------------------------------

_FIG_ALPHA = (0.01, 0.99, 100)
_FIG_TIME = (0.0, 20.0, 100)


def figure_panels(name: str) -> list[SweepConfig]:
    """Named presets reproducing the published parameter grids.

    The captions fix the model parameters; the 100x100 grid resolution is a
    documented default since none is stated."""
    depol = SweepConfig(
        model="depolarizing", r=0.75, gamma=1.0,
        alpha_grid=_FIG_ALPHA, z_grid=(1.0, 1.0, 1), time_grid=_FIG_TIME,
    )
    if name == "fig2":
        return [depol]
    if name == "fig3":
        return [replace(depol, outputs=("entropy", "bounds", "qsl", "errors"))]
    if name in ("fig4", "fig5", "fig6"):
        outputs = ("entropy", "bounds", "qsl") if name == "fig4" else (
            "entropy", "bounds", "qsl", "errors")
        panels = []
        for s in (0.5, 10.0):
            for p in (0.25, 0.9):
                panels.append(SweepConfig(
                    model="amplitude_damping", lam=1.0, s=s, p=p,
                    alpha_grid=_FIG_ALPHA, z_grid=(1.0, 1.0, 1), time_grid=_FIG_TIME,
                    outputs=outputs,
                ))
        return panels
    raise ConfigError(f"unknown figure {name!r}; choose fig2..fig6")


def run_figure(name: str) -> str:
    return rows_to_csv([(cfg, sweep_rows(cfg)) for cfg in figure_panels(name)])


# --- plot scripts ------------------------------------------------------------

_HEATMAP_TEMPLATE = '''#!/usr/bin/env python3
"""Render {column} from {csv_name} as heatmaps (x = t, y = alpha)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt
import numpy as np

panels = defaultdict(dict)
with open("{csv_name}") as fh:
    for row in csv.DictReader(fh):
        cell = row["{column}"]
        if cell in ("", "inf", "-inf"):
            continue
        key = (row["model"], row["s"], row["p"], row["r"])
        panels[key][(float(row["alpha"]), float(row["t"]))] = float(cell)

fig, axes = plt.subplots(1, max(len(panels), 1), squeeze=False, figsize=(6 * len(panels), 5))
for ax, (key, data) in zip(axes[0], sorted(panels.items())):
    alphas = sorted({{a for a, _ in data}})
    times = sorted({{t for _, t in data}})
    grid = np.full((len(alphas), len(times)), np.nan)
    for (a, t), v in data.items():
        grid[alphas.index(a), times.index(t)] = v
    im = ax.pcolormesh(times, alphas, grid, shading="nearest")
    ax.set_xlabel("t")
    ax.set_ylabel("alpha")
    ax.set_title(" ".join(filter(None, key)))
    fig.colorbar(im, ax=ax, label="{column}")
fig.tight_layout()
fig.savefig("{out_name}", dpi=150)
print("wrote {out_name}")
'''

_LINE_TEMPLATE = '''#!/usr/bin/env python3
"""Plot {column} against t from {csv_name}, one curve per (panel, alpha)."""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

curves = defaultdict(list)
with open("{csv_name}") as fh:
    for row in csv.DictReader(fh):
        cell = row["{column}"]
        if cell in ("", "inf", "-inf"):
            continue
        key = (row["model"], row["s"], row["p"], row["alpha"])
        curves[key].append((float(row["t"]), float(cell)))

fig, ax = plt.subplots(figsize=(7, 5))
for key, pts in sorted(curves.items()):
    pts.sort()
    ax.plot([t for t, _ in pts], [v for _, v in pts], label="alpha=" + key[3])
ax.set_xlabel("t")
ax.set_ylabel("{column}")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig("{out_name}", dpi=150)
print("wrote {out_name}")
'''


def emit_plot_script(csv_text: str, csv_name: str, kind: str, column: str) -> str:
    """Self-contained matplotlib script referencing the CSV by relative path."""
    header = csv_text.splitlines()[0].split(",") if csv_text else []
    if column not in header:
        raise MissingColumnError(f"column {column!r} not in dataset header {header}")
    if kind not in ("heatmap", "line"):
        raise ConfigError(f"plot kind must be heatmap or line, got {kind!r}")
    template = _HEATMAP_TEMPLATE if kind == "heatmap" else _LINE_TEMPLATE
    out_name = csv_name.rsplit(".", 1)[0] + f"_{column}.png"
    return template.format(csv_name=csv_name, column=column, out_name=out_name)


# --- single-point commands ----------------------------------------------------

def _cfg_from_args(args) -> SweepConfig:
    cfg = SweepConfig(
        model=args.model,
        r=args.r, theta=args.theta, phi=args.phi,
        n=(args.nx, args.ny, args.nz),
        gamma=args.gamma, lam=args.lam, s=args.s, p=args.p,
        alpha_grid=(args.alpha, args.alpha, 1),
        z_grid=(args.z, args.z, 1),
        time_grid=(args.tau, args.tau, 1),
        n_steps=args.steps,
        state_file=args.state_file,
        kraus_file=args.kraus_file,
    )
    cfg.validate()
    return cfg


def _final_state(cfg: SweepConfig, rho0: DensityMatrix, tau: float) -> DensityMatrix:
    family = _build_family(cfg)
    if family is None:
        traj = dyn.evolve_unitary(dyn.HamiltonianModel.qubit(cfg.n), rho0, tau, 3)
        return traj.final_state
    return dyn.apply_channel(family, rho0, tau)


def _print_report(pairs) -> None:
    for key, value in pairs:
        print(f"{key} = {_fmt(value) if isinstance(value, float) else value}")


def _cmd_entropy(args) -> int:
    cfg = _cfg_from_args(args)
    rho0 = _probe_state(cfg)
    rho_tau = _final_state(cfg, rho0, args.tau)
    p = ent.EntropyParams(args.alpha, args.z)
    g = ent.relative_purity(rho_tau, rho0, p)
    d_fwd = ent.renyi_az(rho_tau, rho0, p)
    d_bwd = ent.renyi_az(rho0, rho_tau, p)
    _print_report([
        ("g", g), ("D_fwd", d_fwd), ("D_bwd", d_bwd), ("D_sym", d_fwd + d_bwd),
        ("dpi_valid", str(p.dpi_valid).lower()),
    ])
    return 0


def _trajectory_for(cfg: SweepConfig, rho0: DensityMatrix, tau: float):
    family = _build_family(cfg)
    if family is None:
        hmod = dyn.HamiltonianModel.qubit(cfg.n)
        return dyn.evolve_unitary(hmod, rho0, tau, cfg.n_steps), None
    traj = dyn.evolve_kraus(family, rho0, tau, cfg.n_steps)
    terms = dyn.kraus_speed_term_stacks(family, rho0, traj.times, fd_step=1e-5 * tau)
    return traj, terms.sum(axis=1)


def _cmd_bound(args) -> int:
    cfg = _cfg_from_args(args)
    rho0 = _probe_state(cfg)
    traj, _ = _trajectory_for(cfg, rho0, args.tau)
    report = qsl.integrate_bounds(traj, ent.EntropyParams(args.alpha, args.z))
    _print_report([
        ("D_fwd", report.d_fwd), ("D_bwd", report.d_bwd), ("D_sym", report.d_sym),
        ("rhs_fwd", report.rhs_fwd), ("rhs_bwd", report.rhs_bwd), ("rhs_sym", report.rhs_sym),
        ("delta_bound", report.delta_bound), ("warnings", ";".join(report.warnings)),
    ])
    return 0


def _cmd_qsl(args) -> int:
    cfg = _cfg_from_args(args)
    rho0 = _probe_state(cfg)
    traj, terms = _trajectory_for(cfg, rho0, args.tau)
    p = ent.EntropyParams(args.alpha, args.z)
    if terms is None:
        report = qsl.qsl_general(traj, p)
    else:
        report = qsl.nonunitary_qsl_from_terms(traj, terms, p)
    _print_report([
        ("tau", report.tau), ("tau_fwd", report.tau_fwd), ("tau_bwd", report.tau_bwd),
        ("tau_sym", report.tau_sym), ("tau_qsl", report.tau_qsl),
        ("delta_qsl", report.delta_qsl), ("warnings", ";".join(report.warnings)),
    ])
    return 0


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _cmd_sweep(args) -> int:
    if args.config:
        cfg = load_config(args.config, args.set or [])
    else:
        cfg = SweepConfig()
        for item in args.set or []:
            if "=" not in item:
                raise ConfigError(f"override {item!r} is not key=value")
            key, value = (part.strip() for part in item.split("=", 1))
            cfg = _apply_config_item(cfg, key, value)
        cfg.validate()
    csv_text = run_sweep(cfg)
    out = args.out or "sweep.csv"
    _write_text(out, csv_text)
    print(f"wrote {out}")
    if args.plot:
        script = emit_plot_script(csv_text, out, args.plot, args.column)
        script_path = out.rsplit(".", 1)[0] + "_plot.py"
        _write_text(script_path, script)
        print(f"wrote {script_path}")
    return 0


def _cmd_figure(args) -> int:
    csv_text = run_figure(args.name)
    out = args.out or f"{args.name}.csv"
    _write_text(out, csv_text)
    print(f"wrote {out}")
    if args.plot:
        script = emit_plot_script(csv_text, out, args.plot, args.column)
        script_path = out.rsplit(".", 1)[0] + "_plot.py"
        _write_text(script_path, script)
        print(f"wrote {script_path}")
    return 0


def _cmd_selftest(args) -> int:
    from . import selftest

    return selftest.run(n_draws=args.draws)


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--model", default="depolarizing", choices=MODELS)
    sub.add_argument("--alpha", type=float, default=0.5)
    sub.add_argument("--z", type=float, default=1.0)
    sub.add_argument("--r", type=float, default=0.75)
    sub.add_argument("--theta", type=float, default=math.pi / 2)
    sub.add_argument("--phi", type=float, default=0.0)
    sub.add_argument("--nx", type=float, default=0.0)
    sub.add_argument("--ny", type=float, default=0.0)
    sub.add_argument("--nz", type=float, default=1.0)
    sub.add_argument("--gamma", type=float, default=1.0)
    sub.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sub.add_argument("--s", type=float, default=0.5)
    sub.add_argument("--p", type=float, default=0.25)
    sub.add_argument("--tau", type=float, default=1.0)
    sub.add_argument("--steps", type=int, default=1001)
    sub.add_argument("--state-file", default=None)
    sub.add_argument("--kraus-file", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="azqsl",
        description="Entropy bounds and entropic speed limits for small quantum systems.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name, fn in (("entropy", _cmd_entropy), ("bound", _cmd_bound), ("qsl", _cmd_qsl)):
        sub = subs.add_parser(name, help=f"single-point {name} evaluation")
        _add_model_flags(sub)
        sub.set_defaults(func=fn)

    sweep = subs.add_parser("sweep", help="grid sweep to CSV")
    sweep.add_argument("--config", default=None, help="flat key=value config file")
    sweep.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
    sweep.add_argument("--out", default=None)
    sweep.add_argument("--plot", choices=("heatmap", "line"), default=None)
    sweep.add_argument("--column", default="tau_qsl")
    sweep.set_defaults(func=_cmd_sweep)

    figure = subs.add_parser("figure", help="built-in figure presets fig2..fig6")
    figure.add_argument("name", choices=("fig2", "fig3", "fig4", "fig5", "fig6"))
    figure.add_argument("--out", default=None)
    figure.add_argument("--plot", choices=("heatmap", "line"), default=None)
    figure.add_argument("--column", default="tau_qsl")
    figure.set_defaults(func=_cmd_figure)

    selftest = subs.add_parser("selftest", help="oracle cross-checks")
    selftest.add_argument("--draws", type=int, default=100)
    selftest.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    except AzqslError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
