"""Command-line entry point.

Builds one of the stock models (or parses a Hamiltonian file), runs the
chosen degeneracy backend on its lift, and reports CSV rows that are
byte-identical for identical config and seed.  Sweeps fan points out to a
worker pool but write rows through a single sink in sweep order, so the
output does not depend on --jobs.

Exit codes: 0 success, 1 verify failure, 2 non-convergence, 3 invalid
config or input file, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .dense import count_degeneracy_dense, full_spectrum
from .geometry import load_geometry, three_hexagon_edges, triangle_edges
from .hamiltonian import (
    HamiltonianSpec,
    ResourceBudgetError,
    build_kitaev_hubbard,
    build_tfi,
    build_triangular_tfi,
    parse_hamiltonian,
    shift_constant,
)
from .ite import count_degeneracy_ite, default_dt
from .lanczos import LanczosConfig, count_degeneracy_lanczos
from .mps import EvolutionFailure, PowerConfig, count_degeneracy_mps
from .plots import render_sweep_plot
from .verify import run_all

CSV_HEADER = (
    "model,n,param_name,param_value,method,D_raw,D_rounded,residual,"
    "energy,delta_e,steps,converged,seed"
)
CSV_COLUMNS = CSV_HEADER.split(",")

MODELS = ("tfi", "kitaev_hubbard", "triangular", "file")
METHODS = ("dense", "lanczos", "power-mps", "ite")
SWEEPABLE = {
    "tfi": ("n", "bx", "bz"),
    "kitaev_hubbard": ("n", "h", "u"),
    "triangular": ("bx",),
    "file": (),
}
# single-run rows record the model's main coupling in the param columns so
# the row alone identifies the point; the rest lives in the meta sidecar
PRIMARY_KNOB = {"tfi": "bx", "kitaev_hubbard": "h", "triangular": "bx", "file": ""}


@dataclass
class RunConfig:
    """Run parameters after merging the config file with flags (flags win)."""

    model: str
    method: str = "lanczos"
    n: int = 4
    bx: float = 0.0
    bz: float = 0.0
    h: float = 0.0
    u: float = 0.0
    geometry: str | None = None
    hamiltonian: str | None = None
    chi: int = 30
    ndim: int = 20
    dt: float | None = None
    tol: float | None = None
    max_steps: int | None = None
    sweep: str | None = None
    jobs: int = 1
    seed: int = 0
    out: str | None = None
    no_plot: bool = False

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choices: {MODELS}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choices: {METHODS}")
        if self.model == "file" and not self.hamiltonian:
            raise ValueError("model 'file' needs --hamiltonian <path>")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.chi < 1 or self.ndim < 2 or self.jobs < 1:
            raise ValueError("chi, ndim, and jobs must be positive (ndim >= 2)")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.tol is not None and self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


def build_spec(cfg: RunConfig) -> HamiltonianSpec:
    if cfg.model == "tfi":
        return build_tfi(cfg.n, cfg.bx, cfg.bz)
    if cfg.model == "kitaev_hubbard":
        return build_kitaev_hubbard(cfg.n, cfg.h, cfg.u)
    if cfg.model == "triangular":
        if cfg.geometry is None:
            edges = triangle_edges()
        elif cfg.geometry == "three-hexagon":
            edges = three_hexagon_edges()
        else:
            edges = load_geometry(cfg.geometry)
        return build_triangular_tfi(edges, cfg.bx)
    with open(cfg.hamiltonian, encoding="utf-8") as fh:
        return parse_hamiltonian(fh.read())


def run_backend(cfg: RunConfig, spec: HamiltonianSpec):
    if cfg.method == "dense":
        return count_degeneracy_dense(spec, tol=cfg.tol)
    if cfg.method == "lanczos":
        # --tol is relative; scale by the operator-norm bound like the default
        conv = None if cfg.tol is None else cfg.tol * max(1.0, shift_constant(spec))
        maxiter = max(400, 2 * cfg.ndim) if cfg.max_steps is None else max(cfg.ndim + 1, cfg.max_steps)
        lcfg = LanczosConfig(ndim=cfg.ndim, maxiter=maxiter, conv_tol=conv)
        return count_degeneracy_lanczos(spec, lcfg)
    if cfg.method == "power-mps":
        pcfg = PowerConfig(
            chi_max=cfg.chi,
            conv_tol=cfg.tol if cfg.tol is not None else 1e-10,
            max_steps=cfg.max_steps if cfg.max_steps is not None else 2000,
        )
        return count_degeneracy_mps(spec, pcfg)
    dt = cfg.dt if cfg.dt is not None else default_dt(spec)
    max_tau = None if cfg.max_steps is None else cfg.max_steps * dt
    return count_degeneracy_ite(
        spec, dt=dt, conv_tol=cfg.tol if cfg.tol is not None else 1e-10, max_tau=max_tau
    )


def point_row(cfg: RunConfig, param_name: str, param_value) -> dict:
    spec = build_spec(cfg)
    res = run_backend(cfg, spec)
    return {
        "model": cfg.model,
        "n": spec.n_sites,
        "param_name": param_name,
        "param_value": param_value,
        "method": cfg.method,
        "D_raw": res.d_raw,
        "D_rounded": res.d_rounded,
        "residual": res.residual,
        "energy": res.energy,
        "delta_e": res.delta_e,
        "steps": res.tau,
        "converged": res.converged,
        "seed": cfg.seed,
    }


def _sweep_worker(payload: tuple[RunConfig, str, float]) -> dict:
    cfg, param, value = payload
    return point_row(cfg, param, value)


def _cell(key: str, value) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        # iteration counts travel in the steps column as whole numbers
        if key == "steps" and value.is_integer():
            return str(int(value))
        return repr(value)
    return str(value)


def write_rows(path: str, rows: list[dict], mode: str) -> None:
    fresh = mode == "w" or not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, mode, encoding="utf-8", newline="") as fh:
        if fresh:
            fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(_cell(k, row[k]) for k in CSV_COLUMNS) + "\n")


def _write_meta(cfg: RunConfig, out: str, **extra) -> str:
    """Sidecar with the fully resolved config, for rerunning the artifact."""
    meta = {"command": extra.pop("command"), **asdict(cfg), **extra}
    meta["out"] = out
    meta_path = str(Path(out).with_suffix(".meta.json"))
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return meta_path


def _parse_sweep(text: str, model: str) -> tuple[str, list]:
    parts = text.split(":")
    if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] != "log"):
        raise ValueError(f"bad sweep spec {text!r}; want param:start:stop:count[:log]")
    param = parts[0]
    if param not in SWEEPABLE[model]:
        raise ValueError(
            f"model {model!r} cannot sweep {param!r}; choices: {SWEEPABLE[model]}"
        )
    start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
    if count < 1:
        raise ValueError("sweep count must be at least 1")
    if len(parts) == 5:
        if start <= 0 or stop <= 0:
            raise ValueError("log sweep needs positive endpoints")
        grid = np.logspace(math.log10(start), math.log10(stop), count)
    else:
        grid = np.linspace(start, stop, count)
    if param == "n":
        return param, [int(round(v)) for v in grid]
    return param, [float(v) for v in grid]


def _with_param(cfg: RunConfig, param: str, value) -> RunConfig:
    return replace(cfg, **{param: value})


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_vals: dict = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_vals = json.load(fh)
        known = {f.name for f in fields(RunConfig)}
        stray = set(file_vals) - known
        if stray:
            raise ValueError(f"unknown config keys: {sorted(stray)}")
    merged = {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            merged[f.name] = flag
        elif f.name in file_vals:
            merged[f.name] = file_vals[f.name]
    if "model" not in merged:
        raise ValueError("--model is required (flag or config file)")
    return RunConfig(**merged)


def cmd_degeneracy(cfg: RunConfig) -> int:
    knob = PRIMARY_KNOB[cfg.model]
    value = getattr(cfg, knob) if knob else ""
    row = point_row(cfg, knob, value)
    out = cfg.out or "degeneracy.csv"
    write_rows(out, [row], mode="a")
    _write_meta(cfg, out, command="degeneracy")
    print(f"model={cfg.model} n={row['n']} method={cfg.method}")
    print(
        f"D_raw={row['D_raw']:.6f}  D={row['D_rounded']}  residual={row['residual']:.4f}"
    )
    print(
        f"energy={row['energy']:.10g}  delta_e={row['delta_e']:.4g}"
        f"  steps={_cell('steps', row['steps'])}  converged={row['converged']}"
    )
    print(f"row appended -> {out}")
    return 0 if row["converged"] else 2


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.sweep is None:
        raise ValueError("sweep needs --sweep param:start:stop:count[:log]")
    param, values = _parse_sweep(cfg.sweep, cfg.model)
    payloads = [(_with_param(cfg, param, v), param, v) for v in values]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_sweep_worker, payloads))
    else:
        rows = [_sweep_worker(p) for p in payloads]
    out = cfg.out or "sweep.csv"
    write_rows(out, rows, mode="w")
    meta_path = _write_meta(cfg, out, command="sweep", param=param, points=len(rows))
    for row in rows:
        print(
            f"{param}={_cell('param_value', row['param_value'])}"
            f" D_raw={row['D_raw']:.6f} D={row['D_rounded']}"
            f" delta_e={row['delta_e']:.4g} converged={row['converged']}"
        )
    if not cfg.no_plot:
        png = render_sweep_plot(
            rows,
            str(Path(out).with_suffix(".png")),
            title=f"{cfg.model} n={rows[0]['n']} {cfg.method}",
        )
        print(f"figure -> {png}")
    print(f"wrote {len(rows)} rows -> {out} (config -> {meta_path})")
    return 0 if all(row["converged"] for row in rows) else 2


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = build_spec(cfg)
    report = full_spectrum(spec, tol=cfg.tol)
    dim = spec.local_dim**spec.n_sites
    print(f"model={cfg.model} n={spec.n_sites} dim={dim}")
    print(
        f"ground energy {report.ground_energy:.12g}, degeneracy {report.degeneracy}"
        f" (tol {report.tol:.3g})"
    )
    head = ", ".join(f"{e:.8g}" for e in report.eigenvalues[:8])
    print(f"lowest eigenvalues: {head}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("index,eigenvalue\n")
            for i, e in enumerate(report.eigenvalues):
                fh.write(f"{i},{float(e)!r}\n")
        print(f"wrote spectrum -> {cfg.out}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else 0
    results = run_all(seed=seed)
    ok = True
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        print(f"[{tag}] {r.name}: {r.detail} ({r.seconds:.2f}s)")
        ok = ok and r.passed
    return 0 if ok else 1


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of run parameters; explicit flags win")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--n", type=int, help="number of sites (tfi, kitaev_hubbard)")
    p.add_argument("--bx", type=float, help="transverse field")
    p.add_argument("--bz", type=float, help="longitudinal field (tfi)")
    p.add_argument("--h", type=float, help="field strength (kitaev_hubbard)")
    p.add_argument("--u", type=float, help="interaction strength (kitaev_hubbard)")
    p.add_argument(
        "--geometry",
        help="edge-list file for triangular, or 'three-hexagon' for the packaged cluster",
    )
    p.add_argument("--hamiltonian", help="Hamiltonian text file for --model file")
    p.add_argument("--seed", type=int, help="recorded in every CSV row")
    p.add_argument("--out", help="output CSV path")


def _add_method_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--chi", type=int, help="bond cap for power-mps")
    p.add_argument("--ndim", type=int, help="Krylov basis size for lanczos")
    p.add_argument("--dt", type=float, help="imaginary time step for ite")
    p.add_argument("--max-steps", type=int, help="iteration cap (power-mps, lanczos, ite)")
    p.add_argument(
        "--tol",
        type=float,
        help="convergence tolerance; relative for lanczos/power-mps/ite,"
        " eigenvalue cluster width for dense",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qdegen",
        description="ground-state degeneracy counting via lifted-operator evolution",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_deg = sub.add_parser("degeneracy", help="one degeneracy measurement, appended as a CSV row")
    _add_model_flags(p_deg)
    _add_method_flags(p_deg)

    p_sweep = sub.add_parser("sweep", help="degeneracy across a parameter grid")
    _add_model_flags(p_sweep)
    _add_method_flags(p_sweep)
    p_sweep.add_argument("--sweep", help="param:start:stop:count[:log]")
    p_sweep.add_argument("--jobs", type=int, help="worker processes (output is order-stable)")
    p_sweep.add_argument(
        "--no-plot", action="store_true", default=None, help="skip the companion figure"
    )

    p_spec = sub.add_parser("spectrum", help="dense spectrum of the model (no lift)")
    _add_model_flags(p_spec)
    p_spec.add_argument("--tol", type=float, help="eigenvalue cluster width")

    p_ver = sub.add_parser("verify", help="run the full identity and oracle suite")
    p_ver.add_argument("--seed", type=int, help="seed for the randomized checks")

    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 means non-convergence here
        return 0 if exc.code == 0 else 3
    try:
        if args.command == "verify":
            return cmd_verify(args)
        cfg = resolve_config(args)
        if args.command == "degeneracy":
            return cmd_degeneracy(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_spectrum(cfg)
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except EvolutionFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
