"""Batch command-line front end.

Commands: ``run`` (single simulation), ``sweep`` (parameter-continuity
study), ``verify`` (named inequality suites), ``lp`` (frequency-block
analysis of a snapshot), ``report`` (aggregate CSVs into a JSON summary and
plots).  Exit codes: 0 pass, 1 acceptance failure, 2 configuration error.
Reruns with identical config and seed emit byte-identical CSVs regardless
of the worker count.
"""

from __future__ import annotations

import importlib.resources
import json
import sys
from pathlib import Path

import click
import jsonschema
import numpy as np

from .errors import ConfigurationError, SnapshotFormatError
from .grid import make_grid
from . import experiments as ex
from . import kernels as kn
from . import reporting as rp
from .littlewood_paley import BesovIndex, besov_norm, build_partition, lp_decompose
from .operators import lp_norm
from .profiles import make_profile
from .solver import SolverConfig, load_snapshot, run as run_solver, save_snapshot

_SWEEP_HEADER = ["alpha", "eps", "t", "hs_diff", "model_bound", "model_ratio"]
_SUITE_HEADER = ["member", "name", "lhs", "rhs", "ratio"]
_KERNEL_HEADER = ["beta", "s", "family_id", "lhs", "rhs_factor", "ratio"]


def _schema() -> dict:
    text = importlib.resources.files("gsqglab").joinpath("config_schema.json").read_text()
    return json.loads(text)


def _apply_defaults(node: dict, schema: dict) -> None:
    for key, sub in schema.get("properties", {}).items():
        if "$ref" in sub:
            ref = sub["$ref"].rsplit("/", 1)[-1]
            sub = {**_SCHEMA["$defs"][ref], **{k: v for k, v in sub.items() if k != "$ref"}}
        if key not in node and "default" in sub:
            node[key] = json.loads(json.dumps(sub["default"]))
        if key in node and isinstance(node[key], dict) and sub.get("type") == "object":
            _apply_defaults(node[key], sub)


_SCHEMA = _schema()


def _load_config(path: str, command: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    validator = jsonschema.Draft202012Validator(_SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        msgs = [
            "/" + "/".join(str(p) for p in e.absolute_path) + ": " + e.message
            for e in errors
        ]
        raise ConfigurationError("config schema violations:\n  " + "\n  ".join(msgs))
    if command not in cfg:
        raise ConfigurationError(f"config lacks a {command!r} section (pointer /{command})")
    _apply_defaults(cfg, _SCHEMA)
    section = cfg[command]
    _apply_defaults(section, _SCHEMA["properties"][command])
    section["_seed"] = int(cfg.get("seed", 0))
    return section


def _initial_field(section: dict, grid, seed: int):
    init = section.get("initial", {"name": "two_mode", "params": {}})
    params = dict(init.get("params", {}))
    if init.get("name") == "random_bandlimited":
        params.setdefault("seed", seed)
    return make_profile(init.get("name", "two_mode"), grid, **params)


def _common(fn):
    fn = click.option("--config", "config_path", required=True,
                      type=click.Path(exists=True, dir_okay=False))(fn)
    fn = click.option("--out", "out_dir", default="out", type=click.Path(file_okay=False))(fn)
    fn = click.option("--threads", default=None, type=int, envvar="GSQG_THREADS")(fn)
    fn = click.option("--seed", default=None, type=int)(fn)
    return fn


@click.group()
def main():
    """Numerical laboratory for the alpha-family transport equation."""


def _resolve(section, seed_opt, threads_opt):
    seed = section["_seed"] if seed_opt is None else seed_opt
    threads = 1 if threads_opt is None else max(1, threads_opt)
    return seed, threads


@main.command("run")
@_common
def cmd_run(config_path, out_dir, threads, seed):
    """Integrate one configuration and persist diagnostics plus a snapshot."""
    try:
        section = _load_config(config_path, "run")
        seed, _ = _resolve(section, seed, threads)
        cfg = SolverConfig(
            alpha=section["alpha"], n=section["n"], t_end=section["t_end"],
            length=section["length"], cfl=section["cfl"], dealias=section["dealias"],
            filter_strength=section["filter_strength"],
            filter_order=section["filter_order"],
            snapshot_every=section["snapshot_every"],
            sobolev_orders=tuple(section["sobolev_orders"]),
        )
        grid = make_grid(cfg.n, cfg.length)
        omega0 = _initial_field(section, grid, seed)
    except (ConfigurationError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    traj, diag = run_solver(cfg, omega0)
    rp.write_csv(out / "diagnostics.csv", diag.header(), diag.rows())
    save_snapshot(traj.final, out / "final.gsf", alpha=cfg.alpha)
    rp.write_json(out / "summary.json", {
        "command": "run", "alpha": cfg.alpha, "n": cfg.n, "t_end": cfg.t_end,
        "steps": traj.final.step_count,
        "l2_drift": diag.relative_drift(diag.l2),
        "l1_drift": diag.relative_drift(diag.l1),
        "max_divergence": max(diag.divmax),
    })
    click.echo(f"run complete: {traj.final.step_count} steps to t={traj.final.t:g}")
    sys.exit(0)


@main.command("sweep")
@_common
def cmd_sweep(config_path, out_dir, threads, seed):
    """Parameter-continuity study against the closed-form bound shapes."""
    try:
        section = _load_config(config_path, "sweep")
        seed, threads = _resolve(section, seed, threads)
        init = section.get("initial", {"name": "two_mode", "params": {}})
        params = dict(init.get("params", {}))
        if init.get("name") == "random_bandlimited":
            params.setdefault("seed", seed)
        cfg = ex.ConvergenceConfig(
            alpha0=section["alpha0"], alphas=tuple(section["alphas"]),
            s=section["s"], t_end=section["t_end"], n=section["n"],
            length=section["length"], times=tuple(section["times"]),
            cfl=section["cfl"], dealias=section["dealias"],
            initial={"name": init.get("name", "two_mode"), **params},
            threads=threads,
        )
    except (ConfigurationError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = ex.convergence_study(cfg)
    rp.write_csv_dicts(out / "convergence.csv", _SWEEP_HEADER, result.rows)
    summary = {
        "command": "sweep", "alpha0": cfg.alpha0, "dt": result.dt,
        "checks": result.checks,
    }
    if result.fit is not None:
        summary["fit"] = {
            "slope": result.fit.slope, "r_squared": result.fit.r_squared,
            "model": result.fit.model_name,
            "model_ratio": list(map(float, result.fit.model_ratio)),
        }
        t_last = cfg.times[-1]
        model = ex.difference_bound_model(cfg.alpha0)
        rp.plot_convergence(
            out / "convergence.png", result.fit.eps, result.fit.norms,
            [float(model(e)) for e in result.fit.eps],
            f"difference decay, alpha0={cfg.alpha0:g}, t={t_last:g}",
        )
    rp.write_json(out / "summary.json", summary)
    ok = result.checks.get("all_ok", False)
    click.echo(f"sweep {'passed' if ok else 'FAILED'}: {result.checks}")
    sys.exit(0 if ok else 1)


def _verify_prop31(section, out):
    fam = kn.default_family()
    betas = list(section["beta_grid"])
    betas_l2 = list(section["beta_grid_l2"])
    s = float(section["kernel_s"])
    reports = {
        "T1": kn.verify_T1_bound(fam[:2], s, betas),
        "T2_L2": kn.verify_T2_L2_bound(fam[:2], betas_l2),
        "T2_Hs": kn.verify_T2_Hs_bound(fam[:2], s, betas),
        "K1": kn.verify_K1_uniform(betas),
    }
    params = kn.KernelSplitParams(0.3)
    xs = np.stack(np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-2, 2, 5),
                              indexing="ij"), -1).reshape(-1, 2)
    g1 = fam[0]
    T = kn.convolve_T(g1, params, xs)
    T12 = kn.convolve_T1(g1, params, xs) + kn.convolve_T2(g1, params, xs)
    split_err = float(np.max(np.abs(T12 - T)) / np.max(np.abs(T)))
    rows = []
    for rep in reports.values():
        rows.extend(rep.extras["rows"])
    rp.write_csv_dicts(out / "verify_prop31.csv", _KERNEL_HEADER, rows)
    rp.plot_beta_sweep(out / "prop31_T1.png", reports["T1"].extras["per_beta"],
                       "T1 H^s constant vs beta")
    passed = all(rep.passed for rep in reports.values()) and split_err < 1e-6
    return {
        "name": "prop31",
        "passed": bool(passed),
        "split_identity_error": split_err,
        "proxies": {
            name: {"max": rep.lhs, "median": rep.rhs, "passed": rep.passed}
            for name, rep in reports.items()
        },
    }


@main.command("verify")
@_common
def cmd_verify(config_path, out_dir, threads, seed):
    """Run one named inequality suite and write its rows and summary."""
    try:
        section = _load_config(config_path, "verify")
        seed, threads = _resolve(section, seed, threads)
        suite = section["suite"]
    except (ConfigurationError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n, count, kmax, s = section["n"], section["count"], section["kmax"], section["s"]
    if suite == "prop31":
        summary = _verify_prop31(section, out)
    elif suite == "ode":
        summary = ex.run_ode_suite(section["ode_count"], seed)
    else:
        grid = make_grid(n)
        if suite == "kpv":
            summary = ex.run_commutator_suite(grid, count, seed, s=s, kmax=kmax)
        elif suite == "hls":
            summary = ex.run_hls_suite(grid, count, seed, sigma=section["sigma"],
                                       p=section["p"],
                                       growth_sigmas=tuple(section["growth_sigmas"]),
                                       kmax=kmax)
        elif suite == "prop41":
            summary = ex.run_prop41_suite(grid, count, seed,
                                          alphas=tuple(section["alphas"]), s=s, kmax=kmax)
        elif suite == "prop42":
            summary = ex.run_prop42_suite(grid, count, seed,
                                          alphas=tuple(section["alphas"]), s=s, kmax=kmax)
        elif suite == "embedding":
            summary = ex.run_embedding_suite(grid, count, seed, s=s, kmax=kmax)
    rows = summary.pop("rows", None)
    if rows is not None:
        rp.write_csv_dicts(out / f"verify_{suite}.csv", _SUITE_HEADER, rows)
    rp.write_json(out / f"verify_{suite}_summary.json", summary)
    click.echo(f"suite {suite}: {'passed' if summary['passed'] else 'FAILED'}")
    sys.exit(0 if summary["passed"] else 1)


@main.command("lp")
@_common
def cmd_lp(config_path, out_dir, threads, seed):
    """Frequency-block energies and Besov norms of a persisted snapshot."""
    try:
        section = _load_config(config_path, "lp")
        snap = load_snapshot(section["snapshot"])
    except (ConfigurationError, SnapshotFormatError, OSError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    part = build_partition(snap.omega.grid)
    dec = lp_decompose(snap.omega, part)
    rows = []
    for q, block in zip(range(-1, part.j_max + 1), dec.blocks):
        rows.append([q, lp_norm(block, 2.0), lp_norm(block, np.inf)])
    rp.write_csv(out / "lp_blocks.csv", ["q", "l2", "linf"], rows)
    besov = {}
    for s, p, qq in section["besov"]:
        besov[f"B^{s:g}_{{{p:g},{qq:g}}}"] = besov_norm(
            snap.omega, part, BesovIndex(s, p, qq)
        )
    rp.write_json(out / "lp_summary.json", {
        "command": "lp", "snapshot": section["snapshot"], "t": snap.t,
        "alpha": snap.alpha, "j_max": part.j_max, "besov": besov,
    })
    click.echo(f"analysed {section['snapshot']}: j_max={part.j_max}")
    sys.exit(0)


@main.command("report")
@click.option("--out", "out_dir", default="out", type=click.Path(file_okay=False))
def cmd_report(out_dir):
    """Aggregate CSV outputs in a directory into one JSON summary and plots."""
    out = Path(out_dir)
    if not out.is_dir():
        click.echo(f"configuration error: {out} is not a directory", err=True)
        sys.exit(2)
    summary = {"command": "report", "sources": []}
    conv = out / "convergence.csv"
    if conv.exists():
        rows = _read_csv(conv)
        summary["sources"].append(str(conv))
        t_max = max(float(r["t"]) for r in rows)
        final = sorted(
            (float(r["eps"]), float(r["hs_diff"]), float(r["model_bound"]))
            for r in rows
            if float(r["t"]) == t_max and float(r["eps"]) > 0
        )
        if final:
            eps = [e for e, _, _ in final]
            norms = [v for _, v, _ in final]
            bounds = [b for _, _, b in final]
            rp.plot_convergence(out / "report_convergence.png", eps, norms, bounds,
                                "difference decay")
            summary["convergence_final_time"] = {
                "eps": eps, "hs_diff": norms, "model_bound": bounds,
            }
    for path in sorted(out.glob("verify_*.csv")):
        rows = _read_csv(path)
        summary["sources"].append(str(path))
        ratios = [float(r["ratio"]) for r in rows if r.get("ratio")]
        summary[path.stem] = {
            "rows": len(rows),
            "max_ratio": max(ratios) if ratios else 0.0,
        }
        if path.stem == "verify_prop31":
            per = {}
            for r in rows:
                b = float(r["beta"])
                per[b] = max(per.get(b, 0.0), float(r["ratio"]))
            rp.plot_beta_sweep(out / "report_prop31.png", per,
                               "kernel bound constants vs beta")
    rp.write_json(out / "report.json", summary)
    click.echo(f"report written to {out / 'report.json'}")
    sys.exit(0)


def _read_csv(path) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        return [dict(zip(header, line.strip().split(","))) for line in fh if line.strip()]


if __name__ == "__main__":
    main()
