"""Experiment runner: configured sweeps to CSV/JSON/plot files.

Subcommands:

    fermisea run <config.json>        execute a sweep; writes results.csv,
                                      report.json, plot.dat and a quick-look
                                      PNG into the output directory
    fermisea validate <config.json>   schema-check a config without running
    fermisea compare <report.json>+   measured-vs-predicted table across runs

Configs are JSON objects with a versioned schema; unknown keys are
rejected.  See the shipped configs/ directory for one example per kind.
Exit codes: 0 success, 2 configuration problems, 3 numeric failure.

Determinism contract: for a fixed config and seed, results.csv and
plot.dat are byte-identical across runs and platforms with identical
arithmetic (17 significant digits, '.' decimal separator, LF endings),
including under --jobs parallelism (ordered reduction).  report.json is
equal up to the wall_clock_s field; PNGs are not covered.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import __version__
from .analysis import ScalingSeries, coefficient_report, exponent_fit, fit_scaling
from .errors import NumericsError
from .geometry import (
    Ball,
    Box,
    Cantor1D,
    Region,
    UnionOfBoxes,
    regularity_exponent,
)
from .plotting import render_report_figures
from .spectral import (
    disk_kernel_2d,
    entropy,
    monomial,
    number_variance,
    sine_kernel_1d,
    spectral_sum,
    spectrum,
)
from .tensorcube import entropy_product_report, product_spectrum_for_cube, thm_bounds
from .thermal import ThermalParams, crossover_temperature, thermal_entropy
from .variance import variance_continuum
from .widom import widom_coefficient

KINDS = (
    "entropy1d",
    "cube",
    "lattice2d",
    "variance",
    "widom_coeff",
    "moments1d",
    "thermal",
    "fractal",
)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Configuration rejected; maps to exit code 2."""


# ---------------------------------------------------------------------------
# config schema

_TOP_KEYS = {"version", "kind", "geometry", "sweep", "numeric", "seed", "output", "base", "route"}
_REGION_KEYS = {
    "box": {"type", "lengths", "lo"},
    "ball": {"type", "radius", "dim", "center"},
    "cantor": {"type", "ratio", "depth", "base"},
    "union": {"type", "boxes"},
}
_SWEEP_KEYS = {"min", "max", "count", "spacing"}

# numeric knobs each kind accepts; everything else is rejected
_NUMERIC_KEYS = {
    "entropy1d": set(),
    "cube": {"drop_eps"},
    "lattice2d": set(),
    "variance": set(),
    "widom_coeff": {"mc_pairs"},
    "moments1d": {"powers"},
    "thermal": {"mu", "scale"},
    "fractal": set(),
}

_COLUMNS = {
    "entropy1d": ("scale", "entropy", "number_variance"),
    "cube": ("scale", "entropy", "lower_bound", "upper_bound", "n_dropped", "drop_error_bound"),
    "lattice2d": ("scale", "entropy", "number_variance"),
    "variance": ("scale", "tr_pqp", "tr_pqp_sq", "variance", "error_estimate"),
    "fractal": ("scale", "tr_pqp", "tr_pqp_sq", "variance", "error_estimate"),
    "widom_coeff": ("order", "j_value"),
    "moments1d": ("power", "scale", "moment", "corrected"),
    "thermal": ("beta", "entropy", "crossover_temperature"),
}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown} in {where}")


def _region_from_spec(spec, where: str) -> Region:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError(f"{where} must be an object with a 'type' tag")
    tag = spec["type"]
    if tag not in _REGION_KEYS:
        raise ConfigError(f"{where}: unknown region type {tag!r}")
    _reject_unknown(spec, _REGION_KEYS[tag], where)
    try:
        if tag == "box":
            lengths = [float(x) for x in spec["lengths"]]
            lo = [float(x) for x in spec.get("lo", [0.0] * len(lengths))]
            if len(lo) != len(lengths):
                raise ConfigError(f"{where}: 'lo' and 'lengths' dimensions differ")
            return Box(lo=tuple(lo), hi=tuple(a + b for a, b in zip(lo, lengths)))
        if tag == "ball":
            dim = int(spec["dim"])
            center = [float(x) for x in spec.get("center", [0.0] * dim)]
            if len(center) != dim:
                raise ConfigError(f"{where}: 'center' does not match 'dim'")
            return Ball(center=tuple(center), radius=float(spec["radius"]))
        if tag == "cantor":
            base = [float(x) for x in spec.get("base", [0.0, 1.0])]
            if len(base) != 2:
                raise ConfigError(f"{where}: 'base' must be [lo, hi]")
            return Cantor1D(base=(base[0], base[1]), ratio=float(spec["ratio"]), depth=int(spec["depth"]))
        boxes = []
        for i, b in enumerate(spec["boxes"]):
            if not isinstance(b, dict) or "type" in b:
                raise ConfigError(f"{where}.boxes[{i}] must be an untagged box object")
            boxes.append(_region_from_spec({"type": "box", **b}, f"{where}.boxes[{i}]"))
        return UnionOfBoxes(boxes=tuple(boxes))
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"{where}: missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _region_to_spec(region: Region) -> dict:
    if isinstance(region, Box):
        return {
            "type": "box",
            "lengths": [hi - lo for lo, hi in zip(region.lo, region.hi)],
            "lo": list(region.lo),
        }
    if isinstance(region, Ball):
        return {
            "type": "ball",
            "radius": region.radius,
            "dim": region.dim,
            "center": list(region.center),
        }
    if isinstance(region, Cantor1D):
        return {
            "type": "cantor",
            "ratio": region.ratio,
            "depth": region.depth,
            "base": list(region.base),
        }
    return {
        "type": "union",
        "boxes": [
            {"lengths": [hi - lo for lo, hi in zip(b.lo, b.hi)], "lo": list(b.lo)}
            for b in region.boxes
        ],
    }


_DEFAULT_GEOMETRY = {
    "entropy1d": (Box.interval(0.0, 1.0), Box.interval(-math.pi / 2, math.pi / 2)),
    "moments1d": (Box.interval(0.0, 1.0), Box.interval(-math.pi / 2, math.pi / 2)),
    "cube": (Box.cube(2), Box.interval(-math.pi / 2, math.pi / 2)),
    "lattice2d": (Box.cube(2), Ball.unit(2)),
    "variance": (Box.interval(0.0, 1.0), Box.interval(-1.0, 1.0)),
    "fractal": (Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=8), Box.interval(-1.0, 1.0)),
    "widom_coeff": (Box.cube(3), Box.cube(3)),
    "thermal": (Box.interval(0.0, 1.0), None),
}


def _sweep_grid(spec, where: str) -> list:
    if isinstance(spec, list):
        if not spec:
            raise ConfigError(f"{where} must not be empty")
        grid = [float(x) for x in spec]
    elif isinstance(spec, dict):
        _reject_unknown(spec, _SWEEP_KEYS, where)
        try:
            lo, hi, count = float(spec["min"]), float(spec["max"]), int(spec["count"])
        except KeyError as exc:
            raise ConfigError(f"{where}: missing field {exc}") from exc
        spacing = spec.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise ConfigError(f"{where}: spacing must be 'linear' or 'log'")
        if count < 1 or hi < lo:
            raise ConfigError(f"{where}: need count >= 1 and max >= min")
        if spacing == "log":
            if lo <= 0:
                raise ConfigError(f"{where}: log spacing needs min > 0")
            grid = list(np.geomspace(lo, hi, count))
        else:
            grid = list(np.linspace(lo, hi, count))
    else:
        raise ConfigError(f"{where} must be a list or a min/max/count object")
    if any(not math.isfinite(g) or g <= 0 for g in grid):
        raise ConfigError(f"{where}: grid values must be finite and positive")
    if sorted(grid) != grid:
        raise ConfigError(f"{where}: grid must be nondecreasing")
    return grid


class ExperimentConfig(NamedTuple):
    kind: str
    omega: Region
    gamma: Region | None
    sweep: list
    numeric: dict
    seed: int
    output: str
    base: str
    route: str

    def echo(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "kind": self.kind,
            "geometry": {
                "omega": _region_to_spec(self.omega),
                "gamma": None if self.gamma is None else _region_to_spec(self.gamma),
            },
            "sweep": list(self.sweep),
            "numeric": dict(self.numeric),
            "seed": self.seed,
            "output": self.output,
            "base": self.base,
            "route": self.route,
        }


def _half_width_1d(gamma: Region, kind: str) -> float:
    # lattice kernels take the Fermi momentum from the sea's extent
    if not isinstance(gamma, Box) or gamma.dim != 1:
        raise ConfigError(f"kind={kind} needs a 1D box Fermi sea")
    k_f = 0.5 * (gamma.hi[0] - gamma.lo[0])
    if not 0.0 < k_f <= math.pi:
        raise ConfigError(f"kind={kind}: Fermi momentum {k_f:.6g} outside (0, pi]")
    return k_f


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a raw config object and fill in defaults."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown(raw, _TOP_KEYS, "config")
    if int(raw.get("version", SCHEMA_VERSION)) != SCHEMA_VERSION:
        raise ConfigError(f"unsupported config version {raw.get('version')}")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"missing or unknown 'kind' (choices: {', '.join(KINDS)})")

    geom = raw.get("geometry", {})
    if not isinstance(geom, dict):
        raise ConfigError("'geometry' must be an object")
    _reject_unknown(geom, {"omega", "gamma"}, "geometry")
    om_default, ga_default = _DEFAULT_GEOMETRY[kind]
    omega = _region_from_spec(geom["omega"], "geometry.omega") if "omega" in geom else om_default
    gamma = _region_from_spec(geom["gamma"], "geometry.gamma") if "gamma" in geom else ga_default

    sweep = _sweep_grid(raw.get("sweep", []), "sweep")

    numeric = raw.get("numeric", {})
    if not isinstance(numeric, dict):
        raise ConfigError("'numeric' must be an object")
    _reject_unknown(numeric, _NUMERIC_KEYS[kind], f"numeric (kind={kind})")
    for key, val in numeric.items():
        if key == "powers":
            if (
                not isinstance(val, list)
                or not val
                or any(not isinstance(p, int) or p < 2 for p in val)
            ):
                raise ConfigError("numeric.powers must be a list of integers >= 2")
        elif key == "mc_pairs":
            if not isinstance(val, int) or val < 0:
                raise ConfigError("numeric.mc_pairs must be a nonnegative integer")
        else:
            if not isinstance(val, (int, float)) or not val > 0:
                raise ConfigError(f"numeric.{key} must be > 0")

    seed = raw.get("seed", 0)
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ConfigError("'seed' must be an integer in [0, 2^64)")

    base = raw.get("base", "bits")
    if base not in ("bits", "nats"):
        raise ConfigError("'base' must be 'bits' or 'nats'")

    route = raw.get("route", "continuum")
    if "route" in raw and kind != "variance":
        raise ConfigError("'route' only applies to kind=variance")
    if route not in ("continuum", "lattice"):
        raise ConfigError("'route' must be 'continuum' or 'lattice'")

    output = raw.get("output", "out")
    if not isinstance(output, str) or not output:
        raise ConfigError("'output' must be a nonempty path string")

    # kind-specific geometry checks, and grid constraints
    if kind in ("entropy1d", "moments1d", "cube"):
        _half_width_1d(gamma, kind)
    if kind == "lattice2d":
        if not isinstance(gamma, Ball) or gamma.dim != 2:
            raise ConfigError("kind=lattice2d needs a 2D ball Fermi sea")
        if not 0.0 < gamma.radius <= math.pi:
            raise ConfigError("kind=lattice2d: Fermi momentum outside (0, pi]")
    if kind == "cube" and omega.dim < 2:
        raise ConfigError("kind=cube needs a box region of dimension >= 2")
    if kind == "variance" and route == "lattice":
        _half_width_1d(gamma, kind)
    if kind == "fractal":
        cantors = [r for r in (omega, gamma) if isinstance(r, Cantor1D)]
        if not cantors:
            raise ConfigError("kind=fractal needs at least one cantor region")
        for c in cantors:
            if sweep[-1] > (1.0 + 1e-12) / c.piece_width:
                raise ConfigError(
                    f"sweep exceeds the depth-{c.depth} resolution guard "
                    f"{1.0 / c.piece_width:.6g}"
                )
    if kind in ("entropy1d", "moments1d", "cube", "lattice2d") or (
        kind == "variance" and route == "lattice"
    ):
        for g in sweep:
            if abs(g - round(g)) > 1e-9 or round(g) < 2:
                raise ConfigError(f"kind={kind}: sweep values must be integers >= 2")
    if kind == "widom_coeff":
        for g in sweep:
            if abs(g - round(g)) > 1e-9 or round(g) < 1:
                raise ConfigError("kind=widom_coeff: sweep values are quadrature orders >= 1")
        if numeric.get("mc_pairs", 0) > 0 and not (
            isinstance(omega, Ball) and isinstance(gamma, Ball)
        ):
            raise ConfigError("numeric.mc_pairs targets ball-vs-ball geometry only")

    return ExperimentConfig(
        kind=kind,
        omega=omega,
        gamma=gamma,
        sweep=sweep,
        numeric=dict(numeric),
        seed=seed,
        output=output,
        base=base,
        route=route,
    )


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_config(raw)


# ---------------------------------------------------------------------------
# sweep execution

class _Task(NamedTuple):
    kind: str
    omega: Region
    gamma: Region | None
    base: str
    route: str
    numeric: dict
    seed: int
    index: int
    value: object  # grid point; (power, L) for moments1d


def _mc_normals_overlap(task: _Task, pairs: int) -> float:
    # per-task Philox stream: counter-based, so any schedule reproduces it
    rng = np.random.Generator(np.random.Philox(key=task.seed + task.index))
    u = rng.normal(size=(pairs, task.omega.dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = rng.normal(size=(pairs, task.gamma.dim))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    mean = float(np.mean(np.abs(np.einsum("ij,ij->i", u, v))))
    d_om, d_ga = task.omega.dim, task.gamma.dim
    sphere = {1: 2.0, 2: 2 * math.pi, 3: 4 * math.pi}
    area_om = sphere[d_om] * task.omega.radius ** (d_om - 1)
    area_ga = sphere[d_ga] * task.gamma.radius ** (d_ga - 1)
    return area_om * area_ga * mean


def _eval_point(task: _Task) -> tuple:
    try:
        if task.kind == "entropy1d":
            k_f = 0.5 * (task.gamma.hi[0] - task.gamma.lo[0])
            sp = spectrum(sine_kernel_1d(int(round(task.value)), k_f))
            return "ok", {
                "scale": int(round(task.value)),
                "entropy": entropy(sp, task.base),
                "number_variance": number_variance(sp),
            }
        if task.kind == "cube":
            k_f = 0.5 * (task.gamma.hi[0] - task.gamma.lo[0])
            ps = product_spectrum_for_cube(task.omega.dim, int(round(task.value)), k_f)
            rep = entropy_product_report(ps, task.base, task.numeric.get("drop_eps"))
            lo, hi = thm_bounds(ps, task.base)
            return "ok", {
                "scale": int(round(task.value)),
                "entropy": rep.value,
                "lower_bound": lo,
                "upper_bound": hi,
                "n_dropped": rep.n_dropped,
                "drop_error_bound": rep.drop_error_bound,
            }
        if task.kind == "lattice2d":
            sp = spectrum(disk_kernel_2d(int(round(task.value)), task.gamma.radius))
            return "ok", {
                "scale": int(round(task.value)),
                "entropy": entropy(sp, task.base),
                "number_variance": number_variance(sp),
            }
        if task.kind in ("variance", "fractal"):
            if task.route == "lattice":
                k_f = 0.5 * (task.gamma.hi[0] - task.gamma.lo[0])
                sp = spectrum(sine_kernel_1d(int(round(task.value)), k_f))
                tr = float(np.sum(sp.values))
                tr2 = float(np.sum(sp.values**2))
                return "ok", {
                    "scale": int(round(task.value)),
                    "tr_pqp": tr,
                    "tr_pqp_sq": tr2,
                    "variance": tr - tr2,
                    "error_estimate": 0.0,
                }
            res = variance_continuum(task.omega, task.gamma, float(task.value))
            return "ok", {
                "scale": res.scale,
                "tr_pqp": res.tr_pqp,
                "tr_pqp_sq": res.tr_pqp_sq,
                "variance": res.variance,
                "error_estimate": res.error_estimate,
            }
        if task.kind == "widom_coeff":
            order = int(round(task.value))
            row = {"order": order, "j_value": widom_coefficient(task.omega, task.gamma, order)}
            pairs = task.numeric.get("mc_pairs", 0)
            if pairs:
                row["j_mc"] = _mc_normals_overlap(task, pairs)
            return "ok", row
        if task.kind == "moments1d":
            power, scale = task.value
            n = int(round(scale))
            k_f = 0.5 * (task.gamma.hi[0] - task.gamma.lo[0])
            sp = spectrum(sine_kernel_1d(n, k_f))
            mom = spectral_sum(sp, monomial(power))
            return "ok", {
                "power": power,
                "scale": n,
                "moment": mom,
                "corrected": mom - n * k_f / math.pi,
            }
        # thermal
        beta = float(task.value)
        mu = float(task.numeric.get("mu", 1.0))
        scale = float(task.numeric.get("scale", 10.0))
        s_val = thermal_entropy(task.omega, scale, ThermalParams(beta=beta, mu=mu), task.base)
        return "ok", {
            "beta": beta,
            "entropy": s_val,
            "crossover_temperature": crossover_temperature(scale, mu, task.omega.dim),
        }
    except (NumericsError, ValueError, OverflowError) as exc:
        return "err", task.index, task.value, f"{type(exc).__name__}: {exc}"


def _build_tasks(cfg: ExperimentConfig) -> list:
    common = dict(
        kind=cfg.kind,
        omega=cfg.omega,
        gamma=cfg.gamma,
        base=cfg.base,
        route=cfg.route,
        numeric=cfg.numeric,
        seed=cfg.seed,
    )
    if cfg.kind == "moments1d":
        powers = cfg.numeric.get("powers", [2, 3])
        values = [(p, s) for p in powers for s in cfg.sweep]
    else:
        values = list(cfg.sweep)
    return [_Task(index=i, value=v, **common) for i, v in enumerate(values)]


def _run_tasks(tasks: list, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_eval_point, tasks))
    else:
        outcomes = [_eval_point(t) for t in tasks]
    rows = []
    for out in outcomes:
        if out[0] == "err":
            _, index, value, msg = out
            raise NumericsError(f"sweep point #{index} (value {value}): {msg}")
        rows.append(out[1])
    return rows


# ---------------------------------------------------------------------------
# fits and predictions

_LN2 = math.log(2.0)


def _base_factor(base: str) -> float:
    return _LN2 if base == "bits" else 1.0


def _fit_records(cfg: ExperimentConfig, rows: list) -> list:
    """Headline fit(s) with measured-vs-predicted pairing, per kind."""
    fits = []
    if cfg.kind in ("entropy1d", "lattice2d"):
        series = ScalingSeries(
            dim=cfg.omega.dim,
            scales=np.array([r["scale"] for r in rows], dtype=float),
            values=np.array([r["entropy"] for r in rows]),
            label="entropy",
        )
        if cfg.kind == "entropy1d":
            basis = ("L^(d-1)*lnL", "1")
            j = widom_coefficient(Box.interval(0.0, 1.0), cfg.gamma)
        else:
            basis = ("L^(d-1)*lnL", "L^(d-1)", "1")
            j = widom_coefficient(Box.cube(2), cfg.gamma)
        # conjectured surface-log coefficient, converted to the entropy base
        pred = j / 12.0 / (2.0 * math.pi) ** (cfg.omega.dim - 1) / _base_factor(cfg.base)
        fits.append(coefficient_report(series, pred, basis, label="entropy"))
    elif cfg.kind == "cube":
        d = cfg.omega.dim
        k_f = 0.5 * (cfg.gamma.hi[0] - cfg.gamma.lo[0])
        series = ScalingSeries(
            dim=d,
            scales=np.array([r["scale"] for r in rows], dtype=float),
            values=np.array([r["entropy"] for r in rows]),
            label="entropy",
        )
        pred = (d / 3.0) * (k_f / math.pi) ** (d - 1) / _base_factor(cfg.base)
        fits.append(coefficient_report(series, pred, label="entropy"))
    elif cfg.kind == "variance":
        d = cfg.omega.dim
        series = ScalingSeries(
            dim=d,
            scales=np.array([r["scale"] for r in rows], dtype=float),
            values=np.array([r["variance"] for r in rows]),
            label="variance",
        )
        basis = ("L^(d-1)*lnL", "1") if d == 1 else ("L^(d-1)*lnL", "L^(d-1)", "1")
        if cfg.route == "lattice":
            omega_unit = Box.interval(0.0, 1.0)
            j = widom_coefficient(omega_unit, cfg.gamma)
        else:
            j = widom_coefficient(cfg.omega, cfg.gamma)
        pred = j / (4.0 * math.pi**2) / (2.0 * math.pi) ** (d - 1)
        fits.append(coefficient_report(series, pred, basis, label="variance"))
    elif cfg.kind == "moments1d":
        powers = cfg.numeric.get("powers", [2, 3])
        for p in powers:
            sub = [r for r in rows if r["power"] == p]
            series = ScalingSeries(
                dim=1,
                scales=np.array([r["scale"] for r in sub], dtype=float),
                values=np.array([r["corrected"] for r in sub]),
                label=f"moment_{p}",
            )
            pred = -sum(1.0 / k for k in range(1, p)) / math.pi**2
            fits.append(
                coefficient_report(series, pred, ("L^(d-1)*lnL", "1"), label=f"moment_{p}")
            )
    return fits


def _fit_to_json(rep) -> dict:
    fit = rep.fit
    return {
        "label": rep.label,
        "basis": list(fit.basis),
        "coefficients": [float(c) for c in fit.coefficients],
        "stderr": [float(s) for s in fit.stderr],
        "cond": fit.cond,
        "max_rel_residual": fit.max_rel_residual,
        "measured": rep.measured,
        "predicted": rep.predicted,
        "ratio": rep.ratio,
        "confidence": rep.confidence,
    }


def _exponent_record(cfg: ExperimentConfig, rows: list) -> dict | None:
    if cfg.kind != "fractal":
        return None
    series = ScalingSeries(
        dim=cfg.omega.dim,
        scales=np.array([r["scale"] for r in rows], dtype=float),
        values=np.array([r["variance"] for r in rows]),
        label="fractal_variance",
    )
    fit = exponent_fit(series)
    cantor = cfg.omega if isinstance(cfg.omega, Cantor1D) else cfg.gamma
    # the regularity probe mirrors the sweep window: h = 1/L, same density
    beta = regularity_exponent(
        cantor, 1.0 / series.scales[-1], 1.0 / series.scales[0], points=len(series)
    )
    return {
        "alpha": fit.alpha,
        "log_factor": fit.log_factor,
        "alpha_pure": fit.alpha_pure,
        "alpha_logaug": fit.alpha_logaug,
        "rss_pure": fit.rss_pure,
        "rss_logaug": fit.rss_logaug,
        "beta": beta,
        "one_minus_beta": 1.0 - beta,
        "exponent_gap": abs(fit.alpha - (1.0 - beta)),
    }


# ---------------------------------------------------------------------------
# output files

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _json_default(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _write_rows(outdir: Path, kind: str, rows: list) -> list:
    columns = list(_COLUMNS[kind])
    if rows and "j_mc" in rows[0]:
        columns.append("j_mc")
    with open(outdir / "results.csv", "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")
    with open(outdir / "plot.dat", "w", encoding="ascii", newline="") as fh:
        fh.write("# " + " ".join(columns) + "\n")
        for row in rows:
            fh.write(" ".join(_fmt(row[c]) for c in columns) + "\n")
    return columns


def run(cfg: ExperimentConfig, jobs: int = 1, quiet: bool = False) -> dict:
    """Execute a validated config; returns the report written to disk."""
    t0 = time.monotonic()
    outdir = Path(cfg.output)
    outdir.mkdir(parents=True, exist_ok=True)

    rows = _run_tasks(_build_tasks(cfg), jobs)
    fits = _fit_records(cfg, rows)
    exponent = _exponent_record(cfg, rows)
    columns = _write_rows(outdir, cfg.kind, rows)

    # the moments figure mixes powers, so a single-fit overlay would mislead
    fit_for_plot = fits[0].fit if fits and cfg.kind != "moments1d" else None
    figures = render_report_figures(cfg.kind, rows, outdir, fit=fit_for_plot)

    report = {
        "version": __version__,
        "kind": cfg.kind,
        "config": cfg.echo(),
        "columns": columns,
        "rows": rows,
        "fits": [_fit_to_json(f) for f in fits],
        "exponent": exponent,
        "figures": figures,
        "wall_clock_s": time.monotonic() - t0,
    }
    with open(outdir / "report.json", "w", encoding="ascii", newline="") as fh:
        json.dump(report, fh, indent=2, default=_json_default)
        fh.write("\n")

    if not quiet:
        print(f"{cfg.kind}: {len(rows)} points -> {outdir}")
        for f in report["fits"]:
            print(
                f"  {f['label']}: measured {f['measured']:.6g} vs predicted "
                f"{f['predicted']:.6g} (ratio {f['ratio']:.4f})"
            )
        if exponent is not None:
            print(
                f"  exponent {exponent['alpha']:.4f} "
                f"(log factor: {exponent['log_factor']}), "
                f"1 - beta = {exponent['one_minus_beta']:.4f}"
            )
    return report


# ---------------------------------------------------------------------------
# subcommands

def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.output is not None:
            if not args.output:
                raise ConfigError("--output must be a nonempty path")
            cfg = cfg._replace(output=args.output)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("--seed must be an integer in [0, 2^64)")
            cfg = cfg._replace(seed=args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs is not None else int(os.environ.get("FERMILAB_JOBS", "1"))
    if jobs < 1:
        print("config error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        run(cfg, jobs=jobs, quiet=args.quiet)
    except NumericsError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    return 0


def _cmd_validate(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    n = len(cfg.sweep) * len(cfg.numeric.get("powers", [2, 3])) if cfg.kind == "moments1d" else len(cfg.sweep)
    print(f"ok: kind={cfg.kind} points={n} base={cfg.base} output={cfg.output}")
    return 0


def _headline(report: dict) -> tuple:
    if report.get("fits"):
        f = report["fits"][0]
        return f["label"], f["measured"], f["predicted"], f["ratio"]
    if report.get("exponent"):
        e = report["exponent"]
        return "alpha", e["alpha"], e["one_minus_beta"], e["alpha"] / e["one_minus_beta"]
    rows = report["rows"]
    for col in ("j_value", "entropy", "variance"):
        if rows and col in rows[0]:
            return col, rows[-1][col], float("nan"), float("nan")
    raise ConfigError("report carries nothing comparable")


def _cmd_compare(args) -> int:
    reports = []
    for path in args.reports:
        try:
            with open(path, encoding="utf-8") as fh:
                reports.append((path, json.load(fh)))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"config error: cannot read report {path}: {exc}", file=sys.stderr)
            return 2
    kinds = {r["kind"] for _, r in reports}
    if len(kinds) != 1:
        print(f"config error: reports mix kinds {sorted(kinds)}", file=sys.stderr)
        return 2
    try:
        lines = [(path, *_headline(rep)) for path, rep in reports]
    except (ConfigError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    ref = lines[0][2]
    print(f"kind={kinds.pop()}")
    print(f"{'report':40s} {'quantity':12s} {'measured':>14s} {'predicted':>14s} {'ratio':>8s} {'delta_vs_first':>15s}")
    for path, label, measured, predicted, ratio in lines:
        delta = measured - ref
        rel = delta / ref if ref else float("nan")
        print(
            f"{str(path)[:40]:40s} {label:12s} {measured:14.8g} {predicted:14.8g} "
            f"{ratio:8.4f} {delta:8.3g} ({rel:+.2%})"
        )
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fermisea",
        description="free-fermion entanglement scaling experiments",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured sweep")
    p_run.add_argument("config")
    p_run.add_argument("--jobs", type=int, default=None, help="worker processes (env FERMILAB_JOBS)")
    p_run.add_argument("--output", default=None, help="override the output directory")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--quiet", action="store_true")
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="schema-check a config")
    p_val.add_argument("config")
    p_val.set_defaults(func=_cmd_validate)

    p_cmp = sub.add_parser("compare", help="tabulate reports side by side")
    p_cmp.add_argument("reports", nargs="+")
    p_cmp.set_defaults(func=_cmd_compare)

    args = parser.parse_args(argv)
    if args.command == "compare" and len(args.reports) < 2:
        print("config error: compare needs at least two reports", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
