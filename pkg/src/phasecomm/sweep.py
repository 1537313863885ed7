"""Configuration-driven sigma sweeps over all configured receivers.

A sweep config (one JSON document, schema in the README) fixes the signal
set, the prior, the sigma grid, and the receiver list; `run_sweep` computes
one row of figures of merit per grid point and the writers emit CSV plus an
optional JSON mirror. Rows are deterministic given the seed.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .atomic import OptimizeConfig, SeriesConfig, optimize
from .config import DEFAULT_TOL
from .discrimination import AscentConfig, accessible_information, helstrom_bound
from .errors import ConfigError, GridMismatch, PhasecommError
from .fock import FockDim, default_cutoff
from .pnr import PnrConfig, map_error_probability, map_mutual_information, optimize_displacement
from .signals import bpsk, build_ensemble, ook

__all__ = ["SweepConfig", "run_sweep", "find_crossing", "write_csv", "write_json", "csv_text"]

_SIGNALS = ("BPSK", "OOK")
_RECEIVER_TYPES = ("helstrom", "atomic", "accinfo", "pnr")
_BETA_MODES = ("null-first", "optimized")


@dataclass(frozen=True)
class SweepConfig:
    signal: str
    mean_photons: float
    priors: tuple
    sigma_start: float
    sigma_stop: float
    sigma_steps: int
    receivers: tuple
    fock_cutoff: int | None = None
    seed: int = 0
    output: str | None = None
    json_output: str | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        try:
            signal = d["signal"]
            if signal not in _SIGNALS:
                raise ConfigError(f"signal must be one of {_SIGNALS}, got {signal!r}")
            nbar = float(d["mean_photons"])
            if not nbar > 0:
                raise ConfigError("mean_photons must be > 0")
            priors = tuple(float(p) for p in d.get("priors", [0.5, 0.5]))
            if len(priors) != 2 or abs(sum(priors) - 1.0) > 1e-12 or min(priors) < 0:
                raise ConfigError(f"priors {priors} are not a binary distribution")
            grid = d["sigma_grid"]
            start, stop, steps = float(grid["start"]), float(grid["stop"]), int(grid["steps"])
            if start < 0 or stop < start or steps < 1:
                raise ConfigError(f"bad sigma_grid {grid}")
            receivers = []
            for r in d["receivers"]:
                r = dict(r)
                if r.get("type") not in _RECEIVER_TYPES:
                    raise ConfigError(f"unknown receiver type {r.get('type')!r}")
                if r["type"] == "pnr":
                    r.setdefault("resolution", 1)
                    r.setdefault("visibility", 0.998)
                    r.setdefault("beta_mode", "null-first")
                    if r["beta_mode"] not in _BETA_MODES:
                        raise ConfigError(f"beta_mode must be one of {_BETA_MODES}")
                if r["type"] == "atomic":
                    r.setdefault("objectives", ["error", "information"])
                    if not set(r["objectives"]) <= {"error", "information"}:
                        raise ConfigError(f"bad atomic objectives {r['objectives']}")
                if r["type"] == "accinfo":
                    r.setdefault("restarts", 5)
                    # 4 outcomes so the estimate envelopes the multi-outcome
                    # photon-counting receivers as well
                    r.setdefault("outcomes", 4)
                receivers.append(r)
            cutoff = d.get("fock_cutoff")
            return cls(
                signal=signal,
                mean_photons=nbar,
                priors=priors,
                sigma_start=start,
                sigma_stop=stop,
                sigma_steps=steps,
                receivers=tuple(receivers),
                fock_cutoff=int(cutoff) if cutoff is not None else None,
                seed=int(d.get("seed", 0)),
                output=d.get("output"),
                json_output=d.get("json_output"),
            )
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid sweep config: {exc}") from exc

    def sigma_grid(self) -> np.ndarray:
        return np.linspace(self.sigma_start, self.sigma_stop, self.sigma_steps)


def _signal_params(cfg: SweepConfig, sigma: float):
    if cfg.signal == "BPSK":
        return bpsk(cfg.mean_photons, sigma, cfg.priors[0])
    return ook(cfg.mean_photons, sigma, cfg.priors[0])


def compute_point(cfg: SweepConfig, sigma: float, index: int) -> dict:
    """All configured figures of merit at one grid point."""
    params = _signal_params(cfg, sigma)
    cutoff = cfg.fock_cutoff or default_cutoff([params.alpha1, params.alpha2])
    dim = FockDim(cutoff)
    point_seed = cfg.seed * 100_003 + index
    row: dict = {"sigma": float(sigma), "cutoff": cutoff}
    ens = None

    def ensemble():
        nonlocal ens
        if ens is None:
            ens = build_ensemble(params, dim)
        return ens

    for rec in cfg.receivers:
        kind = rec["type"]
        if kind == "helstrom":
            row["p_helstrom"] = helstrom_bound(ensemble())
        elif kind == "atomic":
            ocfg = OptimizeConfig(
                n_starts=int(rec.get("n_starts", 16)),
                seed=point_seed,
                series=SeriesConfig(n_terms=cutoff),
            )
            if "error" in rec["objectives"]:
                res = optimize("min-error", params, ocfg)
                row["p_atomic"] = res.value
                row["atomic_xi"] = res.params.xi
                row["atomic_theta"] = res.params.theta
                row["atomic_phi"] = res.params.phi_pulse
            if "information" in rec["objectives"]:
                res = optimize("max-information", params, ocfg)
                row["i_atomic"] = res.value
        elif kind == "accinfo":
            acfg = AscentConfig(
                restarts=int(rec["restarts"]),
                outcomes=int(rec["outcomes"]),
                polish_max=int(rec.get("polish_max", 5000)),
                max_iter=int(rec.get("max_iter", 50_000)),
                lam_max=float(rec.get("lam_max", 0.5)),
                seed=point_seed,
            )
            rep = accessible_information(ensemble(), acfg)
            row["i_accessible"] = rep.mutual_information
            row["accinfo_residual"] = rep.stationarity_residual
            row["accinfo_spread"] = float(max(rep.restart_values) - min(rep.restart_values))
            row["accinfo_converged"] = int(rep.converged)
        elif kind == "pnr":
            m = int(rec["resolution"])
            base = PnrConfig(
                resolution=m,
                visibility=float(rec["visibility"]),
                displacement=float(rec.get("displacement", params.alpha1)),
                quadrature_points=int(rec.get("quadrature_points", 64)),
            )
            if rec["beta_mode"] == "optimized":
                err_cfg, p_err = optimize_displacement(params, base, "min-error")
                info_cfg, i_val = optimize_displacement(params, base, "max-information")
            else:
                err_cfg, p_err = base, map_error_probability(params, base)
                info_cfg, i_val = base, map_mutual_information(params, base)
            row[f"p_pnr_m{m}"] = p_err
            row[f"i_pnr_m{m}"] = i_val
            row[f"pnr_beta_err_m{m}"] = err_cfg.displacement
            row[f"pnr_beta_info_m{m}"] = info_cfg.displacement
    row["violations"] = "|".join(_envelope_violations(row))
    return row


def _envelope_violations(row: dict) -> list:
    out = []
    p_hel = row.get("p_helstrom")
    if p_hel is not None:
        for key, val in row.items():
            if key.startswith("p_") and key != "p_helstrom" and p_hel > val + 1e-9:
                out.append(f"{key}={val:.6g} below helstrom {p_hel:.6g}")
    i_acc = row.get("i_accessible")
    if i_acc is not None:
        for key, val in row.items():
            if key.startswith("i_") and key != "i_accessible" and val > i_acc + 1e-4:
                out.append(f"{key}={val:.6g} above accessible {i_acc:.6g}")
    return out


def _point_task(args):
    cfg, sigma, index = args
    try:
        return compute_point(cfg, sigma, index)
    except PhasecommError as exc:
        raise type(exc)(f"sigma={sigma:g}: {exc}") from exc


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list:
    """One result row per grid point, emitted in sigma order."""
    tasks = [(cfg, s, i) for i, s in enumerate(cfg.sigma_grid())]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_point_task, tasks))
    else:
        rows = [_point_task(t) for t in tasks]
    rows.sort(key=lambda r: r["sigma"])
    return rows


def _columns(rows: list) -> list:
    keys = []
    for row in rows:
        for k in row:
            if k not in keys:
                keys.append(k)
    # keep sigma first and diagnostics last
    keys.remove("sigma")
    tail = [k for k in ("violations",) if k in keys]
    for k in tail:
        keys.remove(k)
    return ["sigma"] + keys + tail


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def csv_text(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = _columns(rows)
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row.get(c, "")) for c in cols])
    return buf.getvalue()


def write_csv(rows: list, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(rows))


def write_json(rows: list, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=2, sort_keys=True)
        fh.write("\n")


def find_crossing(grid, series_a, series_b):
    """Smallest sigma where a - b changes sign, linearly interpolated.

    Returns None when the curves never strictly cross.
    """
    grid = np.asarray(grid, dtype=float)
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if grid.shape != a.shape or grid.shape != b.shape:
        raise GridMismatch(
            f"grid {grid.shape}, a {a.shape}, b {b.shape} differ"
        )
    d = a - b
    s = np.sign(d)
    nonzero = np.nonzero(s)[0]
    # strict sign change between consecutive nonzero samples
    for j in range(len(nonzero) - 1):
        i0, i1 = nonzero[j], nonzero[j + 1]
        if s[i0] * s[i1] < 0:
            if i1 == i0 + 1:
                x0, x1 = grid[i0], grid[i1]
                return float(x0 + (x1 - x0) * d[i0] / (d[i0] - d[i1]))
            # exact zeros between: crossing sits at the first of them
            return float(grid[i0 + 1])
    return None
