"""Command-line front end.

Subcommands: analyze (one function through the criteria checklist), grid3 /
random1d / random2d (batch campaigns), fig1 (the bundled reference case).
Every run writes a JSON summary with the fixed key set {config, stats,
per_criterion, timings}; campaigns add census.csv (one row per retained
function), single-function commands add curves/*.csv with (r, value) pairs
ready for plotting.  Exit status: 0 success, 2 validation error, 3 internal
numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import BasisMix, exact_transform, is_nonneg, mix
from .analytic import DEFAULT_IM_GRID, cosh_bound, i0_bound
from .criteria import CRITERIA_1D, CRITERIA_2D, run_checklist
from .experiments import (
    figure1_case,
    grid_census_3param,
    random_census_1d,
    random_census_2d,
)
from .moments import R_SPACE, moment_report
from .toeplitz import DEFAULT_GRID, grid_points, scan_min_eigs

COMMANDS = ("analyze", "grid3", "random1d", "random2d", "fig1")


class ValidationError(ValueError):
    """Bad configuration; maps to exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    """Complete, serializable description of one run.

    A run is reproducible from its RunConfig alone: the JSON summary echoes
    the config, and run(RunConfig(**summary["config"])) replays it.
    """

    command: str
    dim: int = 1
    coeffs: tuple = ()
    criteria: tuple = ()  # empty = every criterion for the dimension
    b: tuple = (1.0,)
    qmax: int = 4
    orders: tuple = ()  # empty = per-command default
    seed: int = 0
    n: int = 0  # 0 = campaign default sample count
    cmp_n: int = 0  # 0 = scale with n (random2d's 1D comparison study)
    n_alpha: int = 45
    n_beta: int = 90
    rmax: float = DEFAULT_GRID[1]
    rstep: float = DEFAULT_GRID[2]
    im_rmax: float = DEFAULT_IM_GRID[1]
    im_rstep: float = DEFAULT_IM_GRID[2]
    w: float = 0.5
    wprime: float = 0.5
    out: str = ""

    def __post_init__(self):
        coerce = {
            "coeffs": lambda xs: tuple(float(x) for x in xs),
            "criteria": lambda xs: tuple(str(x) for x in xs),
            "b": lambda xs: tuple(float(x) for x in xs),
            "orders": lambda xs: tuple(int(x) for x in xs),
        }
        for name, fn in coerce.items():
            object.__setattr__(self, name, fn(getattr(self, name)))

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command: {self.command!r}")
        if self.dim not in (1, 2):
            raise ValidationError(f"dim must be 1 or 2, got {self.dim}")
        if self.command == "analyze":
            if not 1 <= len(self.coeffs) <= 5:
                raise ValidationError(
                    "analyze needs 1 to 5 comma-separated coefficients"
                )
            if not any(self.coeffs):
                raise ValidationError("all-zero coefficient vector")
            allowed = CRITERIA_1D if self.dim == 1 else CRITERIA_2D
            unknown = set(self.criteria) - set(allowed)
            if unknown:
                raise ValidationError(
                    f"criteria not applicable to dim {self.dim}: {sorted(unknown)}"
                )
        if not self.b or any(x <= 0 for x in self.b):
            raise ValidationError("convolution widths b must be positive")
        if any(n < 1 for n in self.orders):
            raise ValidationError("matrix orders must be >= 1")
        if not 0 <= self.qmax <= 4:
            raise ValidationError("qmax must lie in 0..4")
        if self.n < 0 or self.cmp_n < 0:
            raise ValidationError("sample count must be nonnegative")
        if self.n_alpha < 1 or self.n_beta < 1:
            raise ValidationError("grid must have at least one point per angle")
        if self.rmax <= 0 or self.rstep <= 0 or self.rmax < self.rstep:
            raise ValidationError("empty r grid: need 0 < rstep <= rmax")
        if self.im_rmax <= 0 or self.im_rstep <= 0:
            raise ValidationError("empty imaginary-axis grid")
        if self.w <= 0 or self.wprime <= 0 or self.w + self.wprime > 1.0 + 1e-12:
            raise ValidationError("weights must be positive with w + wprime <= 1")


# ---------------------------------------------------------------------------
# deterministic serialization helpers


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([_fmt_cell(v) for v in row])


def _write_curve(path: Path, xs, ys, ycol: str = "value") -> None:
    _write_csv(path, ("r", ycol), zip(xs, ys))


def _census_csv(path: Path, rows) -> None:
    if not rows:
        _write_csv(path, ("index",), ())
        return
    header = list(rows[0].keys())
    _write_csv(path, header, ([row.get(k) for k in header] for row in rows))


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def _write_summary(out: Path, config: RunConfig, stats, per_criterion, timings):
    summary = {
        "config": _jsonable(dataclasses.asdict(config)),
        "stats": _jsonable(stats),
        "per_criterion": _jsonable(per_criterion),
        "timings": _jsonable(timings),
    }
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# per-command drivers


def _verdict_map(verdicts) -> dict:
    out = {}
    for v in verdicts:
        w = None
        if v.witness is not None:
            w = {"tag": v.witness.tag, "r": v.witness.r, "margin": v.witness.margin}
        out[v.criterion_id] = {"detected": v.detected, "witness": w, "cost": v.cost}
    return out


def _mc_weights(config: RunConfig) -> tuple:
    if len(config.b) == 1:
        return (config.w,)
    if len(config.b) == 2:
        return (config.w, config.wprime)
    return tuple(1.0 / (len(config.b) + 1) for _ in config.b)


def _run_analyze(config: RunConfig, out: Path) -> tuple:
    f = mix(BasisMix(dim=config.dim, c=config.coeffs))
    orders = config.orders or (3, 5)
    tgrid = (config.rstep, config.rmax, config.rstep)
    imgrid = (0.0, config.im_rmax, config.im_rstep)
    verdicts = run_checklist(
        f,
        config.criteria or None,
        b=config.b[0],
        qmax=config.qmax,
        orders=orders,
        im_grid=imgrid,
        toeplitz_grid=tgrid,
        mc_widths=config.b,
        mc_weights=_mc_weights(config),
    )
    per_criterion = _verdict_map(verdicts)
    cert = is_nonneg(exact_transform(f))
    stats = {
        "dim": f.dim,
        "width_a": f.a,
        "polynomial_coefficients": list(f.coeffs),
        "basis_coefficients": list(config.coeffs),
        "transform_nonnegative": cert.ok,
        "transform_negativity_witness_r": cert.witness,
        "detected_any": any(v.detected for v in verdicts),
    }

    pts = grid_points(tgrid)
    for n in orders:
        _write_curve(out / "curves" / f"toeplitz_n{n}.csv", pts, scan_min_eigs(f, n, pts), "min_eig")
    rep = moment_report(f, R_SPACE)
    if np.isfinite(rep.mean_s) and rep.mu0 > 0:
        bound = cosh_bound if f.dim == 1 else i0_bound
        br = bound(f, abs(rep.mean_s), grid=imgrid)
        _write_curve(
            out / "curves" / f"{br.bound_id}_margin.csv",
            (r for r, _ in br.margin_curve),
            (m for _, m in br.margin_curve),
            "margin",
        )
    return stats, per_criterion


def _run_fig1(config: RunConfig, out: Path) -> tuple:
    d = figure1_case()
    cosh = d["cosh"]
    _write_curve(out / "curves" / "cosh_margin.csv", cosh["r"], cosh["margin"], "margin")
    per_criterion = {
        "cosh": {
            "detected": cosh["detected"],
            "first_violation": cosh["first_violation"],
        }
    }
    for n, scan in d["toeplitz"].items():
        _write_curve(out / "curves" / f"toeplitz_n{n}.csv", scan["r"], scan["min_eig"], "min_eig")
        per_criterion[f"toeplitz{n}"] = {
            "detected": scan["detected"],
            "first_violation_r": scan["first_violation_r"],
        }
    stats = {
        k: d[k]
        for k in (
            "coefficients",
            "transform_coefficients",
            "phi0",
            "phi_nonnegative",
            "phi_negativity_witness_r",
            "mu0",
            "mu1",
            "mean_s",
        )
    }
    return stats, per_criterion


def _run_campaign(config: RunConfig, out: Path) -> tuple:
    if config.command == "grid3":
        st = grid_census_3param(config.n_alpha, config.n_beta)
    elif config.command == "random1d":
        kw = {"b": config.b[0], "qmax": config.qmax}
        st = (
            random_census_1d(seed=config.seed, **kw)
            if config.n == 0
            else random_census_1d(config.n, config.seed, **kw)
        )
    else:
        kw = {}
        if config.orders:
            kw["orders"] = config.orders
        if config.cmp_n:
            kw["cmp_samples"] = config.cmp_n
        elif config.n:
            # keep the comparison study proportional to the main study
            kw["cmp_samples"] = max(1, config.n // 2)
        st = (
            random_census_2d(seed=config.seed, **kw)
            if config.n == 0
            else random_census_2d(config.n, config.seed, **kw)
        )
    _census_csv(out / "census.csv", list(st.per_function_rows))
    stats = {
        "population": st.population,
        "both_positive": st.both_positive,
        "phi_negative": st.phi_negative,
        "rebels": st.rebels,
        "meta": dict(st.meta),
    }
    return stats, dict(st.detections)


def run(config: RunConfig) -> int:
    """Execute one configured run; returns the process exit status."""
    try:
        config.validate()
        out = Path(config.out or f"runs/{config.command}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    try:
        if config.command == "analyze":
            stats, per_criterion = _run_analyze(config, out)
        elif config.command == "fig1":
            stats, per_criterion = _run_fig1(config, out)
        else:
            stats, per_criterion = _run_campaign(config, out)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    timings = {"wall_s": round(time.perf_counter() - t0, 3)}
    _write_summary(out, config, stats, per_criterion, timings)
    print(f"wrote {out / 'summary.json'}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _csv_list(text: str, kind):
    try:
        return tuple(kind(x) for x in text.split(",") if x != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}") from None


def _add_common(sp) -> None:
    sp.add_argument("--out", default="", help="output directory (default runs/<command>)")


def _add_grids(sp) -> None:
    sp.add_argument("--rmax", type=float, default=DEFAULT_GRID[1])
    sp.add_argument("--rstep", type=float, default=DEFAULT_GRID[2])
    sp.add_argument("--im-rmax", type=float, default=DEFAULT_IM_GRID[1])
    sp.add_argument("--im-rstep", type=float, default=DEFAULT_IM_GRID[2])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fourierpos",
        description=(
            "Necessary-condition tests for nonnegativity of the Fourier "
            "transform of Gaussian-polynomial functions"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the criteria checklist on one function")
    an.add_argument("--dim", type=int, default=1, choices=(1, 2))
    an.add_argument(
        "--coeffs",
        type=lambda s: _csv_list(s, float),
        required=True,
        help="comma-separated basis coefficients, up to five",
    )
    an.add_argument(
        "--criteria",
        type=lambda s: _csv_list(s, str),
        default=(),
        help="subset of criteria ids (default: all for the dimension)",
    )
    an.add_argument("--b", type=lambda s: _csv_list(s, float), default=(1.0,))
    an.add_argument("--qmax", type=int, default=4)
    an.add_argument("--orders", type=lambda s: _csv_list(s, int), default=(3, 5))
    an.add_argument("--w", type=float, default=0.5)
    an.add_argument("--wprime", type=float, default=0.5)
    _add_grids(an)
    _add_common(an)

    g3 = sub.add_parser("grid3", help="deterministic two-angle census")
    g3.add_argument("--n-alpha", type=int, default=45)
    g3.add_argument("--n-beta", type=int, default=90)
    _add_common(g3)

    r1 = sub.add_parser("random1d", help="seeded random 1D campaign")
    r1.add_argument("--n", type=int, default=0, help="samples drawn (0 = default)")
    r1.add_argument("--seed", type=int, default=0)
    r1.add_argument("--b", type=lambda s: _csv_list(s, float), default=(1.0,))
    r1.add_argument("--qmax", type=int, default=4)
    _add_common(r1)

    r2 = sub.add_parser("random2d", help="seeded random 2D campaign + 1D comparison")
    r2.add_argument("--n", type=int, default=0, help="samples drawn (0 = default)")
    r2.add_argument("--cmp-n", type=int, default=0, help="comparison-study samples (0 = scale with --n)")
    r2.add_argument("--seed", type=int, default=0)
    r2.add_argument("--orders", type=lambda s: _csv_list(s, int), default=())
    _add_common(r2)

    f1 = sub.add_parser("fig1", help="bundled reference case with curve exports")
    _add_common(f1)

    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    picked = {
        k.replace("-", "_"): v for k, v in vars(args).items() if k.replace("-", "_") in fields
    }
    return RunConfig(**picked)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
